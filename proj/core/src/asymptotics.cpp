#include "minkmom/asymptotics.hpp"

#include "minkmom/special.hpp"

#include <cmath>
#include <stdexcept>

namespace minkmom {

Real lambda_const(const MomentVector& m) {
    PrecisionScope scope(m.ctx());
    // the factorial decay of (log 2)^n/n! makes the omitted tail negligible
    // for any order the engine produces (m_n <= 1)
    return lambda_from_values(m.values);
}

Real lambda_alternating(const MomentVector& m) {
    PrecisionScope scope(m.ctx());
    const Real l2 = log2_value();
    Real acc = 0, t = 1;
    for (std::size_t n = 0; n < m.values.size(); ++n) {
        if (n > 0) {
            t *= -l2;
            t /= static_cast<unsigned long>(n);
        }
        acc += t * m.values[n];
    }
    return 2 * acc;
}

Real lambda_even_only(const MomentVector& m) {
    PrecisionScope scope(m.ctx());
    const Real l2 = log2_value();
    Real acc = 0, t = 1;
    for (std::size_t n = 0; n < m.values.size(); n += 2) {
        if (n > 0) {
            t *= l2 * l2;
            t /= static_cast<unsigned long>(n) * (static_cast<unsigned long>(n) - 1);
        }
        acc += t * m.values[n];
    }
    return Real(4) / 3 * acc;
}

Real lambda_odd_only(const MomentVector& m) {
    PrecisionScope scope(m.ctx());
    const Real l2 = log2_value();
    Real acc = 0;
    Real t = l2; // (log 2)^(2n+1)/(2n+1)!
    for (std::size_t n = 1; n < m.values.size(); n += 2) {
        if (n > 1) {
            t *= l2 * l2;
            t /= static_cast<unsigned long>(n) * (static_cast<unsigned long>(n) - 1);
        }
        acc += t * m.values[n];
    }
    return 4 * acc;
}

PhiVector phi_vector(const MomentVector& m, int threads) {
    PrecisionScope scope(m.ctx());
    return phi_pass(m.values, m.order(), m.order(), threads);
}

Real rho_const(const PhiVector& phi, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target();
    const Real q = log2_value() / 2;
    Real acc = 0;
    Real t = 1; // (log2/2)^(2k) / (2k)!
    for (std::size_t k = 0; k < phi.even.size(); ++k) {
        if (k > 0) {
            t *= q * q;
            t /= (2 * static_cast<unsigned long>(k)) * (2 * static_cast<unsigned long>(k) - 1);
        }
        acc += t * phi.even[k];
        if (t < target) // phi values are <= 1 and t decays factorially
            break;
    }
    return acc;
}

Real S_shifted(const Real& x, unsigned n, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target() * pow10(-8);
    Real acc = 0;
    unsigned h = (x.is_zero() && n > 0) ? 2 : 1;
    if (x.is_zero() && n == 0)
        h = 2; // the h=1 term 0^0 is excluded: the sum starts where Box > 0
    for (;; ++h) {
        Real hx = h + x;
        Real term = pow(Real(2), -hx) * pow(1 - 1 / hx, static_cast<int>(n));
        acc += term;
        // remaining tail is below sum_{g>h} 2^-(g+x) = 2^-(h+x)
        if (pow(Real(2), -hx) < target)
            break;
    }
    return acc;
}

std::vector<Real> S_integral_table(unsigned max_n, const PrecisionContext& ctx) {
    const int extra =
        static_cast<int>(std::ceil(4.0 * std::sqrt(max_n * 0.6931471805599453) / std::log(10.0))) +
        10;
    PrecisionContext elevated(ctx.digits + extra, ctx.guard);
    PrecisionScope scope(elevated);
    std::vector<Real> s(max_n + 1);
    const Real l2 = log2_value();
    s[0] = 1 / (2 * l2);
    if (max_n >= 1)
        s[1] = s[0] + exp_integral_neg_log2(elevated);
    for (unsigned n = 2; n <= max_n; ++n)
        s[n] = (2 + l2 / (n - 1)) * s[n - 1] - s[n - 2];
    // the decaying-solution values must stay positive; a sign flip means the
    // guard digits were insufficient
    if (max_n >= 2 && !(s[max_n] > 0))
        throw PrecisionError("S_integral_table: recursion lost the decaying solution");
    return s;
}

Real S_integral(unsigned n, const PrecisionContext& ctx) {
    return S_integral_table(n, ctx)[n];
}

Real kappa(unsigned n, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real si = S_integral(n, ctx);
    const Real d0 = S_shifted(Real(0), n, ctx) - si;
    const Real dq = S_shifted(Real(1) / 4, n, ctx) - si;
    return sqrt(d0 * d0 + dq * dq);
}

Real moment_asymptotic_closed(unsigned n, const Real& lambda, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real l2 = log2_value();
    return lambda * pow(Real(n), Real(1) / 4) / pow(l2, Real(3) / 4) * sqrt(pi_value() / 2) *
           exp(-2 * sqrt(n * l2));
}

Real laplace_ratio(unsigned n, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    return S_shifted(Real(0), n, ctx) / moment_asymptotic_closed(n, Real(1), ctx);
}

Real phi_asymptotic_sum(unsigned n, const Real& lambda, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target() * pow10(-8);
    Real acc = 0;
    for (unsigned h = 3;; ++h) {
        Real term = ldexp(Real(1), -static_cast<long>(h)) *
                    pow(1 - Real(2) / h, static_cast<int>(n));
        acc += term;
        if (ldexp(Real(1), -static_cast<long>(h)) < target)
            break;
    }
    return 2 * lambda * acc;
}

Real phi_asymptotic_closed(unsigned n, const Real& lambda, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real l2 = log2_value();
    return lambda * pow(Real(2) * n, Real(1) / 4) * sqrt(pi_value()) / pow(l2, Real(3) / 4) *
           exp(-2 * sqrt(2 * n * l2));
}

ModelKind model_from_name(const std::string& s) {
    if (s == "S0" || s == "s0")
        return ModelKind::s0;
    if (s == "Shalf" || s == "shalf")
        return ModelKind::shalf;
    if (s == "Sint" || s == "sint")
        return ModelKind::sint;
    if (s == "improved")
        return ModelKind::improved;
    if (s == "zero")
        return ModelKind::zero;
    throw std::invalid_argument("unknown model: " + s);
}

std::string model_name(ModelKind k) {
    switch (k) {
    case ModelKind::s0:
        return "S0";
    case ModelKind::shalf:
        return "Shalf";
    case ModelKind::sint:
        return "Sint";
    case ModelKind::improved:
        return "improved";
    case ModelKind::zero:
        return "zero";
    }
    return "Sint";
}

std::vector<ErrorRow> error_series(const MomentVector& m, const Real& lambda, unsigned from,
                                   unsigned to, ModelKind model, const Real& fit_a,
                                   const Real& fit_b) {
    if (to > static_cast<unsigned>(m.order()) || from > to)
        throw std::invalid_argument("error_series: range outside the moment vector");
    const PrecisionContext ctx(m.digits, 10);
    PrecisionScope scope(ctx);
    std::vector<Real> sint = S_integral_table(to, ctx);
    std::vector<ErrorRow> rows;
    rows.reserve(to - from + 1);
    for (unsigned n = from; n <= to; ++n) {
        ErrorRow r;
        r.n = n;
        r.sqrt_n = sqrt(Real(n));
        r.m = m.values[n];
        const Real s0 = S_shifted(Real(0), n, ctx);
        const Real sh = S_shifted(Real(1) / 2, n, ctx);
        const Real sq = S_shifted(Real(1) / 4, n, ctx);
        const Real si = to_working(sint[n]);
        const Real d0 = s0 - si, dq = sq - si;
        r.kappa = sqrt(d0 * d0 + dq * dq);
        r.e0 = (r.m - lambda * s0) / r.kappa;
        r.ehalf = (r.m - lambda * sh) / r.kappa;
        r.eint = (r.m - lambda * si) / r.kappa;
        switch (model) {
        case ModelKind::s0:
            r.model = lambda * s0;
            break;
        case ModelKind::shalf:
            r.model = lambda * sh;
            break;
        case ModelKind::sint:
            r.model = lambda * si;
            break;
        case ModelKind::improved:
            r.model = lambda * si + fit_a * d0 + fit_b * dq;
            break;
        case ModelKind::zero:
            r.model = 0;
            break;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

FitResult fit_improved_model(const MomentVector& m, const Real& lambda, unsigned from,
                             unsigned to) {
    if (to > static_cast<unsigned>(m.order()) || from >= to)
        throw std::invalid_argument("fit_improved_model: bad range");
    const PrecisionContext ctx(m.digits, 10);
    PrecisionScope scope(ctx);
    std::vector<Real> sint = S_integral_table(to, ctx);
    Real suu = 0, suv = 0, svv = 0, suy = 0, svy = 0, syy = 0;
    const unsigned count = to - from + 1;
    for (unsigned n = from; n <= to; ++n) {
        const Real si = to_working(sint[n]);
        const Real u = S_shifted(Real(0), n, ctx) - si;
        const Real v = S_shifted(Real(1) / 4, n, ctx) - si;
        const Real y = m.values[n] - lambda * si;
        suu += u * u;
        suv += u * v;
        svv += v * v;
        suy += u * y;
        svy += v * y;
        syy += y * y;
    }
    const Real det = suu * svv - suv * suv;
    if (abs(det) <= suu * svv * pow10(-(ctx.digits - 4)))
        throw std::runtime_error("fit_improved_model: basis is numerically collinear");
    FitResult fr;
    fr.a = (svv * suy - suv * svy) / det;
    fr.b = (suu * svy - suv * suy) / det;
    fr.rms_before = sqrt(syy / count);
    // residual sum of squares via the normal equations
    Real rss = syy - fr.a * suy - fr.b * svy;
    if (rss < 0)
        rss = 0;
    fr.rms_after = sqrt(rss / count);
    return fr;
}

AsymptoticModel build_model(const MomentVector& m) {
    AsymptoticModel model;
    model.ctx = PrecisionContext(m.digits, 10);
    model.lambda = lambda_const(m);
    model.rho = rho_const(phi_vector(m), model.ctx);
    return model;
}

std::vector<Real> extension_table(const AsymptoticModel& model, ModelKind kind, unsigned from,
                                  unsigned to) {
    PrecisionScope scope(model.ctx);
    std::vector<Real> out;
    out.reserve(to - from + 1);
    if (kind == ModelKind::zero) {
        out.assign(to - from + 1, Real(0));
        return out;
    }
    std::vector<Real> sint;
    if (kind == ModelKind::sint || kind == ModelKind::improved)
        sint = S_integral_table(to, model.ctx);
    for (unsigned n = from; n <= to; ++n) {
        switch (kind) {
        case ModelKind::s0:
            out.push_back(S_shifted(Real(0), n, model.ctx));
            break;
        case ModelKind::shalf:
            out.push_back(S_shifted(Real(1) / 2, n, model.ctx));
            break;
        case ModelKind::sint:
            out.push_back(to_working(sint[n]));
            break;
        case ModelKind::improved: {
            if (!model.fitted)
                throw std::invalid_argument("extension_table: improved kind needs fitted a, b");
            const Real si = to_working(sint[n]);
            const Real d0 = S_shifted(Real(0), n, model.ctx) - si;
            const Real dq = S_shifted(Real(1) / 4, n, model.ctx) - si;
            out.push_back(si + (model.fit_a / model.lambda) * d0 +
                          (model.fit_b / model.lambda) * dq);
            break;
        }
        case ModelKind::zero:
            break;
        }
    }
    return out;
}

} // namespace minkmom
