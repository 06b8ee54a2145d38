#include "minkmom/entire.hpp"

#include "minkmom/asymptotics.hpp"

#include <stdexcept>

namespace minkmom {

EntireMomentEvaluator::Value EntireMomentEvaluator::evaluate(const Real& z) const {
    const PrecisionContext ctx = m_.ctx();
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target();
    const std::size_t N = m_.values.size() - 1;
    Value out;
    out.value = 0;
    const std::size_t settle =
        4 * static_cast<std::size_t>(mpfr_get_d(Real(abs(z)).backend().data(), MPFR_RNDN)) + 8;
    Real b = 1; // C(z+k-1, k)
    std::size_t k = 0;
    for (; k <= N; ++k) {
        if (!b.is_zero()) {
            Real g = gamma_entire(z + static_cast<unsigned long>(k), ctx);
            out.value += b * g * m_.values[k];
        } else {
            break; // z a negative integer: the binomial run has ended
        }
        b *= (z + static_cast<unsigned long>(k));
        b /= static_cast<unsigned long>(k) + 1;
        // gamma(k+z) decays like 2^-k; once the coefficient growth is beaten
        // the rest of the sum is certifiably below a geometric envelope
        if (k > settle) {
            Real envelope = abs(b) * ldexp(Real(1), -static_cast<long>(k)) * 4;
            if (envelope < target)
                break;
        }
    }
    if (k > N) {
        // ran out of moments: bound the remainder using m_k <= m_N
        Real rest = abs(b) * ldexp(Real(1), -static_cast<long>(N)) * m_.values[N] * 4;
        out.tail_bound = rest;
        out.certified = rest < ctx.tolerance();
    } else {
        out.tail_bound = target;
    }
    return out;
}

ComplexReal EntireMomentEvaluator::evaluate(const ComplexReal& z) const {
    const PrecisionContext ctx = m_.ctx();
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target();
    const std::size_t N = m_.values.size() - 1;
    ComplexReal acc;
    const std::size_t settle =
        4 * static_cast<std::size_t>(mpfr_get_d(z.abs().backend().data(), MPFR_RNDN)) + 8;
    ComplexReal b{Real(1)};
    for (std::size_t k = 0; k <= N; ++k) {
        ComplexReal g = gamma_entire(z + ComplexReal(Real(k)), ctx);
        acc += b * g * m_.values[k];
        b = b * (z + ComplexReal(Real(k)));
        b = b / Real(k + 1);
        if (k > settle && b.abs() * ldexp(Real(1), -static_cast<long>(k)) * 4 < target)
            break;
    }
    return acc;
}

EntireMomentEvaluator::Value EntireMomentEvaluator::via_binomial_series(const Real& z) const {
    const PrecisionContext ctx = m_.ctx();
    PrecisionScope scope(ctx);
    const std::size_t N = m_.values.size() - 1;
    Value out;
    out.value = 0;
    // C(-z+j-1, j) streamed: b <- b (-z+j)/(j+1)
    Real b = 1;
    for (std::size_t j = 0; j <= N; ++j) {
        out.value += b * m_.values[j];
        b *= (-z + static_cast<unsigned long>(j));
        b /= static_cast<unsigned long>(j) + 1;
    }
    // remainder: |C| keeps growing at most polynomially while m_j decays
    // subexponentially; estimate with the ratio-extrapolated m_{N+1}
    Real floor = m_.values[N];
    if (N >= 1 && m_.values[N - 1] > 0)
        floor = m_.values[N] * (m_.values[N] / m_.values[N - 1]);
    out.tail_bound = abs(b) * floor * (static_cast<unsigned long>(N));
    out.certified = out.tail_bound < ctx.tolerance();
    return out;
}

EntireMomentEvaluator::Value EntireMomentEvaluator::via_signed_binomial(const Real& z) const {
    const PrecisionContext ctx = m_.ctx();
    PrecisionScope scope(ctx);
    const std::size_t N = m_.values.size() - 1;
    Value out;
    out.value = 0;
    Real b = 1; // C(z, j), sign handled by the (-1)^j flip below
    for (std::size_t j = 0; j <= N; ++j) {
        Real term = b * m_.values[j];
        out.value += (j & 1) ? -term : term;
        b *= (z - static_cast<unsigned long>(j));
        b /= static_cast<unsigned long>(j) + 1;
        if (b.is_zero())
            break; // nonnegative integer z: finite sum
    }
    out.tail_bound = abs(b) * m_.values[N] * (static_cast<unsigned long>(N));
    out.certified = out.tail_bound < ctx.tolerance();
    return out;
}

TaylorAtZero taylor_at_zero(const MomentVector& m, unsigned j_order) {
    if (j_order > 12)
        throw std::invalid_argument("taylor_at_zero: coefficient cancellation grows with the "
                                    "order; j_order must be <= 12");
    const PrecisionContext ctx = m.ctx();
    PrecisionScope scope(ctx);
    const std::size_t N = m.values.size() - 1;
    const auto c = log_power_coeffs_real(j_order, static_cast<unsigned>(N), ctx);
    TaylorAtZero t;
    t.coeffs.reserve(j_order + 1);
    t.tail_bounds.reserve(j_order + 1);
    Real nfact = 1;
    for (unsigned n = 0; n <= j_order; ++n) {
        if (n > 0)
            nfact *= n;
        Real acc = 0;
        for (std::size_t k = n; k <= N; ++k)
            acc += c[n][k] * m.values[k];
        t.coeffs.push_back(acc / nfact);
        // tail: |c_{n,k}| m_k decays once k is past the moment roll-off;
        // extrapolate from the last included term's ratio
        Real tail = 0;
        if (N >= 2 && n <= N) {
            Real last = abs(c[n][N]) * m.values[N];
            Real prev = abs(c[n][N - 1]) * m.values[N - 1];
            if (prev > 0) {
                Real ratio = last / prev;
                if (ratio < 1)
                    tail = last * ratio / (1 - ratio) / nfact;
                else {
                    tail = last * static_cast<unsigned long>(N) / nfact;
                    t.tails_ok = false;
                }
            }
        }
        t.tail_bounds.push_back(tail);
        if (tail > ctx.tolerance())
            t.tails_ok = false;
    }
    return t;
}

Real taylor_eval(const TaylorAtZero& t, const Real& x) {
    Real acc = 0;
    Real p = 1;
    for (const Real& d : t.coeffs) {
        acc += d * p;
        p *= x;
    }
    return acc;
}

ConjectureResiduals conjecture_residuals(const MomentVector& m, const Real& lambda) {
    const PrecisionContext ctx = m.ctx();
    PrecisionScope scope(ctx);
    const std::size_t N = m.values.size() - 1;
    const Real l2 = log2_value();
    Real sum_a = 0, sum_b = 0;
    Real p = 1; // 2^-n
    for (std::size_t n = 1; n <= N; ++n) {
        p /= 2;
        sum_a += m.values[n] * (1 + 2 * p) / (2 * static_cast<unsigned long>(n));
        Real w = p - ((n & 1) ? Real(-1) : Real(1));
        sum_b += m.values[n] * w / static_cast<unsigned long>(n);
    }
    ConjectureResiduals r{l2 - sum_a, l2 - sum_b, Real(0), Real(0), false, false};

    // model tail: m^_n = lambda S_int(n) summed until it stops mattering
    const unsigned horizon = static_cast<unsigned>(N) + 8 * (m.digits + 10) +
                             static_cast<unsigned>(N / 2);
    std::vector<Real> sint = S_integral_table(horizon, PrecisionContext(m.digits, 10));
    Real ta = 0, tb = 0;
    for (unsigned n = static_cast<unsigned>(N) + 1; n <= horizon; ++n) {
        Real mn = lambda * to_working(sint[n]);
        ta += mn * (1 + ldexp(Real(1), 1 - static_cast<long>(n))) / (2 * n);
        tb += mn * (1 + ldexp(Real(1), -static_cast<long>(n))) / n;
    }
    r.tail_bound_a = ta * 2; // factor-2 slack on the model
    r.tail_bound_b = tb * 2;
    r.a_below_tail = abs(r.r_a) < r.tail_bound_a;
    r.b_below_tail = abs(r.r_b) < r.tail_bound_b;
    return r;
}

} // namespace minkmom
