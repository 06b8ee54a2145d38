#include "minkmom/moments.hpp"

#include "minkmom/detail/parallel.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace minkmom {

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::simple:
        return "simple";
    case Backend::alkauskas:
        return "alkauskas";
    case Backend::bootstrap:
        return "bootstrap";
    }
    return "simple";
}

Backend backend_from_name(const std::string& s) {
    if (s == "simple")
        return Backend::simple;
    if (s == "alkauskas")
        return Backend::alkauskas;
    if (s == "bootstrap")
        return Backend::bootstrap;
    throw std::invalid_argument("unknown backend: " + s);
}

PrecisionContext EngineConfig::working_context() const {
    return PrecisionContext(digits, 10 + (order + 19) / 20);
}

int EngineConfig::default_max_iterations() const {
    if (order <= 0)
        return 10;
    return static_cast<int>(std::ceil(2.0 * std::sqrt(order / 0.6931471805599453))) + 10;
}

void EngineConfig::validate() const {
    if (order < 0)
        throw std::invalid_argument("EngineConfig: order must be >= 0");
    if (digits < 15)
        throw std::invalid_argument("EngineConfig: digits must be >= 15");
    if (backend == Backend::bootstrap && extension <= order)
        throw std::invalid_argument("EngineConfig: bootstrap requires extension > order");
    if (backend != Backend::bootstrap && extension != 0 && extension <= order)
        throw std::invalid_argument("EngineConfig: extension must exceed order");
}

PrecisionContext MomentVector::ctx() const {
    return PrecisionContext(digits, 10 + (order() + 19) / 20);
}

Real MomentVector::tail_estimate() const {
    PrecisionScope scope(ctx());
    Real est = abs(final_step);
    const int n = order();
    if (n >= 1 && values[n] > 0 && values[n - 1] > 0) {
        Real ratio = values[n] / values[n - 1];
        if (ratio < 1) {
            Real model = values[n] * ratio; // extrapolated m_{N+1}
            if (model > est)
                est = model;
        }
    }
    return est;
}

Real compute_phi(const std::vector<Real>& m, unsigned n, std::size_t k_max) {
    Real acc = 0;
    Real b = ldexp(Real(1), -static_cast<long>(n)); // C(n+k-1,k)/2^(n+k) at k=0
    for (std::size_t k = 0; k <= k_max && n + k < m.size(); ++k) {
        acc += b * m[n + k];
        b *= static_cast<unsigned long>(n + k);
        b /= 2 * (static_cast<unsigned long>(k) + 1);
        if (b.is_zero())
            break; // n = 0 row: only the k = 0 term is nonzero
    }
    return acc;
}

PhiVector phi_pass(const std::vector<Real>& m, int order, int tail_order, int threads) {
    PhiVector phi;
    phi.even.assign(static_cast<std::size_t>(order / 2) + 1, Real(0));
    detail::parallel_for(0, phi.even.size(), threads, [&](std::size_t j) {
        const unsigned n = static_cast<unsigned>(2 * j);
        phi.even[j] = compute_phi(m, n, static_cast<std::size_t>(tail_order - n));
    });
    return phi;
}

std::vector<Real> moments_from_phi(const PhiVector& phi, int order, int threads) {
    std::vector<Real> out(static_cast<std::size_t>(order) + 1, Real(0));
    out[0] = 1;
    detail::parallel_for(1, out.size(), threads, [&](std::size_t n) {
        Real acc = 0;
        Real b = ldexp(Real(1), -static_cast<long>(n)); // C(n,2k)/2^n at k=0
        for (std::size_t k = 0; 2 * k <= n; ++k) {
            acc += b * phi.even[k];
            // advance C(n,2k) -> C(n,2k+2)
            b *= static_cast<unsigned long>(n - 2 * k);
            if (n >= 2 * k + 1)
                b *= static_cast<unsigned long>(n - 2 * k - 1);
            b /= (2 * static_cast<unsigned long>(k) + 1) * (2 * static_cast<unsigned long>(k) + 2);
        }
        out[n] = acc;
    });
    return out;
}

std::vector<Real> apply_moment_map(const std::vector<Real>& v, int order, int threads) {
    PhiVector phi = phi_pass(v, order, order, threads);
    return moments_from_phi(phi, order, threads);
}

namespace {

struct SweepResult {
    std::vector<Real> values;
    Real step;
};

Real sup_step(const std::vector<Real>& a, const std::vector<Real>& b) {
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Real d = abs(a[i] - b[i]);
        if (d > s)
            s = d;
    }
    return s;
}

// Ratio extrapolation of m_{N+1}, the per-entry truncation-error scale: the
// attainable accuracy is O(m_{N+1}) no matter how long the map is iterated.
Real truncation_floor(const std::vector<Real>& v) {
    const std::size_t n = v.size() - 1;
    if (n < 2 || !(v[n] > 0) || !(v[n - 1] > 0))
        return Real(0);
    Real ratio = v[n] / v[n - 1];
    if (!(ratio < 1))
        return Real(0);
    return v[n] * ratio;
}

void finish_diagnostics(MomentVector& mv, const Real& tol) {
    mv.converged = mv.final_step < tol;
    Real floor = truncation_floor(mv.values);
    mv.at_error_floor = mv.converged || mv.final_step <= 4 * floor;
}

MomentVector run_iteration(const EngineConfig& cfg, std::vector<Real> v,
                           const std::function<std::vector<Real>(const std::vector<Real>&)>& sweep) {
    const Real tol = pow10(-cfg.digits);
    const int cap = cfg.max_iterations > 0 ? cfg.max_iterations : cfg.default_max_iterations();
    MomentVector mv;
    mv.digits = cfg.digits;
    mv.backend = cfg.backend;
    Real step = 0;
    int it = 0;
    for (; it < cap; ++it) {
        std::vector<Real> next = sweep(v);
        step = sup_step(next, v);
        mv.step_history.push_back(step);
        v = std::move(next);
        if (step < tol) {
            ++it;
            break;
        }
    }
    mv.values = std::move(v);
    mv.iterations = it;
    mv.final_step = step;
    finish_diagnostics(mv, tol);
    return mv;
}

} // namespace

MomentVector fixed_point_moments(const EngineConfig& cfg) {
    std::vector<Real> start(static_cast<std::size_t>(cfg.order) + 1, Real(0));
    {
        PrecisionScope scope(cfg.working_context());
        start[0] = 1;
    }
    return fixed_point_moments(cfg, std::move(start));
}

MomentVector fixed_point_moments(const EngineConfig& cfg, std::vector<Real> start) {
    cfg.validate();
    PrecisionScope scope(cfg.working_context());
    if (start.size() != static_cast<std::size_t>(cfg.order) + 1)
        throw std::invalid_argument("fixed_point_moments: warm start has wrong length");
    for (auto& x : start)
        x = to_working(x);
    start[0] = 1;
    return run_iteration(cfg, std::move(start), [&](const std::vector<Real>& v) {
        return apply_moment_map(v, cfg.order, cfg.threads);
    });
}

std::vector<Real> gamma_poly_table(unsigned max_n, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    // column-wise: for each h the powers (h+1)^-n follow by division, and the
    // k > K tail is below 2^-K relative to every entry
    const unsigned K = static_cast<unsigned>(std::ceil(3.33 * ctx.working_digits())) + 4;
    std::vector<Real> g(max_n + 1, Real(0));
    Real w = 1;
    for (unsigned h = 1; h <= K; ++h) {
        w /= 2;
        Real p = w;
        for (unsigned n = 0; n <= max_n; ++n) {
            g[n] += p;
            p /= h + 1;
        }
    }
    return g;
}

std::vector<Real> polylog_half_table(unsigned max_n, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const unsigned K = static_cast<unsigned>(std::ceil(3.33 * ctx.working_digits())) + 4;
    std::vector<Real> g(max_n + 1, Real(0));
    Real w = 1;
    for (unsigned h = 1; h <= K; ++h) {
        w /= 2;
        Real p = w;
        for (unsigned n = 0; n <= max_n; ++n) {
            g[n] += p;
            if (h > 1)
                p /= h;
        }
    }
    return g;
}

std::vector<Real> alkauskas_step(const std::vector<Real>& v, const std::vector<Real>& coeff_table,
                                 int order, int threads, bool alternating) {
    if (coeff_table.size() < 2 * static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("alkauskas_step: coefficient table too short");
    std::vector<Real> out(static_cast<std::size_t>(order) + 1, Real(0));
    out[0] = 1;
    detail::parallel_for(1, out.size(), threads, [&](std::size_t n) {
        Real acc = 0;
        Real b = 1; // C(k+n-1, n-1) at k=0
        for (std::size_t k = 0; k <= static_cast<std::size_t>(order); ++k) {
            Real term = b * coeff_table[k + n] * v[k];
            if (alternating && (k & 1))
                acc -= term;
            else
                acc += term;
            b *= static_cast<unsigned long>(k + n);
            b /= static_cast<unsigned long>(k + 1);
        }
        out[n] = acc;
    });
    return out;
}

MomentVector alkauskas_moments(const EngineConfig& cfg) {
    cfg.validate();
    PrecisionScope scope(cfg.working_context());
    std::vector<Real> table =
        cfg.alternating_coeffs
            ? polylog_half_table(2 * static_cast<unsigned>(cfg.order), cfg.working_context())
            : gamma_poly_table(2 * static_cast<unsigned>(cfg.order), cfg.working_context());
    std::vector<Real> start(static_cast<std::size_t>(cfg.order) + 1, Real(0));
    start[0] = 1;
    return run_iteration(cfg, std::move(start), [&](const std::vector<Real>& v) {
        return alkauskas_step(v, table, cfg.order, cfg.threads, cfg.alternating_coeffs);
    });
}

Real lambda_from_values(const std::vector<Real>& v) {
    const Real l2 = log2_value();
    Real acc = 0;
    Real t = 1; // (log 2)^n / n!
    for (std::size_t n = 0; n < v.size(); ++n) {
        if (n > 0) {
            t *= l2;
            t /= static_cast<unsigned long>(n);
        }
        acc += t * v[n];
    }
    return acc;
}

MomentVector bootstrap_moments(const EngineConfig& cfg, const std::vector<Real>& s_ext) {
    cfg.validate();
    if (cfg.backend != Backend::bootstrap)
        throw std::invalid_argument("bootstrap_moments: backend must be bootstrap");
    PrecisionScope scope(cfg.working_context());
    const int N = cfg.order, M = cfg.extension;
    if (s_ext.size() != static_cast<std::size_t>(M - N))
        throw std::invalid_argument("bootstrap_moments: need S values for N+1..M");
    std::vector<Real> ext(s_ext.size());
    for (std::size_t i = 0; i < ext.size(); ++i)
        ext[i] = to_working(s_ext[i]);

    std::vector<Real> v(static_cast<std::size_t>(M) + 1, Real(0));
    v[0] = 1;
    const Real tol = pow10(-cfg.digits);
    const int cap = cfg.max_iterations > 0 ? cfg.max_iterations : cfg.default_max_iterations();

    MomentVector mv;
    mv.digits = cfg.digits;
    mv.backend = Backend::bootstrap;
    Real step = 0;
    int it = 0;
    for (; it < cap; ++it) {
        const Real lam = lambda_from_values(v);
        for (int n = N + 1; n <= M; ++n)
            v[static_cast<std::size_t>(n)] = lam * ext[static_cast<std::size_t>(n - N - 1)];
        PhiVector phi = phi_pass(v, N, M, cfg.threads);
        std::vector<Real> head = moments_from_phi(phi, N, cfg.threads);
        Real s = 0;
        for (int n = 0; n <= N; ++n) {
            Real d = abs(head[static_cast<std::size_t>(n)] - v[static_cast<std::size_t>(n)]);
            if (d > s)
                s = d;
            v[static_cast<std::size_t>(n)] = head[static_cast<std::size_t>(n)];
        }
        step = s;
        mv.step_history.push_back(step);
        if (step < tol) {
            ++it;
            break;
        }
    }

    // checking run: one plain sweep at order M over the extended vector,
    // reporting the largest correction it would make
    {
        const Real lam = lambda_from_values(v);
        for (int n = N + 1; n <= M; ++n)
            v[static_cast<std::size_t>(n)] = lam * ext[static_cast<std::size_t>(n - N - 1)];
        std::vector<Real> w = apply_moment_map(v, M, cfg.threads);
        Real eps = 0;
        for (int n = 0; n <= M; ++n) {
            Real d = abs(w[static_cast<std::size_t>(n)] - v[static_cast<std::size_t>(n)]);
            if (d > eps)
                eps = d;
        }
        mv.check_epsilon = eps;
        w.resize(static_cast<std::size_t>(N) + 1);
        mv.values = std::move(w);
    }
    mv.iterations = it;
    mv.final_step = step;
    finish_diagnostics(mv, tol);
    return mv;
}

// ---------------------------------------------------------------------------
// Interval crosscheck
// ---------------------------------------------------------------------------

namespace {

struct InnerSum {
    Real value{0};
    Real tail{0};
    Real max_partial{0};
    bool certified = true;
};

// sum_{j>=0} C(k-1+j, j) (+-1)^j m_{k+j} / d^j truncated at the end of the
// moment vector, with a geometric tail certificate where the term ratio
// (k+j+1)/((j+2) d) has dropped below 1.
InnerSum inner_interval_sum(const std::vector<Real>& m, unsigned k, unsigned d, bool alternating,
                            const Real& stop_below) {
    InnerSum r;
    Real b = 1; // C(k-1+j, j)/d^j
    const std::size_t N = m.size() - 1;
    std::size_t j = 0;
    for (; k + j <= N; ++j) {
        Real term = b * m[k + j];
        if (alternating && (j & 1))
            r.value -= term;
        else
            r.value += term;
        Real a = abs(r.value);
        if (a > r.max_partial)
            r.max_partial = a;
        b *= static_cast<unsigned long>(k + j);
        b /= static_cast<unsigned long>(j + 1) * d;
        if (b.is_zero())
            return r; // k = 0: the j = 0 term is the whole sum
        // early stop once the remainder is certifiably below stop_below
        if (k + j + 1 <= N) {
            Real ratio = Real(k + j + 1) / (Real(j + 2) * d);
            if (ratio < Real(1) / 2) {
                Real next = b * m[k + j + 1];
                if (next * 2 < stop_below) {
                    r.tail = next * 2;
                    return r;
                }
            }
        }
    }
    // ran off the end of the vector: bound the remainder by the next
    // coefficient times m_N under the (eventually valid) geometric ratio
    Real ratio = Real(k + j + 1) / (Real(j + 2) * d);
    if (ratio < 1) {
        r.tail = b * m[N] / (1 - ratio);
    } else {
        r.certified = false;
        r.tail = b * m[N] * static_cast<unsigned long>(N);
    }
    return r;
}

} // namespace

CrosscheckResult j1_alternating_series(const MomentVector& m, unsigned n) {
    PrecisionScope scope(m.ctx());
    CrosscheckResult res;
    InnerSum s = inner_interval_sum(m.values, n, 1, true, Real(0));
    res.value = s.value / 2;
    res.tail_bound = s.tail / 2;
    res.tail_certified = s.certified;
    if (s.max_partial > 0 && !res.value.is_zero()) {
        Real ratio = s.max_partial / abs(res.value);
        res.cancellation_digits = mpfr_get_d(Real(log10(ratio)).backend().data(), MPFR_RNDN);
    }
    // the alternating bound only applies past the term peak near (n-1)^2/log 2
    if (n >= 2) {
        double peak = (n - 1.0) * (n - 1.0) / 0.6931471805599453;
        if (static_cast<double>(m.order()) - n < peak)
            res.tail_certified = false;
    }
    return res;
}

CrosscheckResult j1_stable(const MomentVector& m, unsigned n) {
    PrecisionScope scope(m.ctx());
    const Real target = pow10(-(m.digits + 3));
    CrosscheckResult res;
    // (1/2)(1/2)^n sum_k C(n,k)(-1/2)^k sum_j C(k-1+j,j) m_{k+j} 2^-j
    Real pref = ldexp(Real(1), -static_cast<long>(n) - 1);
    Real bk = 1; // C(n,k)/2^k magnitude
    Real acc = 0, max_partial = 0;
    for (unsigned k = 0; k <= n; ++k) {
        Real scale = pref * bk;
        InnerSum s = inner_interval_sum(m.values, k, 2, false, target / (scale + target));
        if (k & 1)
            acc -= scale * s.value;
        else
            acc += scale * s.value;
        res.tail_bound += scale * s.tail;
        if (!s.certified)
            res.tail_certified = false;
        Real a = abs(acc);
        if (a > max_partial)
            max_partial = a;
        bk *= static_cast<unsigned long>(n - k);
        bk /= 2 * (static_cast<unsigned long>(k) + 1);
    }
    res.value = acc;
    if (max_partial > 0 && !acc.is_zero())
        res.cancellation_digits =
            mpfr_get_d(Real(log10(max_partial / abs(acc))).backend().data(), MPFR_RNDN);
    return res;
}

CrosscheckResult jh_crosscheck(const MomentVector& m, unsigned n, int h_max) {
    if (2 * static_cast<int>(n) > m.order())
        throw std::invalid_argument("jh_crosscheck: need n <= order/2");
    PrecisionScope scope(m.ctx());
    const PrecisionContext ctx = m.ctx();
    const Real target = pow10(-(m.digits + 3));
    if (h_max <= 0)
        h_max = static_cast<int>(std::ceil(3.33 * ctx.working_digits())) + 10;

    CrosscheckResult res;
    double worst_cancel = 0;

    {
        CrosscheckResult j1 = j1_stable(m, n);
        res.value = j1.value;
        res.tail_bound = j1.tail_bound;
        res.tail_certified = j1.tail_certified;
        worst_cancel = j1.cancellation_digits;
    }

    // h >= 2 intervals: 2^-h ((h-1)/h)^n sum_k C(n,k)(h(h-1))^-k
    //                   sum_j C(k-1+j,j)(-1)^j m_{k+j} h^-j
    for (int h = 2; h <= h_max; ++h) {
        const unsigned long hh = static_cast<unsigned long>(h);
        Real pref = ldexp(Real(1), -h) * pow(Real(h - 1) / h, static_cast<int>(n));
        if (pref * 4 < target && h > 2) {
            // remaining intervals are bounded by sum_{g>h} 2^-g <= 2^(1-h)
            res.tail_bound += ldexp(Real(1), 1 - h);
            break;
        }
        Real bk = 1; // C(n,k)/(h(h-1))^k
        Real acc = 0, max_partial = 0;
        for (unsigned k = 0; k <= n; ++k) {
            Real scale = pref * bk;
            // inner sums are bounded by (h/(h-1))^k; cut the k loop when the
            // scaled bound is negligible
            Real inner_bound = pow(Real(h) / (h - 1), static_cast<int>(k));
            if (scale * inner_bound * 4 < target && k > 0) {
                res.tail_bound += scale * inner_bound * 2;
                break;
            }
            InnerSum s =
                inner_interval_sum(m.values, k, hh, true, target / (scale + target));
            acc += scale * s.value;
            res.tail_bound += scale * s.tail;
            if (!s.certified)
                res.tail_certified = false;
            Real a = abs(acc);
            if (a > max_partial)
                max_partial = a;
            bk *= static_cast<unsigned long>(n - k);
            bk /= (static_cast<unsigned long>(k) + 1) * hh * (hh - 1);
            if (bk.is_zero())
                break;
        }
        res.value += acc;
        if (max_partial > 0 && !acc.is_zero()) {
            double c = mpfr_get_d(Real(log10(max_partial / abs(acc))).backend().data(), MPFR_RNDN);
            worst_cancel = std::max(worst_cancel, c);
        }
    }
    res.cancellation_digits = worst_cancel;
    return res;
}

} // namespace minkmom
