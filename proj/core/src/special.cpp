#include "minkmom/special.hpp"

#include <stdexcept>

namespace minkmom {

BigInt binomial_int(const BigInt& n, unsigned k) {
    if (n < 0) {
        BigInt r = binomial_int(-n + k - 1, k);
        return (k % 2 == 0) ? r : -r;
    }
    if (BigInt(k) > n)
        return 0;
    BigInt num = 1;
    for (unsigned j = 0; j < k; ++j) {
        num *= n - j;
        num /= j + 1; // exact at every step: product of j+1 consecutive integers
    }
    return num;
}

Real binomial_real(const Real& z, unsigned k) {
    Real r = 1;
    for (unsigned j = 0; j < k; ++j) {
        r *= z - j;
        r /= j + 1;
    }
    return r;
}

ComplexReal binomial_complex(const ComplexReal& z, unsigned k) {
    ComplexReal r(Real(1));
    for (unsigned j = 0; j < k; ++j) {
        r = r * (z - ComplexReal(Real(j)));
        r = r / Real(j + 1);
    }
    return r;
}

Real polylog_half(unsigned n, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target();
    Real sum = 0;
    Real p = 1; // 2^-k accumulated
    for (unsigned k = 1;; ++k) {
        p /= 2;
        Real term = p / pow(Real(k), static_cast<int>(n));
        sum += term;
        // t_{k+1}/t_k = (1/2)(k/(k+1))^n <= 1/2, so the tail is < 2 t_{k+1} < t_k
        if (term < target && k > 1)
            break;
    }
    return sum;
}

Real gamma_poly(unsigned n, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target();
    Real sum = 0;
    Real p = 1;
    for (unsigned k = 1;; ++k) {
        p /= 2;
        Real term = p / pow(Real(k + 1), static_cast<int>(n));
        sum += term;
        if (term < target && k > 1)
            break;
    }
    return sum;
}

Real gamma_poly_via_polylog(unsigned n, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    return 2 * polylog_half(n, ctx) - 1;
}

BigInt gamma_int(unsigned n) {
    return gamma_int_table(n)[n];
}

std::vector<BigInt> gamma_int_table(unsigned max_n) {
    std::vector<BigInt> g(max_n + 1);
    g[0] = 1;
    for (unsigned n = 1; n <= max_n; ++n) {
        BigInt acc = 1;
        BigInt binom = 1; // C(n, j)
        for (unsigned j = 0; j < n; ++j) {
            acc += binom * g[j];
            binom *= n - j;
            binom /= j + 1;
        }
        g[n] = acc;
    }
    return g;
}

Real gamma_entire(const Real& z, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target();
    const Real az = abs(z);
    // terms t_n = 2^-n (1+n)^-z; for n+1 >= 2.5|z| the ratio t_{n+1}/t_n is
    // below (1/2) e^{|z|/(n+1)} <= 3/4, certifying a geometric tail
    const unsigned settle = 2 + static_cast<unsigned>(ceil(Real(az * 3)).convert_to<unsigned long>());
    Real sum = 0;
    Real p = 1;
    for (unsigned n = 1;; ++n) {
        p /= 2;
        Real term = p * pow(Real(1 + n), -z);
        sum += term;
        if (n >= settle && abs(term) * 4 < target)
            break;
    }
    return sum;
}

ComplexReal gamma_entire(const ComplexReal& z, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target();
    const Real az = z.abs();
    const unsigned settle = 2 + static_cast<unsigned>(ceil(Real(az * 3)).convert_to<unsigned long>());
    ComplexReal sum;
    Real p = 1;
    for (unsigned n = 1;; ++n) {
        p /= 2;
        // (1+n)^-z = e^{-z log(1+n)}
        const Real L = log(Real(1 + n));
        const Real mag = p * exp(-z.re * L);
        ComplexReal term(mag * cos(z.im * L), -mag * sin(z.im * L));
        sum += term;
        if (n >= settle && mag * 4 < target)
            break;
    }
    return sum;
}

std::vector<std::vector<BigRat>> log_power_coeffs_exact(unsigned max_n, unsigned max_k) {
    std::vector<std::vector<BigRat>> c(max_n + 1, std::vector<BigRat>(max_k + 1, BigRat(0)));
    c[0][0] = 1;
    for (unsigned n = 0; n < max_n; ++n)
        for (unsigned k = n + 1; k <= max_k; ++k) {
            BigRat acc(0);
            for (unsigned j = 1; j <= k; ++j) {
                if (k - j < n)
                    break; // c_{n,m} = 0 below the diagonal
                if (!c[n][k - j].is_zero())
                    acc += c[n][k - j] / j;
            }
            c[n + 1][k] = -acc;
        }
    return c;
}

std::vector<std::vector<Real>> log_power_coeffs_real(unsigned max_n, unsigned max_k,
                                                     const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    std::vector<std::vector<Real>> c(max_n + 1, std::vector<Real>(max_k + 1, Real(0)));
    c[0][0] = 1;
    for (unsigned n = 0; n < max_n; ++n)
        for (unsigned k = n + 1; k <= max_k; ++k) {
            Real acc = 0;
            for (unsigned j = 1; j + n <= k; ++j)
                acc += c[n][k - j] / j;
            c[n + 1][k] = -acc;
        }
    return c;
}

std::vector<std::vector<BigInt>> stirling_first_table(unsigned max_k) {
    std::vector<std::vector<BigInt>> s(max_k + 1, std::vector<BigInt>(max_k + 1, BigInt(0)));
    s[0][0] = 1;
    for (unsigned k = 0; k < max_k; ++k)
        for (unsigned m = 0; m <= k + 1; ++m) {
            BigInt v = 0;
            if (m > 0)
                v += s[k][m - 1];
            v -= BigInt(k) * s[k][m];
            s[k + 1][m] = v;
        }
    return s;
}

BigRat log_power_coeff_stirling(unsigned n, unsigned k) {
    auto s = stirling_first_table(k);
    BigInt nfact = 1, kfact = 1;
    for (unsigned j = 2; j <= n; ++j)
        nfact *= j;
    for (unsigned j = 2; j <= k; ++j)
        kfact *= j;
    BigRat r(nfact * s[k][n], kfact);
    return (k % 2 == 0) ? r : -r;
}

Real exp_integral_neg_log2(const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real target = ctx.truncation_target();
    const Real x = -log2_value();
    Real sum = 0;
    Real term = 1; // x^k / k!
    for (unsigned k = 1;; ++k) {
        term *= x;
        term /= k;
        sum += term / k;
        // |x| < 0.7, so successive terms shrink by at least |x|/(k+1)
        if (abs(term) < target && k > 2)
            break;
    }
    return euler_gamma_value() + log(-x) + sum;
}

} // namespace minkmom
