#pragma once

#include "minkmom/precision.hpp"

#include <vector>

namespace minkmom {

/// Minimal complex value over arbitrary-precision reals; only what the
/// entire-function evaluators need.
struct ComplexReal {
    Real re, im;

    ComplexReal() : re(0), im(0) {}
    ComplexReal(Real r) : re(std::move(r)), im(0) {}
    ComplexReal(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    ComplexReal operator+(const ComplexReal& o) const { return {re + o.re, im + o.im}; }
    ComplexReal operator-(const ComplexReal& o) const { return {re - o.re, im - o.im}; }
    ComplexReal operator*(const ComplexReal& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexReal operator*(const Real& s) const { return {re * s, im * s}; }
    ComplexReal operator/(const Real& s) const { return {re / s, im / s}; }
    ComplexReal& operator+=(const ComplexReal& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Real abs() const { return sqrt(re * re + im * im); }
    ComplexReal conj() const { return {re, -im}; }
};

// ---------------------------------------------------------------------------
// Binomial coefficients
// ---------------------------------------------------------------------------

/// C(n, k) exact for any integer n (negative upper index via
/// C(-n,k) = (-1)^k C(n+k-1,k)).
BigInt binomial_int(const BigInt& n, unsigned k);

/// Generalized C(z, k) = z(z-1)...(z-k+1)/k!.
Real binomial_real(const Real& z, unsigned k);
ComplexReal binomial_complex(const ComplexReal& z, unsigned k);

// ---------------------------------------------------------------------------
// Polylogarithm values at 1/2 and the two gamma sequences.  The source
// symbols collide: the real-valued sequence gamma_n = 2 Li_n(1/2) - 1 is
// gamma_poly here, the integer sequence sum_h h^n/2^h is gamma_int.
// ---------------------------------------------------------------------------

/// Li_n(1/2) = sum_{k>=1} 2^-k k^-n by direct series; the term ratio is
/// below 1/2 so the tail after K terms is certified by 2 * t_{K+1}.
Real polylog_half(unsigned n, const PrecisionContext& ctx);

/// gamma_n = sum_{k>=1} 2^-k (k+1)^-n, summed directly.  (The identity
/// gamma_n = 2 Li_n(1/2) - 1 cancels catastrophically for large n since
/// Li_n(1/2) -> 1/2; the direct series has positive terms only.)
Real gamma_poly(unsigned n, const PrecisionContext& ctx);

/// The 2 Li_n(1/2) - 1 route, for cross-checks at moderate n.
Real gamma_poly_via_polylog(unsigned n, const PrecisionContext& ctx);

/// Integer sequence 1, 2, 6, 26, 150, ...: gamma_0 = 1 and
/// gamma_n = 1 + sum_{j<n} C(n,j) gamma_j; equals sum_{h>=1} h^n/2^h.
BigInt gamma_int(unsigned n);
std::vector<BigInt> gamma_int_table(unsigned max_n);

/// Entire function gamma(z) = sum_{n>=1} 2^-n (1+n)^-z with certified
/// geometric tail; gamma(k) == gamma_poly(k) at nonnegative integers.
Real gamma_entire(const Real& z, const PrecisionContext& ctx);
ComplexReal gamma_entire(const ComplexReal& z, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Coefficients of (log(1-x))^n
// ---------------------------------------------------------------------------

/// Exact rational c_{n,k} with sum_k c_{n,k} x^k = (log(1-x))^n, built by the
/// convolution recursion c_{n+1,k} = -sum_j c_{n,k-j}/j.  rows[n][k], sized
/// (max_n+1) x (max_k+1).
std::vector<std::vector<BigRat>> log_power_coeffs_exact(unsigned max_n, unsigned max_k);

/// Same coefficients at working precision.  Every row has constant sign
/// (c_{n,k} = (-1)^n n!/k! |s(k,n)|), so the floating recursion involves no
/// cancellation.
std::vector<std::vector<Real>> log_power_coeffs_real(unsigned max_n, unsigned max_k,
                                                     const PrecisionContext& ctx);

/// Signed Stirling numbers of the first kind, s(k, m) for k,m <= max_k:
/// sum_m s(k,m) x^m = x(x-1)...(x-k+1).
std::vector<std::vector<BigInt>> stirling_first_table(unsigned max_k);

/// c_{n,k} through the Stirling route (-1)^k n!/k! s(k,n); used as the
/// independent check of the recursion.
BigRat log_power_coeff_stirling(unsigned n, unsigned k);

// ---------------------------------------------------------------------------
// Exponential integral value for S_int(1)
// ---------------------------------------------------------------------------

/// Ei(-log 2) via Ei(x) = euler_gamma + log|x| + sum_{k>=1} x^k/(k k!).
Real exp_integral_neg_log2(const PrecisionContext& ctx);

} // namespace minkmom
