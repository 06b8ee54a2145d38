#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkmom/special.hpp"

#include "test_util.hpp"

using namespace minkmom;

namespace {
const PrecisionContext ctx(40, 10);
Real tol(int k) { return pow10(-k); }
} // namespace

TEST_CASE("binomial coefficients") {
    CHECK(binomial_int(5, 2) == 10);
    CHECK(binomial_int(0, 0) == 1);
    CHECK(binomial_int(7, 9) == 0);
    // reflection for negative upper index
    for (int n = 1; n <= 8; ++n)
        for (unsigned k = 0; k <= 10; ++k) {
            BigInt expect = binomial_int(BigInt(n) + k - 1, k);
            if (k % 2 == 1)
                expect = -expect;
            CHECK(binomial_int(BigInt(-n), k) == expect);
        }
    PrecisionScope scope(ctx);
    for (unsigned k = 0; k <= 12; ++k)
        CHECK(abs(binomial_real(Real(9), k) - Real(binomial_int(9, k))) < tol(35));
}

TEST_CASE("polylog at one half") {
    PrecisionScope scope(ctx);
    CHECK(abs(polylog_half(1, ctx) - log2_value()) < tol(45));
    CHECK(abs(polylog_half(0, ctx) - 1) < tol(45));
    // classical closed form for the dilogarithm
    Real li2 = pi_value() * pi_value() / 12 - log2_value() * log2_value() / 2;
    CHECK(abs(polylog_half(2, ctx) - li2) < tol(45));
    // and an independent quadrature of -integral_0^(1/2) log(1-t)/t dt
    Real li2_quad = testutil::integrate([](const Real& t) { return -log1p(-t) / t; },
                                        Real(1) / 1000000, Real(1) / 2, tol(18));
    // account for the clipped corner near 0 where the integrand ~ 1
    li2_quad += Real(1) / 1000000;
    CHECK(abs(polylog_half(2, ctx) - li2_quad) < tol(5));
}

TEST_CASE("gamma_poly series") {
    PrecisionScope scope(ctx);
    CHECK(abs(gamma_poly(0, ctx) - 1) < tol(45));
    CHECK(abs(gamma_poly(1, ctx) - (2 * log2_value() - 1)) < tol(45));
    // gamma_n ~ 2^-(n+1) for large n
    Real g60 = gamma_poly(60, ctx);
    CHECK(g60 * ldexp(Real(1), 61) > 1);
    CHECK(g60 * ldexp(Real(1), 61) < Real(1) + tol(4));
    // the 2 Li_n(1/2) - 1 route agrees for n <= 50
    for (unsigned n = 0; n <= 50; n += 5)
        CHECK(abs(gamma_poly(n, ctx) - gamma_poly_via_polylog(n, ctx)) < tol(ctx.digits));
}

TEST_CASE("gamma_int integer sequence") {
    const long expect[9] = {1, 2, 6, 26, 150, 1082, 9366, 94586, 1091670};
    auto table = gamma_int_table(8);
    for (int i = 0; i <= 8; ++i)
        CHECK(table[i] == expect[i]);
    CHECK(gamma_int(5) == 1082);

    // recursion equals the direct sum h^n/2^h within its geometric tail
    PrecisionScope scope(ctx);
    for (unsigned n = 0; n <= 20; n += 4) {
        Real direct = 0;
        for (unsigned h = 1; h <= 400; ++h)
            direct += pow(Real(h), static_cast<int>(n)) * ldexp(Real(1), -static_cast<long>(h));
        CHECK(abs(direct - Real(gamma_int(n))) / Real(gamma_int(n)) < tol(30));
    }

    // (log 2)^(n+1)/n! gamma_n -> 1; within 0.05 at n = 60
    Real fact = 1;
    for (unsigned j = 2; j <= 60; ++j)
        fact *= j;
    Real ratio = pow(log2_value(), 61) / fact * Real(gamma_int(60));
    CHECK(abs(ratio - 1) < Real(1) / 20);
}

TEST_CASE("log-power coefficients: recursion vs Stirling route") {
    auto c = log_power_coeffs_exact(20, 20);
    CHECK(c[0][0] == 1);
    CHECK(c[0][5] == 0);
    for (unsigned k = 1; k <= 20; ++k)
        CHECK(c[1][k] == BigRat(-1, k));
    // hand oracle: coefficient of x^3 in (x + x^2/2 + x^3/3)^2
    CHECK(c[2][3] == BigRat(2, 2)); // 2 * (1 * 1/2) = 1
    {
        // polynomial-square oracle for the n = 2 row
        std::vector<BigRat> l(9, BigRat(0)), sq(9, BigRat(0));
        for (unsigned j = 1; j <= 8; ++j)
            l[j] = BigRat(-1, j);
        for (unsigned i = 1; i <= 8; ++i)
            for (unsigned j = 1; i + j <= 8; ++j)
                sq[i + j] += l[i] * l[j];
        for (unsigned k = 2; k <= 8; ++k)
            CHECK(c[2][k] == sq[k]);
    }
    for (unsigned n = 0; n <= 20; ++n)
        for (unsigned k = n; k <= 20; ++k)
            CHECK(c[n][k] == log_power_coeff_stirling(n, k));
    // floating rows match the exact ones
    PrecisionScope scope(ctx);
    auto cr = log_power_coeffs_real(6, 40, ctx);
    auto ce = log_power_coeffs_exact(6, 40);
    for (unsigned n = 0; n <= 6; ++n)
        for (unsigned k = n; k <= 40; ++k)
            CHECK(abs(cr[n][k] - Real(ce[n][k])) < tol(40));
}

TEST_CASE("entire gamma function") {
    PrecisionScope scope(ctx);
    CHECK(abs(gamma_entire(Real(0), ctx) - 1) < tol(45));
    CHECK(abs(gamma_entire(Real(1), ctx) - (2 * log2_value() - 1)) < tol(45));
    // geometric-series differentiation: sum (n+1) 2^-n over n>=1 equals 3
    CHECK(abs(gamma_entire(Real(-1), ctx) - 3) < tol(44));
    for (unsigned n = 0; n <= 20; n += 3)
        CHECK(abs(gamma_entire(Real(n), ctx) - gamma_poly(n, ctx)) < tol(44));
    // complex evaluation: conjugation symmetry and the real axis
    ComplexReal z(Real(3) / 2, Real(2));
    ComplexReal g = gamma_entire(z, ctx);
    ComplexReal gc = gamma_entire(z.conj(), ctx);
    CHECK(abs(g.re - gc.re) < tol(42));
    CHECK(abs(g.im + gc.im) < tol(42));
    ComplexReal real_axis = gamma_entire(ComplexReal(Real(5) / 2), ctx);
    CHECK(abs(real_axis.re - gamma_entire(Real(5) / 2, ctx)) < tol(42));
    CHECK(abs(real_axis.im) < tol(42));
}

TEST_CASE("exponential integral at -log 2") {
    PrecisionScope scope(ctx);
    const Real ei = exp_integral_neg_log2(ctx);
    CHECK(ei < 0);
    CHECK(abs(ei) < 1 / (2 * log2_value()));
    // quadrature bracket for S_int(1) = integral_1^inf 2^-t (1 - 1/t) dt
    // (the omitted tail beyond t = 130 is under 2^-130)
    Real s1 = 1 / (2 * log2_value()) + ei;
    Real quad = testutil::integrate(
        [](const Real& t) { return exp(-t * log2_value()) * (1 - 1 / t); }, Real(1), Real(130),
        tol(20));
    CHECK(abs(s1 - quad) < tol(16));
    CHECK(s1 > 0);
}

TEST_CASE("stored Euler constant matches an independent computation") {
    PrecisionScope scope(PrecisionContext(150, 10));
    Real stored = euler_gamma_value();
    Real reference;
    mpfr_const_euler(reference.backend().data(), MPFR_RNDN);
    CHECK(abs(stored - reference) < pow10(-150));
}
