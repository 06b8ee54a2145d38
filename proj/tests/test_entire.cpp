#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkmom/asymptotics.hpp"
#include "minkmom/entire.hpp"
#include "minkmom/negative.hpp"

#include "test_util.hpp"

using namespace minkmom;

namespace {
Real tol(int k) { return pow10(-k); }
} // namespace

TEST_CASE("entire extension at integers") {
    const MomentVector& mv = testutil::moments(200, 30, 110);
    EntireMomentEvaluator ev(mv);
    PrecisionScope scope(mv.ctx());
    CHECK(abs(ev.evaluate(Real(0)).value - 1) < tol(28));
    CHECK(abs(ev.evaluate(Real(3)).value - mv.values[3]) < tol(28));
    CHECK(abs(ev.evaluate(Real(10)).value - mv.values[10]) < tol(26));
    // m_-1 = sum of all moments = 5/2 (finite two-term evaluation here)
    CHECK(abs(ev.evaluate(Real(-1)).value - Real(5) / 2) < tol(25));
}

TEST_CASE("negative integers: three independent routes agree") {
    const MomentVector& mv = testutil::moments(256, 30, 120);
    EntireMomentEvaluator ev(mv);
    PrecisionScope scope(mv.ctx());
    for (unsigned n = 1; n <= 6; ++n) {
        const Real z = -Real(n);
        Real gamma_route = ev.evaluate(z).value;
        auto series = ev.via_binomial_series(z);
        Real finite = m_negative(n, mv);
        CHECK(series.certified);
        CHECK(abs(gamma_route - finite) < tol(20));
        CHECK(abs(series.value - finite) < tol(12) + 10 * series.tail_bound);
    }
}

TEST_CASE("the two binomial groupings of the reflection series agree") {
    const MomentVector& mv = testutil::moments(200, 30, 110);
    EntireMomentEvaluator ev(mv);
    PrecisionScope scope(mv.ctx());
    for (double zd : {0.5, 1.5, 2.5}) {
        Real z(zd);
        auto a = ev.via_binomial_series(z);
        auto b = ev.via_signed_binomial(z);
        CHECK(abs(a.value - b.value) < tol(25));
        // and they track the gamma route
        CHECK(abs(a.value - ev.evaluate(z).value) < tol(10));
    }
}

TEST_CASE("complex evaluation") {
    const MomentVector& mv = testutil::moments(128, 25, 80);
    EntireMomentEvaluator ev(mv);
    PrecisionScope scope(mv.ctx());
    ComplexReal z(Real(1) / 2, Real(3));
    ComplexReal v = ev.evaluate(z);
    ComplexReal vc = ev.evaluate(z.conj());
    CHECK(abs(v.re - vc.re) < tol(20));
    CHECK(abs(v.im + vc.im) < tol(20));
    ComplexReal on_axis = ev.evaluate(ComplexReal(Real(2)));
    CHECK(abs(on_axis.re - mv.values[2]) < tol(20));
    CHECK(abs(on_axis.im) < tol(20));
}

TEST_CASE("taylor coefficients at zero") {
    const MomentVector& mv = testutil::moments(256, 30, 120);
    PrecisionScope scope(mv.ctx());
    TaylorAtZero t = taylor_at_zero(mv, 8);
    CHECK(abs(t.coeffs[0] - 1) < tol(25));
    // d_1 = -sum m_n / n
    Real d1 = 0;
    for (int n = 1; n <= mv.order(); ++n)
        d1 -= mv.values[n] / static_cast<unsigned long>(n);
    CHECK(abs(t.coeffs[1] - d1) < tol(28));
    CHECK(t.coeffs[1] < 0);

    // centered finite difference of the entire extension at h = 1e-5
    EntireMomentEvaluator ev(mv);
    const Real h = tol(5);
    Real fd = (ev.evaluate(h).value - ev.evaluate(-h).value) / (2 * h);
    CHECK(abs(fd - t.coeffs[1]) < tol(8));

    // the polynomial tracks the entire extension near 0
    for (double xd : {0.1, -0.1}) {
        Real x(xd);
        Real poly = taylor_eval(t, x);
        Real direct = ev.evaluate(x).value;
        Real remainder = abs(t.coeffs[8]) * pow(abs(x), 9) * 10;
        CHECK(abs(poly - direct) < remainder + tol(9));
    }
    CHECK_THROWS_AS(taylor_at_zero(mv, 13), std::invalid_argument);
}

TEST_CASE("conjectured series residuals are reported with tail bounds") {
    const MomentVector& big = testutil::moments(256, 30, 120);
    PrecisionScope scope(big.ctx());
    const Real lambda = lambda_const(big);
    ConjectureResiduals r = conjecture_residuals(big, lambda);
    CHECK(r.a_below_tail);
    CHECK(r.b_below_tail);

    // heavily truncated vector: the residual is the size of the missing tail
    const MomentVector& small = testutil::moments(10, 15);
    ConjectureResiduals rs = conjecture_residuals(small, lambda);
    CHECK(abs(rs.r_a) > tol(4));

    // the two residuals differ by the term-by-term difference series
    Real diff = 0;
    Real p = 1;
    for (int n = 1; n <= big.order(); ++n) {
        p /= 2;
        Real wa = (1 + 2 * p) / (2 * static_cast<unsigned long>(n));
        Real wb = (p - ((n & 1) ? Real(-1) : Real(1))) / static_cast<unsigned long>(n);
        diff += big.values[n] * (wb - wa);
    }
    CHECK(abs((r.r_a - r.r_b) - diff) < tol(28));
}
