#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkmom/asymptotics.hpp"
#include "minkmom/negative.hpp"
#include "minkmom/special.hpp"

#include "test_util.hpp"

using namespace minkmom;

namespace {
Real tol(int k) { return pow10(-k); }
} // namespace

TEST_CASE("matrix pair entries and exact inversion") {
    TriangularMatrixPair p = matrix_pair(30); // constructor verifies A B = B A = I
    CHECK(p.a[3] == std::vector<BigInt>({26, 18, 6, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                         0,  0,  0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(p.a[4][0] == 150);
    CHECK(p.a[4][1] == 104);
    CHECK(p.a[4][2] == 36);
    CHECK(p.a[4][3] == 8);
    CHECK(p.a[4][4] == 1);
    CHECK(p.b[1][0] == -2);
    CHECK(p.b[1][1] == 1);
    CHECK(p.b[2][0] == 2);
    CHECK(p.b[2][1] == -4);
    // alpha_{i,j} = C(i,j) gamma_int(i-j) across the whole matrix
    auto gam = gamma_int_table(29);
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            CHECK(p.a[i][j] == binomial_int(BigInt(i), static_cast<unsigned>(j)) * gam[i - j]);
}

TEST_CASE("negative moments from the finite sum") {
    const MomentVector& mv = testutil::moments(128, 30, 100);
    PrecisionScope scope(mv.ctx());
    CHECK(abs(m_negative(0, mv) - 1) < tol(28));
    // 2 m_0 + m_1 = 5/2
    CHECK(abs(m_negative(1, mv) - Real(5) / 2) < tol(20));
    // 6 m_0 + 4 m_1 + m_2 = 8 + m_2
    CHECK(abs(m_negative(2, mv) - (8 + mv.values[2])) < tol(20));
}

TEST_CASE("round trip through the inverse matrix") {
    const MomentVector& mv = testutil::moments(128, 30, 100);
    PrecisionScope scope(mv.ctx());
    auto negs = m_negative_table(10, mv);
    ReconstructedMoment r1 = m_positive_from_negative(1, negs);
    CHECK(abs(r1.value - Real(1) / 2) < tol(18));
    ReconstructedMoment r0 = m_positive_from_negative(0, negs);
    CHECK(r0.value == negs[0]);
    ReconstructedMoment r3 = m_positive_from_negative(3, negs);
    CHECK(abs(r3.value - mv.values[3]) < tol(15)); // amplified tolerance
    CHECK(!r3.cancellation_warning);
    CHECK(r3.cancellation_digits > 0);
    auto negs26 = m_negative_table(26, mv);
    CHECK(m_positive_from_negative(26, negs26).cancellation_warning);
}

TEST_CASE("pairing recurrence for mixed-sign indices") {
    // m_-n - m_n - sum_{k<n} C(n,k)(m_-k + m_k) = 0
    const MomentVector& mv = testutil::moments(128, 30, 100);
    PrecisionScope scope(mv.ctx());
    auto negs = m_negative_table(10, mv);
    for (unsigned n = 1; n <= 10; ++n) {
        Real acc = negs[n] - mv.values[n];
        BigInt binom = 1;
        for (unsigned k = 0; k < n; ++k) {
            acc -= Real(binom) * (negs[k] + mv.values[k]);
            binom *= n - k;
            binom /= k + 1;
        }
        CHECK(abs(acc) < tol(15));
    }
}

TEST_CASE("identity suite rows") {
    const MomentVector& mv = testutil::moments(256, 30, 120);
    PrecisionScope scope(mv.ctx());
    const Real lambda = lambda_const(mv);
    IdentityReport rep = identity_suite(mv, lambda);
    REQUIRE(rep.rows.size() == 4);
    // residual and tail are reported separately; the n = 1 row is tight
    CHECK(abs(rep.rows[0].residual) < 100 * Real(256) * mv.tail_estimate() + tol(12));
    for (const auto& row : rep.rows)
        CHECK(abs(row.residual) < row.tail); // residual within the modeled tail scale
    CHECK(abs(rep.sum_residual) < tol(6));
    CHECK(abs(rep.weighted_residual) < tol(4));
}

TEST_CASE("factorial asymptotics of the negative moments") {
    const MomentVector& mv = testutil::moments(128, 30, 100);
    PrecisionScope scope(mv.ctx());
    const Real lambda = lambda_const(mv);
    const PrecisionContext ctx(30, 10);
    Real r10 = m_negative(10, mv) / asymptotic_negative(10, lambda, ctx);
    Real r20 = m_negative(20, mv) / asymptotic_negative(20, lambda, ctx);
    CHECK(r10 > Real(8) / 10);
    CHECK(r10 < Real(12) / 10);
    CHECK(abs(r20 - 1) < abs(r10 - 1)); // monotone approach
    // n = 1: exact 5/2 against lambda/(log 2)^2, a documented finite-n gap
    Real r1 = m_negative(1, mv) / asymptotic_negative(1, lambda, ctx);
    CHECK(abs(r1 - Real("0.841")) < Real("0.01"));
}
