#pragma once

#include "minkmom/moments.hpp"
#include "minkmom/precision.hpp"

#include <vector>

namespace minkmom {

/// The mutually inverse lower triangular unipotent integer matrices linking
/// the nonnegative and negative moment sequences:
///   A[i][j] = C(i,j) gamma_int(i-j)      (m_{-i} = sum_j A[i][j] m_j)
///   B[i][j] = 1 if i==j else 2(-1)^(i+j) C(i,j)
/// A*B == B*A == I is verified exactly on construction.
struct TriangularMatrixPair {
    std::size_t size = 0;
    std::vector<std::vector<BigInt>> a;
    std::vector<std::vector<BigInt>> b;
};

TriangularMatrixPair matrix_pair(std::size_t d);

/// m_{-n} = sum_{k=0}^n C(n,k) gamma_int(n-k) m~_k (finite, positive
/// coefficients).
Real m_negative(unsigned n, const MomentVector& m);
std::vector<Real> m_negative_table(unsigned max_n, const MomentVector& m);

/// Reconstruction m_n = m_{-n} + 2 sum_{k<n} (-1)^(n+k) C(n,k) m_{-k}.
/// The terms are factorially large and alternating, so cancellation grows
/// with n; the result carries the digits lost.
struct ReconstructedMoment {
    Real value;
    double cancellation_digits = 0;
    bool cancellation_warning = false; // set for n > 25
};

ReconstructedMoment m_positive_from_negative(unsigned n, const std::vector<Real>& negatives);

/// The identity family  sum_k C(n,k) gamma_int(n-k) m_k
///                        = sum_j C(n+j-1, j) m_j  (n = 1..4),
/// with the right side truncated at the available order and its tail
/// estimated from the lambda * S_int model.  Also reports the two derived
/// checks sum m_j = 5/2 and sum j m_j = m_2 + 11/2.
struct IdentityRow {
    unsigned n;
    Real lhs, rhs, tail;
    Real residual; // lhs - (rhs + tail)
};

struct IdentityReport {
    std::vector<IdentityRow> rows;
    Real sum_residual;        // sum m_j + tail - 5/2
    Real weighted_residual;   // sum j m_j + tail - m_2 - 11/2
    Real sum_tail, weighted_tail;
};

IdentityReport identity_suite(const MomentVector& m, const Real& lambda);

/// lambda n! / (log 2)^(n+1), the factorial asymptotic of m_{-n}.
Real asymptotic_negative(unsigned n, const Real& lambda, const PrecisionContext& ctx);

} // namespace minkmom
