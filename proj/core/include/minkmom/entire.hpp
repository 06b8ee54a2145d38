#pragma once

#include "minkmom/moments.hpp"
#include "minkmom/special.hpp"

#include <vector>

namespace minkmom {

/// Evaluates the entire interpolation z -> m_z of the moment sequence,
///   m_z = sum_k C(z+k-1, k) gamma(k+z) m_k
/// with gamma the entire 2^-n (1+n)^-z series.  The gamma route converges
/// geometrically for every z; the binomial-series route
///   m_z = sum_j C(-z+j-1, j) m_j = sum_j C(z,j)(-1)^j m_j
/// needs summands out to roughly z^2/log 2 and serves as a cross-check for
/// small |z|.
class EntireMomentEvaluator {
  public:
    explicit EntireMomentEvaluator(MomentVector m) : m_(std::move(m)) {}

    struct Value {
        Real value;
        Real tail_bound;
        bool certified = true;
    };

    Value evaluate(const Real& z) const;
    ComplexReal evaluate(const ComplexReal& z) const;

    /// Binomial-series route via C(-z+j-1, j) coefficients (all positive for
    /// z < 0); truncates at the available order with a tail estimate.
    Value via_binomial_series(const Real& z) const;
    /// The (-1)^j C(z,j) grouping of the same series.
    Value via_signed_binomial(const Real& z) const;

    const MomentVector& moments() const { return m_; }

  private:
    MomentVector m_;
};

/// Taylor coefficients of m_x at x = 0: d_n = (1/n!) sum_k c_{n,k} m_k where
/// sum_k c_{n,k} x^k = (log(1-x))^n.  Every row of c has constant sign, so
/// the sums have no cancellation; the k-tail estimate per coefficient is
/// reported and flagged when it is not below the working tolerance.
struct TaylorAtZero {
    std::vector<Real> coeffs;      // d_0..d_J
    std::vector<Real> tail_bounds; // per-coefficient truncation estimate
    bool tails_ok = true;
};

TaylorAtZero taylor_at_zero(const MomentVector& m, unsigned j_order);

Real taylor_eval(const TaylorAtZero& t, const Real& x);

/// Residuals of the two conjectured log 2 series; reported, never asserted:
///   r_a = log2 - sum m_n (1 + 2^(1-n)) / (2n)
///   r_b = log2 - sum m_n (2^-n - (-1)^n) / n
/// Tail bounds estimate the part of each series beyond the available order
/// using the lambda * S_int model.
struct ConjectureResiduals {
    Real r_a, r_b;
    Real tail_bound_a, tail_bound_b;
    bool a_below_tail, b_below_tail;
};

ConjectureResiduals conjecture_residuals(const MomentVector& m, const Real& lambda);

} // namespace minkmom
