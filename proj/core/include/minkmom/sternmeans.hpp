#pragma once

#include "minkmom/moments.hpp"
#include "minkmom/precision.hpp"

#include <vector>

namespace minkmom {

/// S(n) = 2^-n sum_{k=2^n}^{2^(n+1)} log s(k).  The block is streamed through
/// the mediant walk into a multiplicity histogram (block values are bounded
/// by the Fibonacci number F_(n+2)), so the log-sum is a short exact-weight
/// reduction independent of any chunking.
Real block_log_mean(int level, const PrecisionContext& ctx);

/// S(0..max_level) in one call.
std::vector<Real> block_log_means(int max_level, const PrecisionContext& ctx);

/// alpha = log 2 - sum_{j>=1} m_j / (j 2^j); the truncation tail is below
/// 2^-order.
Real alpha_const(const MomentVector& m);

/// Extrapolated beta with S(n) ~ n alpha + beta: the increments
/// S(n+1) - S(n) - alpha decay geometrically, so the remainder past the last
/// computed level is estimated from the trailing increment ratio.  The error
/// bar is heuristic (paper-scale accuracy is ~1e-3).
struct BetaEstimate {
    Real value;
    Real error_bar;
    Real alpha;
    std::vector<Real> s_table; // S(0..max_level)
};

BetaEstimate beta_estimate(int max_level, const MomentVector& m);

} // namespace minkmom
