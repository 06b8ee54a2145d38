#pragma once

#include "minkmom/precision.hpp"

#include <vector>

namespace minkmom {

/// Rigorous enclosure of a moment from monotone Riemann sums at level l:
///   lower = 2^-l * sum_{r=0}^{2^l-1} Box(r/2^l)^n
///   upper = 2^-l * sum_{r=1}^{2^l}   Box(r/2^l)^n
/// Box^n is increasing, so m_n lies in [lower, upper].
///
/// In exact mode the sums are exact rationals and upper - lower == 2^-l.
/// Large levels use directed-rounding fixed-point accumulation (floor ladder
/// for the lower sum, ceiling ladder for the upper): bounds stay exact dyadic
/// rationals and remain rigorous, at the cost of a slightly wider bracket,
///   upper - lower <= 2^-l + 2 n 2^-62.
struct MomentBracket {
    BigRat lower;
    BigRat upper;
    int level = 0;
    bool exact = false; // width equals 2^-level exactly

    BigRat width() const { return upper - lower; }
    bool contains(const BigRat& x) const { return lower <= x && x <= upper; }
    /// Containment of a floating value with the enclosure widened by slack on
    /// both sides (slack >= 0 absorbs the caller's own error estimate).
    bool contains(const Real& x, const Real& slack) const;
};

/// The exact dyadic rational equal to a (binary floating point) Real.
BigRat exact_rational(const Real& x);

/// Enclosure of m_n at level l.  Exact rational summation for l <= 12,
/// directed-rounding accumulation beyond.
MomentBracket moment_oracle(unsigned n, int level);

/// Exact-mode oracle (pairwise rational summation); intended for small l.
MomentBracket moment_oracle_exact(unsigned n, int level);

/// One streaming pass producing enclosures for every exponent 0..max_n
/// (directed-rounding mode).  Cost is one mediant-tree walk regardless of
/// how many exponents are requested.
std::vector<MomentBracket> moment_oracle_batch(unsigned max_n, int level);

} // namespace minkmom
