#pragma once

#include "minkmom/precision.hpp"

#include <cstdint>
#include <vector>

namespace minkmom {

// ---------------------------------------------------------------------------
// Stern sequence  s(0)=0, s(1)=1, s(2n)=s(n), s(2n+1)=s(n)+s(n+1).
// ---------------------------------------------------------------------------

/// Point query by binary descent over the pair (s(m), s(m+1)); O(log n)
/// additions, exact for unbounded n.
BigInt stern(const BigInt& n);
std::uint64_t stern(std::uint64_t n);

/// The block s(2^l), s(2^l + 1), ..., s(2^(l+1)) as one left-to-right doubling
/// pass (2^l + 1 values, first and last equal 1).  Throws ResourceLimitError
/// when 2^l exceeds max_entries; use for_each_box_pair to stream instead.
std::vector<std::uint64_t> stern_block(int level, std::size_t max_entries = (std::size_t{1} << 24) + 1);

/// s(0), s(1), ..., s(count-1) by the defining recurrence.
std::vector<std::uint64_t> stern_prefix(std::size_t count);

/// Streams the reduced fractions Box(r/2^l) = s(r) / s(2^l + r) for
/// r = 0..2^l in increasing order via an in-order walk of the mediant tree
/// (numerator(r)=s(r), denominator(r)=s(2^l+r)).  O(l) memory, no tables.
/// The callback receives (r, numerator, denominator).
template <typename F>
void for_each_box_pair(int level, F&& f) {
    struct Frame {
        std::uint64_t a, b, c, d; // interval endpoints a/b < c/d
        int depth;
        bool expanded;
    };
    f(std::uint64_t{0}, std::uint64_t{0}, std::uint64_t{1});
    std::vector<Frame> stack;
    stack.reserve(static_cast<std::size_t>(level) + 2);
    stack.push_back({0, 1, 1, 1, level, false});
    std::uint64_t r = 1;
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        if (fr.depth == 0) {
            f(r++, fr.c, fr.d);
            continue;
        }
        const std::uint64_t mn = fr.a + fr.c, md = fr.b + fr.d;
        // right pushed first so the left half is visited first
        stack.push_back({mn, md, fr.c, fr.d, fr.depth - 1, false});
        stack.push_back({fr.a, fr.b, mn, md, fr.depth - 1, false});
    }
}

// ---------------------------------------------------------------------------
// Dyadic rationals m / 2^level.  Deliberately kept unreduced: the level is
// significant for the Stern indexing s(m), s(2^level + m).
// ---------------------------------------------------------------------------

struct DyadicRational {
    BigInt num;
    unsigned long level = 0;

    DyadicRational() : num(0) {}
    DyadicRational(BigInt m, unsigned long lvl);

    BigRat value() const;
    /// Strips common powers of two; use for equality of dyadic values.
    DyadicRational canonical() const;
    bool operator==(const DyadicRational& o) const { return value() == o.value(); }
};

/// Box(m/2^n) = s(m) / s(2^n + m), reduced.
BigRat box_dyadic(const DyadicRational& x);

// ---------------------------------------------------------------------------
// Continued fractions and the question-mark function.
// ---------------------------------------------------------------------------

/// Partial quotients a_1..a_k of x in [0,1] in the canonical form with
/// a_k >= 2 (x=1 is represented as [1]).  Empty for x=0.
struct ContinuedFraction {
    std::vector<BigInt> quotients;

    static ContinuedFraction of(const BigRat& x);
    /// Reconstructs the rational p_k/q_k; round-trips exactly.
    BigRat convergent() const;
};

/// ?(p/q) as an exact dyadic: ?(x) = sum_k (-1)^(k+1) 2^(1 - a_1 - ... - a_k).
/// Inverse of box_dyadic on rationals: box_dyadic(question_mark(x)) == x.
DyadicRational question_mark(const BigRat& x);

/// Box(1/2^h + r/2^(h+l)) = s(2^l+r) / ((h+1) s(2^l+r) - s(r)) for
/// 0 <= r <= 2^l.  Agrees with box_dyadic on the common dyadic grid.
BigRat box_refine(unsigned h, const BigInt& r, unsigned l);

} // namespace minkmom
