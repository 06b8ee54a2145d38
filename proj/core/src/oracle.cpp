#include "minkmom/oracle.hpp"

#include "minkmom/stern.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace minkmom {

namespace {

using u128 = unsigned __int128;

// Fixed-point scale for the directed-rounding mode.  62 fractional bits keep
// every product of two scaled values inside 128 bits.
constexpr int kFracBits = 62;
constexpr u128 kOne = u128{1} << kFracBits;

u128 mul_floor(u128 a, u128 b) { return (a * b) >> kFracBits; }

u128 mul_ceil(u128 a, u128 b) {
    const u128 p = a * b;
    return (p >> kFracBits) + ((p & (kOne - 1)) != 0 ? 1 : 0);
}

BigRat dyadic_from_u128(u128 acc, int shift_bits) {
    BigInt n = static_cast<std::uint64_t>(acc >> 64);
    n <<= 64;
    n += static_cast<std::uint64_t>(acc);
    return BigRat(n, BigInt(1) << shift_bits);
}

BigRat pairwise_sum(std::vector<BigRat>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1)
        return terms[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

} // namespace

bool MomentBracket::contains(const Real& x, const Real& slack) const {
    const BigRat xr = exact_rational(x);
    const BigRat s = exact_rational(slack);
    return lower - s <= xr && xr <= upper + s;
}

BigRat exact_rational(const Real& x) {
    BigRat q;
    mpfr_get_q(q.backend().data(), x.backend().data());
    return q;
}

MomentBracket moment_oracle_exact(unsigned n, int level) {
    if (level < 1)
        throw std::invalid_argument("moment_oracle: level must be >= 1");
    if (level > 16)
        throw ResourceLimitError("moment_oracle_exact: level too large for exact summation");
    std::vector<BigRat> terms;
    terms.reserve((std::size_t{1} << level) - 1);
    for_each_box_pair(level, [&](std::uint64_t r, std::uint64_t p, std::uint64_t q) {
        if (r == 0 || p == q)
            return; // endpoint terms handled below
        BigInt pn = pow(BigInt(p), n);
        BigInt qn = pow(BigInt(q), n);
        terms.emplace_back(pn, qn);
    });
    BigRat inner = terms.empty() ? BigRat(0) : pairwise_sum(terms, 0, terms.size());
    const BigRat scale(1, BigInt(1) << level);
    MomentBracket b;
    b.level = level;
    b.exact = true;
    b.lower = inner * scale;             // r = 0 contributes 0
    b.upper = (inner + 1) * scale;       // r = 2^l contributes 1
    return b;
}

std::vector<MomentBracket> moment_oracle_batch(unsigned max_n, int level) {
    if (level < 1)
        throw std::invalid_argument("moment_oracle: level must be >= 1");
    if (level > 40)
        throw ResourceLimitError("moment_oracle_batch: level exceeds the time budget");

    std::vector<u128> acc_lo(max_n + 1, 0), acc_hi(max_n + 1, 0);
    for_each_box_pair(level, [&](std::uint64_t r, std::uint64_t p, std::uint64_t q) {
        if (r == 0)
            return; // Box(0)^n terms are zero (and excluded from the upper sum)
        if (p == q) {
            // r = 2^l: Box(1)^n = 1 enters the upper sum only
            for (unsigned k = 0; k <= max_n; ++k)
                acc_hi[k] += kOne;
            return;
        }
        const u128 scaled = (u128{p} << kFracBits);
        const std::uint64_t u_lo = static_cast<std::uint64_t>(scaled / q);
        const std::uint64_t u_hi = u_lo + (scaled % q != 0 ? 1 : 0);
        u128 lo = kOne, hi = kOne;
        acc_lo[0] += kOne;
        acc_hi[0] += kOne;
        for (unsigned k = 1; k <= max_n; ++k) {
            lo = mul_floor(lo, u_lo);
            hi = mul_ceil(hi, u_hi);
            acc_lo[k] += lo;
            acc_hi[k] += hi;
        }
    });

    std::vector<MomentBracket> out(max_n + 1);
    for (unsigned k = 0; k <= max_n; ++k) {
        MomentBracket b;
        b.level = level;
        b.exact = false;
        b.lower = dyadic_from_u128(acc_lo[k], kFracBits + level);
        b.upper = dyadic_from_u128(acc_hi[k], kFracBits + level);
        out[k] = std::move(b);
    }
    return out;
}

MomentBracket moment_oracle(unsigned n, int level) {
    if (level <= 12)
        return moment_oracle_exact(n, level);
    return std::move(moment_oracle_batch(n, level)[n]);
}

} // namespace minkmom
