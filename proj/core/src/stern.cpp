#include "minkmom/stern.hpp"

#include <stdexcept>

namespace minkmom {

BigInt stern(const BigInt& n) {
    if (n < 0)
        throw std::invalid_argument("stern: index must be nonnegative");
    if (n == 0)
        return 0;
    // Walk the bits of n from the most significant down, carrying the pair
    // (s(m), s(m+1)) for the prefix m read so far.
    const std::size_t bits = msb(n) + 1;
    BigInt a = 0, b = 1; // m = 0
    for (std::size_t i = bits; i-- > 0;) {
        if (bit_test(n, static_cast<unsigned>(i)))
            a += b; // m -> 2m+1: (s(n)+s(n+1), s(n+1))
        else
            b += a; // m -> 2m:   (s(n), s(n)+s(n+1))
    }
    return a;
}

std::uint64_t stern(std::uint64_t n) {
    if (n == 0)
        return 0;
    std::uint64_t a = 0, b = 1;
    int bits = 64 - __builtin_clzll(n);
    for (int i = bits; i-- > 0;) {
        if ((n >> i) & 1u)
            a += b;
        else
            b += a;
    }
    return a;
}

std::vector<std::uint64_t> stern_block(int level, std::size_t max_entries) {
    if (level < 0)
        throw std::invalid_argument("stern_block: level must be >= 0");
    if (level >= 63)
        throw ResourceLimitError("stern_block: level too large for indexed storage");
    const std::size_t n = (std::size_t{1} << level) + 1;
    if (n > max_entries)
        throw ResourceLimitError("stern_block: 2^level exceeds the memory budget, stream instead");
    std::vector<std::uint64_t> block(n);
    block[0] = 1;
    block[1] = 1; // level 0: s(1), s(2)
    for (int k = 0; k < level; ++k) {
        const std::size_t m = std::size_t{1} << k; // current block has m+1 entries
        // place even positions from the back, then fill odd ones as sums
        for (std::size_t i = m + 1; i-- > 0;)
            block[2 * i] = block[i];
        for (std::size_t i = 0; i < m; ++i)
            block[2 * i + 1] = block[2 * i] + block[2 * i + 2];
    }
    return block;
}

std::vector<std::uint64_t> stern_prefix(std::size_t count) {
    std::vector<std::uint64_t> s(count);
    if (count > 0)
        s[0] = 0;
    if (count > 1)
        s[1] = 1;
    for (std::size_t k = 2; k < count; ++k)
        s[k] = (k % 2 == 0) ? s[k / 2] : s[(k - 1) / 2] + s[(k + 1) / 2];
    return s;
}

DyadicRational::DyadicRational(BigInt m, unsigned long lvl) : num(std::move(m)), level(lvl) {
    if (num < 0 || num > (BigInt(1) << level))
        throw std::invalid_argument("DyadicRational: need 0 <= m <= 2^level");
}

BigRat DyadicRational::value() const {
    return BigRat(num, BigInt(1) << level);
}

DyadicRational DyadicRational::canonical() const {
    DyadicRational r = *this;
    while (r.level > 0 && r.num % 2 == 0 && r.num != 0) {
        r.num >>= 1;
        --r.level;
    }
    if (r.num == 0)
        r.level = 0;
    return r;
}

BigRat box_dyadic(const DyadicRational& x) {
    if (x.num == 0)
        return BigRat(0);
    return BigRat(stern(x.num), stern((BigInt(1) << x.level) + x.num));
}

ContinuedFraction ContinuedFraction::of(const BigRat& x) {
    if (x < 0 || x > 1)
        throw std::invalid_argument("ContinuedFraction: x must lie in [0,1]");
    ContinuedFraction cf;
    BigInt n = numerator(x), d = denominator(x);
    while (n != 0) {
        cf.quotients.push_back(d / n);
        BigInt r = d % n;
        d = n;
        n = r;
    }
    return cf;
}

BigRat ContinuedFraction::convergent() const {
    // fold from the innermost quotient: value = 1/(a_1 + 1/(a_2 + ...))
    BigRat v(0);
    for (auto it = quotients.rbegin(); it != quotients.rend(); ++it)
        v = BigRat(1, 1) / (BigRat(*it) + v);
    return v;
}

DyadicRational question_mark(const BigRat& x) {
    if (x < 0 || x > 1)
        throw std::invalid_argument("question_mark: x must lie in [0,1]");
    if (x == 0)
        return DyadicRational(BigInt(0), 0);
    ContinuedFraction cf = ContinuedFraction::of(x);
    // partial sums A_k = a_1 + ... + a_k; result has level A_K - 1 and
    // numerator sum_k (-1)^(k+1) 2^(A_K - A_k)
    BigInt total = 0;
    for (const BigInt& a : cf.quotients)
        total += a;
    if (total > 1u << 24)
        throw ResourceLimitError("question_mark: dyadic level exceeds budget");
    const unsigned long level_total = total.convert_to<unsigned long>();
    BigInt num = 0;
    BigInt acc = 0;
    int k = 1;
    for (const BigInt& a : cf.quotients) {
        acc += a;
        const unsigned long shift = (total - acc).convert_to<unsigned long>();
        if (k % 2 == 1)
            num += BigInt(1) << shift;
        else
            num -= BigInt(1) << shift;
        ++k;
    }
    return DyadicRational(num, level_total - 1);
}

BigRat box_refine(unsigned h, const BigInt& r, unsigned l) {
    if (h < 1)
        throw std::invalid_argument("box_refine: h must be >= 1");
    if (r < 0 || r > (BigInt(1) << l))
        throw std::invalid_argument("box_refine: need 0 <= r <= 2^l");
    const BigInt sl = stern((BigInt(1) << l) + r);
    return BigRat(sl, BigInt(h + 1) * sl - stern(r));
}

} // namespace minkmom
