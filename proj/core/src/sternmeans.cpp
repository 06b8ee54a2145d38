#include "minkmom/sternmeans.hpp"

#include "minkmom/stern.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace minkmom {

namespace {

std::vector<std::uint32_t> block_histogram(int level) {
    if (level < 0)
        throw std::invalid_argument("block_log_mean: level must be >= 0");
    if (level > 30)
        throw ResourceLimitError("block_log_mean: level exceeds the streaming budget");
    // F_(level+2) bounds the block values
    std::uint64_t fa = 1, fb = 1;
    for (int i = 0; i < level; ++i) {
        std::uint64_t t = fa + fb;
        fa = fb;
        fb = t;
    }
    std::vector<std::uint32_t> hist(fb + 1, 0);
    for_each_box_pair(level, [&](std::uint64_t, std::uint64_t, std::uint64_t q) {
        hist[q] += 1; // q runs over s(2^l + r), r = 0..2^l
    });
    return hist;
}

Real log_mean_from_histogram(const std::vector<std::uint32_t>& hist, int level) {
    Real acc = 0;
    for (std::size_t v = 2; v < hist.size(); ++v)
        if (hist[v] != 0)
            acc += Real(hist[v]) * log(Real(static_cast<unsigned long>(v)));
    return ldexp(acc, -level);
}

} // namespace

Real block_log_mean(int level, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    return log_mean_from_histogram(block_histogram(level), level);
}

std::vector<Real> block_log_means(int max_level, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    std::vector<Real> s;
    s.reserve(static_cast<std::size_t>(max_level) + 1);
    for (int l = 0; l <= max_level; ++l)
        s.push_back(log_mean_from_histogram(block_histogram(l), l));
    return s;
}

Real alpha_const(const MomentVector& m) {
    PrecisionScope scope(m.ctx());
    Real acc = 0;
    Real p = 1; // 2^-j
    for (std::size_t j = 1; j < m.values.size(); ++j) {
        p /= 2;
        acc += m.values[j] * p / static_cast<unsigned long>(j);
    }
    return log2_value() - acc;
}

BetaEstimate beta_estimate(int max_level, const MomentVector& m) {
    if (max_level < 6)
        throw std::invalid_argument("beta_estimate: need at least level 6");
    const PrecisionContext ctx(m.digits, 10);
    PrecisionScope scope(ctx);
    BetaEstimate be;
    be.alpha = alpha_const(m);
    be.s_table = block_log_means(max_level, ctx);

    // increments d_n = S(n+1) - S(n) - alpha decay roughly like 2^-n; the
    // remainder past max_level is the geometric continuation of the last one
    const std::size_t top = be.s_table.size() - 1;
    Real d1 = be.s_table[top] - be.s_table[top - 1] - be.alpha;
    Real d0 = be.s_table[top - 1] - be.s_table[top - 2] - be.alpha;
    Real correction = 0;
    Real ratio = 0;
    if (!d0.is_zero()) {
        ratio = d1 / d0;
        if (ratio > 0 && ratio < Real(9) / 10)
            correction = d1 * ratio / (1 - ratio);
    }
    be.value = be.s_table[top] - Real(static_cast<unsigned long>(top)) * be.alpha + correction;
    be.error_bar = abs(correction) + 2 * abs(d1 * ratio - correction * (1 - ratio));
    if (be.error_bar < abs(d1) / 4)
        be.error_bar = abs(d1) / 4;
    return be;
}

} // namespace minkmom
