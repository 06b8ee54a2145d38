#pragma once

#include "minkmom/moments.hpp"
#include "minkmom/precision.hpp"

#include <functional>
#include <map>

namespace minkmom::testutil {

/// Shared engine runs, cached per (order, digits, iterations) within a test
/// binary.
inline const MomentVector& moments(int order, int digits, int iterations = 0, int threads = 2) {
    static std::map<std::tuple<int, int, int>, MomentVector> cache;
    auto key = std::make_tuple(order, digits, iterations);
    auto it = cache.find(key);
    if (it == cache.end()) {
        EngineConfig cfg;
        cfg.order = order;
        cfg.digits = digits;
        cfg.max_iterations = iterations;
        cfg.threads = threads;
        it = cache.emplace(key, fixed_point_moments(cfg)).first;
    }
    return it->second;
}

/// Adaptive Simpson quadrature, an oracle independent of every series in the
/// library.  f must be smooth on [a, b].
inline Real simpson_recurse(const std::function<Real(const Real&)>& f, const Real& a,
                            const Real& b, const Real& fa, const Real& fb, const Real& fm,
                            const Real& whole, const Real& eps, int depth) {
    const Real m = (a + b) / 2;
    const Real lm = (a + m) / 2, rm = (m + b) / 2;
    const Real flm = f(lm), frm = f(rm);
    const Real left = (m - a) / 6 * (fa + 4 * flm + fm);
    const Real right = (b - m) / 6 * (fm + 4 * frm + fb);
    const Real delta = left + right - whole;
    if (depth <= 0 || abs(delta) < 15 * eps)
        return left + right + delta / 15;
    return simpson_recurse(f, a, m, fa, fm, flm, left, eps / 2, depth - 1) +
           simpson_recurse(f, m, b, fm, fb, frm, right, eps / 2, depth - 1);
}

inline Real integrate(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const Real& eps, int depth = 40) {
    const Real fa = f(a), fb = f(b), fm = f((a + b) / 2);
    const Real whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_recurse(f, a, b, fa, fb, fm, whole, eps, depth);
}

} // namespace minkmom::testutil
