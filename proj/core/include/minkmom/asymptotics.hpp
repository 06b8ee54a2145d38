#pragma once

#include "minkmom/moments.hpp"
#include "minkmom/precision.hpp"

#include <vector>

namespace minkmom {

// ---------------------------------------------------------------------------
// lambda = sum (log 2)^n / n! m_n and its companions.
// ---------------------------------------------------------------------------

/// lambda with its factorial tail certified below the working tolerance.
Real lambda_const(const MomentVector& m);

/// The three alternative expressions (alternating, even-only, odd-only);
/// all four agree within combined tolerances.
Real lambda_alternating(const MomentVector& m); // 2 sum (-log 2)^n/n! m_n
Real lambda_even_only(const MomentVector& m);   // (4/3) sum (log 2)^(2n)/(2n)! m_2n
Real lambda_odd_only(const MomentVector& m);    // 4 sum (log 2)^(2n+1)/(2n+1)! m_(2n+1)

/// phi values recomputed from a converged moment vector.
PhiVector phi_vector(const MomentVector& m, int threads = 0);

/// rho = sum_k (log 2)^(2k) / (2^(2k) (2k)!) phi_2k; equals lambda/sqrt(2).
Real rho_const(const PhiVector& phi, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// The S family: shifted exponential sums and their integral counterpart.
// ---------------------------------------------------------------------------

/// S_x(n) = sum_{h>=1} 2^-(h+x) (1 - 1/(h+x))^n.  For x = 0 the h = 1 term
/// vanishes and the sum effectively starts at h = 2.
Real S_shifted(const Real& x, unsigned n, const PrecisionContext& ctx);

/// S_int(n) = integral_1^inf 2^-t (1 - 1/t)^n dt by the three-term recursion
///   S(n) = (2 + log2/(n-1)) S(n-1) - S(n-2),
/// seeded by S(0) = 1/(2 log 2) and S(1) = 1/(2 log 2) + Ei(-log 2).  The
/// recursion's growing/decaying solution ratio amplifies relative error like
/// e^(4 sqrt(n log 2)), so it runs at elevated precision with
/// ceil(4 sqrt(n log 2)/ln 10) + 10 extra digits.  Entries keep the elevated
/// precision.
std::vector<Real> S_integral_table(unsigned max_n, const PrecisionContext& ctx);
Real S_integral(unsigned n, const PrecisionContext& ctx);

/// kappa(n) = hypot(S_0(n) - S_int(n), S_1/4(n) - S_int(n)): the amplitude of
/// the near-1-periodic oscillation of x -> S_x(n) around S_int(n).
Real kappa(unsigned n, const PrecisionContext& ctx);

/// lambda * n^(1/4) (log 2)^(-3/4) sqrt(pi/2) e^(-2 sqrt(n log 2)), the
/// closed-form moment asymptotic.
Real moment_asymptotic_closed(unsigned n, const Real& lambda, const PrecisionContext& ctx);

/// S_0(n) divided by its Laplace closed form; tends to 1 from the flat side.
Real laplace_ratio(unsigned n, const PrecisionContext& ctx);

/// phi_n asymptotics: the shifted sum 2 lambda sum_{h>=3} 2^-h (1-2/h)^n and
/// the Laplace closed form lambda (2n)^(1/4) sqrt(pi) (log 2)^(-3/4)
/// e^(-2 sqrt(2 n log 2)).
Real phi_asymptotic_sum(unsigned n, const Real& lambda, const PrecisionContext& ctx);
Real phi_asymptotic_closed(unsigned n, const Real& lambda, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Normalized error diagnostics (the data behind the error-comparison table)
// ---------------------------------------------------------------------------

struct ErrorRow {
    unsigned n;
    Real sqrt_n;
    Real m;      // m~_n
    Real model;  // the selected model value
    Real kappa;
    Real e0, ehalf, eint; // (m~_n - lambda S_*(n)) / kappa(n)
};

enum class ModelKind { s0, shalf, sint, improved, zero };
ModelKind model_from_name(const std::string& s);
std::string model_name(ModelKind k);

/// Per-n normalized errors over [from, to]; `model` selects the column
/// reported as the model value (the improved kind needs fitted a, b).
std::vector<ErrorRow> error_series(const MomentVector& m, const Real& lambda, unsigned from,
                                   unsigned to, ModelKind model = ModelKind::sint,
                                   const Real& fit_a = Real(0), const Real& fit_b = Real(0));

struct FitResult {
    Real a, b;
    Real rms_before; // RMS of m~_n - lambda S_int(n) over the range
    Real rms_after;  // RMS of the post-fit residual
};

/// Ordinary least squares of m~_n - lambda S_int(n) against the basis
/// {S_0 - S_int, S_1/4 - S_int} over [from, to].  Throws on a numerically
/// collinear basis.
FitResult fit_improved_model(const MomentVector& m, const Real& lambda, unsigned from, unsigned to);

// ---------------------------------------------------------------------------
// Model bundle
// ---------------------------------------------------------------------------

struct AsymptoticModel {
    Real lambda{0};
    Real rho{0};
    Real fit_a{0}, fit_b{0};
    bool fitted = false;
    PrecisionContext ctx;
};

/// lambda and rho from a converged run (consistency |rho sqrt2 - lambda| is
/// left to the caller's checks).
AsymptoticModel build_model(const MomentVector& m);

/// S~ values for the bootstrap extension, indices from..to inclusive.  The
/// improved kind returns S_int + (a/lambda)(S_0-S_int) + (b/lambda)(S_1/4-S_int)
/// so that the engine's per-sweep lambda~ rescaling reproduces the improved
/// three-term model.
std::vector<Real> extension_table(const AsymptoticModel& model, ModelKind kind, unsigned from,
                                  unsigned to);

} // namespace minkmom
