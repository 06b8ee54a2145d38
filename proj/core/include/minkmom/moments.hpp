#pragma once

#include "minkmom/precision.hpp"

#include <string>
#include <vector>

namespace minkmom {

enum class Backend { simple, alkauskas, bootstrap };

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& s);

struct EngineConfig {
    int order = 64;     // N: highest moment index kept
    int extension = 0;  // M > N: asymptotic extension order (bootstrap only)
    Backend backend = Backend::simple;
    int max_iterations = 0; // 0 -> ceil(2 sqrt(N / log 2)) + 10
    int digits = 30;
    int threads = 0;               // 0 -> hardware concurrency
    bool alternating_coeffs = false; // comparison-only variant of the alkauskas map

    /// Working precision: requested digits + 10 guard + N/20 for binomial
    /// roundoff growth.
    PrecisionContext working_context() const;
    int default_max_iterations() const;
    void validate() const;
};

/// Approximations of m_0..m_N with the run metadata needed to interpret them.
struct MomentVector {
    std::vector<Real> values;
    int digits = 30;
    Backend backend = Backend::simple;
    int iterations = 0;
    bool converged = false;      // step change dropped below 10^-digits
    bool at_error_floor = false; // step change reached the truncation-error scale
    Real final_step{0};    // sup-norm change of the last sweep
    Real check_epsilon{0}; // bootstrap: max correction seen by the checking run
    std::vector<Real> step_history; // sup-norm change per sweep

    int order() const { return static_cast<int>(values.size()) - 1; }
    PrecisionContext ctx() const;
    const Real& operator[](std::size_t i) const { return values[i]; }

    /// Conservative per-entry error estimate: max of the final iteration step
    /// and a ratio extrapolation of m_{N+1} (the truncation-error scale).
    Real tail_estimate() const;
};

/// phi_0, phi_2, ..., phi_{2 floor(N/2)}; even[j] approximates phi_{2j}.
struct PhiVector {
    std::vector<Real> even;
};

// ---------------------------------------------------------------------------
// The fixed-point map: moments as the eigenvector of the averaging operator.
//   phi_n = sum_{k>=0} C(n+k-1,k) m_{n+k} / 2^{n+k}
//   m_n   = 2^-n sum_{2k<=n} C(n,2k) phi_{2k}
// ---------------------------------------------------------------------------

/// Truncated phi_n sum with terms k = 0..k_max, streamed through the running
/// factor b <- b (n+k) / (2(k+1)).
Real compute_phi(const std::vector<Real>& m, unsigned n, std::size_t k_max);

/// All even-index phi values from a moment vector of length >= order+1,
/// with per-index truncation at k_max = tail_order - n.
PhiVector phi_pass(const std::vector<Real>& m, int order, int tail_order, int threads);

/// The m-pass: even binomial averages of the phi vector; slot 0 is fixed at 1.
std::vector<Real> moments_from_phi(const PhiVector& phi, int order, int threads);

/// One application of the truncated operator (phi pass + m pass).
std::vector<Real> apply_moment_map(const std::vector<Real>& v, int order, int threads);

/// Iterates apply_moment_map from (1,0,...,0) (or a warm start) until the
/// sup-norm step change drops below 10^-digits or the iteration cap is hit.
MomentVector fixed_point_moments(const EngineConfig& cfg);
MomentVector fixed_point_moments(const EngineConfig& cfg, std::vector<Real> start);

// ---------------------------------------------------------------------------
// Alkauskas backend: m_n = sum_k C(k+n-1, n-1) gamma_{k+n} m_k with
// gamma_j = 2 Li_j(1/2) - 1.  All coefficients positive.
// ---------------------------------------------------------------------------

/// gamma_poly values 0..max_n in one column-wise pass (used by the iteration).
std::vector<Real> gamma_poly_table(unsigned max_n, const PrecisionContext& ctx);
/// Li_j(1/2) values 0..max_n (alternating-variant coefficients).
std::vector<Real> polylog_half_table(unsigned max_n, const PrecisionContext& ctx);

/// One sweep of the map above (or of the alternating variant
/// m_n = sum_k C(k+n-1,n-1) (-1)^k Li_{k+n}(1/2) m_k when alternating=true).
/// coeff_table must hold gamma_poly (resp. polylog_half) values up to
/// 2*order.
std::vector<Real> alkauskas_step(const std::vector<Real>& v, const std::vector<Real>& coeff_table,
                                 int order, int threads, bool alternating = false);

/// Fixed point of the alkauskas map under the same stopping rule as
/// fixed_point_moments.
MomentVector alkauskas_moments(const EngineConfig& cfg);

// ---------------------------------------------------------------------------
// Cross-check against the dyadic-intervals-at-1 decomposition
//   m_n = sum_{h>=1} integral of Box^n over [1-2^(1-h), 1-2^(-h)].
// ---------------------------------------------------------------------------

struct CrosscheckResult {
    Real value{0};
    Real tail_bound{0};        // certified truncation bound
    double cancellation_digits = 0; // decimal digits lost to the worst alternating sum
    bool tail_certified = true;
};

/// Reconstructs m_n from the interval integrals: the h = 1 integral through
/// its geometrically convergent series and h >= 2 through the alternating
/// triple sum, each truncated with certified bounds.  Requires n <= order/2.
CrosscheckResult jh_crosscheck(const MomentVector& m, unsigned n, int h_max = 0);

/// The raw alternating series (1/2) sum_j C(n+j-1,j) (-1)^j m_{n+j} for the
/// h = 1 integral.  Its terms peak near j = (n-1)^2/log 2, so the certified
/// bound is useless unless the moment vector extends well past that; kept as
/// a diagnostic for small n.
CrosscheckResult j1_alternating_series(const MomentVector& m, unsigned n);

/// The same h = 1 integral through its geometrically convergent expansion
/// (the route jh_crosscheck uses).
CrosscheckResult j1_stable(const MomentVector& m, unsigned n);

// ---------------------------------------------------------------------------
// Bootstrap backend: extends the vector with model values
// m_n := lambda~ * s_ext[n - N - 1] for n in (N, M] each sweep, recomputing
// lambda~ = sum (log 2)^n / n! m~_n from the current iterate, then runs the
// phi sums out to M.  A final plain sweep at order M reports the maximal
// correction epsilon.
// ---------------------------------------------------------------------------

MomentVector bootstrap_moments(const EngineConfig& cfg, const std::vector<Real>& s_ext);

/// lambda from a plain vector (engine-internal; the asymptotics module wraps
/// this with tail bounds).
Real lambda_from_values(const std::vector<Real>& v);

} // namespace minkmom
