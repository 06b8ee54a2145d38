#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace minkmom {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float; // variable precision

/// Thrown when a block/sum would exceed the configured memory budget.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when guard digits cannot cover a requested computation.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decimal working precision plus guard digits.  Series truncation in this
/// library stops when a certified geometric (or factorial) tail bound drops
/// below 10^-(digits+guard), never on "current term is small" alone.
struct PrecisionContext {
    int digits = 30;
    int guard = 10;

    PrecisionContext() = default;
    PrecisionContext(int digits_, int guard_ = 10) : digits(digits_), guard(guard_) {
        if (digits < 15)
            throw std::invalid_argument("PrecisionContext: digits must be >= 15");
        if (guard < 10)
            throw std::invalid_argument("PrecisionContext: guard must be >= 10");
    }

    int working_digits() const { return digits + guard; }

    /// 10^-(digits): the user-facing tolerance.
    Real tolerance() const;
    /// 10^-(digits+guard): the internal truncation target.
    Real truncation_target() const;
};

/// RAII guard: sets the boost/mpfr default precision (decimal digits) for the
/// enclosing scope and restores the previous value on exit.
class PrecisionScope {
  public:
    explicit PrecisionScope(int decimal_digits)
        : saved_(static_cast<int>(Real::default_precision())) {
        Real::default_precision(static_cast<unsigned>(decimal_digits));
    }
    explicit PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.working_digits()) {}
    ~PrecisionScope() { Real::default_precision(static_cast<unsigned>(saved_)); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    int saved_;
};

/// Returns a copy of x rounded to the current default precision.  Values
/// produced at elevated precision are normalised through this before they mix
/// with working-precision arithmetic.
Real to_working(const Real& x);

/// log(2) at the current default precision.
Real log2_value();

/// pi at the current default precision.
Real pi_value();

/// Euler-Mascheroni constant.  Stored as a 200-digit literal; an independent
/// computation validates it in the test suite.
Real euler_gamma_value();

/// 10^-k at current default precision.
Real pow10(int k);

/// Full-precision decimal string round-trippable at the value's precision.
std::string to_decimal_string(const Real& x, int digits);

} // namespace minkmom
