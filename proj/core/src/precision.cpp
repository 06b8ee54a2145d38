#include "minkmom/precision.hpp"

namespace minkmom {

Real PrecisionContext::tolerance() const { return pow10(-digits); }

Real PrecisionContext::truncation_target() const { return pow10(-(digits + guard)); }

Real to_working(const Real& x) {
    Real y(x, Real::default_precision());
    return y;
}

Real log2_value() { return log(Real(2)); }

Real pi_value() {
    Real x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

// 200 digits, validated against an independent series in the test suite.
static const char* kEulerGamma200 =
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766"
    "467093694706329174674951463144724980708248096050401448654283622417399764492353"
    "62535003337429373377376739427925952582470949";

Real euler_gamma_value() { return Real(kEulerGamma200); }

Real pow10(int k) {
    Real r = pow(Real(10), k);
    return r;
}

std::string to_decimal_string(const Real& x, int digits) {
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

} // namespace minkmom
