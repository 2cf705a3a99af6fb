#ifndef RSMOMENT_VALUE_HPP
#define RSMOMENT_VALUE_HPP

#include "rsmoment/complexnum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rsm {

enum class ErrorKind {
    pole_input,
    precision_failure,
    divergence,
    truncation_insufficient,
    quadrature_failure,
    contour_through_pole,
    extrapolation_divergence,
    dimension_zero,
    eigenvalue_collision,
    insufficient_coefficients,
    pole_in_disc,
    validation_failure,
    parse_error,
    summation_budget_exceeded,
    unsupported,
    io_error,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind(kind) {}
    ErrorKind kind;
};

// Numerical-quality budget shared by all evaluators. working_digits sets the
// MPFR precision, truncation_bound caps series/sum lengths, and
// quadrature_step_target is the relative error goal of a single integral.
struct PrecisionContext {
    int working_digits = 40;
    long truncation_bound = 4000000;
    double quadrature_step_target = 1e-30;

    PrecisionContext() = default;
    explicit PrecisionContext(int digits) : working_digits(digits) {
        if (digits < 30) throw Error(ErrorKind::unsupported, "working_digits must be >= 30");
        quadrature_step_target = std::pow(10.0, -(digits - 6));
        truncation_bound = 4000000;
    }

    // Every operation must come in under this absolute/relative error.
    double half_digit_target() const { return std::pow(10.0, -working_digits / 2.0); }
    double full_target() const { return std::pow(10.0, -(working_digits - 6)); }
};

// Value plus first-order absolute error estimate. The estimate is a
// propagated bound, not a rigorous interval.
struct ComplexValue {
    Complex z;
    double err = 0.0;

    ComplexValue() = default;
    ComplexValue(Complex v, double e) : z(std::move(v)), err(e) {}

    Real real() const { return z.re; }
    Real imag() const { return z.im; }
};

inline ComplexValue cv_add(const ComplexValue& a, const ComplexValue& b) {
    return {a.z + b.z, a.err + b.err};
}
inline ComplexValue cv_sub(const ComplexValue& a, const ComplexValue& b) {
    return {a.z - b.z, a.err + b.err};
}
inline ComplexValue cv_mul(const ComplexValue& a, const ComplexValue& b) {
    double ma = cabs(a.z).to_double(), mb = cabs(b.z).to_double();
    return {a.z * b.z, ma * b.err + mb * a.err + a.err * b.err};
}
inline ComplexValue cv_div(const ComplexValue& a, const ComplexValue& b) {
    double ma = cabs(a.z).to_double(), mb = cabs(b.z).to_double();
    Complex q = a.z / b.z;
    if (mb == 0.0) throw Error(ErrorKind::precision_failure, "division by zero magnitude");
    return {q, a.err / mb + ma * b.err / (mb * mb)};
}
// exp propagates absolute error of the exponent into relative error of the result.
inline ComplexValue cv_exp(const ComplexValue& a) {
    Complex e = cexp(a.z);
    double m = cabs(e).to_double();
    return {e, m * a.err * (1.0 + a.err)};
}

} // namespace rsm

#endif
