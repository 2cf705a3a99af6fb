#ifndef RSMOMENT_QUADRATURE_HPP
#define RSMOMENT_QUADRATURE_HPP

#include "rsmoment/value.hpp"

#include <functional>
#include <vector>

namespace rsm {

using CFunc = std::function<Complex(const Complex&)>;

// (1/2pi) \int_{-T}^{T} f(c+it) dt with uniform trapezoid nodes and step
// halving until the change is below target (relative to the running value).
// Equals (1/2pi i) \int f dw on the vertical line, truncated at |Im|=T.
ComplexValue integrate_vertical_line(const CFunc& f, const Real& c, const Real& T,
                                     double rel_target, int max_halvings = 12,
                                     double initial_step = 0.5);

// (1/2pi i) \oint_{|w-center|=r} f(w) dw by M uniform nodes.
Complex contour_circle_integral(const CFunc& f, const Complex& center, const Real& radius, int M);

// Taylor coefficients f^(j)(center)/j! for j = 0..J-1 from one circle of
// M uniform nodes (values reused across all j).
std::vector<Complex> taylor_from_circle(const CFunc& f, const Complex& center,
                                        const Real& radius, int M, int J);

// \int_0^infty f(t) dt for f with integrable endpoint behaviour at 0 and
// exponential decay at infinity, via the transform t = exp(x - e^{-x}).
ComplexValue integrate_halfline(const CFunc& f, double rel_target, int max_halvings = 10);

// Gauss-Legendre nodes/weights on [-1,1], computed at working precision.
struct GaussLegendre {
    std::vector<Real> x, w;
    explicit GaussLegendre(int n);
};

} // namespace rsm

#endif
