#include <doctest.h>

#include "rsmoment/quadrature.hpp"
#include "rsmoment/series.hpp"
#include "rsmoment/specialfn.hpp"

#include <cmath>

using namespace rsm;

TEST_SUITE_BEGIN("series_quadrature");

TEST_CASE("power series exp and inverse") {
    Real::set_working_digits(40);
    // exp(w + w^2/3) coefficients against direct multiplication of exponentials
    Series<Real> a(0, 8);
    a.set(1, Real(1));
    a.set(2, Real(1) / Real(3));
    Series<Real> e = series_exp(a);
    CHECK(abs(e.coeff(0) - Real(1)).to_double() < 1e-35);
    CHECK(abs(e.coeff(1) - Real(1)).to_double() < 1e-35);
    // order-2 coefficient: 1/2 + 1/3
    CHECK(abs(e.coeff(2) - (Real(0.5) + Real(1) / Real(3))).to_double() < 1e-35);

    Series<Real> inv = series_inverse(e);
    Series<Real> prod = e * inv;
    CHECK(abs(prod.coeff(0) - Real(1)).to_double() < 1e-33);
    for (int j = 1; j <= 6; ++j) CHECK(abs(prod.coeff(j)).to_double() < 1e-33);
}

TEST_CASE("Laurent series multiplication and derivative") {
    Real::set_working_digits(40);
    // f = 1/w + 2 + 3w, g = w^{-2} + w
    Series<Real> f(-1, 4), g(-2, 4);
    f.set(-1, Real(1));
    f.set(0, Real(2));
    f.set(1, Real(3));
    g.set(-2, Real(1));
    g.set(1, Real(1));
    Series<Real> p = f * g;
    CHECK(abs(p.coeff(-3) - Real(1)).to_double() < 1e-35);  // 1/w * w^-2
    CHECK(abs(p.coeff(-2) - Real(2)).to_double() < 1e-35);
    CHECK(abs(p.coeff(0) - Real(1)).to_double() < 1e-35);   // 1/w * w
    CHECK(abs(p.coeff(1) - Real(2)).to_double() < 1e-35);
    CHECK(abs(p.coeff(2) - Real(3)).to_double() < 1e-35);

    Series<Real> df = f.derivative();
    CHECK(abs(df.coeff(-2) + Real(1)).to_double() < 1e-35);
    CHECK(abs(df.coeff(0) - Real(3)).to_double() < 1e-35);
}

TEST_CASE("polynomial ring in the formal variable") {
    Real::set_working_digits(36);
    PolyX x = PolyX::X();
    PolyX p = x * x + Real(2) * x + PolyX(Real(1));  // (x+1)^2
    CHECK(p.degree() == 2);
    CHECK(abs(p.eval(Real(3)) - Real(16)).to_double() < 1e-30);

    Series<PolyX> s(0, 4);
    s.set(0, PolyX(Real(1)));
    s.set(1, x);
    Series<PolyX> sq = s * s;  // 1 + 2xw + x^2 w^2
    CHECK(sq.coeff(1).degree() == 1);
    CHECK(abs(sq.coeff(1).coeff(1) - Real(2)).to_double() < 1e-30);
    CHECK(sq.coeff(2).degree() == 2);
}

TEST_CASE("gauss-legendre integrates polynomials and smooth functions") {
    Real::set_working_digits(40);
    GaussLegendre gl(12);
    // int_{-1}^{1} x^8 dx = 2/9
    Real acc(0);
    for (int i = 0; i < 12; ++i) acc += gl.w[i] * pow_si(gl.x[i], 8);
    CHECK(abs(acc - Real(2) / Real(9)).to_double() < 1e-30);
    // int_{-1}^{1} e^x dx = e - 1/e
    Real ee(0);
    for (int i = 0; i < 12; ++i) ee += gl.w[i] * exp(gl.x[i]);
    CHECK(abs(ee - (exp(Real(1)) - exp(Real(-1)))).to_double() < 1e-16);
}

TEST_CASE("vertical line quadrature of a gaussian") {
    Real::set_working_digits(40);
    // (1/2pi) int exp((u-c)^2) dt on u = c+it equals 1/(2 sqrt(pi))
    Real c(0.25);
    auto f = [&](const Complex& u) {
        Complex d = u - Complex(c);
        return cexp(d * d);
    };
    auto v = integrate_vertical_line(f, c, Real(9), 1e-28, 14, 0.5);
    Real expect = Real(1) / (Real(2) * sqrt(real_pi()));
    CHECK(abs(v.z.re - expect).to_double() < 1e-25);
    CHECK(std::abs(v.z.im.to_double()) < 1e-25);
}

TEST_CASE("half-line double-exponential quadrature") {
    Real::set_working_digits(36);
    // int_0^inf t^2 e^{-t} dt = 2, and an endpoint singularity: 1/sqrt(t)
    auto f1 = [](const Complex& t) { return t * t * cexp(-t); };
    auto v1 = integrate_halfline(f1, 1e-24);
    CHECK(abs(v1.z.re - Real(2)).to_double() < 1e-20);
    auto f2 = [](const Complex& t) { return cexp(Complex(-0.5) * clog(t) - t); };
    auto v2 = integrate_halfline(f2, 1e-24);
    CHECK(abs(v2.z.re - sqrt(real_pi())).to_double() < 1e-20);
}

TEST_CASE("taylor coefficients from a circle") {
    Real::set_working_digits(36);
    auto f = [](const Complex& z) { return cexp(z); };
    auto coeffs = taylor_from_circle(f, Complex(0), Real(0.7), 64, 10);
    Real fact(1);
    for (int j = 0; j < 10; ++j) {
        if (j > 0) fact *= Real(j);
        CHECK(cabs(coeffs[j] - Complex(Real(1) / fact)).to_double() < 1e-28);
    }
}

TEST_SUITE_END();
