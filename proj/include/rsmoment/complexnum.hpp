#ifndef RSMOMENT_COMPLEXNUM_HPP
#define RSMOMENT_COMPLEXNUM_HPP

// Complex arithmetic over Real. std::complex is not specified for
// user-defined scalar types, so we carry our own minimal value type.

#include "rsmoment/real.hpp"

namespace rsm {

struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(double r) : re(r), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r, double i) : re(r), im(i) {}

    bool is_real() const { return im.is_zero(); }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }
    Complex& operator/=(const Complex& o) { *this = *this / o; return *this; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }
    friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }

    std::string str(int digits = 0) const {
        return "(" + re.str(digits) + (im.is_negative() ? " - " : " + ") + abs(im).str(digits) + "i)";
    }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real cabs(const Complex& z) { return sqrt(norm2(z)); }

inline Complex cexp(const Complex& z) {
    Real s(0), c(0);
    sin_cos(z.im, s, c);
    Real m = exp(z.re);
    return {m * c, m * s};
}

// Principal branch.
inline Complex clog(const Complex& z) {
    return {Real(0.5) * log(norm2(z)), atan2(z.im, z.re)};
}

inline Complex cpow(const Complex& base, const Complex& e) { return cexp(e * clog(base)); }
inline Complex csqrt(const Complex& z) { return cexp(Real(0.5) * clog(z)); }

// x^w for positive real x: exp(w log x), cheaper and branch-free.
inline Complex rpow(const Real& x, const Complex& w) {
    Real lx = log(x);
    return cexp({w.re * lx, w.im * lx});
}

inline Complex csin(const Complex& z) {
    // sin(x+iy) = sin x cosh y + i cos x sinh y
    Real s(0), c(0);
    sin_cos(z.re, s, c);
    Real ey = exp(z.im), eyi = Real(1) / ey;
    Real ch = (ey + eyi) * Real(0.5), sh = (ey - eyi) * Real(0.5);
    return {s * ch, c * sh};
}

inline Complex ccos(const Complex& z) {
    Real s(0), c(0);
    sin_cos(z.re, s, c);
    Real ey = exp(z.im), eyi = Real(1) / ey;
    Real ch = (ey + eyi) * Real(0.5), sh = (ey - eyi) * Real(0.5);
    return {c * ch, -s * sh};
}

} // namespace rsm

#endif
