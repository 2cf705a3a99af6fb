#ifndef RSMOMENT_SERIES_HPP
#define RSMOMENT_SERIES_HPP

// Truncated Laurent series with numeric coefficients, plus a small dense
// polynomial ring so residue extraction can stay symbolic in log k.

#include "rsmoment/value.hpp"

#include <vector>

namespace rsm {

// Dense polynomial in one formal variable over Real.
struct PolyX {
    std::vector<Real> c;  // c[i] * X^i

    PolyX() = default;
    PolyX(Real v) : c{std::move(v)} {}
    PolyX(double v) : c{Real(v)} {}

    static PolyX X() { PolyX p; p.c = {Real(0), Real(1)}; return p; }

    int degree() const {
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            if (!c[i].is_zero()) return i;
        return -1;
    }
    Real coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : Real(0); }
    bool is_zero() const { return degree() < 0; }

    Real eval(const Real& x) const {
        Real acc(0);
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    }

    PolyX& operator+=(const PolyX& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), Real(0));
        for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    friend PolyX operator+(PolyX a, const PolyX& b) { a += b; return a; }
    friend PolyX operator-(const PolyX& a) {
        PolyX r = a;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend PolyX operator-(PolyX a, const PolyX& b) { a += -b; return a; }
    friend PolyX operator*(const PolyX& a, const PolyX& b) {
        PolyX r;
        if (a.c.empty() || b.c.empty()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, Real(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend PolyX operator*(const Real& s, const PolyX& b) {
        PolyX r = b;
        for (auto& v : r.c) v = s * v;
        return r;
    }
    friend PolyX operator/(const PolyX& a, const Real& s) {
        PolyX r = a;
        for (auto& v : r.c) v = v / s;
        return r;
    }
};

// Scalar-trait shims so Series<T> can be written once.
inline Real series_zero(const Real&) { return Real(0); }
inline PolyX series_zero(const PolyX&) { return PolyX(Real(0)); }

// f(w) = sum_{i} c[i] w^{lead+i}, truncated at lead+len-1. Window arithmetic:
// products keep only orders up to `cap` set at construction.
template <typename T>
struct Series {
    int lead = 0;
    int cap = 8;  // highest retained order
    std::vector<T> c;

    Series() = default;
    Series(int lead_, int cap_) : lead(lead_), cap(cap_) {
        if (cap_ < lead_) throw Error(ErrorKind::unsupported, "series window inverted");
        c.assign(static_cast<size_t>(cap_ - lead_ + 1), T(Real(0)));
    }

    int top() const { return lead + static_cast<int>(c.size()) - 1; }
    T coeff(int order) const {
        int i = order - lead;
        if (i < 0 || i >= static_cast<int>(c.size())) return T(Real(0));
        return c[i];
    }
    void set(int order, T v) {
        int i = order - lead;
        if (i < 0 || i >= static_cast<int>(c.size()))
            throw Error(ErrorKind::truncation_insufficient, "series order out of window");
        c[i] = std::move(v);
    }

    friend Series operator+(const Series& a, const Series& b) {
        int lo = std::min(a.lead, b.lead), hi = std::min(std::max(a.top(), b.top()), std::min(a.cap, b.cap));
        Series r(lo, std::min(a.cap, b.cap));
        r.c.assign(static_cast<size_t>(hi - lo + 1), T(Real(0)));
        for (int o = lo; o <= hi; ++o) r.c[o - lo] = a.coeff(o) + b.coeff(o);
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        int lo = a.lead + b.lead;
        int capr = std::min(a.cap, b.cap);
        Series r(lo, capr);
        int hi = std::min(a.top() + b.top(), capr);
        r.c.assign(static_cast<size_t>(std::max(0, hi - lo + 1)), T(Real(0)));
        for (int i = 0; i < static_cast<int>(a.c.size()); ++i) {
            for (int j = 0; j < static_cast<int>(b.c.size()); ++j) {
                int o = a.lead + i + b.lead + j;
                if (o > hi) break;
                r.c[o - lo] += a.c[i] * b.c[j];
            }
        }
        return r;
    }
    friend Series operator*(const T& s, const Series& a) {
        Series r = a;
        for (auto& v : r.c) v = s * v;
        return r;
    }

    // d/dw
    Series derivative() const {
        Series r(lead - 1, cap);
        r.c.assign(c.size(), T(Real(0)));
        for (int i = 0; i < static_cast<int>(c.size()); ++i) {
            int o = lead + i;
            r.c[i] = Real(o) * c[i];
        }
        return r;
    }
};

// exp of a Real-coefficient Taylor series (lead >= 0 required).
inline Series<Real> series_exp(const Series<Real>& a) {
    if (a.lead < 0) throw Error(ErrorKind::unsupported, "series_exp of a Laurent series");
    int cap = a.cap;
    Series<Real> r(0, cap);
    // e_n = (1/n) sum_{j=1}^{n} j a_j e_{n-j}, e_0 = exp(a_0)
    r.c[0] = exp(a.coeff(0));
    for (int n = 1; n <= cap; ++n) {
        Real acc(0);
        for (int j = 1; j <= n; ++j) acc += Real(j) * a.coeff(j) * r.c[n - j];
        r.c[n] = acc / Real(n);
    }
    return r;
}

// 1/f for a series with nonzero lowest-order coefficient.
template <typename T>
Series<T> series_inverse(const Series<T>& a) {
    // Write f = c0 w^lead (1 + g), invert the unit part by Neumann recursion.
    int n = static_cast<int>(a.c.size());
    if (n == 0) throw Error(ErrorKind::unsupported, "inverse of empty series");
    Series<T> r(-a.lead, a.cap);
    r.c.assign(static_cast<size_t>(n), T(Real(0)));
    // b_0 = 1/c_0 ; b_m = -(1/c_0) sum_{j=1}^m c_j b_{m-j}
    // (division by PolyX is only needed for constant polynomials)
    T inv0 = series_detail_invert(a.c[0]);
    r.c[0] = inv0;
    for (int m = 1; m < n; ++m) {
        T acc(Real(0));
        for (int j = 1; j <= m; ++j) acc += a.c[j] * r.c[m - j];
        r.c[m] = -(inv0 * acc);
    }
    return r;
}

inline Real series_detail_invert(const Real& v) {
    if (v.is_zero()) throw Error(ErrorKind::precision_failure, "series inverse: zero leading coefficient");
    return Real(1) / v;
}
inline PolyX series_detail_invert(const PolyX& p) {
    if (p.degree() != 0) throw Error(ErrorKind::unsupported, "PolyX inverse only for constants");
    return PolyX(Real(1) / p.coeff(0));
}

} // namespace rsm

#endif
