#include "rsmoment/quadrature.hpp"

#include <cmath>

namespace rsm {

ComplexValue integrate_vertical_line(const CFunc& f, const Real& c, const Real& T,
                                     double rel_target, int max_halvings, double initial_step) {
    Real h(initial_step);
    double Td = T.to_double();
    long n0 = static_cast<long>(std::ceil(Td / initial_step));

    // First pass at the coarse step.
    Complex acc = f(Complex(c, Real(0)));
    for (long j = 1; j <= n0; ++j) {
        Real t = Real(j) * h;
        acc += f(Complex(c, t)) + f(Complex(c, -t));
    }
    Complex prev_total = acc * h;

    double err = 1e300;
    for (int level = 0; level < max_halvings; ++level) {
        // Add midpoints of the current grid.
        Real h2 = h * Real(0.5);
        long n = static_cast<long>(std::ceil(Td / h2.to_double()));
        Complex mids(0);
        for (long j = 1; j <= n; j += 2) {
            Real t = Real(j) * h2;
            mids += f(Complex(c, t)) + f(Complex(c, -t));
        }
        Complex total = (acc + mids) * h2;
        double scale = std::max(cabs(total).to_double(), 1e-300);
        err = cabs(total - prev_total).to_double();
        acc += mids;
        h = h2;
        prev_total = total;
        if (err < rel_target * scale) {
            Real inv2pi = Real(1) / (Real(2) * real_pi());
            return {total * inv2pi, err * inv2pi.to_double() * 0.5};
        }
    }
    throw Error(ErrorKind::quadrature_failure,
                "vertical line quadrature did not reach target (last delta " + std::to_string(err) + ")");
}

Complex contour_circle_integral(const CFunc& f, const Complex& center, const Real& radius, int M) {
    Real two_pi = Real(2) * real_pi();
    Complex acc(0);
    for (int m = 0; m < M; ++m) {
        Real theta = two_pi * Real(m) / Real(M);
        Real st(0), ct(0);
        sin_cos(theta, st, ct);
        Complex w{radius * ct, radius * st};
        acc += f(center + w) * w;
    }
    return acc / Real(M);
}

std::vector<Complex> taylor_from_circle(const CFunc& f, const Complex& center,
                                        const Real& radius, int M, int J) {
    Real two_pi = Real(2) * real_pi();
    std::vector<Complex> vals(M);
    std::vector<Real> cs(M), sn(M);
    for (int m = 0; m < M; ++m) {
        Real theta = two_pi * Real(m) / Real(M);
        sin_cos(theta, sn[m], cs[m]);
        vals[m] = f(center + Complex(radius * cs[m], radius * sn[m]));
    }
    std::vector<Complex> out(J);
    for (int j = 0; j < J; ++j) {
        Complex acc(0);
        for (int m = 0; m < M; ++m) {
            long idx = (static_cast<long>(j) * m) % M;  // e^{-i j theta_m}
            acc += vals[m] * Complex(cs[idx], -sn[idx]);
        }
        out[j] = acc / (Real(M) * pow_si(radius, j));
    }
    return out;
}

ComplexValue integrate_halfline(const CFunc& f, double rel_target, int max_halvings) {
    // t(x) = exp(x - e^{-x}); double-exponential decay of the transformed
    // integrand at x -> -inf, and e^{-t}-driven decay at x -> +inf. The left
    // endpoint must sit deep enough that t^{-1/2}-type singularities are
    // crushed below any practical target.
    double x_lo = -6.0, x_hi = 6.9;
    auto g = [&](double xd) -> Complex {
        Real x(xd);
        Real emx = exp(-x);
        Real t = exp(x - emx);
        Real dt = t * (Real(1) + emx);
        return f(Complex(t, Real(0))) * dt;
    };
    double h = 0.5;
    long n0 = static_cast<long>(std::ceil((x_hi - x_lo) / h));
    Complex acc(0);
    for (long j = 0; j <= n0; ++j) acc += g(x_lo + j * h);
    Complex prev = acc * Real(h);
    for (int level = 0; level < max_halvings; ++level) {
        h *= 0.5;
        long n = static_cast<long>(std::ceil((x_hi - x_lo) / h));
        Complex mids(0);
        for (long j = 1; j <= n; j += 2) mids += g(x_lo + j * h);
        Complex total = (acc + mids) * Real(h);
        double delta = cabs(total - prev).to_double();
        double scale = std::max(cabs(total).to_double(), 1e-300);
        acc += mids;
        prev = total;
        if (delta < rel_target * scale) return {total, delta * 0.5};
    }
    throw Error(ErrorKind::quadrature_failure, "half-line quadrature did not converge");
}

GaussLegendre::GaussLegendre(int n) {
    x.resize(n);
    w.resize(n);
    Real pi = real_pi();
    double thr = std::pow(10.0, -std::min(300, Real::working_digits() + 2));
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-angle initial guess.
        Real xi = cos(pi * Real(4 * i + 3) / Real(4 * n + 2));
        for (int it = 0; it < 64; ++it) {
            // Legendre P_n and P_n' by recurrence.
            Real p0(1), p1 = xi;
            for (int k = 2; k <= n; ++k) {
                Real p2 = (Real(2 * k - 1) * xi * p1 - Real(k - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            Real dp = Real(n) * (xi * p1 - p0) / (xi * xi - Real(1));
            Real step = p1 / dp;
            xi -= step;
            if (abs(step).to_double() < thr * (1 + std::abs(xi.to_double()))) break;
        }
        Real p0(1), p1 = xi;
        for (int k = 2; k <= n; ++k) {
            Real p2 = (Real(2 * k - 1) * xi * p1 - Real(k - 1) * p0) / Real(k);
            p0 = p1;
            p1 = p2;
        }
        Real dp = Real(n) * (xi * p1 - p0) / (xi * xi - Real(1));
        x[i] = xi;
        w[i] = Real(2) / ((Real(1) - xi * xi) * dp * dp);
    }
}

} // namespace rsm
