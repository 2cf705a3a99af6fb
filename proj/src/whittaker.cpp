#include "rsmoment/specialfn.hpp"
#include "rsmoment/quadrature.hpp"

#include <cmath>

namespace rsm {

namespace {

bool near_integer(double x, double tol = 1e-12) {
    return std::abs(x - std::round(x)) < tol;
}

// Terminating case: a = mu - kappa + 1/2 = -m, m >= 0 integer (mu, kappa real).
// W_{kappa,mu}(y) = e^{-y/2} y^{mu+1/2} (-1)^m m! L_m^{(2mu)}(y).
ComplexValue whittaker_laguerre(const Real& kappa, const Real& mu, const Real& y, long m) {
    (void)kappa;
    // L_m^{(alpha)}(y) = sum_{j=0}^m (-1)^j C(m+alpha, m-j) y^j / j!
    // with C(m+alpha, m-j) = Gamma(m+alpha+1) / (Gamma(j+alpha+1) (m-j)!)
    Real alpha = Real(2) * mu;
    Real acc(0);
    for (long j = 0; j <= m; ++j) {
        Real lbin = lngamma_real(Real(m) + alpha + Real(1)) - lngamma_real(Real(j) + alpha + Real(1))
                  - lngamma_real(Real(m - j) + Real(1));
        Real t = exp(lbin + Real(j) * log(y) - lngamma_real(Real(j + 1)));
        if (j % 2 == 1) t = -t;
        acc += t;
    }
    Real sign = (m % 2 == 0) ? Real(1) : Real(-1);
    Real val = exp(-y * Real(0.5) + (mu + Real(0.5)) * log(y) + lngamma_real(Real(m + 1))) * sign * acc;
    double mag = std::abs(val.to_double());
    return {Complex(val), mag * std::pow(10.0, -Real::working_digits() + 12)};
}

// Kummer M(a,b,z) by its Taylor series, tracking cancellation.
Complex kummer_M(const Complex& a, const Complex& b, const Real& z, double target_rel, double& max_partial) {
    Complex term(1), acc(1);
    max_partial = 1.0;
    for (long n = 1; n < 100000; ++n) {
        term = term * (a + Complex(Real(n - 1))) / (b + Complex(Real(n - 1))) * z / Real(n);
        acc += term;
        double am = cabs(acc).to_double(), tm = cabs(term).to_double();
        max_partial = std::max(max_partial, am + tm);
        if (tm < target_rel * std::max(am, 1e-300) && n > z.to_double()) return acc;
    }
    throw Error(ErrorKind::precision_failure, "Kummer M series did not converge");
}

// U(a,b,z) for b not an integer, via the two-M-series connection formula.
Complex kummer_U_pair(const Complex& a, const Complex& b, const Real& z,
                      const PrecisionContext& ctx, double& cancel_digits) {
    PrecisionContext inner = ctx;
    double target = ctx.full_target() * 1e-2;
    double mp1 = 1, mp2 = 1;
    Complex m1 = kummer_M(a, b, z, target, mp1);
    Complex m2 = kummer_M(a - b + Complex(1), Complex(2) - b, z, target, mp2);
    ComplexValue lg1 = log_gamma(Complex(1) - b, inner);
    ComplexValue lg2 = log_gamma(a - b + Complex(1), inner);
    ComplexValue lg3 = log_gamma(b - Complex(1), inner);
    ComplexValue lg4 = log_gamma(a, inner);
    Complex t1 = cexp(lg1.z - lg2.z) * m1;
    Complex t2 = cexp(lg3.z - lg4.z) * rpow(z, Complex(1) - b) * m2;
    Complex u = t1 + t2;
    double lost = std::log10(std::max(mp1, mp2) / std::max(cabs(u).to_double(), 1e-300));
    cancel_digits = std::max(0.0, lost);
    return u;
}

// Asymptotic series U(a,b,z) ~ z^{-a} sum_n (a)_n (a-b+1)_n / (n! (-z)^n).
bool kummer_U_asymptotic(const Complex& a, const Complex& b, const Real& z,
                         double target_rel, Complex& out, double& err_rel) {
    Complex term(1), acc(1);
    double prev = 1e300;
    err_rel = 1e300;
    for (long n = 1; n < 4000; ++n) {
        Complex f = (a + Complex(Real(n - 1))) * (a - b + Complex(Real(n)));
        term = term * f / (Real(-n) * z);
        double tm = cabs(term).to_double();
        if (tm > prev) { err_rel = prev; break; }
        acc += term;
        prev = tm;
        err_rel = tm;
        if (tm < target_rel) break;
    }
    double accm = std::max(cabs(acc).to_double(), 1e-300);
    err_rel /= accm;
    if (err_rel > 1e-2) return false;
    out = rpow(z, -a) * acc;
    return true;
}

} // namespace

ComplexValue whittaker_W(const Real& kappa, const Complex& mu, const Real& y,
                         const PrecisionContext& ctx) {
    if (y.to_double() <= 0)
        throw Error(ErrorKind::unsupported, "whittaker_W requires y > 0");

    double yd = y.to_double();
    double kd = kappa.to_double();
    double mre = mu.re.to_double(), mim = mu.im.to_double();

    // Terminating Laguerre closed form (raised holomorphic forms land here).
    if (mim == 0.0) {
        double a = mre - kd + 0.5;
        if (near_integer(a) && a <= 0.25) {
            PrecisionScope scope(ctx.working_digits + 15);
            long m = static_cast<long>(std::llround(-a));
            return whittaker_laguerre(kappa, mu.re, y, m);
        }
    }

    Complex a = mu - Complex(kappa) + Complex(0.5);
    Complex b = Complex(1) + Complex(2) * mu;
    double target = ctx.full_target();

    // Large y: asymptotic series in 1/y.
    double param_scale = std::max({std::abs(kd), std::abs(mre) + std::abs(mim), 1.0});
    if (yd > std::max(2.5 * ctx.working_digits, 4.0 * param_scale)) {
        PrecisionScope scope(ctx.working_digits + 10);
        Complex u;
        double err_rel = 0;
        if (kummer_U_asymptotic(a, b, y, target, u, err_rel)) {
            Complex val = cexp(Complex(-y * Real(0.5))) * rpow(y, mu + Complex(0.5)) * u;
            double mag = cabs(val).to_double();
            return {val, mag * err_rel + mag * 1e-2 * target};
        }
    }

    // Kummer pair when b is safely non-integer.
    bool b_integer = (std::abs(mim) < 1e-12) && near_integer(1 + 2 * mre, 1e-9);
    if (!b_integer) {
        int guard = static_cast<int>(0.5 * yd / 2.302585) + 20;
        int total = ctx.working_digits + guard;
        PrecisionScope scope(total);
        PrecisionContext inner(std::max(30, total - 8));
        double cancel = 0;
        Complex u = kummer_U_pair(a, b, y, inner, cancel);
        if (cancel < guard - 4) {
            Complex val = cexp(Complex(-y * Real(0.5))) * rpow(y, mu + Complex(0.5)) * u;
            double mag = cabs(val).to_double();
            return {val, mag * std::pow(10.0, -(total - cancel) + 6)};
        }
        // fall through to the integral route if cancellation ate the budget
    }

    // Integral representation, needs Re(a) > 0:
    // W = e^{-y/2} y^kappa / Gamma(a) * int_0^inf e^{-t} t^{a-1} (1+t/y)^{kappa+mu-1/2} dt
    if (a.re.to_double() > 1e-8) {
        PrecisionScope scope(ctx.working_digits + 10);
        PrecisionContext inner(std::max(30, ctx.working_digits));
        Complex expo = Complex(kappa) + mu - Complex(0.5);
        auto f = [&](const Complex& tc) -> Complex {
            Real t = tc.re;
            if (t.to_double() <= 0) return Complex(0);
            Complex lt = clog(Complex(t));
            Complex lq = clog(Complex(Real(1) + t / y));
            return cexp((a - Complex(1)) * lt + expo * lq - Complex(t));
        };
        ComplexValue integral = integrate_halfline(f, ctx.quadrature_step_target);
        ComplexValue lga = log_gamma(a, inner);
        Complex val = cexp(Complex(-y * Real(0.5)) + Complex(kappa) * log(y) - lga.z) * integral.z;
        double mag = cabs(val).to_double();
        double rel = integral.err / std::max(cabs(integral.z).to_double(), 1e-300);
        return {val, mag * (rel + lga.err + 1e-2 * target)};
    }

    throw Error(ErrorKind::unsupported,
                "whittaker_W: no applicable evaluation route for these parameters");
}

MellinCheck mellin_whittaker_check(const Real& kappa, const Complex& mu,
                                   const Complex& s, const PrecisionContext& ctx) {
    // Convergence needs Re(s + kappa - 1/2 +- mu) > 0.
    double c1 = (s.re + kappa - Real(0.5) + mu.re).to_double();
    double c2 = (s.re + kappa - Real(0.5) - mu.re).to_double();
    if (c1 <= 0.05 || c2 <= 0.05)
        throw Error(ErrorKind::divergence, "Mellin integral outside convergence region");

    PrecisionContext inner(std::max(30, ctx.working_digits));
    Complex expo = s + Complex(kappa) - Complex(1);  // integrand y^{s+kappa-1} dy/y

    auto f = [&](const Complex& tc) -> Complex {
        Real yv = tc.re;
        ComplexValue w = whittaker_W(kappa, mu, yv, inner);
        return w.z * cexp((expo - Complex(1)) * clog(Complex(yv)) - Complex(yv * Real(0.5)));
    };
    ComplexValue lhs = integrate_halfline(f, std::max(ctx.quadrature_step_target, 1e-24));

    ComplexValue lg1 = log_gamma(s + Complex(kappa) - Complex(0.5) + mu, inner);
    ComplexValue lg2 = log_gamma(s + Complex(kappa) - Complex(0.5) - mu, inner);
    ComplexValue lg3 = log_gamma(s, inner);
    Complex rhs = cexp(lg1.z + lg2.z - lg3.z);
    double rmag = cabs(rhs).to_double();
    return {lhs, ComplexValue{rhs, rmag * (lg1.err + lg2.err + lg3.err + 1e-30)}};
}

} // namespace rsm
