#include "rsmoment/specialfn.hpp"
#include "rsmoment/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace rsm {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::pole_input: return "pole-input";
        case ErrorKind::precision_failure: return "precision-failure";
        case ErrorKind::divergence: return "divergence";
        case ErrorKind::truncation_insufficient: return "truncation-insufficient";
        case ErrorKind::quadrature_failure: return "quadrature-failure";
        case ErrorKind::contour_through_pole: return "contour-through-pole";
        case ErrorKind::extrapolation_divergence: return "extrapolation-divergence";
        case ErrorKind::dimension_zero: return "dimension-zero";
        case ErrorKind::eigenvalue_collision: return "eigenvalue-collision";
        case ErrorKind::insufficient_coefficients: return "insufficient-coefficients";
        case ErrorKind::pole_in_disc: return "pole-in-disc";
        case ErrorKind::validation_failure: return "validation-failure";
        case ErrorKind::parse_error: return "parse-error";
        case ErrorKind::summation_budget_exceeded: return "summation-budget-exceeded";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::io_error: return "io-error";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Bernoulli numbers, exact rationals via the classical recurrence
//   sum_{j=0}^{m} C(m+1, j) B_j = 0.

namespace {
std::vector<mpq_class> g_bern = {mpq_class(1), mpq_class(-1, 2)};
std::mutex g_bern_mutex;
}

const mpq_class& bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(g_bern_mutex);
    while (g_bern.size() <= n) {
        unsigned m = static_cast<unsigned>(g_bern.size());
        if (m % 2 == 1) { g_bern.emplace_back(0); continue; }
        mpq_class acc(0);
        mpz_class binom;
        for (unsigned j = 0; j < m; ++j) {
            if (g_bern[j] == 0) continue;
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
            acc += binom * g_bern[j];
        }
        acc /= mpz_class(m + 1);
        g_bern.emplace_back(-acc);
    }
    return g_bern[n];
}

// ---------------------------------------------------------------------------
// log Gamma

namespace {

// Stirling series at z with Re(z) large enough; returns value and the size of
// the first omitted term as error.
ComplexValue log_gamma_stirling(const Complex& z, double target_abs, long max_terms) {
    Complex lz = clog(z);
    Complex acc = (z - Complex(0.5)) * lz - z;
    acc.re += Real(0.5) * log(Real(2) * real_pi());

    Complex z2inv = Complex(1) / (z * z);
    Complex zpow = Complex(1) / z;  // z^{-(2n-1)}
    double prev = 1e300;
    double err = 0;
    for (long n = 1; n <= max_terms; ++n) {
        Real coef(mpq_class(bernoulli(2 * n) / (mpz_class(2 * n) * mpz_class(2 * n - 1))));
        Complex term = coef * zpow;
        double tmag = cabs(term).to_double();
        if (tmag > prev) { err = prev; break; }  // asymptotic tail turning
        acc += term;
        prev = tmag;
        err = tmag;
        if (tmag < target_abs) break;
        zpow *= z2inv;
    }
    return {acc, err};
}

} // namespace

ComplexValue log_gamma(const Complex& z, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 10);
    double target = ctx.full_target() * 1e-4;

    double zre = z.re.to_double(), zim = z.im.to_double();
    if (zim == 0.0 && zre <= 0.0 && std::abs(zre - std::round(zre)) < 1e-14)
        throw Error(ErrorKind::pole_input, "log_gamma at nonpositive integer " + z.re.str(6));

    // Shift until the Stirling series at z+m converges to target.
    double R = std::max(10.0, 0.42 * ctx.working_digits + 6.0);
    long m = 0;
    if (std::abs(zim) < R) {
        m = static_cast<long>(std::max(0.0, std::ceil(R - zre)));
    } else if (zre < 0.5) {
        m = static_cast<long>(std::ceil(0.5 - zre));
    }

    Complex zs = z + Complex(Real(m));
    ComplexValue s = log_gamma_stirling(zs, target, 8 * ctx.working_digits);
    Complex corr(0);
    for (long j = 0; j < m; ++j) corr += clog(z + Complex(Real(j)));
    double mag = std::max(1.0, cabs(s.z).to_double());
    return {s.z - corr, s.err + mag * 1e3 * std::pow(10.0, -(ctx.working_digits + 10))};
}

// ---------------------------------------------------------------------------
// Riemann zeta, Euler-Maclaurin:
//   zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//           + sum_j B_{2j}/(2j)! * (s)(s+1)...(s+2j-2) * N^{-s-2j+1}
// The explicit N^{1-s}/(s-1) term keeps the formula uniformly accurate
// near the pole, which the main-term contours rely on.

ComplexValue zeta(const Complex& s, const PrecisionContext& ctx) {
    if (s.im.is_zero() && abs(s.re - Real(1)).to_double() < 1e-30)
        throw Error(ErrorKind::pole_input, "zeta at s=1");

    PrecisionScope scope(ctx.working_digits + 10);
    double target = ctx.full_target() * 1e-4;
    double tim = std::abs(s.im.to_double());

    long N = static_cast<long>(std::ceil(std::max(1.4 * ctx.working_digits + 8.0, 0.8 * tim + 8.0)));
    for (int attempt = 0; attempt < 3; ++attempt) {
        Complex acc(0);
        for (long n = 1; n < N; ++n) acc += rpow(Real(n), -s);
        Real rN{N};
        Complex Ns = rpow(rN, -s);
        acc += (Ns * rN) / (s - Complex(1));
        acc += Real(0.5) * Ns;

        // Correction terms, built incrementally.
        Complex poch = s;             // (s)(s+1)...(s+2j-2), starts at j=1
        Complex npow = Ns / rN;       // N^{-s-2j+1}
        Real n2inv = Real(1) / (rN * rN);
        double prev = 1e300, err = 1e300;
        bool converged = false;
        for (long j = 1; j <= 6 * ctx.working_digits; ++j) {
            Real coef{mpq_class(bernoulli(2 * j))};
            mpz_class fact;
            mpz_fac_ui(fact.get_mpz_t(), 2 * j);
            coef /= Real(mpz_class(fact));
            Complex term = coef * poch * npow;
            double tmag = cabs(term).to_double();
            if (tmag > prev) { err = prev; break; }  // divergent turn; N too small
            acc += term;
            prev = tmag;
            err = tmag;
            if (tmag < target * (1.0 + cabs(acc).to_double())) { converged = true; break; }
            poch *= (s + Complex(Real(2 * j - 1))) * (s + Complex(Real(2 * j)));
            npow = npow * n2inv;
        }
        if (converged) {
            double mag = std::max(1.0, cabs(acc).to_double());
            return {acc, err + mag * std::pow(10.0, -(ctx.working_digits + 8))};
        }
        N *= 2;
        if (N > ctx.truncation_bound)
            throw Error(ErrorKind::precision_failure, "zeta Euler-Maclaurin did not converge at s=" + s.str(8));
    }
    throw Error(ErrorKind::precision_failure, "zeta Euler-Maclaurin failed at s=" + s.str(8));
}

// ---------------------------------------------------------------------------
// Laurent data of zeta at 1.

std::vector<Real> zeta_laurent_series(int order, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 15);
    PrecisionContext inner(std::max(30, ctx.working_digits + 10));

    // f(w) = zeta(1+w) - 1/w is entire; Taylor coefficients by uniform
    // circle quadrature. Radius 0.25 balances decay against node count.
    int M = std::max(64, 8 * order);
    Real r(0.25);
    std::vector<Complex> fvals(M);
    Real two_pi = Real(2) * real_pi();
    for (int m = 0; m < M; ++m) {
        Real theta = two_pi * Real(m) / Real(M);
        Real st(0), ct(0);
        sin_cos(theta, st, ct);
        Complex w{r * ct, r * st};
        fvals[m] = zeta(Complex(1) + w, inner).z - Complex(1) / w;
    }
    std::vector<Real> out;
    out.reserve(order + 1);
    out.push_back(Real(1));  // c_{-1}: simple pole, residue 1
    for (int j = 0; j + 1 <= order; ++j) {
        Complex acc(0);
        for (int m = 0; m < M; ++m) {
            Real theta = -two_pi * Real(j) * Real(m) / Real(M);
            Real st(0), ct(0);
            sin_cos(theta, st, ct);
            acc += fvals[m] * Complex(ct, st);
        }
        acc = acc / Real(M);
        acc.re /= pow_si(r, j);
        double im_leak = abs(acc.im).to_double() / pow_si(r, j).to_double();
        if (im_leak > ctx.half_digit_target())
            throw Error(ErrorKind::precision_failure, "zeta Laurent circle quadrature not converged");
        out.push_back(acc.re);
    }
    return out;
}

std::vector<Real> zeta_laurent_at_1(int order, const PrecisionContext& ctx) {
    if (order < 0 || order > 8)
        throw Error(ErrorKind::unsupported, "zeta_laurent_at_1 supports order <= 8");
    std::vector<Real> full = zeta_laurent_series(order, ctx);
    full.resize(order + 1, Real(0));
    return full;  // c_{-1}, c_0, ..., c_{order-1}
}

// ---------------------------------------------------------------------------

ComplexValue completed_xi(const Complex& s, const PrecisionContext& ctx) {
    double d0 = cabs(s).to_double();
    double d1 = cabs(s - Complex(1)).to_double();
    if (d0 < 1e-25 || d1 < 1e-25)
        throw Error(ErrorKind::pole_input, "xi has poles at s=0,1");
    PrecisionScope scope(ctx.working_digits + 10);
    ComplexValue lg = log_gamma(s * Real(0.5), ctx);
    ComplexValue z = zeta(s, ctx);
    Complex pref = cexp(lg.z - Real(0.5) * log(real_pi()) * s);
    Complex val = pref * z.z;
    double pm = cabs(pref).to_double();
    return {val, pm * z.err + cabs(z.z).to_double() * pm * lg.err + 1e-2 * ctx.full_target() * cabs(val).to_double()};
}

Real stirling_log_abs_gamma(const Real& sigma, const Real& tau) {
    if (sigma.to_double() < 0.1)
        throw Error(ErrorKind::unsupported, "stirling_log_abs_gamma needs sigma >= 0.1");
    Real at = abs(tau);
    return Real(0.5) * (sigma - Real(0.5)) * log(sigma * sigma + tau * tau)
         - at * atan(at / sigma) - sigma;
}

ComplexValue gamma_ratio(const std::vector<Complex>& num, const std::vector<Complex>& den,
                         const PrecisionContext& ctx) {
    Complex acc(0);
    double err = 0;
    for (const auto& z : num) { ComplexValue v = log_gamma(z, ctx); acc += v.z; err += v.err; }
    for (const auto& z : den) { ComplexValue v = log_gamma(z, ctx); acc -= v.z; err += v.err; }
    Complex val = cexp(acc);
    return {val, cabs(val).to_double() * err * (1 + err)};
}

} // namespace rsm
