#include <doctest.h>

#include "rsmoment/weights.hpp"
#include "rsmoment/specialfn.hpp"

#include <cmath>

using namespace rsm;

namespace {
PrecisionContext ctx30() { return PrecisionContext(30); }
}

TEST_SUITE_BEGIN("weights");

TEST_CASE("h_hol normalisation and support") {
    Real::set_working_digits(40);
    auto ctx = ctx30();
    for (int k = 12; k <= 60; k += 2)
        CHECK(abs(h_hol(k, k, ctx) - Real(1)).to_double() < 1e-12);
    CHECK(h_hol(14, 12, ctx).is_zero());
    CHECK(h_hol(62, 60, ctx).is_zero());
}

TEST_CASE("h_hol(10,12) against exact half-integer gamma arithmetic") {
    Real::set_working_digits(40);
    auto ctx = ctx30();
    // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!), so the ratio collapses to
    // an exact rational times a power of pi.
    auto hgamma = [&](long n) {  // Gamma(n + 1/2)
        mpz_class f2n, fn, p4;
        mpz_fac_ui(f2n.get_mpz_t(), 2 * n);
        mpz_fac_ui(fn.get_mpz_t(), n);
        mpz_ui_pow_ui(p4.get_mpz_t(), 4, n);
        return Real(mpz_class(f2n)) / (Real(mpz_class(p4)) * Real(mpz_class(fn))) * sqrt(real_pi());
    };
    // (1/pi) G(12)/G(11.5)^2 * G(10.5)^2 G(1.5)^2 / (G(11) G(2))
    Real expect = factorial(11) / (hgamma(11) * hgamma(11))
                * hgamma(10) * hgamma(10) * hgamma(1) * hgamma(1)
                / (factorial(10) * Real(1)) / real_pi();
    CHECK(abs(h_hol(10, 12, ctx) - expect).to_double() < 1e-25);
    CHECK(h_hol(10, 12, ctx).to_double() > 0);
}

TEST_CASE("h_maass symmetry, positivity, and direct-gamma oracle") {
    Real::set_working_digits(40);
    auto ctx = ctx30();
    for (double t : {0.0, 1.5, 7.0, 30.0}) {
        Real a = h_maass(Real(t), 12, ctx);
        Real b = h_maass(Real(-t), 12, ctx);
        CHECK(abs(a - b).to_double() < 1e-25 * std::abs(a.to_double()));
        CHECK(a.to_double() > 0);
    }
    // t = 0: everything is real Gamma, checkable via the real lngamma oracle
    Real direct = exp(lngamma_real(Real(12)) - Real(2) * lngamma_real(Real(11.5))
                    + Real(4) * lngamma_real(Real(6)) - Real(2) * lngamma_real(Real(6.5))) / real_pi();
    CHECK(abs(h_maass(Real(0), 12, ctx) - direct).to_double() < 1e-25);

    // 2^k sqrt(k) h(0,k) stays bounded on the k grid
    double worst = 0;
    for (int k = 12; k <= 60; k += 8) {
        Real v = h_maass(Real(0), k, ctx);
        double scaled = v.to_double() * std::pow(2.0, k) * std::sqrt((double)k);
        worst = std::max(worst, scaled);
        CHECK(std::isfinite(scaled));
    }
    CHECK(worst < 50.0);
}

TEST_CASE("h_tilde conjugation and reality at t=0") {
    Real::set_working_digits(40);
    auto ctx = ctx30();
    for (double t : {0.4, 2.0, 9.0}) {
        Complex a = h_tilde(Real(t), 12, ctx);
        Complex b = h_tilde(Real(-t), 12, ctx);
        CHECK(cabs(conj(a) - b).to_double() < 1e-22 * cabs(a).to_double());
    }
    Complex v0 = h_tilde(Real(0), 12, ctx);
    CHECK(std::abs(v0.im.to_double()) < 1e-25 * std::abs(v0.re.to_double()));
}

TEST_CASE("log-space evaluation does not overflow at large arguments") {
    Real::set_working_digits(36);
    auto ctx = ctx30();
    Real a = h_maass(Real(600), 200, ctx);
    CHECK(std::isfinite(a.to_double()));
    CHECK(a.to_double() >= 0);
    Complex b = h_tilde(Real(600), 200, ctx);
    CHECK(std::isfinite(cabs(b).to_double()));
    Real c = h_hol(198, 200, ctx);
    CHECK(std::isfinite(c.to_double()));
}

TEST_CASE("bound-ratio sweeps stay tame on sharp-zone grids") {
    Real::set_working_digits(36);
    auto ctx = ctx30();
    for (int k : {12, 24, 40}) {
        double sq = std::sqrt(double(k));
        std::vector<Real> tg;
        for (double f : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) tg.emplace_back(f * sq);
        tg.emplace_back(1.3 * sq);
        tg.emplace_back(1.05 * k);
        std::vector<int> lg;
        for (int l = std::max(2, k - 8); l <= k; l += 2) lg.push_back(l);
        auto table = verify_weight_bounds(k, tg, lg, ctx);
        for (const auto& r : table.bound_ratios) {
            if (r.max_ratio == 0) continue;
            CHECK(std::isfinite(r.max_ratio));
            CHECK(r.max_over_median <= 10.0);
        }
        // positivity on the grids
        for (const auto& [l, v] : table.hol_values) CHECK(v.to_double() >= 0);
        for (const auto& [t, v] : table.maass_values) CHECK(v.to_double() > 0);
        // wide sweeps still give finite maxima even far below the envelope
        std::vector<Real> wide;
        for (double t = 0.25; t <= 3.0 * k; t *= 2.0) wide.emplace_back(t);
        auto table2 = verify_weight_bounds(k, wide, {2, k / 2 * 2 - 2}, ctx);
        for (const auto& r : table2.bound_ratios) CHECK(std::isfinite(r.max_ratio));
        std::string csv = weight_table_csv(table);
        CHECK(csv.find("ratio,") != std::string::npos);
    }
    std::vector<Real> bad = {Real(100.0)};
    CHECK_THROWS_AS(verify_weight_bounds(12, bad, {}, ctx), Error);
}

TEST_CASE("h_hol geometric-sum envelope") {
    Real::set_working_digits(36);
    auto ctx = ctx30();
    // sum over even l < k of ((k-l)/(2(k-1)))^{(k-l)/2} <= C/k
    double worst = 0;
    for (int k = 12; k <= 80; k += 4) {
        double acc = 0;
        for (int l = 2; l < k; l += 2) {
            double m = (k - l) / 2.0;
            acc += std::exp(m * std::log((k - l) / (2.0 * (k - 1))));
        }
        worst = std::max(worst, acc * k);
    }
    CHECK(worst < 20.0);
    (void)ctx;
}

TEST_SUITE_END();
