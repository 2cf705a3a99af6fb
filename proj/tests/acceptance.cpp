// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Every tolerance is pinned here, in code.

#include "rsmoment/moments.hpp"
#include "rsmoment/report.hpp"
#include "rsmoment/specialfn.hpp"
#include "rsmoment/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

using namespace rsm;

namespace {

int g_failures = 0;

void verdict(int crit, bool ok, const std::string& what, const std::string& detail) {
    std::printf("CRITERION %d [%s] %s — %s\n", crit, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(std::clock_t t0) { return double(std::clock() - t0) / CLOCKS_PER_SEC; }

// -------------------------------------------------------------------------

void criterion_1_weight_normalisation() {
    PrecisionContext ctx(36);
    double worst = 0;
    for (int k = 12; k <= 60; k += 2)
        worst = std::max(worst, std::abs((h_hol(k, k, ctx) - Real(1)).to_double()));
    verdict(1, worst < 1e-12, "h_hol(k,k) = 1 for even k in [12,60] at 1e-12",
            "max deviation " + std::to_string(worst));
}

void criterion_2_method_triangle() {
    PrecisionContext ctx(30);
    double worst_rel = 0;
    double cmin = 1e300, cmax = 0;
    std::string detail;
    for (int k = 12; k <= 60; k += 2) {
        if (cusp_dim(k) == 0) continue;
        auto g = hecke_eigenforms(k, std::max<long>(6000, 2 * cusp_dim(k) + 9), ctx)[0];
        Real lim = m0_by_limit(k, g, ctx);
        TorusContour tc;
        Real res = m0_by_residue(k, g, tc, ctx);
        Real scl = m0_scaled_residue(k, g, tc, ctx);
        double rel = std::abs(((lim - res) / res).to_double());
        worst_rel = std::max(worst_rel, rel);
        double c = std::abs((scl - res).to_double()) / std::sqrt(double(k));
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    bool ok = worst_rel < 1e-6 && cmax / cmin < 2.0;
    detail = "max limit/residue rel " + std::to_string(worst_rel) +
             "; C = |scaled-residue|/sqrt(k) in [" + std::to_string(cmin) + ", " +
             std::to_string(cmax) + "], variation " + std::to_string(cmax / cmin) + "x";
    verdict(2, ok, "m0 limit/residue agree to 1e-6 and the sqrt(k) constant is stable on [12,60]", detail);
}

void criterion_3_laurent_vs_quadrature() {
    PrecisionContext ctx(36);
    double worst = 0;
    for (int k : {12, 16, 20}) {
        auto g = hecke_eigenforms(k, 6000, ctx)[0];
        AdjointDerivatives ad = adjoint_derivs(g, ctx);
        auto dec = laurent_polynomials(k, g, ad, ctx);
        TorusContour tc;
        Real scl = m0_scaled_residue(k, g, tc, ctx);
        double rel = std::abs(((dec.main_value - scl) / scl).to_double());
        worst = std::max(worst, rel);
        bool degs = true;
        for (int j = 0; j < 4; ++j) degs = degs && dec.p_polys[j].degree(1e-12) == j;
        if (!degs) worst = 1.0;
    }
    verdict(3, worst < 1e-8, "Laurent main value matches the psi torus residue to 1e-8 at k in {12,16,20}",
            "max relative difference " + std::to_string(worst));
}

void criterion_4_exact_identity() {
    struct Setting { int digits; double quad; };
    std::vector<Setting> settings = {{30, 1e-5}, {33, 1e-8}, {36, 1e-11}};
    bool all_pass = true, monotone = true;
    std::string detail;
    for (int k : {16, 20, 24}) {
        double prev = 1e300;
        for (const auto& st : settings) {
            PrecisionContext ctx(st.digits);
            ctx.quadrature_step_target = st.quad;
            IdentityReport rep = verify_identity(k, 0, {}, ctx);
            double dev = rep.abs_deviation.to_double();
            all_pass = all_pass && rep.pass;
            if (dev >= prev) monotone = false;
            prev = dev;
            detail += "k=" + std::to_string(k) + "@" + std::to_string(st.digits) + "d: |L-R|=" +
                      std::to_string(dev) + (rep.pass ? " ok; " : " FAIL; ");
        }
    }
    verdict(4, all_pass && monotone,
            "exact identity at k in {16,20,24}, margin shrinking over three precision settings",
            detail + (monotone ? "monotone" : "NOT monotone"));
}

void criterion_5_positivity_certificate() {
    PrecisionContext ctx(30);
    bool s1_ok = true, s2_ok = true, s4_ok = true, m0_pos = true;
    double s1_floor = 1e300, ratio2_min = 1e300, ratio6_max = 0;
    std::string worst_note;
    for (int k = 12; k <= 100; k += 2) {
        if (cusp_dim(k) == 0) continue;
        long nmax = static_cast<long>(k) * k + 8;
        auto g = hecke_eigenforms(k, std::max<long>(nmax, 6000), ctx)[0];
        AdjointDerivatives ad = adjoint_derivs(g, ctx);
        auto dec = laurent_polynomials(k, g, ad, ctx);
        double m0 = dec.main_value.to_double();  // equals the residue route to 1e-8
        double lk = std::log(double(k));
        if (m0 <= 0) { m0_pos = false; worst_note += "m0<=0 at k=" + std::to_string(k) + "; "; }
        ratio2_min = std::min(ratio2_min, m0 / (k * lk * lk));
        ratio6_max = std::max(ratio6_max, m0 / (k * std::pow(lk, 6.0)));

        auto cert = lower_bound_certificate(k, g, nmax - 8, ctx);
        s1_floor = std::min(s1_floor, cert.s1_ratio);
        if (!cert.s1_ok) s1_ok = false;
        if (!cert.s2_ok) s2_ok = false;
        if (!cert.s4_ok) s4_ok = false;
    }
    // The verdict is the conjunction demanded; desk-scale failures are
    // reported with their measured values rather than softened.
    bool ok = s1_ok && s2_ok && s4_ok && m0_pos;
    std::string detail = "S1/(log k)^2 floor " + std::to_string(s1_floor) +
                         " (required >= 0.5); S2 >= 0 " + (s2_ok ? "holds" : "fails") +
                         "; S4 budget <= k^-9 " + (s4_ok ? "holds" : "fails") +
                         "; M0 > 0 " + (m0_pos ? "holds" : "fails") +
                         "; M0/(k log^2 k) >= " + std::to_string(ratio2_min) +
                         "; M0/(k log^6 k) <= " + std::to_string(ratio6_max) + "; " + worst_note;
    verdict(5, ok, "positivity certificate over even k in [12,100]", detail);
}

void criterion_6_weight_bound_sweeps() {
    PrecisionContext ctx(30);
    bool ok = true;
    double worst_mm = 0, global_max = 0;
    // The decay lemmas are one-sided envelopes; ratios are collected where
    // each envelope is sharp (l near k; t on the sqrt(k) scale and at the
    // |t| = k branch edge), swept across the k grid.
    for (int k : {12, 24, 40, 60}) {
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
            if (!std::isfinite(r.max_ratio)) ok = false;
            worst_mm = std::max(worst_mm, r.max_over_median);
            global_max = std::max(global_max, r.max_ratio);
        }
    }
    ok = ok && worst_mm <= 10.0;
    verdict(6, ok, "weight/envelope ratios finite with max/median <= 10 on sharp-zone grids",
            "worst max/median " + std::to_string(worst_mm) + "; absolute cap " + std::to_string(global_max));
}

void criterion_7_w2_nonnegativity_asymptotic() {
    PrecisionContext ctx(30);
    bool nonneg = true;
    for (int k : {12, 50, 100, 200}) {
        for (long n : {1L, 2L, 3L, 5L, 8L, 13L, 40L, 144L, 1000L}) {
            if (w2_weight(n, k, ctx).to_double() < 0) nonneg = false;
        }
    }
    // fitted constant of the |W2 - log^2 X| <= C (1 + log X) comparison
    double cmin = 1e300, cmax = 0;
    for (int k : {50, 100, 200}) {
        double cfit = 0;
        double kd = k / (4 * M_PI * M_PI);
        for (long n = 1; n < kd; ++n) {
            double lx = std::log(kd / n);
            double w2 = w2_weight(n, k, ctx).to_double();
            cfit = std::max(cfit, std::abs(w2 - lx * lx) / (1.0 + lx));
        }
        cmin = std::min(cmin, cfit);
        cmax = std::max(cmax, cfit);
    }
    bool stable = cmax / cmin < 2.0;
    verdict(7, nonneg && stable, "W2 >= 0 and the asymptotic comparison constant is stable over k in {50,100,200}",
            std::string("nonnegativity ") + (nonneg ? "holds" : "fails") +
                "; fitted C in [" + std::to_string(cmin) + ", " + std::to_string(cmax) +
                "], variation " + std::to_string(cmax / cmin) + "x");
}

void criterion_8_unfolding() {
    PrecisionContext ctx(30);
    auto g = hecke_eigenforms(12, 6000, ctx)[0];
    LFunctionDescriptor ad = build_adjoint(g);
    AdjointInput adj;
    adj.L_ad_one = evaluate(ad, Complex(1), ctx).z.re;
    adj.L_ad_half_it = evaluate(ad, Complex(0.5), ctx).z;
    EisensteinTruncation trunc(400, 24);
    auto check = fundamental_domain_inner_product(*g, Real(0), trunc, 20, adj, ctx);
    double rel = cabs(check.quadrature.z - check.closed_form.z).to_double() /
                 cabs(check.closed_form.z).to_double();
    double norm_dev = std::abs((check.one_norm - Real(1)).to_double());

    double mellin_worst = 0;
    for (int i = 0; i < 10; ++i) {
        double kk = 12 + 2 * (i % 3);
        double ll = kk - 2 * (i % 2);
        Complex mu{(ll - 1) / 2.0, 0.0};
        Complex s{1.5 + 0.25 * i, 0.3 * (i % 2)};
        auto m = mellin_whittaker_check(Real(kk / 2), mu, s, ctx);
        mellin_worst = std::max(mellin_worst,
                                cabs(m.lhs.z - m.rhs.z).to_double() / (1 + cabs(m.rhs.z).to_double()));
    }
    bool ok = rel < 1e-4 && norm_dev < 1e-6 && mellin_worst < 1e-8;
    verdict(8, ok, "fundamental-domain unfolding at (k,t)=(12,0) to 1e-4 and Mellin identity to 1e-8",
            "inner product rel " + std::to_string(rel) + "; |<1,|G|^2>-1| = " + std::to_string(norm_dev) +
                "; Mellin worst " + std::to_string(mellin_worst));
}

void criterion_9_evaluator_hygiene() {
    PrecisionContext ctx(36);
    auto g12 = hecke_eigenforms(12, 6000, ctx)[0];
    auto g16 = hecke_eigenforms(16, 6000, ctx)[0];
    std::vector<Complex> pts = {Complex(0.8, 0.4), Complex(1.25, 1.1), Complex(0.65, -0.8)};
    double fe_worst = 0;
    std::vector<LFunctionDescriptor> descs;
    descs.push_back(build_zeta_descriptor());
    descs.push_back(build_gl2(g12));
    descs.push_back(build_gl2(g16));
    descs.push_back(build_adjoint(g12));
    descs.push_back(build_adjoint(g16));
    descs.push_back(build_rankin_selberg(g12, g16, ctx));
    for (auto& d : descs) {
        auto rep = functional_equation_check(d, pts, ctx);
        fe_worst = std::max(fe_worst, rep.max_violation.to_double());
    }

    LFunctionDescriptor ad = build_adjoint(g12);
    LFunctionDescriptor rs = build_rankin_selberg(g12, g12, ctx);
    double fact_worst = 0;
    for (int i = 0; i < 10; ++i) {
        Complex s{1.2 + 0.18 * i, 0.3 * (i % 3)};
        auto a = evaluate(ad, s, ctx);
        auto z = zeta(s, ctx);
        auto r = evaluate(rs, s, ctx);
        fact_worst = std::max(fact_worst, cabs(z.z * a.z - r.z).to_double() / cabs(r.z).to_double());
    }

    double mult_worst = 0;
    for (auto g : {g12, g16}) {
        for (long m : {2L, 3L, 4L, 5L, 9L}) {
            for (long n : {3L, 5L, 7L, 8L}) {
                if (std::gcd(m, n) != 1 || m * n > g->n_max) continue;
                mult_worst = std::max(mult_worst,
                                      std::abs((g->lam(m) * g->lam(n) - g->lam(m * n)).to_double()));
            }
        }
    }
    bool ok = fe_worst < 1e-8 && fact_worst < 1e-10 && mult_worst < 1e-25;
    verdict(9, ok, "functional equations < 1e-8, factorisation to 1e-10, Hecke multiplicativity exact",
            "FE worst " + std::to_string(fe_worst) + "; factorisation worst " + std::to_string(fact_worst) +
                "; multiplicativity worst " + std::to_string(mult_worst));
}

} // namespace

int main() {
    std::clock_t t0 = std::clock();
    Real::set_working_digits(46);
    std::printf("acceptance suite (single-threaded, disk cache at %s)\n", "$RSMOMENT_CACHE or .rsmoment-cache");
    struct Step { const char* name; void (*fn)(); };
    std::vector<Step> steps = {
        {"weight normalisation", criterion_1_weight_normalisation},
        {"method triangle", criterion_2_method_triangle},
        {"laurent vs quadrature", criterion_3_laurent_vs_quadrature},
        {"exact identity", criterion_4_exact_identity},
        {"positivity certificate", criterion_5_positivity_certificate},
        {"weight bound sweeps", criterion_6_weight_bound_sweeps},
        {"W2 nonnegativity/asymptotic", criterion_7_w2_nonnegativity_asymptotic},
        {"unfolding spot-check", criterion_8_unfolding},
        {"evaluator hygiene", criterion_9_evaluator_hygiene},
    };
    for (auto& s : steps) {
        std::clock_t ts = std::clock();
        try {
            s.fn();
        } catch (const Error& e) {
            std::printf("CRITERION ? [FAIL] %s — threw %s\n", s.name, e.what());
            ++g_failures;
        }
        std::printf("  (%.1fs)\n", seconds_since(ts));
        std::fflush(stdout);
    }
    std::printf("acceptance total: %.1fs, %d failing criteria\n", seconds_since(t0), g_failures);
    return g_failures == 0 ? 0 : 1;
}
