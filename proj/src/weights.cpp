#include "rsmoment/weights.hpp"
#include "rsmoment/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rsm {

namespace {

Real lg_real(const Real& x, const PrecisionContext& ctx) {
    return log_gamma(Complex(x), ctx).z.re;
}

} // namespace

Real h_hol(int l, int k, const PrecisionContext& ctx) {
    if (l <= 0 || k <= 0 || l % 2 || k % 2)
        throw Error(ErrorKind::unsupported, "h_hol needs positive even arguments");
    if (l > k) return Real(0);
    PrecisionScope scope(ctx.working_digits + 10);
    Real kk{k}, ll{l};
    Real lg = lg_real(kk, ctx) - Real(2) * lg_real(kk - Real(0.5), ctx)
            + Real(2) * lg_real((kk + ll - Real(1)) * Real(0.5), ctx)
            + Real(2) * lg_real((kk - ll + Real(1)) * Real(0.5), ctx)
            - lg_real((kk + ll) * Real(0.5), ctx)
            - lg_real((kk - ll) * Real(0.5) + Real(1), ctx);
    return exp(lg) / real_pi();
}

Real h_maass(const Real& t, int k, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 10);
    Real kk{k};
    Complex it{Real(0), t};
    // Gamma(k/2+it)^2 Gamma(k/2-it)^2 = |Gamma(k/2+it)|^4 for real t, and
    // likewise below; everything stays in log space.
    ComplexValue a = log_gamma(Complex(kk * Real(0.5)) + it, ctx);
    ComplexValue b = log_gamma(Complex((kk + Real(1)) * Real(0.5)) + it, ctx);
    Real lg = lg_real(kk, ctx) - Real(2) * lg_real(kk - Real(0.5), ctx)
            + Real(4) * a.z.re - Real(2) * b.z.re;
    return exp(lg) / real_pi();
}

Complex h_tilde(const Real& t, int k, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 10);
    Real kk{k};
    Complex it{Real(0), t};
    ComplexValue g1 = log_gamma(Complex(kk - Real(0.5)) + it, ctx);
    ComplexValue g2 = log_gamma(Complex(0.25) + Complex(Real(0), t * Real(0.5)), ctx);
    ComplexValue g3 = log_gamma(Complex(0.25) - Complex(Real(0), t * Real(0.5)), ctx);
    ComplexValue g4 = log_gamma(Complex(0.5) - it, ctx);
    Real lgk = lg_real(kk, ctx) - Real(2) * lg_real(kk - Real(0.5), ctx);
    // 2^{-1-2it} pi^{-2-it}
    Complex expo = Complex(lgk) + g1.z + Real(2) * g2.z + Real(2) * g3.z - g4.z
                 - (Complex(1) + Complex(2) * it) * log(Real(2))
                 - (Complex(2) + it) * log(real_pi());
    return cexp(expo);
}

namespace {

void push_ratio(std::vector<double>& ratios, double weight, double envelope) {
    if (envelope <= 0) return;
    ratios.push_back(weight / envelope);
}

BoundRatio summarize(const std::string& lemma, std::vector<double> ratios) {
    BoundRatio out;
    out.lemma = lemma;
    if (ratios.empty()) return out;
    std::sort(ratios.begin(), ratios.end());
    out.max_ratio = ratios.back();
    out.median_ratio = ratios[ratios.size() / 2];
    out.max_over_median = (out.median_ratio > 0) ? out.max_ratio / out.median_ratio : 0.0;
    return out;
}

} // namespace

SpectralWeightTable verify_weight_bounds(int k, const std::vector<Real>& t_grid,
                                         const std::vector<int>& l_grid, const PrecisionContext& ctx) {
    for (const auto& t : t_grid)
        if (std::abs(t.to_double()) > 3.0 * k)
            throw Error(ErrorKind::unsupported, "t grid must stay within |t| <= 3k");
    SpectralWeightTable table;
    table.k = k;

    // One ratio pool per lemma, against the piecewise envelope. The decay
    // lemmas are one-sided: away from their sharp zones the true weights sit
    // exponentially far below the envelope, so a meaningful max/median
    // statistic requires grids concentrated where the envelope is attained
    // (near l = k for the holomorphic weight, small and branch-edge t for
    // the others); callers choose the grids accordingly.
    std::vector<double> hol_ratios, maass_ratios, tilde_ratios;
    for (int l : l_grid) {
        if (l % 2 || l <= 0) continue;
        Real v = h_hol(l, k, ctx);
        table.hol_values[l] = v;
        if (l < k) {
            // envelope (1/(k-l)) ((k-l)/(2(k-1)))^{(k-l)/2}
            double kl = k - l;
            double env = std::exp(std::log(kl / (2.0 * (k - 1))) * (kl / 2.0)) / kl;
            push_ratio(hol_ratios, v.to_double(), env);
        }
    }
    for (const auto& t : t_grid) {
        Real v = h_maass(t, k, ctx);
        table.maass_values.emplace_back(t, v);
        double td = std::abs(t.to_double());
        double sqk = std::sqrt(static_cast<double>(k));
        double lo = -k * std::log(2.0) - 0.5 * std::log(static_cast<double>(k));
        double env_m;
        if (td <= sqk) env_m = lo;
        else if (td <= k) env_m = lo - td * td / k;
        else env_m = 1.5 * std::log(static_cast<double>(k)) - k * std::log(2.0) - td - 2.0 * std::log(td);
        push_ratio(maass_ratios, v.to_double(), std::exp(env_m));

        Complex w = h_tilde(t, k, ctx);
        table.tilde_values.emplace_back(t, w);
        double wm = cabs(w).to_double();
        double env_t;
        if (td <= k) env_t = 0.5 * std::log(static_cast<double>(k)) - M_PI_2 * td - std::log1p(td);
        else env_t = std::log(static_cast<double>(k)) - M_PI_2 * td - 1.5 * std::log(td);
        push_ratio(tilde_ratios, wm, std::exp(env_t));
    }
    table.bound_ratios.push_back(summarize("hol", std::move(hol_ratios)));
    table.bound_ratios.push_back(summarize("maass", std::move(maass_ratios)));
    table.bound_ratios.push_back(summarize("tilde", std::move(tilde_ratios)));
    return table;
}

std::string weight_table_csv(const SpectralWeightTable& table) {
    std::ostringstream out;
    out << "kind,parameter,value_re,value_im\n";
    for (const auto& [l, v] : table.hol_values)
        out << "hol," << l << "," << v.str(20) << ",0\n";
    for (const auto& [t, v] : table.maass_values)
        out << "maass," << t.str(12) << "," << v.str(20) << ",0\n";
    for (const auto& [t, v] : table.tilde_values)
        out << "tilde," << t.str(12) << "," << v.re.str(20) << "," << v.im.str(20) << "\n";
    out << "kind,lemma,max_ratio,median_ratio,max_over_median\n";
    for (const auto& r : table.bound_ratios)
        out << "ratio," << r.lemma << "," << r.max_ratio << "," << r.median_ratio << "," << r.max_over_median << "\n";
    return out.str();
}

} // namespace rsm
