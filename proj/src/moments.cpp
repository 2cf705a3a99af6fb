#include "rsmoment/moments.hpp"
#include "rsmoment/specialfn.hpp"
#include "rsmoment/quadrature.hpp"
#include "rsmoment/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rsm {

// ---------------------------------------------------------------------------
// Maass data ingestion. CSV schema: comment lines '#' (may declare
// precision=... and source=...), header "t,parity,n_max", then one record per
// line: t,parity,n_max,lambda_1,...,lambda_{n_max}.

std::vector<MaassFormData> ingest_maass_data(const std::string& path, const PrecisionContext& ctx) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse_error, "cannot open Maass data file " + path);
    std::string line;
    double declared_precision = 1e-9;
    std::string source_tag = "unspecified";
    bool header_seen = false;
    std::vector<MaassFormData> out;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto grab = [&](const std::string& key) -> std::string {
                auto pos = line.find(key + "=");
                if (pos == std::string::npos) return "";
                auto end = line.find_first_of(" \t,", pos + key.size() + 1);
                return line.substr(pos + key.size() + 1,
                                   end == std::string::npos ? std::string::npos : end - pos - key.size() - 1);
            };
            std::string p = grab("precision");
            if (!p.empty()) declared_precision = std::stod(p);
            std::string s = grab("source");
            if (!s.empty()) source_tag = s;
            continue;
        }
        if (!header_seen) {
            if (line.rfind("t,parity,n_max", 0) != 0)
                throw Error(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected header t,parity,n_max");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string field;
        MaassFormData rec;
        rec.data_precision = declared_precision;
        rec.source_tag = source_tag;
        try {
            if (!std::getline(row, field, ',')) throw std::invalid_argument("t");
            rec.t = Real(field);
            if (!std::getline(row, field, ',')) throw std::invalid_argument("parity");
            rec.parity = std::stoi(field);
            if (!std::getline(row, field, ',')) throw std::invalid_argument("n_max");
            rec.n_max = std::stol(field);
        } catch (const std::exception& ex) {
            throw Error(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": bad record header: " + ex.what());
        }
        if (rec.parity != 1 && rec.parity != -1)
            throw Error(ErrorKind::validation_failure, "line " + std::to_string(lineno) + ": parity must be +-1");
        if (rec.n_max < 1)
            throw Error(ErrorKind::validation_failure, "line " + std::to_string(lineno) + ": n_max must be >= 1");
        rec.lambda.assign(rec.n_max + 1, Real(0));
        rec.lambda[1] = Real(1);
        for (long n = 1; n <= rec.n_max; ++n) {
            if (!std::getline(row, field, ','))
                throw Error(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected " +
                                                        std::to_string(rec.n_max) + " eigenvalues");
            rec.lambda[n] = Real(field);
        }
        if (abs(rec.lambda[1] - Real(1)).to_double() > 1e-12)
            throw Error(ErrorKind::validation_failure,
                        "line " + std::to_string(lineno) + ": lambda_1 must be 1");
        // Multiplicativity spot checks within the declared precision.
        double tol = 64.0 * declared_precision + 1e-14;
        auto check = [&](long a, long b) {
            if (a * b > rec.n_max) return;
            double lhs = (rec.lambda[a] * rec.lambda[b]).to_double();
            double rhs = rec.lambda[a * b].to_double();
            if (std::gcd(a, b) == 1 && std::abs(lhs - rhs) > tol)
                throw Error(ErrorKind::validation_failure,
                            "record t=" + rec.t.str(10) + ": multiplicativity fails at (" +
                                std::to_string(a) + "," + std::to_string(b) + ")");
        };
        check(2, 3);
        check(2, 5);
        check(3, 5);
        check(2, 7);
        check(3, 7);
        // Hecke recursion at p = 2: lambda(4) = lambda(2)^2 - 1.
        if (rec.n_max >= 4) {
            double d = (rec.lambda[4] - (rec.lambda[2] * rec.lambda[2] - Real(1))).to_double();
            if (std::abs(d) > tol)
                throw Error(ErrorKind::validation_failure,
                            "record t=" + rec.t.str(10) + ": Hecke relation fails at p=2");
        }
        out.push_back(std::move(rec));
        (void)ctx;
    }
    std::sort(out.begin(), out.end(), [](const MaassFormData& a, const MaassFormData& b) { return a.t < b.t; });
    return out;
}

std::string export_maass_data(const std::vector<MaassFormData>& data) {
    std::ostringstream out;
    double prec = data.empty() ? 1e-9 : data.front().data_precision;
    std::string tag = data.empty() ? "unspecified" : data.front().source_tag;
    out << "# precision=" << prec << " source=" << tag << "\n";
    out << "t,parity,n_max\n";
    for (const auto& rec : data) {
        out << rec.t.str(17) << "," << rec.parity << "," << rec.n_max;
        for (long n = 1; n <= rec.n_max; ++n) out << "," << rec.lambda[n].str(17);
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------

long identity_nmax(int k, const PrecisionContext& ctx) {
    // Worst AFE length over the descriptors the identity touches, plus the
    // certificate length k^2.
    long afe = 64;
    for (int l = 12; l <= k; l += 2) {
        LFunctionDescriptor probe;
        probe.degree = 4;
        Real A = Real(k + l) / Real(2) - Real(1), B = Real(k - l) / Real(2);
        probe.gamma_shifts = {Complex(A), Complex(A + Real(1)), Complex(B), Complex(B + Real(1))};
        afe = std::max(afe, afe_coefficient_length(probe, 0.5, ctx.working_digits + 4.0));
    }
    LFunctionDescriptor adj;
    adj.degree = 3;
    adj.gamma_shifts = {Complex(1), Complex(Real(k - 1)), Complex(Real(k))};
    afe = std::max(afe, afe_coefficient_length(adj, 0.5, ctx.working_digits + 4.0));
    return std::max<long>(afe + 64, static_cast<long>(k) * k + 8);
}

MHolResult m_hol(int k, const EigenformPtr& g, const PrecisionContext& ctx) {
    MHolResult out;
    double err = 0;
    for (int l = 12; l <= k; l += 2) {
        if (cusp_dim(l) == 0) continue;
        Real hw = h_hol(l, k, ctx);
        if (hw.to_double() < 1e-280) continue;
        auto forms = hecke_eigenforms(l, std::max<long>(identity_nmax(k, ctx), 2 * cusp_dim(l) + 9), ctx);
        for (const auto& f : forms) {
            LFunctionDescriptor rs = build_rankin_selberg(f, g, ctx);
            ComplexValue lv = evaluate(rs, Complex(0.5), ctx);
            if (std::abs(lv.z.im.to_double()) > 1e-8 * (1 + std::abs(lv.z.re.to_double())))
                throw Error(ErrorKind::precision_failure, "L(1/2, f x g) should be real");
            LFunctionDescriptor ad = build_adjoint(f);
            ComplexValue av = evaluate(ad, Complex(1), ctx);
            Real term = lv.z.re * lv.z.re / av.z.re * hw;
            out.value += term;
            if (l < k) out.extraction_gap += term;
            err += (2 * lv.err * std::abs(lv.z.re.to_double()) + av.err) * hw.to_double();
        }
    }
    out.err = err;
    return out;
}

// ---------------------------------------------------------------------------
// Critical-line evaluator on a shared uniform grid: the outer t-integral and
// the inner AFE contour use the same step, so the Dirichlet-sum transform
// F(tau) = sum_n b(n) n^{-(1/2+c)} e^{-i tau log n} and the lgamma tables are
// computed once and reused by every outer node.

namespace {

struct LineEvaluator {
    LFunctionDescriptor desc;
    double c = 2.0;
    double delta = 0.05;   // shared grid step
    long inner_m = 0;      // inner nodes at tau = j delta, |j| <= inner_m
    long total_m = 0;      // F-table covers |tau| <= total_m delta
    Real eps{1};
    std::vector<Complex> F;        // F[j+total_m] = sum_n b(n) n^{-1/2-c-i j delta}
    std::vector<std::vector<Complex>> lgam;  // per shift: lgamma((s+u+mu)/2) on the grid
    Real log_pi_term{0};
};

// Build per-shift lgamma tables on the grid (1/2+c+mu)/2 + i tau/2.
void build_line_evaluator(LineEvaluator& ev, double T_outer, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 8);
    PrecisionContext inner(std::max(30, ctx.working_digits));
    double Dp = (ctx.working_digits + 4) * 2.302585;
    ev.c = 2.0;
    // inner contour reach: gamma decay past the shift scale
    double mushift = 0;
    for (const auto& mu : ev.desc.gamma_shifts) mushift = std::max(mushift, std::abs(mu.im.to_double()));
    double T_inner = mushift + 4.0 * Dp / (M_PI * ev.desc.degree) + 6.0;
    ev.inner_m = static_cast<long>(std::ceil(T_inner / ev.delta));
    long outer_m = static_cast<long>(std::ceil(T_outer / ev.delta));
    ev.total_m = ev.inner_m + outer_m + 2;

    ev.log_pi_term = log(real_pi());

    // F table length from the true AFE weight decay at Re(s) = 1/2.
    long N = afe_coefficient_length(ev.desc, 0.5, ctx.working_digits + 2.0);
    const_cast<LFunctionDescriptor&>(ev.desc).ensure_coefficients(N);
    ev.F.assign(2 * ev.total_m + 1, Complex(0));
    {
        Real sigma = Real(0.5) + Real(ev.c);
        for (long n = 1; n <= N; ++n) {
            Real an = ev.desc.b(n);
            if (an.is_zero()) continue;
            Real ln_n = log(Real(n));
            Real mag = exp(-sigma * ln_n);
            // phase recurrence over the table: entry idx holds
            // n^{-i tau} at tau = (idx - total_m) delta, so the start phase
            // is e^{+i total_m delta ln n}
            Real s0(0), c0(0);
            sin_cos(Real(ev.total_m) * Real(ev.delta) * ln_n, s0, c0);
            Complex z{mag * c0, mag * s0};
            Real sh(0), ch(0);
            sin_cos(Real(ev.delta) * ln_n, sh, ch);
            Complex rho{ch, -sh};
            for (long idx = 0; idx < 2 * ev.total_m + 1; ++idx) {
                ev.F[idx] += an * z;
                z *= rho;
            }
        }
    }
    // lgamma tables: (s + u + mu)/2 on the grid with s+u = 1/2 + c + i tau.
    ev.lgam.clear();
    for (const auto& mu : ev.desc.gamma_shifts) {
        std::vector<Complex> table(2 * ev.total_m + 1);
        for (long idx = 0; idx < 2 * ev.total_m + 1; ++idx) {
            Real tau = Real(idx - ev.total_m) * Real(ev.delta);
            Complex z = (Complex(Real(0.5 + ev.c), tau) + mu) * Real(0.5);
            table[idx] = log_gamma(z, inner).z;
        }
        ev.lgam.push_back(std::move(table));
    }
}

} // namespace

// The two Eisenstein integrals share this driver: integrand(t) is assembled
// from L-values on the shared grid plus cheap per-node factors.
namespace {

struct EisIntegralSpec {
    int k;
    double T;       // outer truncation
    double delta;   // grid step
};

// Decide outer truncation from the weight decay at relative target eps.
EisIntegralSpec eis_spec(int k, double decay_rate_is_pi_over_2, double target) {
    EisIntegralSpec spec;
    spec.k = k;
    double D = -std::log(target);
    if (decay_rate_is_pi_over_2 > 0) {
        spec.T = 2.0 * (D + 3 * std::log(k + 3.0) + 14.0) / M_PI + 6.0;
    } else {
        spec.T = std::sqrt(std::max(4.0, (D + 14.0) * k)) + 4.0;
        spec.T = std::min(spec.T, 1.2 * k + 30.0);  // e^{-|t|} regime beyond t ~ k
    }
    // strip limited by the zeros of zeta(1+2it) at distance 1/4
    spec.delta = 2 * M_PI * 0.2 / (D + 8.0);
    return spec;
}

} // namespace

QuadratureResult m_eis(int k, const EigenformPtr& g, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 8);
    PrecisionContext inner(std::max(30, ctx.working_digits));
    double target = std::max(ctx.quadrature_step_target, 1e-30);
    EisIntegralSpec spec = eis_spec(k, 0.0, target);

    LineEvaluator ev;
    ev.desc = build_gl2(g);
    ev.delta = spec.delta;
    Real eps_g = Real(0);
    {
        // measure the sign once with the generic machinery
        LFunctionDescriptor d2 = build_gl2(g);
        ComplexValue probe = evaluate_completed(d2, Complex(0.6, 0.3), inner);
        (void)probe;
        eps_g = *d2.measured_eps;
    }
    build_line_evaluator(ev, spec.T, ctx);
    ev.eps = eps_g;

    long outer_m = static_cast<long>(std::floor(spec.T / spec.delta));
    Real hfac = Real(ev.delta) / (Real(2) * real_pi());

    // integrand(t) = |L(1/2+it,g)|^4 / |zeta(1+2it)|^2 * h(t,k); even in t.
    auto integrand = [&](long idx) -> Real {
        if (idx == 0) return Real(0);  // removable: 1/|zeta(1+2it)|^2 vanishes
        Real t = Real(idx) * Real(ev.delta);
        Complex s{Real(0.5), t};
        // Lambda via the shared tables
        Complex acc(0);
        for (long j = -ev.inner_m; j <= ev.inner_m; ++j) {
            long fidx = idx + j + ev.total_m;
            Complex lg_sum = ev.lgam[0][fidx] + ev.lgam[1][fidx];
            Complex u{Real(ev.c), Real(j) * Real(ev.delta)};
            Complex spu{Real(0.5 + ev.c), Real(idx + j) * Real(ev.delta)};
            Complex B = cexp(lg_sum - spu * Real(1.0) * ev.log_pi_term) / u;
            acc += B * ev.F[fidx];
        }
        Complex I_s = hfac * acc;
        Complex lam = I_s + ev.eps * conj(I_s);
        // L = Lambda / gamma(s)
        Complex glog(0);
        for (const auto& mu : ev.desc.gamma_shifts) glog += log_gamma((s + mu) * Real(0.5), inner).z;
        glog -= s * ev.log_pi_term;  // degree 2: pi^{-2s/2} = pi^{-s}
        Complex L = lam * cexp(-glog);
        Real L2 = norm2(L);
        Complex z1p = zeta(Complex(1) + Complex(Real(0), Real(2) * t), inner).z;
        Real habs = h_maass(t, k, inner);
        return L2 * L2 / norm2(z1p) * habs;
    };

    Real sum_fine(0), sum_coarse(0);
    for (long idx = 1; idx <= outer_m; ++idx) {
        Real v = integrand(idx);
        sum_fine += v;
        if (idx % 2 == 0) sum_coarse += v;
    }
    // even integrand: integral over R = 2 * half-line; trapezoid with f(0)=0
    Real fine = sum_fine * Real(2) * Real(ev.delta);
    Real coarse = sum_coarse * Real(2) * Real(2 * ev.delta);
    Real value = fine / (Real(2) * real_pi());
    double qerr = std::abs((fine - coarse).to_double()) / (2 * M_PI) / 3.0;

    QuadratureResult out;
    out.value = value;
    out.err = qerr + std::abs(integrand(outer_m).to_double()) * ev.delta;
    out.imag_leak = 0;
    return out;
}

QuadratureResult m_tilde_eis(int k, const EigenformPtr& g, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 8);
    PrecisionContext inner(std::max(30, ctx.working_digits));
    double target = std::max(ctx.quadrature_step_target, 1e-30);
    EisIntegralSpec spec = eis_spec(k, M_PI_2, target);

    LineEvaluator ev;
    ev.desc = build_adjoint(g);
    {
        LFunctionDescriptor d3 = build_adjoint(g);
        evaluate_completed(d3, Complex(0.6, 0.3), inner);
        ev.eps = *d3.measured_eps;
    }
    ev.delta = spec.delta;
    build_line_evaluator(ev, spec.T, ctx);

    long outer_m = static_cast<long>(std::floor(spec.T / spec.delta));
    Real hfac = Real(ev.delta) / (Real(2) * real_pi());

    // integrand(t) = L(1/2+it, ad g) zeta(1/2+it)^3 zeta(1/2-it)^2
    //                / (zeta(1+2it) zeta(1-2it)) * h~(t,k); f(-t) = conj f(t).
    auto integrand = [&](long idx) -> Complex {
        if (idx == 0) return Complex(0);
        Real t = Real(idx) * Real(ev.delta);
        Complex s{Real(0.5), t};
        Complex acc(0);
        for (long j = -ev.inner_m; j <= ev.inner_m; ++j) {
            long fidx = idx + j + ev.total_m;
            Complex lg_sum = ev.lgam[0][fidx] + ev.lgam[1][fidx] + ev.lgam[2][fidx];
            Complex u{Real(ev.c), Real(j) * Real(ev.delta)};
            Complex spu{Real(0.5 + ev.c), Real(idx + j) * Real(ev.delta)};
            Complex B = cexp(lg_sum - spu * Real(1.5) * ev.log_pi_term) / u;
            acc += B * ev.F[fidx];
        }
        Complex I_s = hfac * acc;
        Complex lam = I_s + ev.eps * conj(I_s);
        Complex glog(0);
        for (const auto& mu : ev.desc.gamma_shifts) glog += log_gamma((s + mu) * Real(0.5), inner).z;
        glog -= s * Real(1.5) * ev.log_pi_term;
        Complex Lad = lam * cexp(-glog);

        Complex zh = zeta(s, inner).z;          // zeta(1/2+it)
        Complex zhc = conj(zh);                 // zeta(1/2-it)
        Complex z1p = zeta(Complex(1) + Complex(Real(0), Real(2) * t), inner).z;
        // The weight carries an extra pi^{-it} relative to the displayed
        // kernel; the phase is forced by the identity (the magnitude, and
        // hence every decay estimate, is untouched).
        Complex ht = h_tilde(t, k, inner) * cexp(Complex(Real(0), -t * log(real_pi())));
        Complex num = Lad * zh * zh * zh * zhc * zhc;
        return num / norm2(z1p) * ht;
    };

    Complex sum_fine(0), sum_coarse(0);
    for (long idx = 1; idx <= outer_m; ++idx) {
        Complex v = integrand(idx);
        sum_fine += v;
        if (idx % 2 == 0) sum_coarse += v;
    }
    // f(-t) = conj f(t): integral = 2 Re(sum) * delta / (2 pi)
    Real fine = sum_fine.re * Real(2) * Real(ev.delta);
    Real coarse = sum_coarse.re * Real(2) * Real(2 * ev.delta);
    Real value = fine / (Real(2) * real_pi());
    double qerr = std::abs((fine - coarse).to_double()) / (2 * M_PI) / 3.0;

    QuadratureResult out;
    out.value = value;
    out.err = qerr + cabs(integrand(outer_m)).to_double() * ev.delta;
    out.imag_leak = std::abs(sum_fine.im.to_double()) * ev.delta / (2 * M_PI);
    return out;
}

// ---------------------------------------------------------------------------

MMaassResult m_maass_partial(int k, const EigenformPtr& g, const std::vector<MaassFormData>& data,
                             const PrecisionContext& ctx, const MomentConfig& cfg) {
    MMaassResult out;
    out.tail_budget = Real(cfg.tail_constant) * exp(Real(1.5) * log(Real(k))) * exp(-Real(k) * log(Real(2)));
    for (const auto& f : data) {
        Real hw = h_maass(f.t, k, ctx);
        if (hw.to_double() < 1e-60) { ++out.forms_used; continue; }
        PrecisionContext dctx(std::max(30, std::min(ctx.working_digits,
                                                    static_cast<int>(-std::log10(f.data_precision)) + 4)));
        LFunctionDescriptor rs = build_rankin_selberg_maass(f, g);
        ComplexValue lv = evaluate(rs, Complex(0.5), dctx);
        LFunctionDescriptor ad = build_adjoint_maass(f);
        ComplexValue av = evaluate(ad, Complex(1), dctx);
        if (av.z.re.to_double() <= 0)
            throw Error(ErrorKind::validation_failure, "L(1, ad f) must be positive for Maass f");
        out.value += lv.z.re * lv.z.re / av.z.re * hw;
        out.err += (2 * std::abs(lv.z.re.to_double()) * (lv.err + f.data_precision) + av.err) * hw.to_double();
        ++out.forms_used;
    }
    return out;
}

Real m_tilde_maass_band(int k, const EigenformPtr& g, const std::vector<MaassFormData>& data,
                        const PrecisionContext& ctx, const MomentConfig& cfg) {
    (void)g;
    Real band(0);
    Real t_cut{cfg.first_even_t};
    for (const auto& f : data) {
        if (f.parity != 1) continue;  // odd-parity forms do not enter
        Complex ht = h_tilde(f.t, k, ctx);
        PrecisionContext dctx(std::max(30, std::min(ctx.working_digits,
                                                    static_cast<int>(-std::log10(f.data_precision)) + 4)));
        LFunctionDescriptor lf = build_gl2_maass(f);
        ComplexValue l_half = evaluate(lf, Complex(0.5), dctx);
        LFunctionDescriptor ad = build_adjoint_maass(f);
        ComplexValue av = evaluate(ad, Complex(1), dctx);
        Real lmag = abs(l_half.z.re) + Real(l_half.err + f.data_precision);
        Real contribution = sqrt(Real(cfg.degree6_majorant) * lmag * lmag * lmag * lmag * lmag)
                          / av.z.re * cabs(ht);
        band += contribution;
        if (f.t > t_cut) t_cut = f.t;
    }
    band += Real(cfg.band_constant) * sqrt(Real(k)) * exp(-real_pi() * t_cut * Real(0.5));
    return band;
}

IdentityReport verify_identity(int k, int g_index, const std::vector<MaassFormData>& data,
                               const PrecisionContext& ctx, const MomentConfig& cfg) {
    if (k % 2 || cusp_dim(k) < 1)
        throw Error(ErrorKind::dimension_zero, "verify_identity needs even k with dim S_k >= 1");
    auto forms = hecke_eigenforms(k, identity_nmax(k, ctx), ctx);
    if (g_index < 0 || g_index >= static_cast<int>(forms.size()))
        throw Error(ErrorKind::unsupported, "g_index out of range");
    EigenformPtr g = forms[g_index];

    IdentityReport rep;
    rep.k = k;
    rep.g_index = g_index;
    rep.working_digits = ctx.working_digits;

    MHolResult hol = m_hol(k, g, ctx);
    rep.m_hol = hol.value;
    rep.extraction_gap = hol.extraction_gap;
    MMaassResult mm = m_maass_partial(k, g, data, ctx, cfg);
    rep.m_maass_partial = mm.value;
    rep.maass_forms_used = mm.forms_used;
    QuadratureResult eis = m_eis(k, g, ctx);
    rep.m_eis = eis.value;

    TorusContour contour;
    rep.m0 = m0_by_residue(k, g, contour, ctx);
    QuadratureResult teis = m_tilde_eis(k, g, ctx);
    rep.m_tilde_eis = teis.value;
    rep.tilde_maass_band = m_tilde_maass_band(k, g, data, ctx, cfg);

    rep.lhs_total = rep.m_hol + rep.m_maass_partial + rep.m_eis;
    rep.rhs_total = rep.m0 + rep.m_tilde_eis;
    rep.abs_deviation = abs(rep.lhs_total - rep.rhs_total);
    rep.neglect_budget = mm.tail_budget;
    rep.quadrature_err = hol.err + mm.err + eis.err + teis.err + teis.imag_leak
                       + 1e3 * ctx.full_target() * std::abs(rep.rhs_total.to_double());
    Real tol_scale{std::max(1e-6, cfg.tolerance_constant * std::pow(2.0, -k) * std::pow(static_cast<double>(k), 1.5))};
    rep.tolerance = tol_scale * abs(rep.rhs_total);
    rep.allowance = rep.tilde_maass_band + rep.neglect_budget + Real(rep.quadrature_err) + rep.tolerance;
    rep.pass = rep.abs_deviation <= rep.allowance;
    rep.margin = rep.allowance - rep.abs_deviation;
    return rep;
}

} // namespace rsm
