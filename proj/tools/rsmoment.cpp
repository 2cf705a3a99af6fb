// Command-line frontend: weight tables, main-term reports, single moment
// components, the end-to-end identity verification, a quick verify suite,
// and cache administration. Exit codes: 0 pass, 1 verification failure,
// 2 usage error.

#include <CLI11.hpp>

#include "rsmoment/cache.hpp"
#include "rsmoment/report.hpp"

#include <fstream>
#include <iostream>

using namespace rsm;
using nlohmann::json;

namespace {

void emit(const std::string& out_path, const std::string& body) {
    if (out_path.empty() || out_path == "-") {
        std::cout << body << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + out_path);
    out << body << "\n";
}

json error_entry(const Error& e) {
    return {{"error", {{"kind", error_kind_name(e.kind)}, {"message", e.what()}}}};
}

int run_weights(int k, double t_max, double t_step, int digits, const std::string& out,
                const std::string& format) {
    PrecisionContext ctx(digits);
    Real::set_working_digits(digits + 10);
    std::vector<Real> tg;
    for (double t = 0.0; t <= t_max; t += t_step) tg.emplace_back(t);
    std::vector<int> lg;
    for (int l = 2; l <= k + 2; l += 2) lg.push_back(l);
    auto table = verify_weight_bounds(k, tg, lg, ctx);
    if (format == "csv") {
        emit(out, weight_table_csv(table));
    } else {
        json cfg = {{"k", k}, {"t_max", t_max}, {"t_step", t_step}, {"precision_digits", digits}};
        emit(out, wrap_report("weights", cfg, weight_table_json(table)).dump(2));
    }
    return 0;
}

int run_mainterm(int k, int g_index, int digits, const std::string& method,
                 const std::string& out, const std::string& format) {
    PrecisionContext ctx(digits);
    Real::set_working_digits(digits + 10);
    long nmax = std::max<long>(static_cast<long>(k) * k + 8, 4000);
    auto forms = hecke_eigenforms(k, nmax, ctx);
    if (g_index < 0 || g_index >= (int)forms.size())
        throw Error(ErrorKind::unsupported, "g_index out of range for weight " + std::to_string(k));
    auto g = forms[g_index];
    json cfg = {{"k", k}, {"g_index", g_index}, {"precision_digits", digits}, {"method", method}};
    if (method == "all") {
        MainTermReport rep = mainterm_report(k, g, ctx);
        if (format == "csv") {
            emit(out, mainterm_csv({rep}));
        } else {
            emit(out, wrap_report("mainterm", cfg, mainterm_report_json(rep)).dump(2));
        }
        bool ok = rep.disc_limit_residue < 1e-6 && rep.disc_laurent_scaled < 1e-8;
        return ok ? 0 : 1;
    }
    json payload;
    TorusContour contour;
    if (method == "limit") payload["m0_limit"] = m0_by_limit(k, g, ctx).str(25);
    else if (method == "residue") payload["m0_residue"] = m0_by_residue(k, g, contour, ctx).str(25);
    else if (method == "scaled") payload["m0_scaled"] = m0_scaled_residue(k, g, contour, ctx).str(25);
    else throw Error(ErrorKind::unsupported, "unknown method " + method);
    emit(out, wrap_report("mainterm", cfg, payload).dump(2));
    return 0;
}

int run_moment(int k, int g_index, int digits, const std::string& component,
               const std::string& maass_path, const std::string& out) {
    PrecisionContext ctx(digits);
    Real::set_working_digits(digits + 10);
    auto forms = hecke_eigenforms(k, identity_nmax(k, ctx), ctx);
    if (g_index < 0 || g_index >= (int)forms.size())
        throw Error(ErrorKind::unsupported, "g_index out of range");
    auto g = forms[g_index];
    std::vector<MaassFormData> data;
    if (!maass_path.empty()) data = ingest_maass_data(maass_path, ctx);
    json payload;
    if (component == "hol") {
        auto r = m_hol(k, g, ctx);
        payload = {{"m_hol", r.value.str(25)}, {"extraction_gap", r.extraction_gap.str(25)}, {"err", r.err}};
    } else if (component == "eis") {
        auto r = m_eis(k, g, ctx);
        payload = {{"m_eis", r.value.str(25)}, {"err", r.err}};
    } else if (component == "tilde-eis") {
        auto r = m_tilde_eis(k, g, ctx);
        payload = {{"m_tilde_eis", r.value.str(25)}, {"err", r.err}, {"imag_leak", r.imag_leak}};
    } else if (component == "maass") {
        auto r = m_maass_partial(k, g, data, ctx);
        payload = {{"m_maass_partial", r.value.str(25)},
                   {"tail_budget", r.tail_budget.str(25)},
                   {"forms_used", r.forms_used}};
    } else if (component == "band") {
        payload = {{"tilde_maass_band", m_tilde_maass_band(k, g, data, ctx).str(25)}};
    } else if (component == "m0") {
        payload = {{"m0", m0_by_residue(k, g, TorusContour(), ctx).str(25)}};
    } else {
        throw Error(ErrorKind::unsupported, "unknown component " + component);
    }
    json cfg = {{"k", k}, {"g_index", g_index}, {"precision_digits", digits},
                {"component", component}, {"maass_data", maass_path}};
    emit(out, wrap_report("moment", cfg, payload).dump(2));
    return 0;
}

int run_identity(int k, int g_index, int digits, double quad_target,
                 const std::string& maass_path, const std::string& out) {
    PrecisionContext ctx(digits);
    if (quad_target > 0) ctx.quadrature_step_target = quad_target;
    Real::set_working_digits(digits + 10);
    std::vector<MaassFormData> data;
    if (!maass_path.empty()) data = ingest_maass_data(maass_path, ctx);
    IdentityReport rep = verify_identity(k, g_index, data, ctx);
    json cfg = {{"k", k}, {"g_index", g_index}, {"precision_digits", digits},
                {"quad_target", quad_target}, {"maass_data", maass_path}};
    emit(out, wrap_report("identity", cfg, identity_report_json(rep)).dump(2));
    return rep.pass ? 0 : 1;
}

int run_verify_suite(int digits, const std::string& out) {
    PrecisionContext ctx(digits);
    Real::set_working_digits(digits + 10);
    json results = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        results.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    };

    double worst = 0;
    for (int kk = 12; kk <= 60; kk += 2)
        worst = std::max(worst, std::abs((h_hol(kk, kk, ctx) - Real(1)).to_double()));
    record("h_hol_normalisation", worst < 1e-12, "max |h_hol(k,k)-1| = " + std::to_string(worst));

    auto g12 = hecke_eigenforms(12, 6000, ctx)[0];
    std::vector<Complex> pts = {Complex(0.8, 0.4), Complex(1.25, 1.1)};
    double fe_worst = 0;
    for (auto desc : {build_zeta_descriptor(), build_gl2(g12), build_adjoint(g12)}) {
        auto rep = functional_equation_check(desc, pts, ctx);
        fe_worst = std::max(fe_worst, rep.max_violation.to_double());
    }
    record("functional_equations", fe_worst < 1e-8, "max violation = " + std::to_string(fe_worst));

    auto mt = mainterm_report(12, g12, ctx);
    record("m0_triangle_k12",
           mt.disc_limit_residue < 1e-6 && mt.disc_laurent_scaled < 1e-8,
           "limit/residue rel = " + std::to_string(mt.disc_limit_residue) +
               ", laurent/scaled rel = " + std::to_string(mt.disc_laurent_scaled));

    emit(out, wrap_report("verify-suite", {{"precision_digits", digits}}, results).dump(2));
    return all_ok ? 0 : 1;
}

int run_cache(const std::string& action, std::vector<int> ks, int digits) {
    if (action == "list") {
        auto entries = cache_list();
        std::cout << "cache dir: " << cache_dir() << "\n";
        for (const auto& e : entries) std::cout << e.bytes << "\t" << e.name << "\n";
        std::cout << entries.size() << " entries\n";
        return 0;
    }
    if (action == "clear") {
        cache_clear();
        std::cout << "cache cleared: " << cache_dir() << "\n";
        return 0;
    }
    if (action == "warm") {
        PrecisionContext ctx(digits);
        Real::set_working_digits(digits + 10);
        for (int kk : ks) {
            if (kk % 2 || kk < 12 || cusp_dim(kk) == 0) {
                std::cout << "k=" << kk << ": dimension zero, nothing to cache\n";
                continue;
            }
            auto forms = hecke_eigenforms(kk, identity_nmax(kk, ctx), ctx);
            for (const auto& g : forms) {
                LFunctionDescriptor ad = build_adjoint(g);
                lfun_taylor(ad, Complex(1), Real(0.55), 48, ctx);
            }
            std::cout << "k=" << kk << ": " << forms.size() << " eigenforms warmed\n";
        }
        return 0;
    }
    throw Error(ErrorKind::unsupported, "unknown cache action " + action);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-precision verification toolkit for spectral second-moment identities"};
    app.require_subcommand(1);

    int k = 12, g_index = 0, digits = 30;
    double t_max = 40.0, t_step = 0.5, quad_target = 0.0;
    std::string out, format = "json", method = "all", component = "hol", maass_path, action = "list";
    std::vector<int> warm_ks;

    auto* w = app.add_subcommand("weights", "Spectral weight table with bound-ratio sweep");
    w->add_option("--k", k, "even weight")->required();
    w->add_option("--t-max", t_max, "spectral parameter range");
    w->add_option("--t-step", t_step, "grid step");
    w->add_option("--precision", digits, "working digits (>= 30)");
    w->add_option("--out", out, "output path (default stdout)");
    w->add_option("--format", format, "json or csv");

    auto* mt = app.add_subcommand("mainterm", "Main term by limit/residue/scaled routes");
    mt->add_option("--k", k, "even weight")->required();
    mt->add_option("--g-index", g_index, "eigenform index (lambda(2) ascending)");
    mt->add_option("--method", method, "all, limit, residue, or scaled");
    mt->add_option("--precision", digits, "working digits");
    mt->add_option("--out", out, "output path");
    mt->add_option("--format", format, "json or csv");

    auto* mo = app.add_subcommand("moment", "Single moment component");
    mo->add_option("--k", k, "even weight")->required();
    mo->add_option("--g-index", g_index, "eigenform index");
    mo->add_option("--component", component, "hol, eis, tilde-eis, maass, band, m0")->required();
    mo->add_option("--maass-data", maass_path, "Maass data CSV");
    mo->add_option("--precision", digits, "working digits");
    mo->add_option("--out", out, "output path");

    auto* id = app.add_subcommand("identity", "End-to-end moment identity verification");
    id->add_option("--k", k, "even weight")->required();
    id->add_option("--g-index", g_index, "eigenform index");
    id->add_option("--precision", digits, "working digits");
    id->add_option("--quad-target", quad_target, "relative quadrature target");
    id->add_option("--maass-data", maass_path, "Maass data CSV");
    id->add_option("--out", out, "output path");

    auto* vs = app.add_subcommand("verify-suite", "Quick verification subset");
    vs->add_option("--precision", digits, "working digits");
    vs->add_option("--out", out, "output path");

    auto* ca = app.add_subcommand("cache", "Deterministic cache administration");
    ca->add_option("action", action, "list, clear, or warm")->required();
    ca->add_option("--k", warm_ks, "weights to warm");
    ca->add_option("--precision", digits, "working digits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (digits < 30 || digits > 200)
            throw Error(ErrorKind::unsupported, "precision_digits must lie in [30, 200]");
        if (*w) return run_weights(k, t_max, t_step, digits, out, format);
        if (*mt) return run_mainterm(k, g_index, digits, method, out, format);
        if (*mo) return run_moment(k, g_index, digits, component, maass_path, out);
        if (*id) return run_identity(k, g_index, digits, quad_target, maass_path, out);
        if (*vs) return run_verify_suite(digits, out);
        if (*ca) return run_cache(action, warm_ks, digits);
    } catch (const Error& e) {
        json rep = wrap_report("error", json::object(), error_entry(e));
        std::cerr << rep.dump(2) << "\n";
        if (!out.empty() && out != "-") {
            std::ofstream of(out, std::ios::trunc);
            of << rep.dump(2) << "\n";
        }
        return e.kind == ErrorKind::unsupported ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
