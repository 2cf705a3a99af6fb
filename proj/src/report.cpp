#include "rsmoment/report.hpp"

#include <chrono>
#include <sstream>

namespace rsm {

using nlohmann::json;

namespace {

std::string num(const Real& v, int digits = 25) { return v.str(digits); }

json poly_json(const PolyReal& p) {
    json arr = json::array();
    for (const auto& c : p.coeff) arr.push_back(num(c));
    return arr;
}

} // namespace

json identity_report_json(const IdentityReport& rep) {
    json j;
    j["k"] = rep.k;
    j["g_index"] = rep.g_index;
    j["working_digits"] = rep.working_digits;
    j["lhs_components"] = {{"m_hol", num(rep.m_hol)},
                           {"m_maass_partial", num(rep.m_maass_partial)},
                           {"m_eis", num(rep.m_eis)}};
    j["rhs_components"] = {{"m0", num(rep.m0)}, {"m_tilde_eis", num(rep.m_tilde_eis)}};
    j["extraction_gap"] = num(rep.extraction_gap);
    j["lhs_total"] = num(rep.lhs_total);
    j["rhs_total"] = num(rep.rhs_total);
    j["abs_deviation"] = num(rep.abs_deviation);
    j["tilde_maass_band"] = num(rep.tilde_maass_band);
    j["neglect_budget"] = num(rep.neglect_budget);
    j["quadrature_err"] = rep.quadrature_err;
    j["tolerance"] = num(rep.tolerance);
    j["allowance"] = num(rep.allowance);
    j["margin"] = num(rep.margin);
    j["maass_forms_used"] = rep.maass_forms_used;
    j["verdict"] = rep.pass ? "pass" : "fail";
    return j;
}

json mainterm_report_json(const MainTermReport& rep) {
    json j;
    j["k"] = rep.k;
    j["g_index"] = rep.g_index;
    j["m0_limit"] = num(rep.m0_limit);
    j["m0_residue"] = num(rep.m0_residue);
    j["m0_scaled"] = num(rep.m0_scaled);
    j["c_value"] = num(rep.c_value);
    j["c_printed"] = num(rep.c_printed);
    j["p_polys"] = json::array();
    for (const auto& p : rep.decomposition.p_polys) j["p_polys"].push_back(poly_json(p));
    j["main_value"] = num(rep.decomposition.main_value);
    j["certificate"] = {{"s1", num(rep.certificate.s1)},
                        {"s2", num(rep.certificate.s2)},
                        {"s3", num(rep.certificate.s3)},
                        {"s4_budget", num(rep.certificate.s4_budget)},
                        {"s4_measured", num(rep.certificate.s4_measured)},
                        {"s1_ratio", rep.certificate.s1_ratio},
                        {"s3_fitted_constant", rep.certificate.s3_fitted_constant},
                        {"s1_ok", rep.certificate.s1_ok},
                        {"s2_ok", rep.certificate.s2_ok},
                        {"s3_ok", rep.certificate.s3_ok},
                        {"s4_ok", rep.certificate.s4_ok}};
    j["discrepancies"] = {{"limit_vs_residue_rel", rep.disc_limit_residue},
                          {"scaled_vs_residue_over_sqrt_k", rep.disc_scaled_residue},
                          {"laurent_vs_scaled_rel", rep.disc_laurent_scaled}};
    return j;
}

json weight_table_json(const SpectralWeightTable& table) {
    json j;
    j["k"] = table.k;
    json hol = json::array();
    for (const auto& [l, v] : table.hol_values) hol.push_back({{"l", l}, {"value", num(v)}});
    j["hol"] = hol;
    json maass = json::array();
    for (const auto& [t, v] : table.maass_values)
        maass.push_back({{"t", t.str(12)}, {"value", num(v)}});
    j["maass"] = maass;
    json tilde = json::array();
    for (const auto& [t, v] : table.tilde_values)
        tilde.push_back({{"t", t.str(12)}, {"re", num(v.re)}, {"im", num(v.im)}});
    j["tilde"] = tilde;
    json ratios = json::array();
    for (const auto& r : table.bound_ratios)
        ratios.push_back({{"lemma", r.lemma},
                          {"max_ratio", r.max_ratio},
                          {"median_ratio", r.median_ratio},
                          {"max_over_median", r.max_over_median}});
    j["bound_ratios"] = ratios;
    return j;
}

std::string mainterm_csv(const std::vector<MainTermReport>& reps) {
    std::ostringstream out;
    out << "k,m0_limit,m0_residue,m0_scaled,main_value,limit_vs_residue_rel,scaled_vs_residue_over_sqrt_k\n";
    for (const auto& r : reps) {
        out << r.k << "," << num(r.m0_limit, 20) << "," << num(r.m0_residue, 20) << ","
            << num(r.m0_scaled, 20) << "," << num(r.decomposition.main_value, 20) << ","
            << r.disc_limit_residue << "," << r.disc_scaled_residue << "\n";
    }
    return out.str();
}

json wrap_report(const std::string& command, const json& config, const json& payload) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["library_version"] = kLibraryVersion;
    j["command"] = command;
    j["config"] = config;
    auto now = std::chrono::system_clock::now();
    j["generated_at_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    j["report"] = payload;
    return j;
}

} // namespace rsm
