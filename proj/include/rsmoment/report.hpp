#ifndef RSMOMENT_REPORT_HPP
#define RSMOMENT_REPORT_HPP

// JSON/CSV emission for the verification reports. Field names are stable;
// every report embeds the run configuration and the library version.

#include "rsmoment/mainterm.hpp"
#include "rsmoment/moments.hpp"
#include "rsmoment/weights.hpp"

#include <json.hpp>

#include <string>

namespace rsm {

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

nlohmann::json identity_report_json(const IdentityReport& rep);
nlohmann::json mainterm_report_json(const MainTermReport& rep);
nlohmann::json weight_table_json(const SpectralWeightTable& table);
std::string mainterm_csv(const std::vector<MainTermReport>& reps);

// Wrap a payload with config echo, version, and timestamp.
nlohmann::json wrap_report(const std::string& command, const nlohmann::json& config,
                           const nlohmann::json& payload);

} // namespace rsm

#endif
