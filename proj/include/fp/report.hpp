#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fp/counts.hpp"

namespace fp {

// Doubles are printed with 17 significant digits so text output round-trips
// and is byte-identical for identical runs.
std::string format_double(double v);

// Fixed columns: c,d,g,pi_cd,pi_g,ratio_pi,psi_cd,psi_g,theta_cd,ap_sum,
// ap_discrepancy,err_scaled,error. The error column carries per-row failure
// markers and stays empty on success.
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

// Decomposition-focused view of the same rows.
std::string decomp_csv(const std::vector<SweepRow>& rows);
nlohmann::json decomp_json(const std::vector<SweepRow>& rows);

nlohmann::json count_report_json(const CountReport& r);

inline constexpr const char* kSchemaVersion = "1";

} // namespace fp
