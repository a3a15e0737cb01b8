#include "fp/report.hpp"

#include <cmath>
#include <cstdio>

namespace fp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_csv_field(std::string& out, const std::string& s) {
    // Error messages may contain commas; quote when needed.
    if (s.find_first_of(",\"\n") == std::string::npos) {
        out += s;
        return;
    }
    out += '"';
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
}

} // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "c,d,g,pi_cd,pi_g,ratio_pi,psi_cd,psi_g,theta_cd,ap_sum,"
        "ap_discrepancy,err_scaled,error\n";
    for (const auto& row : rows) {
        out += std::to_string(row.c) + "," + std::to_string(row.d) + ",";
        if (row.ok) {
            const CountReport& r = row.report;
            out += std::to_string(r.g) + ",";
            out += std::to_string(r.pi_cd) + "," + std::to_string(r.pi_g) + ",";
            out += format_double(r.ratio_pi) + ",";
            out += format_double(r.psi_cd) + "," + format_double(r.psi_g) + ",";
            out += format_double(r.theta_cd) + "," + format_double(r.ap_sum) + ",";
            out += format_double(r.ap_discrepancy) + ",";
            out += format_double(r.err_scaled) + ",";
        } else {
            out += ",,,,,,,,,,";
        }
        append_csv_field(out, row.error);
        out += "\n";
    }
    return out;
}

nlohmann::json count_report_json(const CountReport& r) {
    return nlohmann::json{{"c", r.c},
                          {"d", r.d},
                          {"g", r.g},
                          {"pi_cd", r.pi_cd},
                          {"pi_g", r.pi_g},
                          {"ratio_pi", r.ratio_pi},
                          {"ratio_psi", r.ratio_psi},
                          {"psi_cd", r.psi_cd},
                          {"psi_g", r.psi_g},
                          {"theta_cd", r.theta_cd},
                          {"ap_sum", r.ap_sum},
                          {"ap_discrepancy", r.ap_discrepancy},
                          {"ap_bound", r.ap_bound},
                          {"err_scaled", r.err_scaled}};
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j;
        if (row.ok) {
            j = count_report_json(row.report);
        } else {
            j = nlohmann::json{{"c", row.c}, {"d", row.d}, {"error", row.error}};
        }
        arr.push_back(std::move(j));
    }
    return nlohmann::json{{"schema_version", kSchemaVersion}, {"rows", arr}};
}

std::string decomp_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "c,d,g,psi_cd,psi_g,ap_sum,ap_discrepancy,ap_bound,within_bound,error\n";
    for (const auto& row : rows) {
        out += std::to_string(row.c) + "," + std::to_string(row.d) + ",";
        if (row.ok) {
            const CountReport& r = row.report;
            bool within = std::abs(r.ap_discrepancy) <= r.ap_bound + 1e-9;
            out += std::to_string(r.g) + ",";
            out += format_double(r.psi_cd) + "," + format_double(r.psi_g) + ",";
            out += format_double(r.ap_sum) + ",";
            out += format_double(r.ap_discrepancy) + ",";
            out += format_double(r.ap_bound) + ",";
            out += within ? "1," : "0,";
        } else {
            out += ",,,,,,,";
        }
        append_csv_field(out, row.error);
        out += "\n";
    }
    return out;
}

nlohmann::json decomp_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        if (row.ok) {
            const CountReport& r = row.report;
            arr.push_back(nlohmann::json{
                {"c", r.c},
                {"d", r.d},
                {"g", r.g},
                {"psi_cd", r.psi_cd},
                {"psi_g", r.psi_g},
                {"ap_sum", r.ap_sum},
                {"ap_discrepancy", r.ap_discrepancy},
                {"ap_bound", r.ap_bound},
                {"within_bound",
                 std::abs(r.ap_discrepancy) <= r.ap_bound + 1e-9}});
        } else {
            arr.push_back(nlohmann::json{
                {"c", row.c}, {"d", row.d}, {"error", row.error}});
        }
    }
    return nlohmann::json{{"schema_version", kSchemaVersion}, {"rows", arr}};
}

} // namespace fp
