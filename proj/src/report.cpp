#include "edf/report.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace edf {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const ScenarioResult& result) {
    out << kCsvHeader << '\n';
    for (const auto& r : result.rows) {
        out << r.scenario << ',' << r.param_name << ',' << format_double(r.param_value) << ',' << r.estimator << ','
            << to_string(r.kind) << ',' << format_double(r.estimate) << ',' << format_double(r.std_error) << ','
            << r.replicates << ',' << r.seed << '\n';
    }
}

void write_json(std::ostream& out, const ScenarioResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows) {
        rows.push_back({{"scenario", r.scenario},
                        {"param_name", r.param_name},
                        {"param_value", r.param_value},
                        {"estimator", r.estimator},
                        {"kind", std::string(to_string(r.kind))},
                        {"estimate", r.estimate},
                        {"stderr", r.std_error},
                        {"replicates", r.replicates},
                        {"seed", r.seed}});
    }
    out << rows.dump(2) << '\n';
}

std::string to_csv(const ScenarioResult& result) {
    std::ostringstream s;
    write_csv(s, result);
    return s.str();
}

std::string to_json(const ScenarioResult& result) {
    std::ostringstream s;
    write_json(s, result);
    return s.str();
}

}  // namespace edf
