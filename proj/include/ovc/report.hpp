#ifndef OVC_REPORT_HPP
#define OVC_REPORT_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ovc {

/// Structured outcome of a theorem or oracle check. `pass` is empty for
/// purely informational probes. Wall-clock timing is kept out of the
/// serialized document so identical inputs produce byte-identical output.
struct Report {
    std::string check;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    std::optional<double> lhs;
    std::optional<double> rhs;
    std::optional<double> ratio;
    std::optional<double> rel_error;
    std::optional<bool> pass;
    std::vector<std::string> notes;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    double timing_ms = 0.0; // not serialized

    bool failed() const { return pass.has_value() && !*pass; }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["check"] = check;
        j["inputs"] = inputs;
        auto put = [&j](const char* name, const std::optional<double>& v) {
            if (v)
                j[name] = *v;
            else
                j[name] = nullptr;
        };
        put("lhs", lhs);
        put("rhs", rhs);
        put("ratio", ratio);
        put("rel_error", rel_error);
        if (pass)
            j["pass"] = *pass;
        else
            j["pass"] = nullptr;
        j["notes"] = notes;
        if (!data.empty())
            j["data"] = data;
        return j;
    }
};

inline double relative_error(double value, double reference) {
    double scale = std::max(std::abs(reference), 1e-300);
    return std::abs(value - reference) / scale;
}

} // namespace ovc

#endif
