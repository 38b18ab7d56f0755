#pragma once

#include "convexlab/convexity.hpp"
#include "convexlab/order.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace convexlab {

inline std::string fnv1a_hex(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline nlohmann::json vec_to_json(const Vec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

struct PointRecord {
    Vec location;
    Vec normal;
    VerdictClass verdict = VerdictClass::WeaklyConvex;
    double min_tangential_eigenvalue = 0.0;
    std::optional<OrderVerdict> order;

    nlohmann::json to_json() const {
        nlohmann::json j{{"location", vec_to_json(location)},
                         {"normal", vec_to_json(normal)},
                         {"verdict", to_string(verdict)},
                         {"min_tangential_eigenvalue", min_tangential_eigenvalue}};
        if (order) {
            if (order->finite)
                j["order"] = order->order;
            else
                j["order"] = "infinite(" + std::to_string(order->cutoff) + ")";
        }
        return j;
    }
};

/// Serializable analysis record: deterministic bytes for fixed inputs
/// (alphabetically ordered keys, shortest round-trip float formatting).
struct AnalysisReport {
    std::string command;
    std::string domain;
    std::string spec_hash;
    nlohmann::json parameters;
    std::vector<PointRecord> points;
    nlohmann::json global;

    nlohmann::json to_json() const {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : points) pts.push_back(p.to_json());
        return {{"schema", 1},
                {"toolkit_version", kVersion},
                {"command", command},
                {"domain", domain},
                {"spec_hash", spec_hash},
                {"parameters", parameters},
                {"points", pts},
                {"global", global}};
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }
};

/// CSV point list: x1,...,xN,label rows.
inline std::string csv_points(const std::vector<Vec>& pts, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os.precision(17);
    for (size_t i = 0; i < pts.size(); ++i) {
        for (int j = 0; j < pts[i].size(); ++j) os << pts[i][j] << ",";
        os << (i < labels.size() ? labels[i] : "") << "\n";
    }
    return os.str();
}

}  // namespace convexlab
