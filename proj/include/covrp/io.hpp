#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "covrp/model.hpp"

// Reading and writing of the on-disk formats:
//   instance-json  one instance document, row/column 0 of both matrices is
//                  the depot, demand/service_time arrays cover customers 1..n
//   front-json     {"instance", "method", "points": [{f1, f2, routes}]}
//   front-csv      header "f1,f2" then one row per point
//
// Writers emit a fixed key order and fixed formatting so identical data
// always produces identical bytes. Parsing accepts any JSON formatting.

namespace covrp::io {

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

inline Cost int_field(const nlohmann::json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer())
        throw ParseError(std::string("field \"") + key + "\" must be an integer");
    return v.get<Cost>();
}

inline std::vector<Cost> int_array(const nlohmann::json& v, const char* key) {
    if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
    std::vector<Cost> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number_integer())
            throw ParseError(std::string("field \"") + key + "\" must contain only integers");
        out.push_back(e.get<Cost>());
    }
    return out;
}

inline void write_int_array(std::ostream& os, const std::vector<Cost>& xs,
                            std::size_t begin_idx) {
    os << '[';
    for (std::size_t i = begin_idx; i < xs.size(); ++i) {
        if (i > begin_idx) os << ", ";
        os << xs[i];
    }
    os << ']';
}

inline void write_matrix(std::ostream& os, const std::vector<std::vector<Cost>>& m,
                         const char* indent) {
    os << "[\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        os << indent;
        write_int_array(os, m[i], 0);
        if (i + 1 < m.size()) os << ',';
        os << '\n';
    }
    os << "  ]";
}

}  // namespace detail

/// Parses and validates an instance-json document.
inline Instance parse_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance document: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance document must be a JSON object");

    Instance inst;
    const auto& name = detail::field(j, "name");
    if (!name.is_string()) throw ParseError("field \"name\" must be a string");
    inst.name = name.get<std::string>();
    inst.n_customers = static_cast<int>(detail::int_field(j, "n_customers"));
    inst.capacity = detail::int_field(j, "capacity");
    inst.time_limit = detail::int_field(j, "time_limit");
    inst.fleet_size = static_cast<int>(detail::int_field(j, "fleet_size"));
    inst.unload_time = detail::int_field(j, "unload_time");

    const int n = inst.n_customers;
    if (n < 1) throw ValidationError("instance must have at least one customer");

    auto customer_array = [&](const char* key) {
        auto xs = detail::int_array(detail::field(j, key), key);
        if (static_cast<int>(xs.size()) != n)
            throw ParseError(std::string("field \"") + key + "\" must have n_customers entries");
        xs.insert(xs.begin(), 0);  // depot slot
        return xs;
    };
    inst.demand = customer_array("demand");
    inst.service_time = customer_array("service_time");

    auto matrix = [&](const char* key) {
        const auto& v = detail::field(j, key);
        if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
        std::vector<std::vector<Cost>> m;
        m.reserve(v.size());
        for (const auto& row : v) m.push_back(detail::int_array(row, key));
        return m;
    };
    inst.travel_time = matrix("travel_time");
    inst.distance = matrix("distance");

    validate_instance(inst);
    return inst;
}

inline Instance load_instance(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

/// Canonical instance serialization; parse_instance(write_instance(x)) == x
/// and the bytes are stable.
inline std::string write_instance(const Instance& inst) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"name\": " << nlohmann::json(inst.name).dump() << ",\n";
    os << "  \"n_customers\": " << inst.n_customers << ",\n";
    os << "  \"capacity\": " << inst.capacity << ",\n";
    os << "  \"time_limit\": " << inst.time_limit << ",\n";
    os << "  \"fleet_size\": " << inst.fleet_size << ",\n";
    os << "  \"unload_time\": " << inst.unload_time << ",\n";
    os << "  \"demand\": ";
    detail::write_int_array(os, inst.demand, 1);
    os << ",\n  \"service_time\": ";
    detail::write_int_array(os, inst.service_time, 1);
    os << ",\n  \"travel_time\": ";
    detail::write_matrix(os, inst.travel_time, "    ");
    os << ",\n  \"distance\": ";
    detail::write_matrix(os, inst.distance, "    ");
    os << "\n}\n";
    return os.str();
}

/// A front document as stored on disk (witness routes only, no schedules).
struct FrontDocument {
    struct Point {
        Cost f1 = 0;
        Cost f2 = 0;
        std::vector<std::vector<int>> routes;
    };
    std::string instance;
    std::string method;
    bool aborted = false;  // the producing sweep ran out of budget mid-grid
    std::vector<Point> points;
};

inline FrontDocument to_document(const ParetoFront& front, const std::string& instance_name,
                                 const std::string& method) {
    FrontDocument doc;
    doc.instance = instance_name;
    doc.method = method;
    doc.points.reserve(front.points.size());
    for (const auto& p : front.points) {
        FrontDocument::Point fp;
        fp.f1 = p.f1;
        fp.f2 = p.f2;
        fp.routes = route_sequences(p.witness);
        doc.points.push_back(std::move(fp));
    }
    return doc;
}

inline std::string write_front_json(const FrontDocument& doc) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"instance\": " << nlohmann::json(doc.instance).dump() << ",\n";
    os << "  \"method\": " << nlohmann::json(doc.method).dump() << ",\n";
    if (doc.aborted) os << "  \"aborted\": true,\n";
    os << "  \"points\": [";
    for (std::size_t i = 0; i < doc.points.size(); ++i) {
        const auto& p = doc.points[i];
        os << (i == 0 ? "\n" : ",\n");
        os << "    {\"f1\": " << p.f1 << ", \"f2\": " << p.f2 << ", \"routes\": [";
        for (std::size_t r = 0; r < p.routes.size(); ++r) {
            if (r > 0) os << ", ";
            os << '[';
            for (std::size_t k = 0; k < p.routes[r].size(); ++k) {
                if (k > 0) os << ", ";
                os << p.routes[r][k];
            }
            os << ']';
        }
        os << "]}";
    }
    if (!doc.points.empty()) os << "\n  ";
    os << "]\n}\n";
    return os.str();
}

inline std::string write_front_json(const ParetoFront& front, const std::string& instance_name,
                                    const std::string& method) {
    return write_front_json(to_document(front, instance_name, method));
}

inline std::string write_front_csv(const FrontDocument& doc) {
    std::ostringstream os;
    os << "f1,f2\n";
    for (const auto& p : doc.points) os << p.f1 << ',' << p.f2 << '\n';
    return os.str();
}

inline std::string write_front_csv(const ParetoFront& front) {
    std::ostringstream os;
    os << "f1,f2\n";
    for (const auto& p : front.points) os << p.f1 << ',' << p.f2 << '\n';
    return os.str();
}

inline FrontDocument parse_front(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("front document: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("front document must be a JSON object");

    FrontDocument doc;
    const auto& name = detail::field(j, "instance");
    if (!name.is_string()) throw ParseError("field \"instance\" must be a string");
    doc.instance = name.get<std::string>();
    const auto& method = detail::field(j, "method");
    if (!method.is_string()) throw ParseError("field \"method\" must be a string");
    doc.method = method.get<std::string>();
    if (j.contains("aborted")) {
        if (!j["aborted"].is_boolean()) throw ParseError("field \"aborted\" must be a boolean");
        doc.aborted = j["aborted"].get<bool>();
    }

    const auto& points = detail::field(j, "points");
    if (!points.is_array()) throw ParseError("field \"points\" must be an array");
    for (const auto& pj : points) {
        FrontDocument::Point p;
        p.f1 = detail::int_field(pj, "f1");
        p.f2 = detail::int_field(pj, "f2");
        const auto& routes = detail::field(pj, "routes");
        if (!routes.is_array()) throw ParseError("point field \"routes\" must be an array");
        for (const auto& rj : routes) {
            auto xs = detail::int_array(rj, "routes");
            std::vector<int> seq(xs.begin(), xs.end());
            p.routes.push_back(std::move(seq));
        }
        doc.points.push_back(std::move(p));
    }
    return doc;
}

inline FrontDocument read_front(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_front(ss.str());
}

}  // namespace covrp::io
