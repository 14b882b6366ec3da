#pragma once

#include <cmath>

#include "json.hpp"  // nlohmann/json (vendored)

#include "graph.hpp"
#include "inertia.hpp"
#include "interlace.hpp"
#include "io.hpp"

namespace herminertia {

using Json = nlohmann::json;

/// Infinite witness values serialize as the strings "+inf" / "-inf".
inline Json number_json(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    return x;
}

inline Json to_json(const Witness& w) {
    Json j;
    switch (w.kind) {
        case Witness::Kind::index:
            j["kind"] = "index";
            j["index"] = w.index;
            break;
        case Witness::Kind::shift:
            j["kind"] = "shift";
            j["shift"] = w.shift;
            break;
        case Witness::Kind::degree: j["kind"] = "degree"; break;
    }
    j["lhs"] = number_json(w.lhs);
    j["rhs"] = number_json(w.rhs);
    return j;
}

inline Json to_json(const RelationReport& r) {
    Json j;
    j["holds"] = r.holds;
    if (r.witness) j["witness"] = to_json(*r.witness);
    if (r.indeterminate) j["indeterminate"] = true;
    return j;
}

inline Json to_json(const Inertia& in) {
    return Json{{"n_plus", in.n_plus}, {"n_minus", in.n_minus}, {"n_zero", in.n_zero}};
}

inline Json to_json(const Spectrum& s) {
    Json j = Json::array();
    for (double v : s.values) j.push_back(v);
    return j;
}

inline Json to_json(const RealRootedPoly& f) {
    Json j = Json::array();
    for (double v : f.roots()) j.push_back(v);
    return j;
}

template <class T>
Json to_json(const HermitianMatrix<T>& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.size(); ++j) row.push_back(to_string(a(i, j)));
        rows.push_back(row);
    }
    return Json{{"field", field_name(a.field())}, {"n", a.size()}, {"rows", rows}};
}

inline Json to_json(const GraphSpec& g) { return io::format_graph(g); }

}  // namespace herminertia
