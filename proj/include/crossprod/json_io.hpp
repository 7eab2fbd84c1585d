#pragma once

// JSON forms of systems, elements, ideals, arc sets, subalgebras and matrices.

#include <json.hpp>
#include <fstream>
#include <sstream>
#include <string>

#include "ideals.hpp"

namespace crossprod {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw ParseError("complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json system_to_json(const DynSystem& sys) {
    json j;
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete:
            j["kind"] = "finite";
            j["sigma"] = sys.sigma();
            if (!sys.labels().empty()) j["labels"] = sys.labels();
            break;
        case SystemKind::RationalRotation:
            j["kind"] = "rotation";
            j["p"] = sys.p();
            j["q"] = sys.q();
            break;
        case SystemKind::IrrationalRotation:
            j["kind"] = "rotation";
            j["theta"] = sys.theta();
            j["irrational"] = true;
            break;
    }
    return j;
}

inline DynSystem system_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "finite") {
            std::vector<std::string> labels;
            if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
            return DynSystem::finite(j.at("sigma").get<std::vector<std::size_t>>(), std::move(labels));
        }
        if (kind == "rotation") {
            if (j.value("irrational", false)) return DynSystem::irrational(j.at("theta").get<double>());
            return DynSystem::rotation(j.at("p").get<long>(), j.at("q").get<long>());
        }
        throw ParseError("unknown system kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("system: ") + e.what());
    }
}

inline json function_to_json(const Function& f) {
    json j;
    j["model"] = to_string(f.model());
    if (f.model() == Model::Discrete) {
        json v = json::array();
        for (auto c : f.values()) v.push_back(complex_to_json(c));
        j["values"] = v;
    } else {
        json c = json::object();
        for (const auto& [k, v] : f.coeffs()) c[std::to_string(k)] = complex_to_json(v);
        j["coeffs"] = c;
    }
    return j;
}

inline Function function_from_json(const json& j) {
    try {
        const std::string model = j.at("model").get<std::string>();
        if (model == "discrete") {
            std::vector<cplx> v;
            for (const auto& e : j.at("values")) v.push_back(complex_from_json(e));
            return Function::discrete(std::move(v));
        }
        if (model == "trig") {
            std::map<long, cplx> c;
            for (const auto& [k, v] : j.at("coeffs").items()) c[std::stol(k)] = complex_from_json(v);
            return Function::trig(std::move(c));
        }
        throw ParseError("unknown coefficient model '" + model + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("coefficient: ") + e.what());
    }
}

inline json element_to_json(const GenPoly& a) {
    json terms = json::array();
    for (const auto& [n, f] : a.terms()) terms.push_back({{"deg", n}, {"coef", function_to_json(f)}});
    return {{"terms", terms}};
}

inline GenPoly element_from_json(const json& j) {
    try {
        GenPoly::Terms t;
        for (const auto& term : j.at("terms")) {
            const long n = term.at("deg").get<long>();
            Function f = function_from_json(term.at("coef"));
            auto it = t.find(n);
            if (it == t.end())
                t.emplace(n, std::move(f));
            else
                it->second += f;
        }
        return GenPoly(std::move(t));
    } catch (const json::exception& e) {
        throw ParseError(std::string("element: ") + e.what());
    }
}

/// Arc sets: {"arcs": [[a, b], ...]} in turns, or {"full": true}.
inline json circle_set_to_json(const CircleSet& s) {
    if (s.full()) return {{"full", true}};
    json arcs = json::array();
    for (const auto& a : s.arcs()) {
        const Rational e = a.end();
        arcs.push_back(json::array({to_double(a.start), to_double(e > Rational(1) ? e - Rational(1) : e)}));
    }
    return {{"arcs", arcs}};
}

inline std::vector<Arc> arcs_from_json(const json& j) {
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) {
        if (!a.is_array() || a.size() != 2) throw ParseError("arcs are [start, end] pairs in turns");
        arcs.push_back(Arc::between(to_rational(a[0].get<double>()), to_rational(a[1].get<double>())));
    }
    return arcs;
}

inline CircleSet circle_set_from_json(const json& j) {
    try {
        if (j.value("full", false)) return CircleSet::everything();
        return CircleSet::of(arcs_from_json(j));
    } catch (const json::exception& e) {
        throw ParseError(std::string("arc set: ") + e.what());
    }
}

inline json open_arcs_to_json(const OpenArcSet& s) {
    json arcs = json::array();
    for (const auto& a : s.arcs()) arcs.push_back(json::array({to_double(a.start), to_double(frac(a.end()))}));
    return {{"arcs", arcs}};
}

inline json ideal_to_json(const IdealSpec& ideal) {
    json j;
    switch (ideal.kind) {
        case IdealSpec::Kind::Generated: {
            json g = json::array();
            for (const auto& a : ideal.generators) g.push_back(element_to_json(a));
            j["generators"] = g;
            break;
        }
        case IdealSpec::Kind::HullSpecified: {
            j["kind"] = "hull";
            json h = json::array();
            for (const auto& c : ideal.orbit_hulls) h.push_back(circle_set_to_json(c));
            j["hulls"] = h;
            break;
        }
        case IdealSpec::Kind::BumpGenerated:
            j["kind"] = "bump";
            j["support"] = open_arcs_to_json(ideal.bump_support);
            j["degree"] = ideal.bump_degree;
            break;
    }
    return j;
}

inline IdealSpec ideal_from_json(const json& j) {
    try {
        const std::string kind = j.value("kind", std::string("generated"));
        if (kind == "generated") {
            std::vector<GenPoly> gens;
            for (const auto& e : j.at("generators")) gens.push_back(element_from_json(e));
            return IdealSpec::generated(std::move(gens));
        }
        if (kind == "hull") {
            std::vector<CircleSet> hulls;
            for (const auto& h : j.at("hulls")) hulls.push_back(circle_set_from_json(h));
            return IdealSpec::hull_specified(std::move(hulls));
        }
        if (kind == "bump") return IdealSpec::bump(OpenArcSet(arcs_from_json(j.at("support"))), j.at("degree").get<long>());
        throw ParseError("unknown ideal kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("ideal: ") + e.what());
    }
}

inline json subalgebra_to_json(const SubalgebraSpec& b) {
    using K = SubalgebraSpec::Kind;
    json j{{"kind", to_string(b.kind)}};
    switch (b.kind) {
        case K::FullCommutant:
        case K::Functions: break;
        case K::DisjointSupport:
            if (!b.u1_points.empty()) j["u1"] = b.u1_points;
            if (!b.u1_arcs.empty()) j["u1_arcs"] = open_arcs_to_json(b.u1_arcs);
            break;
        case K::VanishAtPoint: j["x0"] = b.x0; break;
        case K::IsolatedOrbitEqualAt:
            j["orbit"] = b.orbit;
            j["x1"] = b.x1;
            j["x2"] = b.x2;
            break;
        case K::IsolatedOrbitConstOn:
            j["orbit"] = b.orbit;
            j["c1"] = circle_set_to_json(b.c1);
            break;
    }
    return j;
}

inline SubalgebraSpec subalgebra_from_json(const json& j) {
    using K = SubalgebraSpec::Kind;
    try {
        const std::string kind = j.at("kind").get<std::string>();
        SubalgebraSpec b;
        if (kind == "full-commutant") {
            b.kind = K::FullCommutant;
        } else if (kind == "functions") {
            b.kind = K::Functions;
        } else if (kind == "disjoint-support") {
            b.kind = K::DisjointSupport;
            if (j.contains("u1")) b.u1_points = j["u1"].get<std::vector<std::size_t>>();
            if (j.contains("u1_arcs")) b.u1_arcs = OpenArcSet(arcs_from_json(j["u1_arcs"]));
        } else if (kind == "vanish-at-point") {
            b.kind = K::VanishAtPoint;
            b.x0 = j.at("x0").get<double>();
        } else if (kind == "isolated-orbit-equal-at") {
            b.kind = K::IsolatedOrbitEqualAt;
            b.orbit = j.at("orbit").get<std::size_t>();
            b.x1 = j.at("x1").get<double>();
            b.x2 = j.at("x2").get<double>();
        } else if (kind == "isolated-orbit-const-on") {
            b.kind = K::IsolatedOrbitConstOn;
            b.orbit = j.at("orbit").get<std::size_t>();
            b.c1 = circle_set_from_json(j.at("c1"));
        } else {
            throw ParseError("unknown subalgebra kind '" + kind + "'");
        }
        return b;
    } catch (const json::exception& e) {
        throw ParseError(std::string("subalgebra: ") + e.what());
    }
}

/// Row-major array of [re, im] pairs.
inline json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline json laurent_matrix_to_json(const MatrixLaurent& m) {
    json out = json::array();
    for (const auto& [k, c] : m.coeffs()) out.push_back({{"power", k}, {"matrix", matrix_to_json(c)}});
    return out;
}

inline json basis_to_json(const CommutantBasis& b) {
    json j = json::object();
    for (const auto& [n, pts] : b.support) j[std::to_string(n)] = pts;
    return j;
}

/// Parses JSON text; parse errors carry the byte position.
inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

}  // namespace crossprod
