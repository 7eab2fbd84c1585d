#pragma once

// Command implementations behind the crossprod executable.

#include <optional>
#include <sstream>
#include <string>

#include "verify.hpp"

namespace crossprod {

inline std::string info_summary(const DynSystem& sys) {
    std::ostringstream out;
    const bool free = is_topologically_free(sys);
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete: {
            const auto& orbits = sys.orbit_list();
            std::vector<long> periods;
            for (const auto& o : orbits) periods.push_back(o.period);
            std::sort(periods.begin(), periods.end());
            periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
            out << orbits.size() << (orbits.size() == 1 ? " orbit, period" : " orbits, period") << (periods.size() == 1 ? " " : "s ");
            for (std::size_t i = 0; i < periods.size(); ++i) out << (i ? "," : "") << periods[i];
            break;
        }
        case SystemKind::RationalRotation: out << "X = Per_" << sys.q() << "(sigma)"; break;
        case SystemKind::IrrationalRotation: out << "free"; break;
    }
    out << (free ? ", topologically free" : ", not topologically free");
    return out.str();
}

inline Report cmd_info(const DynSystem& sys) {
    Report r;
    r.command = "info";
    r.system = system_to_json(sys);
    const auto prof = periodicity_profile(sys, default_max_n(sys));
    json res{{"summary", info_summary(sys)}, {"topologically_free", is_topologically_free(sys)}, {"kind", to_string(sys.kind())}};
    if (sys.is_finite()) {
        json orbits = json::array();
        for (const auto& o : sys.orbit_list()) orbits.push_back({{"points", o.points}, {"period", o.period}});
        res["orbits"] = orbits;
    }
    json per = json::object();
    for (const auto& [k, s] : prof.per_exact) {
        if (s.empty()) continue;
        per[std::to_string(k)] = s.whole ? json("X") : json(s.points);
    }
    res["exact_periods"] = per;
    res["aperiodic"] = prof.aperiodic.whole ? json("X") : json(prof.aperiodic.points);
    res["dense_union"] = dense_union_check(sys);
    r.result = res;
    return r;
}

/// Inputs of `compute`; which fields are required depends on the operation.
struct ComputeInputs {
    std::optional<DynSystem> system;
    std::optional<GenPoly> element;
    std::optional<IdealSpec> ideal;
    std::optional<SubalgebraSpec> subalgebra;
    long j = 0;                 // fourier coefficient index
    long n = 0;                 // Cesaro order
    std::optional<double> y;    // base point: index on finite systems, turn on the circle
    std::optional<double> t;    // representation parameter in turns; symbolic when absent
};

namespace detail {

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
    if (!v) throw std::invalid_argument(std::string("this operation needs ") + what);
    return *v;
}

inline Point base_point(const DynSystem& sys, const ComputeInputs& in) {
    const double y = in.y.value_or(0.0);
    if (sys.is_finite()) {
        if (y < 0 || y >= static_cast<double>(sys.size()) || y != std::floor(y)) throw std::invalid_argument("--y must be a point index");
        return Point::at(static_cast<std::size_t>(y));
    }
    return Point::on_circle(y);
}

inline json estimate_to_json(const NormEstimate& e) {
    json j{{"estimate", e.estimate}, {"lower_bound_only", e.lower_bound_only}};
    if (e.lower_bound_only) {
        j["rigor"] = nullptr;
    } else {
        j["rigor"] = e.rigor;
        j["upper"] = e.upper();
        j["grid"] = e.grid;
        if (e.y_grid) j["y_grid"] = e.y_grid;
    }
    return j;
}

inline json intersect_to_json(const IntersectResult& r) {
    json j{{"verdict", to_string(r.verdict)}, {"method", r.method}};
    if (r.witness) {
        j["witness"] = element_to_json(*r.witness);
        j["witness_norm"] = r.witness_norm;
    }
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    return j;
}

}  // namespace detail

inline const std::vector<std::string>& compute_ops() {
    static const std::vector<std::string> ops{"norm",         "rep",          "fourier",        "cesaro",          "commutant",      "maximal-abelian",
                                              "e0",           "ideal-vanish", "ideal-contains", "ideal-intersect", "intermediate-subalgebras"};
    return ops;
}

inline Report cmd_compute(const std::string& op, const ComputeInputs& in, const RunConfig& cfg) {
    cfg.validate();
    Report r;
    r.command = "compute " + op;
    if (in.system) r.system = system_to_json(*in.system);

    if (op == "fourier") {
        const GenPoly& a = detail::need(in.element, "an element");
        const Function* f = a.find(in.j);
        r.result = {{"j", in.j}, {"coefficient", f ? function_to_json(*f) : json(nullptr)}};
        return r;
    }
    if (op == "cesaro") {
        if (in.n < 0) throw std::invalid_argument("--n must be non-negative");
        const GenPoly& a = detail::need(in.element, "an element");
        GenPoly::Terms t;
        for (const auto& [k, f] : a.terms()) {
            const double w = 1.0 - static_cast<double>(std::abs(k)) / static_cast<double>(in.n + 1);
            if (w > 0) t.emplace(k, f * cplx(w));
        }
        r.result = {{"n", in.n}, {"element", element_to_json(GenPoly(std::move(t)))}};
        return r;
    }

    const DynSystem& sys = detail::need(in.system, "--sys");
    const CrossedProduct alg(sys);
    NormOptions nopt = cfg.norm_options();
    nopt.grid = cfg.grid;

    if (op == "norm") {
        const GenPoly& a = detail::need(in.element, "an element");
        alg.check(a);
        const NormEstimate e = operator_norm(sys, a, nopt);
        r.result = detail::estimate_to_json(e);
        if (e.lower_bound_only)
            r.add(skipped_check("norm-certified", "norm equals the supremum over periodic representations",
                                "aperiodic systems give truncated lower bounds only"));
        else
            r.add(make_check("norm-certified", "norm equals the supremum over periodic representations", e.rigor <= cfg.norm_tol,
                             {{"rigor", e.rigor}}, "enclosure radius above the requested tolerance at the maximal grid"));
    } else if (op == "rep") {
        const GenPoly& a = detail::need(in.element, "an element");
        alg.check(a);
        if (sys.kind() == SystemKind::IrrationalRotation) {
            const double x = in.y.value_or(0.0);
            const long w = std::max(cfg.window, a.degree_bound());
            r.result = {{"x", x}, {"window", w}, {"matrix", matrix_to_json(rep_aperiodic(sys, x, w, a).matrix)}};
        } else {
            const Point y = detail::base_point(sys, in);
            json res{{"y", sys.is_finite() ? json(y.index) : json(y.turn)}, {"p", sys.period_of(y)}};
            if (in.t)
                res["matrix"] = matrix_to_json(rep_periodic(sys, y, unit(*in.t), a)), res["t_turns"] = *in.t;
            else
                res["laurent"] = laurent_matrix_to_json(symbolic_rep(sys, y, a));
            r.result = res;
        }
    } else if (op == "commutant") {
        if (in.element) {
            const GenPoly& a = *in.element;
            alg.check(a);
            r.result = {{"in_commutant", in_commutant(sys, a)}, {"projection", element_to_json(commutant_projection(sys, a))}};
        } else {
            const long cutoff = cfg.cutoff > 0 ? cfg.cutoff : 2;
            const auto b = commutant_basis(sys, cutoff);
            json dims = json::array();
            for (const auto& [k, pts] : b.support) dims.push_back(pts.size());
            r.result = {{"cutoff", cutoff}, {"basis", basis_to_json(b)}, {"dims", dims}, {"dimension", b.dimension()}};
        }
    } else if (op == "maximal-abelian") {
        const bool free = is_topologically_free(sys);
        json res{{"topologically_free", free}, {"cx_maximal_abelian", free}};
        if (sys.is_finite()) {
            const long cutoff = cfg.cutoff > 0 ? cfg.cutoff : 2 * lcm_of_periods(sys);
            const auto cert = is_maximal_abelian(sys, cutoff);
            res["cutoff"] = cutoff;
            res["commutant_maximal_abelian"] = cert.maximal_abelian;
            res["commutant_dimension"] = cert.basis_dimension;
            res["nullspace_dimension"] = cert.nullspace.dimension;
            r.add(make_check("commutant-maximal-abelian", "C(X)' is maximal abelian", cert.maximal_abelian, {{"cutoff", cutoff}},
                             "the truncated commutant is not maximal abelian"));
        }
        if (const auto w = noncentral_witness(sys)) res["noncentral_witness"] = element_to_json(*w);
        r.result = res;
    } else if (op == "e0") {
        const GenPoly& a = detail::need(in.element, "an element");
        alg.check(a);
        r.result = {{"element", element_to_json(e0_projection(sys, a))}};
    } else if (op == "ideal-vanish") {
        const IdealSpec& ideal = detail::need(in.ideal, "--ideal");
        const auto vs = vanishing_set(sys, ideal, SampleGrid{cfg.grid, cfg.y_grid});
        json fibers = json::array();
        for (const auto& f : vs.fibers) {
            json fj{{"y", sys.is_finite() ? json(f.y.index) : json(f.y.turn)}, {"p", f.p}};
            if (f.whole())
                fj["hull"] = "T";
            else
                fj["hull"] = {{"exact", circle_set_to_json(f.exact)}, {"roots", f.roots}};
            fibers.push_back(fj);
        }
        r.result = {{"fibers", fibers}, {"everything", vs.everything()}, {"nothing", vs.nothing()}};
    } else if (op == "ideal-contains") {
        const IdealSpec& ideal = detail::need(in.ideal, "--ideal");
        const GenPoly& b = detail::need(in.element, "an element");
        alg.check(b);
        const auto vs = vanishing_set(sys, ideal, SampleGrid{cfg.grid, cfg.y_grid});
        const auto rep = ideal_contains_report(sys, vs, b);
        r.result = {{"contained", rep.contained}, {"max_residual", rep.max_residual}, {"grid", cfg.grid}};
    } else if (op == "ideal-intersect") {
        const IdealSpec& ideal = detail::need(in.ideal, "--ideal");
        const SubalgebraSpec b = in.subalgebra.value_or(SubalgebraSpec::full_commutant());
        r.result = detail::intersect_to_json(intersect_with_subalgebra(sys, ideal, b));
        r.result["subalgebra"] = subalgebra_to_json(b);
    } else if (op == "intermediate-subalgebras") {
        Random rng(cfg.seed);
        const auto cls = classify_intermediate_subalgebras(sys, rng, cfg.samples);
        json res{{"case", cls.case_label}, {"branch", cls.branch}, {"topologically_free", cls.topologically_free}};
        if (cls.b1) res["b1"] = subalgebra_to_json(*cls.b1);
        if (cls.b2) res["b2"] = subalgebra_to_json(*cls.b2);
        if (cls.b2_result) {
            res["b1_battery"] = {{"ideals", cls.b1_battery.total}, {"witnesses", cls.b1_battery.witnesses}};
            res["b2_result"] = detail::intersect_to_json(*cls.b2_result);
        } else {
            res["commutant_is_base"] = cls.commutant_is_base;
        }
        r.result = res;
        r.add(make_check("intermediate-dichotomy", "intermediate subalgebras: exactly one of the two cases occurs", cls.consistent, {},
                         "the constructed subalgebras do not realize the predicted case"));
    } else {
        throw std::invalid_argument("unknown operation '" + op + "'");
    }
    return r;
}

}  // namespace crossprod
