#pragma once

// Property suites run by `crossprod verify`: each returns checks with evidence.

#include <string>
#include <vector>

#include "report.hpp"

namespace crossprod {

struct RunConfig {
    std::size_t grid = 512;     // t samples M
    std::size_t y_grid = 64;    // base points per fundamental domain on rational rotations
    long window = 256;          // truncation window on irrational rotations
    Tolerances tol = kDefaultTol;
    double norm_tol = 1e-4;     // requested enclosure radius
    std::uint64_t seed = kDefaultSeed;
    long cutoff = 0;            // commutant cutoff, 0 = twice the lcm of the periods
    std::size_t samples = 20;   // random elements per property
    std::string suite = "all";

    void validate() const {
        if (grid < 16 || (grid & (grid - 1)) != 0) throw PreconditionViolation("grid must be a power of two >= 16");
        if (window < 1) throw PreconditionViolation("window must be positive");
        if (!(tol.zero > 0 && tol.num > 0 && tol.psd > 0 && norm_tol > 0)) throw PreconditionViolation("tolerances must be positive");
    }
    NormOptions norm_options() const {
        NormOptions o;
        o.grid = std::min<std::size_t>(grid, 256);
        o.y_grid = y_grid;
        o.tol = norm_tol;
        o.window = window;
        return o;
    }
};

namespace detail {

inline std::vector<RepPoint> probe_points(const DynSystem& sys, std::size_t t_count) {
    return rep_points(sys, SampleGrid{t_count, 4});
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace detail

inline std::vector<Check> verify_reps(const DynSystem& sys, const RunConfig& cfg) {
    std::vector<Check> out;
    const CrossedProduct alg(sys);
    Random rng(cfg.seed);
    const bool periodic = sys.is_periodic_type();

    if (periodic) {
        double hom = 0.0, adj = 0.0, state = 0.0;
        const auto pts = detail::probe_points(sys, 8);
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const GenPoly a = rng.genpoly(sys, 3), b = rng.genpoly(sys, 3);
            const GenPoly ab = alg.mul(a, b), as = alg.adjoint(a);
            for (const auto& rp : pts) {
                const RepMatrix ra = rep_periodic(sys, rp.y, rp.t, a), rb = rep_periodic(sys, rp.y, rp.t, b);
                hom = std::max(hom, detail::max_abs(rep_periodic(sys, rp.y, rp.t, ab) - ra * rb));
                adj = std::max(adj, detail::max_abs(rep_periodic(sys, rp.y, rp.t, as) - ra.adjoint()));
                state = std::max(state, std::abs(pure_state(sys, rp.y, rp.t, a) - ra(0, 0)));
            }
        }
        out.push_back(make_check("rep-homomorphism", "periodic representations are *-homomorphisms", hom <= cfg.tol.num,
                                 {{"max_product_defect", hom}}, "product defect exceeds tolerance"));
        out.push_back(make_check("rep-adjoint", "periodic representations are *-homomorphisms", adj <= cfg.tol.num,
                                 {{"max_adjoint_defect", adj}}, "adjoint defect exceeds tolerance"));
        out.push_back(make_check("pure-state-entry", "pure states are vector states of the cyclic vector", state <= cfg.tol.num,
                                 {{"max_defect", state}}, "state differs from the (0,0) matrix entry"));
    } else {
        const long w = std::min<long>(cfg.window, 48);
        double hom = 0.0;
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const GenPoly a = rng.genpoly(sys, 3), b = rng.genpoly(sys, 3);
            const double x = rng.uniform(0.0, 1.0);
            const auto ra = rep_aperiodic(sys, x, w, a).matrix, rb = rep_aperiodic(sys, x, w, b).matrix;
            const auto rab = rep_aperiodic(sys, x, w, alg.mul(a, b)).matrix;
            const long inner = 2 * w + 1 - 12;
            hom = std::max(hom, detail::max_abs((rab - ra * rb).block(6, 6, inner, inner)));
        }
        out.push_back(make_check("rep-homomorphism", "orbit representations are *-homomorphisms", hom <= cfg.tol.num,
                                 {{"max_product_defect", hom}, {"window", w}}, "product defect exceeds tolerance"));
    }

    // Positivity of a^* a and totality of the state family.
    {
        double worst = INFINITY, weakest = INFINITY;
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const GenPoly a = rng.nonzero_genpoly(sys, 2);
            const GenPoly p = alg.mul(alg.adjoint(a), a);
            double best = 0.0;
            if (periodic) {
                for (const auto& rp : detail::probe_points(sys, 16)) {
                    Eigen::SelfAdjointEigenSolver<RepMatrix> es(rep_periodic(sys, rp.y, rp.t, p), Eigen::EigenvaluesOnly);
                    worst = std::min(worst, es.eigenvalues().minCoeff());
                    best = std::max(best, pure_state(sys, rp.y, rp.t, p).real());
                }
            } else {
                const auto m = rep_aperiodic(sys, 0.0, 32, p).matrix;
                Eigen::SelfAdjointEigenSolver<RepMatrix> es(m, Eigen::EigenvaluesOnly);
                worst = std::min(worst, es.eigenvalues().minCoeff());
                best = m.diagonal().real().maxCoeff();
            }
            weakest = std::min(weakest, best);
        }
        out.push_back(make_check("positivity-of-squares", "a*a is positive in every representation", worst >= -cfg.tol.psd,
                                 {{"min_eigenvalue", worst}}, "negative eigenvalue found"));
        out.push_back(make_check("state-totality", "the pure states separate positive elements", weakest > 1e-8,
                                 {{"min_over_samples_of_max_state", weakest}}, "a nonzero a*a vanished on every sampled state"));
    }

    // Cesaro means and the norm enclosure.
    if (periodic) {
        bool ok = true, enclosed = true;
        double worst_gap = 0.0, worst_rigor = 0.0;
        for (std::size_t i = 0; i < std::min<std::size_t>(cfg.samples, 5); ++i) {
            const GenPoly a = rng.nonzero_genpoly(sys, 3);
            for (long n : {1L, 4L, 16L}) {
                double bound = 0.0;
                for (const auto& [k, f] : a.terms())
                    bound += std::min(1.0, static_cast<double>(std::abs(k)) / static_cast<double>(n + 1)) * f.sup_bound();
                const NormEstimate e = operator_norm(sys, a - alg.cesaro(a, n), cfg.norm_options());
                if (e.estimate > bound + 1e-9) ok = false;
                worst_gap = std::max(worst_gap, e.estimate - bound);
            }
            const NormEstimate e = operator_norm(sys, a, cfg.norm_options());
            worst_rigor = std::max(worst_rigor, e.rigor);
            for (const auto& rp : rep_points(sys, SampleGrid{7, 3})) {
                const double s = spectral_norm(rep_periodic(sys, rp.y, rp.t * unit(0.0137), a));
                if (s > e.upper() + 1e-12) enclosed = false;
            }
        }
        out.push_back(make_check("cesaro-bound", "Cesaro means converge with weights 1 - |k|/(n+1)", ok,
                                 {{"max_excess_over_bound", worst_gap}}, "||a - sigma_n(a)|| exceeds the weighted coefficient bound"));
        out.push_back(make_check("norm-enclosure", "norm equals the supremum over periodic representations", enclosed,
                                 {{"max_rigor", worst_rigor}}, "an off-grid representation exceeded the enclosure"));
    } else {
        out.push_back(skipped_check("norm-enclosure", "norm equals the supremum over periodic representations",
                                    "aperiodic systems give truncated lower bounds only"));
    }
    return out;
}

inline std::vector<Check> verify_commutant(const DynSystem& sys, const RunConfig& cfg) {
    std::vector<Check> out;
    const CrossedProduct alg(sys);
    Random rng(cfg.seed + 1);
    const auto family = generating_family(sys);

    {
        bool ok = true;
        double numeric = 0.0;
        std::vector<GenPoly> members;
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const GenPoly a = commutant_projection(sys, rng.genpoly(sys, 4));
            members.push_back(a);
            if (!in_commutant(sys, a)) ok = false;
            for (const auto& f : family) {
                if (!alg.commutator(a, alg.embed(f)).is_zero()) ok = false;
                if (sys.is_periodic_type() && i < 5) numeric = std::max(numeric, commutator_norm(sys, a, f, cfg.norm_options()).upper());
            }
        }
        json ev{{"samples", cfg.samples}};
        if (sys.is_periodic_type()) ev["max_commutator_norm"] = numeric;
        out.push_back(make_check("commutant-support", "a commutes with C(X) iff supp a(n) lies in Per^n", ok && numeric <= 1e-8, ev,
                                 "a projected element fails to commute with the generating family"));
        bool abelian = true;
        for (std::size_t i = 0; i + 1 < members.size(); ++i)
            if (!alg.commutator(members[i], members[i + 1]).is_zero()) abelian = false;
        out.push_back(make_check("commutant-abelian", "C(X)' is commutative", abelian, {}, "two commutant elements do not commute"));
    }

    const bool free = is_topologically_free(sys);
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete: {
            const long cutoff = cfg.cutoff > 0 ? cfg.cutoff : 2 * lcm_of_periods(sys);
            const CommutantBasis basis = commutant_basis(sys, cfg.cutoff > 0 ? cfg.cutoff : 2);
            bool dims_ok = true;
            json dims = json::array();
            for (const auto& [n, pts] : basis.support) {
                std::size_t count = 0;
                for (std::size_t x = 0; x < sys.size(); ++x) {
                    std::size_t y = x;
                    for (long s = 0; s < std::abs(n); ++s) y = sys.sigma()[y];
                    if (y == x) ++count;
                }
                dims.push_back(pts.size());
                if (count != pts.size()) dims_ok = false;
            }
            out.push_back(make_check("commutant-basis", "C(X)' is spanned by 1_x delta^n with x in Per^n", dims_ok,
                                     {{"cutoff", basis.cutoff}, {"basis_dims", dims}}, "basis dimension differs from the fixed-point count"));
            const auto cert = is_maximal_abelian(sys, cutoff);
            out.push_back(make_check("commutant-maximal-abelian", "C(X)' is maximal abelian", cert.maximal_abelian,
                                     {{"cutoff", cutoff}, {"commutant_dimension", cert.basis_dimension}, {"nullspace_dimension", cert.nullspace.dimension},
                                      {"support_ok", cert.nullspace.support_ok}},
                                     "the truncated commutant is not maximal abelian"));
            const auto w = noncentral_witness(sys);
            out.push_back(make_check("maximal-abelian-iff-free", "C(X) is maximal abelian iff the system is topologically free",
                                     !free && w && in_commutant(sys, *w) && w->find(0) == nullptr, {{"topologically_free", free}},
                                     "no element of C(X)' outside C(X) was produced"));
            break;
        }
        case SystemKind::RationalRotation: {
            const auto w = noncentral_witness(sys);
            const bool ok = w && in_commutant(sys, *w) && !free && w->find(0) == nullptr;
            out.push_back(make_check("maximal-abelian-iff-free", "C(X) is maximal abelian iff the system is topologically free", ok,
                                     {{"witness_degree", sys.q()}, {"topologically_free", free}},
                                     "no element of C(X)' outside C(X) was produced"));
            break;
        }
        case SystemKind::IrrationalRotation: {
            std::vector<GenPoly> gens;
            for (const auto& f : family) gens.push_back(alg.embed(f));
            const auto ns = commutant_nullspace(sys, gens, 3, 3);
            out.push_back(make_check("maximal-abelian-iff-free", "C(X) is maximal abelian iff the system is topologically free",
                                     free && ns.support_ok && ns.dimension == 7,
                                     {{"unknowns", ns.unknowns}, {"nullspace_dimension", ns.dimension}, {"support_ok", ns.support_ok}},
                                     "the commutant of C(X) is larger than C(X) on the degree window"));
            break;
        }
    }
    return out;
}

inline std::vector<Check> verify_e0(const DynSystem& sys, const RunConfig& cfg) {
    std::vector<Check> out;
    const std::string anchor = "E0 is the unique faithful conditional expectation onto C(X)'";
    if (sys.is_finite() && uniform_period(sys) == 0) {
        out.push_back(skipped_check("e0", anchor, "orbits of different periods: no closed-form E0 on this system"));
        return out;
    }
    const CrossedProduct alg(sys);
    Random rng(cfg.seed + 2);
    double idem = 0.0, ident = 0.0, state = 0.0, weakest = INFINITY;
    bool contractive = true;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const GenPoly a = rng.nonzero_genpoly(sys, 4);
        const GenPoly e = e0_projection(sys, a);
        idem = std::max(idem, distance(e0_projection(sys, e), e));
        const GenPoly c = commutant_projection(sys, rng.genpoly(sys, 4));
        ident = std::max(ident, distance(e0_projection(sys, c), c));
        const GenPoly p = alg.mul(alg.adjoint(a), a);
        weakest = std::min(weakest, e0_projection(sys, p).max_coefficient());
        if (sys.is_periodic_type()) {
            for (const auto& rp : detail::probe_points(sys, 8))
                state = std::max(state, std::abs(pure_state(sys, rp.y, rp.t, e) - pure_state(sys, rp.y, rp.t, a)));
            if (i < 5) {
                const auto ne = operator_norm(sys, e, cfg.norm_options()), na = operator_norm(sys, a, cfg.norm_options());
                if (ne.estimate > na.upper() + ne.rigor) contractive = false;
            }
        }
    }
    out.push_back(make_check("e0-idempotent", anchor, idem <= cfg.tol.zero, {{"max_defect", idem}}, "E0(E0(a)) differs from E0(a)"));
    out.push_back(make_check("e0-identity-on-commutant", anchor, ident <= cfg.tol.zero, {{"max_defect", ident}},
                             "E0 moved an element of C(X)'"));
    out.push_back(make_check("e0-faithful", anchor, weakest > cfg.tol.zero, {{"min_coefficient", weakest}}, "E0(a*a) vanished for a nonzero a"));
    if (sys.is_periodic_type()) {
        out.push_back(make_check("e0-state-invariance", anchor, state <= cfg.tol.num, {{"max_defect", state}},
                                 "a pure state is not invariant under E0"));
        out.push_back(make_check("e0-contractive", anchor, contractive, {}, "||E0(a)|| exceeded ||a|| beyond the enclosure"));
    } else {
        out.push_back(skipped_check("e0-contractive", anchor, "aperiodic systems give truncated lower bounds only"));
    }
    const auto ex = e0_exists(sys);
    out.push_back(make_check("e0-exists", "a conditional expectation onto C(X)' exists when every interior of Per_k is closed",
                             ex.exists, {{"periods_checked", ex.witness.size()}}, "an interior of Per_k is not closed"));
    return out;
}

inline std::vector<Check> verify_ideals(const DynSystem& sys, const RunConfig& cfg) {
    std::vector<Check> out;
    Random rng(cfg.seed + 3);
    const std::string anchor_ip = "C(X)' has the ideal intersection property";
    if (!sys.is_periodic_type()) {
        out.push_back(skipped_check("commutant-battery", anchor_ip, "ideal hulls are computed for periodic systems only"));
    } else {
        const auto outcome = run_battery(sys, SubalgebraSpec::full_commutant(), ideal_battery(sys, rng, cfg.samples));
        out.push_back(make_check("commutant-battery", anchor_ip, outcome.witnesses == outcome.total && outcome.min_norm >= 1e-6,
                                 {{"ideals", outcome.total}, {"witnesses", outcome.witnesses}, {"min_witness_norm", outcome.min_norm}},
                                 "some nonzero ideal met C(X)' trivially"));
    }

    if (sys.is_finite() && sys.orbit_list().size() >= 2) {
        const long n = lcm_of_periods(sys);
        const auto c = build_disjoint_support_subalgebra(sys, n, sys.orbit_list().front().points);
        const auto r = intersect_with_subalgebra(sys, c.ideal, c.b);
        out.push_back(make_check("disjoint-support-subalgebra", "an intermediate subalgebra with supports in U1 misses an ideal",
                                 r.verdict == IntersectVerdict::CertifiedEmpty, {{"verdict", to_string(r.verdict)}, {"method", r.method}},
                                 "intersection was not certified empty"));
    }

    const auto cls = classify_intermediate_subalgebras(sys, rng, cfg.samples);
    json ev{{"case", cls.case_label}, {"branch", cls.branch}, {"topologically_free", cls.topologically_free}};
    if (cls.b2_result) {
        ev["b1_witnesses"] = cls.b1_battery.witnesses;
        ev["b1_ideals"] = cls.b1_battery.total;
        ev["b2_verdict"] = to_string(cls.b2_result->verdict);
    }
    out.push_back(make_check("intermediate-dichotomy", "intermediate subalgebras: exactly one of the two cases occurs", cls.consistent, ev,
                             "the constructed subalgebras do not realize the predicted case"));

    if (!cls.topologically_free) {
        const auto rep = replay_base_algebra_failure(sys);
        out.push_back(make_check("base-algebra-failure", "C(X) lacks the intersection property when some Per^k has interior", rep.passed,
                                 {{"k", rep.k}, {"max_imag_on_S", rep.max_imag_on_s}, {"ideal_meets_cx_trivially", rep.ideal_meets_cx_trivially}},
                                 "replay of the separating character failed"));
    } else {
        out.push_back(skipped_check("base-algebra-failure", "C(X) lacks the intersection property when some Per^k has interior",
                                    "topologically free system"));
    }
    return out;
}

inline Report run_verify(const DynSystem& sys, const RunConfig& cfg) {
    cfg.validate();
    Report r;
    r.command = "verify " + cfg.suite;
    r.system = system_to_json(sys);
    const bool all = cfg.suite == "all";
    if (!all && cfg.suite != "reps" && cfg.suite != "commutant" && cfg.suite != "e0" && cfg.suite != "ideals")
        throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
    if (all || cfg.suite == "reps") r.add(verify_reps(sys, cfg));
    if (all || cfg.suite == "commutant") r.add(verify_commutant(sys, cfg));
    if (all || cfg.suite == "e0") r.add(verify_e0(sys, cfg));
    if (all || cfg.suite == "ideals") r.add(verify_ideals(sys, cfg));
    return r;
}

}  // namespace crossprod
