#pragma once

// Closed ideals through their vanishing sets on the periodic representations,
// intersections with subalgebras between C(X) and C(X)', the Pedersen-ideal
// witness, the spectral criterion, and the intermediate-subalgebra constructions.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "circle_set.hpp"
#include "commutant.hpp"
#include "random.hpp"

namespace crossprod {

/// A closed ideal of the crossed product.
struct IdealSpec {
    enum class Kind {
        Generated,      // closed ideal generated by finitely many generalized polynomials
        HullSpecified,  // finite systems: per orbit, the ideal of C(T, M_p) vanishing on a closed set
        BumpGenerated,  // rotations: generated by f - f delta^n with f > 0 exactly on an open invariant set
    };

    Kind kind = Kind::Generated;
    std::vector<GenPoly> generators;
    std::vector<CircleSet> orbit_hulls;  // indexed like DynSystem::orbit_list()
    OpenArcSet bump_support;
    long bump_degree = 0;

    static IdealSpec generated(std::vector<GenPoly> gens) {
        if (gens.empty()) throw std::invalid_argument("an ideal needs at least one generator");
        IdealSpec s;
        s.generators = std::move(gens);
        return s;
    }
    static IdealSpec hull_specified(std::vector<CircleSet> hulls) {
        IdealSpec s;
        s.kind = Kind::HullSpecified;
        s.orbit_hulls = std::move(hulls);
        return s;
    }
    static IdealSpec bump(OpenArcSet support, long n) {
        IdealSpec s;
        s.kind = Kind::BumpGenerated;
        s.bump_support = std::move(support);
        s.bump_degree = n;
        return s;
    }
};

inline const char* to_string(IdealSpec::Kind k) {
    switch (k) {
        case IdealSpec::Kind::Generated: return "generated";
        case IdealSpec::Kind::HullSpecified: return "hull";
        case IdealSpec::Kind::BumpGenerated: return "bump";
    }
    return "?";
}

/// Zero set, in t, of an ideal at one base point y. Exact arcs come from hull
/// specifications, numerical points from roots of generator entries.
struct FiberHull {
    Point y;
    long p = 0;
    CircleSet exact;
    std::vector<double> roots;  // turns

    bool whole() const { return exact.full(); }
    bool empty() const { return exact.empty() && roots.empty(); }
    bool contains(double turn) const {
        if (exact.contains(turn, 1e-12)) return true;
        for (double r : roots) {
            double d = std::abs(r - turn);
            d = std::min(d, 1.0 - d);
            if (d <= 1e-9) return true;
        }
        return false;
    }
    /// Finite set of turns (exact points and roots); only meaningful when is_finite().
    bool is_finite() const { return exact.is_finite(); }
    std::vector<double> finite_points() const {
        std::vector<double> out = roots;
        for (const auto& a : exact.arcs()) out.push_back(to_double(a.start));
        return out;
    }
};

struct VanishingSet {
    std::vector<FiberHull> fibers;
    std::size_t y_grid = 0;

    bool everything() const {
        return std::all_of(fibers.begin(), fibers.end(), [](const FiberHull& f) { return f.whole(); });
    }
    bool nothing() const {
        return std::all_of(fibers.begin(), fibers.end(), [](const FiberHull& f) { return f.empty(); });
    }
};

namespace detail {

inline bool orbit_meets(const DynSystem& sys, const OpenArcSet& u, Point y) {
    for (long r = 0; r < sys.q(); ++r)
        if (u.contains(sys.apply(y, r).turn)) return true;
    return false;
}

inline void require_periodic_type(const DynSystem& sys) {
    if (!sys.is_periodic_type()) throw UnsupportedKind("ideal computations need a finite system or a rational rotation");
}

/// Entries of pi_{y,t}(a) for all generators, as Laurent polynomials in t.
inline std::vector<Laurent> generator_entries(const DynSystem& sys, Point y, const std::vector<GenPoly>& gens) {
    std::vector<Laurent> out;
    for (const auto& g : gens) {
        const MatrixLaurent m = symbolic_rep(sys, y, g);
        for (std::size_t r = 0; r < m.dim(); ++r)
            for (std::size_t c = 0; c < m.dim(); ++c) out.push_back(m.entry(r, c));
    }
    return out;
}

}  // namespace detail

/// The points (y, t) where the whole ideal vanishes.
inline VanishingSet vanishing_set(const DynSystem& sys, const IdealSpec& ideal, const SampleGrid& grid = {}) {
    detail::require_periodic_type(sys);
    VanishingSet vs;
    vs.y_grid = sys.is_finite() ? 0 : grid.y_points;
    const auto bases = base_points(sys, grid.y_points);
    for (std::size_t i = 0; i < bases.size(); ++i) {
        const Point y = bases[i];
        FiberHull fh{y, sys.period_of(y), {}, {}};
        switch (ideal.kind) {
            case IdealSpec::Kind::Generated: {
                const CircleZeros z = common_circle_zeros(detail::generator_entries(sys, y, ideal.generators));
                if (z.whole)
                    fh.exact = CircleSet::everything();
                else
                    fh.roots = z.turns;
                break;
            }
            case IdealSpec::Kind::HullSpecified:
                if (!sys.is_finite()) throw UnsupportedKind("hull-specified ideals are defined on finite systems");
                if (ideal.orbit_hulls.size() != sys.orbit_list().size()) throw std::invalid_argument("one hull per orbit is required");
                fh.exact = ideal.orbit_hulls[i];
                break;
            case IdealSpec::Kind::BumpGenerated: {
                if (sys.kind() != SystemKind::RationalRotation) throw UnsupportedKind("bump ideals are defined on rational rotations");
                if (ideal.bump_degree % sys.q() != 0) throw PreconditionViolation("bump degree must be a multiple of q");
                if (detail::orbit_meets(sys, ideal.bump_support, y)) {
                    // pi_{y,t}(f - f delta^n) = diag(f(s^r y)) (1 - t^{n/q})
                    const long m = std::abs(ideal.bump_degree / sys.q());
                    std::vector<Rational> pts;
                    for (long k = 0; k < m; ++k) pts.emplace_back(k, m);
                    fh.exact = m == 0 ? CircleSet::everything() : CircleSet::points(pts);
                } else {
                    fh.exact = CircleSet::everything();
                }
                break;
            }
        }
        vs.fibers.push_back(std::move(fh));
    }
    return vs;
}

struct ContainsReport {
    bool contained = true;
    double max_residual = 0.0;
};

/// b lies in the closed ideal iff pi_{y,t}(b) vanishes on the ideal's vanishing set.
inline ContainsReport ideal_contains_report(const DynSystem& sys, const VanishingSet& vs, const GenPoly& b, double tol = 1e-9) {
    ContainsReport rep;
    const double scale = std::max(1.0, b.max_coefficient());
    for (const auto& fh : vs.fibers) {
        const MatrixLaurent m = symbolic_rep(sys, fh.y, b);
        auto check = [&](double r) {
            rep.max_residual = std::max(rep.max_residual, r);
            if (r > tol * scale) rep.contained = false;
        };
        if (fh.whole()) {
            double r = 0.0;
            for (const auto& [k, c] : m.coeffs()) r = std::max(r, c.cwiseAbs().maxCoeff());
            check(r);
            continue;
        }
        for (const auto& arc : fh.exact.arcs()) {
            if (arc.length > Rational(0)) {
                // A Laurent polynomial vanishing on an arc vanishes identically.
                double r = 0.0;
                for (const auto& [k, c] : m.coeffs()) r = std::max(r, c.cwiseAbs().maxCoeff());
                check(r);
            } else {
                check(m(unit(to_double(arc.start))).cwiseAbs().maxCoeff());
            }
        }
        for (double t : fh.roots) check(m(unit(t)).cwiseAbs().maxCoeff());
    }
    return rep;
}

inline bool ideal_contains(const DynSystem& sys, const IdealSpec& ideal, const GenPoly& b, const SampleGrid& grid = {}) {
    return ideal_contains_report(sys, vanishing_set(sys, ideal, grid), b).contained;
}

/// A C*-subalgebra B with C(X) in B in C(X)', given by its membership predicate.
struct SubalgebraSpec {
    enum class Kind {
        FullCommutant,         // C(X)'
        Functions,             // C(X)
        DisjointSupport,       // a(k) supported in U1 for k != 0
        VanishAtPoint,         // a in C(X)' with a(k)(x0) = 0 for k != 0
        IsolatedOrbitEqualAt,  // C(X_1)' + diag({f : f(x1) = f(x2)}) on one orbit
        IsolatedOrbitConstOn,  // C(X_1)' + diag({f : f constant on C1}) on one orbit
    };

    Kind kind = Kind::FullCommutant;
    std::vector<std::size_t> u1_points;  // DisjointSupport, finite systems
    OpenArcSet u1_arcs;                  // DisjointSupport, rotations
    double x0 = 0.0;                     // VanishAtPoint
    std::size_t orbit = 0;               // Isolated*: index into orbit_list()
    double x1 = 0.0, x2 = 0.5;           // IsolatedOrbitEqualAt, turns on the parameter circle
    CircleSet c1;                        // IsolatedOrbitConstOn

    static SubalgebraSpec full_commutant() { return {}; }
    static SubalgebraSpec functions() {
        SubalgebraSpec s;
        s.kind = Kind::Functions;
        return s;
    }
};

inline const char* to_string(SubalgebraSpec::Kind k) {
    switch (k) {
        case SubalgebraSpec::Kind::FullCommutant: return "full-commutant";
        case SubalgebraSpec::Kind::Functions: return "functions";
        case SubalgebraSpec::Kind::DisjointSupport: return "disjoint-support";
        case SubalgebraSpec::Kind::VanishAtPoint: return "vanish-at-point";
        case SubalgebraSpec::Kind::IsolatedOrbitEqualAt: return "isolated-orbit-equal-at";
        case SubalgebraSpec::Kind::IsolatedOrbitConstOn: return "isolated-orbit-const-on";
    }
    return "?";
}

namespace detail {

/// Diagonal entries h_r(z) = sum_l a(lp)(s^r x) z^l of the image of a on one orbit.
inline std::vector<Laurent> orbit_diagonal(const DynSystem& sys, std::size_t orbit, const GenPoly& a) {
    const auto& o = sys.orbit_list().at(orbit);
    std::vector<Laurent> h(static_cast<std::size_t>(o.period));
    for (const auto& [n, f] : a.terms()) {
        if (n % o.period != 0) continue;
        for (long r = 0; r < o.period; ++r) {
            const cplx v = f.at(o.points[static_cast<std::size_t>(r)]);
            if (v != cplx(0.0)) h[static_cast<std::size_t>(r)] += Laurent::monomial(n / o.period, v);
        }
    }
    return h;
}

}  // namespace detail

inline bool subalgebra_contains(const DynSystem& sys, const SubalgebraSpec& b, const GenPoly& a, double tol = kDefaultTol.num) {
    using K = SubalgebraSpec::Kind;
    if (b.kind == K::Functions) {
        return std::all_of(a.terms().begin(), a.terms().end(), [](const auto& kv) { return kv.first == 0; });
    }
    if (!in_commutant(sys, a)) return false;
    switch (b.kind) {
        case K::FullCommutant:
        case K::Functions: return true;
        case K::DisjointSupport:
            for (const auto& [n, f] : a.terms()) {
                if (n == 0) continue;
                if (sys.is_finite()) {
                    for (std::size_t x = 0; x < sys.size(); ++x) {
                        const bool in_u1 = std::find(b.u1_points.begin(), b.u1_points.end(), x) != b.u1_points.end();
                        if (!in_u1 && std::abs(f.at(x)) > tol) return false;
                    }
                } else if (!f.is_zero(tol)) {
                    // A trigonometric polynomial supported in a proper open set is zero.
                    return false;
                }
            }
            return true;
        case K::VanishAtPoint:
            for (const auto& [n, f] : a.terms())
                if (n != 0 && std::abs(f.eval(b.x0)) > tol) return false;
            return true;
        case K::IsolatedOrbitEqualAt:
            for (const auto& h : detail::orbit_diagonal(sys, b.orbit, a))
                if (std::abs(h(unit(b.x1)) - h(unit(b.x2))) > tol * std::max(1.0, h.norm1())) return false;
            return true;
        case K::IsolatedOrbitConstOn: {
            const bool infinite = !b.c1.is_finite();
            for (const auto& h : detail::orbit_diagonal(sys, b.orbit, a)) {
                if (infinite) {
                    // Constant on an arc forces a constant Laurent polynomial.
                    for (const auto& [k, v] : h.coeffs())
                        if (k != 0 && std::abs(v) > tol) return false;
                } else {
                    std::vector<cplx> vals;
                    for (const auto& arc : b.c1.arcs()) vals.push_back(h(unit(to_double(arc.start))));
                    for (const auto& v : vals)
                        if (std::abs(v - vals.front()) > tol * std::max(1.0, h.norm1())) return false;
                }
            }
            return true;
        }
    }
    return false;
}

enum class IntersectVerdict { Witness, NoneFound, CertifiedEmpty };

inline const char* to_string(IntersectVerdict v) {
    switch (v) {
        case IntersectVerdict::Witness: return "witness";
        case IntersectVerdict::NoneFound: return "none-found";
        case IntersectVerdict::CertifiedEmpty: return "certified-empty";
    }
    return "?";
}

struct IntersectResult {
    IntersectVerdict verdict = IntersectVerdict::NoneFound;
    std::optional<GenPoly> witness;
    std::string method;
    std::vector<std::string> certificate;  // replayed steps for certified-empty verdicts
    double witness_norm = 0.0;
};

struct IntersectOptions {
    SampleGrid grid{64, 64};
    NormOptions norm{128, 16, 1e-3, 1024, 256, 256, 8};
};

namespace detail {

/// Every generator vanishes at t = 1 for every base point: for each point x and each
/// residue c mod Per(x), the coefficients a(n)(x) with n = c sum to zero.
inline bool vanishes_on_t1_fiber(const DynSystem& sys, const std::vector<GenPoly>& gens, double tol = kDefaultTol.zero) {
    for (const auto& g : gens) {
        if (sys.is_finite()) {
            for (const auto& o : sys.orbit_list()) {
                for (auto x : o.points) {
                    std::map<long, cplx> sums;
                    for (const auto& [n, f] : g.terms()) sums[pos_mod(n, o.period)] += f.at(x);
                    for (const auto& [c, s] : sums)
                        if (std::abs(s) > tol) return false;
                }
            }
        } else {
            std::map<long, Function> sums;
            for (const auto& [n, f] : g.terms()) {
                auto it = sums.find(pos_mod(n, sys.q()));
                if (it == sums.end())
                    sums.emplace(pos_mod(n, sys.q()), f);
                else
                    it->second += f;
            }
            for (const auto& [c, s] : sums)
                if (!s.is_zero(tol)) return false;
        }
    }
    return true;
}

/// An element of C(X)' inside the ideal generated by gens: the projection onto the
/// commutant of sum g^* g. Both projections are finite averages of unitary
/// conjugations, so the result lies in the algebraic ideal, and it is nonzero since
/// E(sum g^* g) != 0.
inline GenPoly commutant_element(const DynSystem& sys, const std::vector<GenPoly>& gens) {
    const CrossedProduct alg(sys);
    GenPoly s;
    for (const auto& g : gens) s += alg.mul(alg.adjoint(g), g);
    return sys.is_finite() ? commutant_projection(sys, s) : e0_projection(sys, s);
}

/// m(delta^p) 1_O where m(z) = prod_j (z - e^{2 pi i z_j}) z^{-floor(k/2)}.
inline GenPoly orbit_polynomial(const DynSystem& sys, std::size_t orbit, const std::vector<double>& zeros) {
    Laurent m = Laurent::monomial(0);
    for (double z : zeros) m = m * (Laurent::monomial(1) + Laurent::monomial(0, -unit(z)));
    const long shift = static_cast<long>(zeros.size() / 2);
    const auto& o = sys.orbit_list().at(orbit);
    const Function ind = Function::indicator(sys.size(), o.points);
    GenPoly::Terms t;
    for (const auto& [k, c] : m.coeffs()) t.emplace((k - shift) * o.period, ind * c);
    return GenPoly(std::move(t));
}

inline GenPoly orbit_restriction(const DynSystem& sys, const std::vector<std::size_t>& points, const GenPoly& a) {
    const CrossedProduct alg(sys);
    return alg.mul(alg.embed(Function::indicator(sys.size(), points)), a);
}

inline std::vector<std::size_t> complement_of_orbit(const DynSystem& sys, std::size_t orbit) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < sys.size(); ++x)
        if (sys.orbit_index(x) != orbit) out.push_back(x);
    return out;
}

}  // namespace detail

/// Searches for a nonzero element of B cap I following the constructions of the
/// intersection-property proofs; certifies emptiness only when such an argument replays.
inline IntersectResult intersect_with_subalgebra(const DynSystem& sys, const IdealSpec& ideal, const SubalgebraSpec& b,
                                                 const IntersectOptions& opt = {}) {
    using K = SubalgebraSpec::Kind;
    detail::require_periodic_type(sys);
    const CrossedProduct alg(sys);
    const VanishingSet vs = vanishing_set(sys, ideal, opt.grid);
    if (vs.everything()) throw PreconditionViolation("the ideal is zero");

    IntersectResult res;
    auto accept = [&](GenPoly w, std::string method) -> bool {
        if (w.is_zero()) return false;
        if (!subalgebra_contains(sys, b, w)) return false;
        if (!ideal_contains_report(sys, vs, w).contained) return false;
        res.verdict = IntersectVerdict::Witness;
        res.witness_norm = operator_norm(sys, w, opt.norm).estimate;
        res.witness = std::move(w);
        res.method = std::move(method);
        return true;
    };
    auto certify = [&](std::vector<std::string> steps, std::string method) {
        res.verdict = IntersectVerdict::CertifiedEmpty;
        res.certificate = std::move(steps);
        res.method = std::move(method);
        return res;
    };

    // Orbits (finite systems) whose fiber hull is empty: the ideal contains 1_O.
    auto empty_hull_orbit = [&]() -> std::optional<std::size_t> {
        if (!sys.is_finite()) return std::nullopt;
        for (std::size_t i = 0; i < vs.fibers.size(); ++i)
            if (vs.fibers[i].empty()) return i;
        return std::nullopt;
    };

    // Certified-empty replays.
    if (b.kind == K::Functions) {
        if (ideal.kind == IdealSpec::Kind::BumpGenerated ||
            (ideal.kind == IdealSpec::Kind::Generated && detail::vanishes_on_t1_fiber(sys, ideal.generators))) {
            return certify({"every generator vanishes under pi_{y,1} for all periodic y",
                            "the t = 1 fiber representations are total on C(X), so I cap C(X) = 0"},
                           "t1-fiber-identity");
        }
        if (sys.is_finite()) {
            if (auto o = empty_hull_orbit()) {
                accept(alg.embed(Function::indicator(sys.size(), sys.orbit_list()[*o].points)), "orbit-indicator");
                if (res.verdict == IntersectVerdict::Witness) return res;
            }
            return certify({"every orbit fiber meets the vanishing set at some t0",
                            "pi_{y,t0}(f) = diag(f(s^r y)) vanishes there, so f = 0 on every orbit"},
                           "fiber-evaluation");
        }
        res.method = "no polynomial element of C(X) in I";
        return res;
    }

    if (b.kind == K::DisjointSupport) {
        bool support_off_u1 = false;
        bool t1 = false;
        std::vector<std::string> steps;
        if (sys.is_finite() && ideal.kind == IdealSpec::Kind::Generated) {
            support_off_u1 = true;
            for (const auto& g : ideal.generators)
                for (const auto& [n, f] : g.terms())
                    for (auto x : b.u1_points)
                        if (std::abs(f.at(x)) > kDefaultTol.zero) support_off_u1 = false;
            bool u1_invariant = true;
            for (auto x : b.u1_points)
                if (std::find(b.u1_points.begin(), b.u1_points.end(), sys.apply(x, 1)) == b.u1_points.end()) u1_invariant = false;
            support_off_u1 = support_off_u1 && u1_invariant;
            t1 = detail::vanishes_on_t1_fiber(sys, ideal.generators);
            steps = {"U1 is invariant under s and s^{-1}",
                     "every generator coefficient vanishes on U1, hence so does every coefficient of every element of I",
                     "every generator vanishes under pi_{y,1}, so I cap C(X) = 0",
                     "a in B cap I has a(k) supported in U1 and off U1 for k != 0, so a lies in C(X) cap I = 0"};
        } else if (sys.kind() == SystemKind::RationalRotation && ideal.kind == IdealSpec::Kind::BumpGenerated) {
            const Rational step(sys.p(), sys.q());
            const bool disjoint_ok = disjoint(b.u1_arcs, ideal.bump_support);
            const bool inv = b.u1_arcs.invariant_under(step) && ideal.bump_support.invariant_under(step);
            const bool deg = ideal.bump_degree != 0 && ideal.bump_degree % sys.q() == 0;
            support_off_u1 = disjoint_ok && inv;
            t1 = deg;
            steps = {"U1 and U2 are disjoint (exact rational endpoints)",
                     "U1 and U2 are invariant under x -> x + p/q (exact)",
                     "the generator f - f delta^n has q | n, so pi_{y,1} kills it and I cap C(X) = 0",
                     "coefficients of elements of I are supported in U2, those of B off degree 0 in U1, so B cap I = 0"};
        }
        if (support_off_u1 && t1) return certify(steps, "disjoint-support-replay");
    }

    if (b.kind == K::IsolatedOrbitConstOn && ideal.kind == IdealSpec::Kind::HullSpecified) {
        bool others_whole = true;
        for (std::size_t i = 0; i < ideal.orbit_hulls.size(); ++i)
            if (i != b.orbit && !ideal.orbit_hulls[i].full()) others_whole = false;
        const CircleSet& c2 = ideal.orbit_hulls.at(b.orbit);
        const bool cover = covers_circle(b.c1, c2);
        const bool meet = intersects(b.c1, c2);
        const bool c1_proper = b.c1.is_proper();
        if (others_whole && cover && meet && c1_proper && !b.c1.is_finite()) {
            return certify({"the ideal vanishes on every orbit other than O",
                            "on O the ideal is M_p(ker C2) and C1 cup C2 = T (exact)",
                            "C1 cap C2 is nonempty (exact), so a diagonal entry constant on C1 and zero on C2 is zero on C1",
                            "it is then zero on C1 cup C2 = T, so B cap I = 0"},
                           "constant-on-arc-replay");
        }
    }

    // Witness constructions.
    std::optional<GenPoly> c;
    if (ideal.kind == IdealSpec::Kind::Generated) {
        c = detail::commutant_element(sys, ideal.generators);
        if (accept(*c, "commutant-projection")) return res;
    }

    switch (b.kind) {
        case K::FullCommutant:
        case K::Functions: break;
        case K::VanishAtPoint:
            if (c) {
                // g = 1 - cos(2 pi (x - x0)) vanishes only at x0.
                const cplx h = -0.5 * unit(-b.x0);
                const Function g = Function::trig({{-1, std::conj(h)}, {0, 1.0}, {1, h}});
                if (accept(alg.mul(alg.embed(g), *c), "multiply-by-function-vanishing-at-x0")) return res;
            }
            break;
        case K::DisjointSupport:
            if (c && sys.is_finite() && accept(detail::orbit_restriction(sys, b.u1_points, *c), "restrict-to-U1")) return res;
            break;
        case K::IsolatedOrbitEqualAt:
            if (c) {
                const auto& o = sys.orbit_list().at(b.orbit);
                if (accept(alg.mul(detail::orbit_polynomial(sys, b.orbit, {b.x1, b.x2}), detail::orbit_restriction(sys, o.points, *c)),
                           "multiply-by-diag(m)-vanishing-at-x1-x2"))
                    return res;
                if (accept(detail::orbit_restriction(sys, detail::complement_of_orbit(sys, b.orbit), *c), "restrict-to-X1")) return res;
            }
            break;
        case K::IsolatedOrbitConstOn:
            if (c && accept(detail::orbit_restriction(sys, detail::complement_of_orbit(sys, b.orbit), *c), "restrict-to-X1"))
                return res;
            break;
    }

    // Orbit-level constructions on finite systems.
    if (sys.is_finite()) {
        if (auto o = empty_hull_orbit())
            if (accept(alg.embed(Function::indicator(sys.size(), sys.orbit_list()[*o].points)), "orbit-indicator")) return res;
        for (std::size_t i = 0; i < vs.fibers.size(); ++i) {
            const auto& fh = vs.fibers[i];
            if (fh.whole() || !fh.is_finite()) continue;
            std::vector<double> zeros = fh.finite_points();
            if (b.kind == K::IsolatedOrbitEqualAt && b.orbit == i) {
                zeros.push_back(b.x1);
                zeros.push_back(b.x2);
            }
            if (accept(detail::orbit_polynomial(sys, i, zeros), "orbit-polynomial-vanishing-on-hull")) return res;
        }
    }
    res.verdict = IntersectVerdict::NoneFound;
    res.method = "no polynomial witness from the proof constructions";
    return res;
}

/// Result of the Pedersen-ideal construction f o g on the sampled characters of B.
struct PedersenWitness {
    std::vector<SpectrumChar> chars;
    std::vector<double> g_values;  // gamma(g) after normalization
    std::vector<double> values;    // f(gamma(g))
    double scale = 1.0;            // g was divided by this
    double identity_residual = 0.0;  // max |f(s) - s h(s)| with h(s) = f(s)/s on the samples
    std::optional<GenPoly> approximant;
};

/// f(s) = 0 for s <= 1/2, linear up to f(1) = 1.
inline double pedersen_cutoff(double s) { return std::clamp(2.0 * s - 1.0, 0.0, 1.0); }

inline PedersenWitness pedersen_witness(const DynSystem& sys, const SubalgebraSpec& b, const IdealSpec& ideal, const GenPoly& g,
                                        const SampleGrid& grid = {64, 64}, long approx_degree = 16) {
    detail::require_periodic_type(sys);
    if (b.kind != SubalgebraSpec::Kind::Functions && !in_commutant(sys, g)) throw PreconditionViolation("g must lie in an abelian B");
    if (!subalgebra_contains(sys, b, g)) throw PreconditionViolation("g must lie in B");
    if (g.is_zero()) throw PreconditionViolation("g must be nonzero");
    if (!positivity_check(sys, g, grid)) throw PreconditionViolation("g must be positive");
    if (!ideal_contains(sys, ideal, g, grid)) throw PreconditionViolation("g must lie in the closed ideal");

    PedersenWitness w;
    w.chars = spectrum_chars(sys, grid);
    double top = 0.0;
    for (const auto& ch : w.chars) {
        const double v = gamma_eval(sys, ch, g).real();
        w.g_values.push_back(v);
        top = std::max(top, v);
    }
    if (top > 1.0) {
        w.scale = top;
        for (auto& v : w.g_values) v /= top;
    }
    if (*std::max_element(w.g_values.begin(), w.g_values.end()) <= 0.5)
        throw PreconditionViolation("every character value of g is at most 1/2, the cutoff would give zero");
    for (double v : w.g_values) {
        const double f = pedersen_cutoff(v);
        w.values.push_back(f);
        const double h = v > 0.5 ? f / v : 0.0;
        w.identity_residual = std::max(w.identity_residual, std::abs(f - v * h));
    }
    // Trigonometric approximant on finite systems: Fejer means of the DFT in t per point.
    if (sys.is_finite()) {
        const std::size_t m = grid.t_points;
        std::map<long, std::vector<cplx>> coeff;
        std::size_t idx = 0;
        for (const auto& o : sys.orbit_list()) {
            for (long r = 0; r < o.period; ++r) {
                const std::size_t x = o.points[static_cast<std::size_t>(r)];
                for (long l = -approx_degree; l <= approx_degree; ++l) {
                    cplx s = 0.0;
                    for (std::size_t k = 0; k < m; ++k) s += w.values[idx + k] * std::conj(std::pow(grid_t(k, m), static_cast<int>(l)));
                    s /= static_cast<double>(m);
                    s *= 1.0 - static_cast<double>(std::abs(l)) / static_cast<double>(approx_degree + 1);
                    auto& vec = coeff[l * o.period];
                    if (vec.empty()) vec.assign(sys.size(), 0.0);
                    vec[x] = s;
                }
                idx += m;
            }
        }
        GenPoly::Terms t;
        for (auto& [n, v] : coeff) t.emplace(n, Function::discrete(std::move(v)));
        w.approximant = GenPoly(std::move(t), 1e-14);
    }
    return w;
}

/// A closed set of characters of C(X)' invariant under the induced map: per orbit
/// (finite systems) or uniformly in y (rotations), a closed subset of the t-circle.
struct CharSet {
    bool uniform = false;
    CircleSet uniform_set;
    std::vector<CircleSet> per_orbit;

    static CharSet by_orbit(std::vector<CircleSet> sets) {
        CharSet s;
        s.per_orbit = std::move(sets);
        return s;
    }
    static CharSet uniform_in_y(CircleSet set) {
        CharSet s;
        s.uniform = true;
        s.uniform_set = std::move(set);
        return s;
    }

    /// Per-point input: invariance under (y, t) -> (s(y), t) is validated.
    static CharSet by_point(const DynSystem& sys, const std::vector<CircleSet>& sets) {
        if (!sys.is_finite() || sets.size() != sys.size()) throw std::invalid_argument("one set per point is required");
        for (std::size_t x = 0; x < sys.size(); ++x)
            if (!(sets[x] == sets[sys.apply(x, 1)])) throw PreconditionViolation("character set is not invariant");
        std::vector<CircleSet> per;
        for (const auto& o : sys.orbit_list()) per.push_back(sets[o.points.front()]);
        return by_orbit(std::move(per));
    }
};

struct SpectrumRestriction {
    bool proper = false;  // the restriction of S to B misses some character of B
    std::string evidence;
};

/// Whether the restriction of S to the characters of B is a proper subset.
inline SpectrumRestriction spectrum_restriction_check(const DynSystem& sys, const SubalgebraSpec& b, const CharSet& s) {
    using K = SubalgebraSpec::Kind;
    detail::require_periodic_type(sys);
    std::vector<CircleSet> sets;
    if (s.uniform) {
        sets.assign(sys.is_finite() ? sys.orbit_list().size() : 1, s.uniform_set);
    } else {
        if (!sys.is_finite() || s.per_orbit.size() != sys.orbit_list().size()) throw std::invalid_argument("one set per orbit is required");
        sets = s.per_orbit;
    }
    const bool all_empty = std::all_of(sets.begin(), sets.end(), [](const CircleSet& c) { return c.empty(); });
    const bool all_full = std::all_of(sets.begin(), sets.end(), [](const CircleSet& c) { return c.full(); });
    if (all_empty) throw PreconditionViolation("S must be nonempty");
    if (all_full) return {false, "S is all characters"};

    // Characters of B over an orbit O are either all (y, t) (full fiber), or only
    // the point evaluations (collapsed fiber), or a quotient of the t-circle.
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const CircleSet& so = sets[i];
        const bool on_u1 = [&] {
            if (b.kind != K::DisjointSupport) return false;
            if (!sys.is_finite()) return !b.u1_arcs.empty();
            const auto& pts = sys.orbit_list()[i].points;
            return std::find(b.u1_points.begin(), b.u1_points.end(), pts.front()) != b.u1_points.end();
        }();
        switch (b.kind) {
            case K::FullCommutant:
                if (!so.full()) return {true, "fiber " + std::to_string(i) + " is not the whole circle"};
                break;
            case K::Functions:
                if (so.empty()) return {true, "fiber " + std::to_string(i) + " misses the point evaluation"};
                break;
            case K::DisjointSupport:
                if (on_u1 && !so.full()) return {true, "U1 fiber " + std::to_string(i) + " is not the whole circle"};
                if (so.empty()) return {true, "fiber " + std::to_string(i) + " misses the point evaluation"};
                break;
            case K::VanishAtPoint:
                // Away from the orbit of x0 the fibers are full.
                if (!so.full()) return {true, "fibers away from x0 are not the whole circle"};
                break;
            case K::IsolatedOrbitEqualAt:
                if (!so.full()) return {true, "fiber " + std::to_string(i) + " misses a class of the quotient"};
                break;
            case K::IsolatedOrbitConstOn:
                if (i == b.orbit) {
                    if (!intersects(so, b.c1)) return {true, "the collapsed class C1 is missed"};
                    if (!covers_circle(so, b.c1)) return {true, "a point outside C1 cup S is missed"};
                } else if (!so.full()) {
                    return {true, "fiber " + std::to_string(i) + " is not the whole circle"};
                }
                break;
        }
    }
    return {false, "every character of B is the restriction of a point of S"};
}

struct DisjointSupportConstruction {
    SubalgebraSpec b;
    IdealSpec ideal;
    std::optional<GenPoly> in_b_not_cx;          // f1 delta^n (finite systems)
    std::optional<GenPoly> in_commutant_not_b;   // f2 delta^n (finite systems)
    std::string description;
};

/// B = {a : supp a(k) in U1 for k != 0}, I generated by f2 - f2 delta^n with f2 = 1_{U2}.
inline DisjointSupportConstruction build_disjoint_support_subalgebra(const DynSystem& sys, long n, std::vector<std::size_t> u1) {
    if (!sys.is_finite()) throw UnsupportedKind("use the rotation overload");
    if (n <= 0) throw PreconditionViolation("n must be positive");
    const PointSet per = periodic_points(sys, n);
    std::sort(u1.begin(), u1.end());
    for (auto x : u1) {
        if (!per.contains(x)) throw PreconditionViolation("U1 must lie in Per^n");
        if (!std::binary_search(u1.begin(), u1.end(), sys.apply(x, 1))) throw PreconditionViolation("U1 must be invariant");
    }
    std::vector<std::size_t> u2;
    for (auto x : per.points)
        if (!std::binary_search(u1.begin(), u1.end(), x)) u2.push_back(x);
    if (u1.empty() || u2.empty()) throw PreconditionViolation("Per^n must contain at least two orbits split between U1 and U2");
    const CrossedProduct alg(sys);
    const Function f1 = Function::indicator(sys.size(), u1);
    const Function f2 = Function::indicator(sys.size(), u2);
    DisjointSupportConstruction c;
    c.b.kind = SubalgebraSpec::Kind::DisjointSupport;
    c.b.u1_points = u1;
    c.ideal = IdealSpec::generated({alg.embed(f2) - alg.embed(f2, n)});
    c.in_b_not_cx = alg.embed(f1, n);
    c.in_commutant_not_b = alg.embed(f2, n);
    c.description = "U1 and U2 split Per^n into invariant parts";
    return c;
}

/// Rotation p/q: U1 = union of (j/q, j/q + 1/(2q)), U2 = union of (j/q + 1/(2q), (j+1)/q),
/// n = q, and the ideal generated by f2 - f2 delta^q for a bump f2 > 0 exactly on U2.
inline DisjointSupportConstruction build_disjoint_support_subalgebra(const DynSystem& sys) {
    if (sys.kind() != SystemKind::RationalRotation) throw UnsupportedKind("the arc construction needs a rational rotation");
    const long q = sys.q();
    std::vector<Arc> a1, a2;
    for (long j = 0; j < q; ++j) {
        a1.push_back(Arc{Rational(j, q), Rational(1, 2 * q)});
        a2.push_back(Arc{Rational(2 * j + 1, 2 * q), Rational(1, 2 * q)});
    }
    DisjointSupportConstruction c;
    c.b.kind = SubalgebraSpec::Kind::DisjointSupport;
    c.b.u1_arcs = OpenArcSet(a1);
    c.ideal = IdealSpec::bump(OpenArcSet(a2), q);
    c.description = "f1, f2 are bumps positive exactly on U1, U2; f1 delta^q is in B minus C(X) and f2 delta^q in C(X)' minus B";
    return c;
}

struct VanishAtPointConstruction {
    SubalgebraSpec b;
    GenPoly in_b_not_cx;         // g delta^q with g(x0) = 0
    GenPoly in_commutant_not_b;  // delta^q
};

inline VanishAtPointConstruction build_pointwise_vanishing_subalgebra(const DynSystem& sys, double x0) {
    if (sys.kind() != SystemKind::RationalRotation)
        throw PreconditionViolation("needs a non-isolated point of some Per^n interior (a rational rotation)");
    const CrossedProduct alg(sys);
    VanishAtPointConstruction c;
    c.b.kind = SubalgebraSpec::Kind::VanishAtPoint;
    c.b.x0 = x0 - std::floor(x0);
    const cplx h = -0.5 * unit(-c.b.x0);
    const Function g = Function::trig({{-1, std::conj(h)}, {0, 1.0}, {1, h}});
    c.in_b_not_cx = alg.embed(g, sys.q());
    c.in_commutant_not_b = alg.delta(sys.q());
    return c;
}

struct IsolatedOrbitConstruction {
    SubalgebraSpec b1;  // equal at x1, x2
    SubalgebraSpec b2;  // constant on C1
    IdealSpec ideal2;   // {0} + M_p(ker C2)
    CircleSet c2;
    GenPoly b1_not_cx;
    GenPoly commutant_not_b1;
    std::optional<GenPoly> b2_not_cx;  // polynomial witness exists when X1 is nonempty
    GenPoly commutant_not_b2;
};

/// Closure of the complement of a proper closed arc union.
inline CircleSet closed_complement(const CircleSet& c1) {
    if (c1.full() || c1.empty()) throw PreconditionViolation("C1 must be a proper nonempty closed set");
    std::vector<Arc> arcs = c1.arcs();
    std::vector<Arc> out;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const Arc& cur = arcs[i];
        const Arc& next = arcs[(i + 1) % arcs.size()];
        Rational gap = frac(next.start - cur.end());
        if (arcs.size() == 1) gap = Rational(1) - cur.length;
        if (gap > Rational(0)) out.push_back(Arc{frac(cur.end()), gap});
    }
    return CircleSet::of(out);
}

inline IsolatedOrbitConstruction build_isolated_orbit_subalgebras(const DynSystem& sys, std::size_t orbit, double x1, double x2,
                                                                  const CircleSet& c1) {
    if (!sys.is_finite()) throw UnsupportedKind("isolated orbits are taken from finite systems");
    if (orbit >= sys.orbit_list().size()) throw std::out_of_range("orbit index");
    const double d = std::abs(x1 - x2) - std::floor(std::abs(x1 - x2));
    if (d < 1e-12 || d > 1.0 - 1e-12) throw PreconditionViolation("x1 and x2 must be distinct");
    if (!c1.is_proper() || c1.is_finite()) throw PreconditionViolation("C1 must be a proper closed set containing an arc");
    IsolatedOrbitConstruction c;
    const CrossedProduct alg(sys);
    const auto& o = sys.orbit_list()[orbit];
    c.b1.kind = SubalgebraSpec::Kind::IsolatedOrbitEqualAt;
    c.b1.orbit = orbit;
    c.b1.x1 = x1;
    c.b1.x2 = x2;
    c.b2.kind = SubalgebraSpec::Kind::IsolatedOrbitConstOn;
    c.b2.orbit = orbit;
    c.b2.c1 = c1;
    c.c2 = closed_complement(c1);
    std::vector<CircleSet> hulls(sys.orbit_list().size(), CircleSet::everything());
    hulls[orbit] = c.c2;
    c.ideal2 = IdealSpec::hull_specified(std::move(hulls));
    c.b1_not_cx = detail::orbit_polynomial(sys, orbit, {x1, x2});
    c.commutant_not_b1 = alg.embed(Function::indicator(sys.size(), o.points), o.period);
    c.commutant_not_b2 = c.commutant_not_b1;
    const auto rest = detail::complement_of_orbit(sys, orbit);
    if (!rest.empty()) {
        const auto split = direct_sum_split(sys, rest);
        const auto w = noncentral_witness(split.part(0));
        GenPoly::Terms t;
        for (const auto& [n, f] : w->terms()) {
            std::vector<cplx> v(sys.size(), 0.0);
            for (std::size_t k = 0; k < rest.size(); ++k) v[rest[k]] = f.at(k);
            t.emplace(n, Function::discrete(std::move(v)));
        }
        c.b2_not_cx = GenPoly(std::move(t));
    }
    return c;
}

/// Random nonzero closed ideals: products of random generalized polynomials with
/// orbit indicators and factors (1 - w delta^p) that force zeros in t.
inline std::vector<IdealSpec> ideal_battery(const DynSystem& sys, Random& rng, std::size_t count = 20) {
    const CrossedProduct alg(sys);
    std::vector<IdealSpec> out;
    while (out.size() < count) {
        std::vector<GenPoly> gens;
        const long ngen = rng.integer(1, 2);
        for (long k = 0; k < ngen; ++k) {
            GenPoly g = rng.nonzero_genpoly(sys, rng.integer(0, 3), 0.6, 2);
            const long choice = rng.integer(0, 2);
            if (choice >= 1) {
                long p = sys.is_finite() ? 1 : sys.q();
                Function ind = alg.constant(1.0);
                if (sys.is_finite()) {
                    const auto& o = sys.orbit_list()[static_cast<std::size_t>(rng.integer(0, static_cast<long>(sys.orbit_list().size()) - 1))];
                    p = o.period;
                    ind = Function::indicator(sys.size(), o.points);
                }
                GenPoly factor = alg.embed(ind);
                if (choice == 2) factor = factor - alg.embed(ind, p) * unit(rng.uniform(0.0, 1.0));
                g = alg.mul(factor, g);
            }
            if (!g.is_zero()) gens.push_back(std::move(g));
        }
        if (gens.empty()) continue;
        IdealSpec spec = IdealSpec::generated(std::move(gens));
        if (vanishing_set(sys, spec, SampleGrid{64, 16}).everything()) continue;
        out.push_back(std::move(spec));
    }
    return out;
}

struct BatteryOutcome {
    std::size_t total = 0;
    std::size_t witnesses = 0;
    double min_norm = INFINITY;
    std::vector<IntersectResult> results;
};

inline BatteryOutcome run_battery(const DynSystem& sys, const SubalgebraSpec& b, const std::vector<IdealSpec>& ideals,
                                  const IntersectOptions& opt = {}) {
    BatteryOutcome out;
    for (const auto& ideal : ideals) {
        IntersectResult r = intersect_with_subalgebra(sys, ideal, b, opt);
        ++out.total;
        if (r.verdict == IntersectVerdict::Witness) {
            ++out.witnesses;
            out.min_norm = std::min(out.min_norm, r.witness_norm);
        }
        out.results.push_back(std::move(r));
    }
    return out;
}

/// The dichotomy for intermediate subalgebras between C(X) and C(X)'.
struct IntermediateClassification {
    bool topologically_free = false;
    std::string case_label;  // "i" or "ii"
    std::string branch;      // "none", "isolated-orbit", "non-isolated"
    bool commutant_is_base = false;  // checked on a degree window when topologically free
    std::optional<SubalgebraSpec> b1;
    std::optional<SubalgebraSpec> b2;
    BatteryOutcome b1_battery;
    std::optional<IntersectResult> b2_result;
    bool consistent = false;
};

inline IntermediateClassification classify_intermediate_subalgebras(const DynSystem& sys, Random& rng, std::size_t battery = 20,
                                                                     const IntersectOptions& opt = {}) {
    IntermediateClassification out;
    out.topologically_free = is_topologically_free(sys);
    if (out.topologically_free) {
        out.case_label = "i";
        out.branch = "none";
        const CrossedProduct alg(sys);
        std::vector<GenPoly> gens;
        for (const auto& f : generating_family(sys)) gens.push_back(alg.embed(f));
        const auto ns = commutant_nullspace(sys, gens, 3, 3);
        out.commutant_is_base = ns.support_ok && ns.dimension == 7;
        out.consistent = out.commutant_is_base;
        return out;
    }
    out.case_label = "ii";
    if (sys.is_finite()) {
        out.branch = "isolated-orbit";
        const auto c = build_isolated_orbit_subalgebras(sys, 0, 0.0, 0.5, CircleSet::of({Arc::between(Rational(0), Rational(1, 2))}));
        out.b1 = c.b1;
        out.b2 = c.b2;
        out.b1_battery = run_battery(sys, c.b1, ideal_battery(sys, rng, battery), opt);
        out.b2_result = intersect_with_subalgebra(sys, c.ideal2, c.b2, opt);
    } else {
        out.branch = "non-isolated";
        const auto c1 = build_pointwise_vanishing_subalgebra(sys, 0.0);
        const auto c2 = build_disjoint_support_subalgebra(sys);
        out.b1 = c1.b;
        out.b2 = c2.b;
        out.b1_battery = run_battery(sys, c1.b, ideal_battery(sys, rng, battery), opt);
        out.b2_result = intersect_with_subalgebra(sys, c2.ideal, c2.b, opt);
    }
    out.consistent = out.b1_battery.witnesses == out.b1_battery.total &&
                     out.b2_result->verdict == IntersectVerdict::CertifiedEmpty;
    return out;
}

/// Replay of the argument that C(X) fails the intersection property when some
/// Per^k has interior: S = closure of {gamma(y, 1)} restricts onto X, while f delta^k
/// takes only real values on S and the value s^r f(y) = i at gamma(y, s).
struct FailureReplay {
    long l = 0, k = 0, r = 0;
    cplx s;
    GenPoly element;
    bool element_in_commutant = false;
    bool restriction_covers_x = false;
    double max_imag_on_s = 0.0;
    cplx separated_value;
    bool s_proper = false;
    bool ideal_meets_cx_trivially = false;
    bool passed = false;
};

inline FailureReplay replay_base_algebra_failure(const DynSystem& sys, const SampleGrid& grid = {64, 64}) {
    if (sys.kind() != SystemKind::RationalRotation && !sys.is_finite()) throw UnsupportedKind("needs a system with periodic interior points");
    FailureReplay rep;
    const Point y = sys.is_finite() ? Point::at(0) : Point::on_circle(0.0);
    rep.l = sys.period_of(y);
    rep.r = 2;
    rep.k = rep.l * rep.r;
    rep.s = unit(1.0 / 8.0);  // s^2 = i
    const CrossedProduct alg(sys);
    Function f = sys.is_finite() ? Function::indicator(sys.size(), sys.orbit_list()[sys.orbit_index(0)].points) : alg.constant(1.0);
    rep.element = alg.embed(f, rep.k);
    rep.element_in_commutant = in_commutant(sys, rep.element);

    // S = {gamma(y, 1)}: restriction to C(X) is evaluation at y, over every sampled y.
    SampleGrid one{1, grid.y_points};
    const auto chars = spectrum_chars(sys, one);
    std::vector<bool> covered(sys.is_finite() ? sys.size() : chars.size(), false);
    for (std::size_t i = 0; i < chars.size(); ++i) {
        const auto& ch = chars[i];
        if (sys.is_finite()) covered[ch.y.index] = true;
        else covered[i] = true;
        rep.max_imag_on_s = std::max(rep.max_imag_on_s, std::abs(gamma_eval(sys, ch, rep.element).imag()));
    }
    rep.restriction_covers_x = std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
    if (!sys.is_finite()) {
        // The sampled points are one per orbit of the transversal; every orbit point is also a character y.
        rep.restriction_covers_x = rep.restriction_covers_x && chars.size() == grid.y_points * static_cast<std::size_t>(sys.q());
    }
    rep.separated_value = gamma_eval(sys, SpectrumChar{y, rep.s, rep.l}, rep.element);
    rep.s_proper = rep.max_imag_on_s <= kDefaultTol.num && std::abs(rep.separated_value - cplx(0.0, 1.0)) <= kDefaultTol.num;

    // A nonzero ideal in h(S): generated by 1 - delta^l, which vanishes at t = 1.
    const IdealSpec ideal = IdealSpec::generated({alg.one() - alg.delta(rep.l)});
    const auto res = intersect_with_subalgebra(sys, ideal, SubalgebraSpec::functions());
    rep.ideal_meets_cx_trivially = res.verdict == IntersectVerdict::CertifiedEmpty;
    rep.passed = rep.element_in_commutant && rep.restriction_covers_x && rep.s_proper && rep.ideal_meets_cx_trivially;
    return rep;
}

}  // namespace crossprod
