#pragma once

// The commutant C(X)' of C(X): membership, bases, the maximal-abelian check,
// its characters gamma(y,t), and the projection E_0.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "norm.hpp"

namespace crossprod {

/// supp a(n) is contained in Per^n for every stored degree n.
inline bool in_commutant(const DynSystem& sys, const GenPoly& a, double tol = kDefaultTol.zero) {
    for (const auto& [n, f] : a.terms()) {
        check_model(sys, f);
        if (n == 0) continue;
        if (sys.is_finite()) {
            const PointSet per = periodic_points(sys, n);
            for (std::size_t x = 0; x < sys.size(); ++x)
                if (!per.contains(x) && std::abs(f.at(x)) > tol) return false;
        } else if (!periodic_points(sys, n).whole && !f.is_zero(tol)) {
            return false;
        }
    }
    return true;
}

/// Zeroes every a(n)(x) with x outside Per^n. On finite systems this is the
/// average of u a u^* over the unitaries u = sum_x (+-1) 1_x, hence a norm-one
/// projection onto the commutant that maps ideals into themselves.
inline GenPoly commutant_projection(const DynSystem& sys, const GenPoly& a) {
    GenPoly::Terms out;
    for (const auto& [n, f] : a.terms()) {
        check_model(sys, f);
        const PointSet per = periodic_points(sys, n);
        if (per.whole) {
            out.emplace(n, f);
        } else if (sys.is_finite()) {
            std::vector<cplx> v = f.values();
            for (std::size_t x = 0; x < v.size(); ++x)
                if (!per.contains(x)) v[x] = 0.0;
            out.emplace(n, Function::discrete(std::move(v)));
        }
    }
    return GenPoly(std::move(out));
}

/// Functions generating C(X) as a C*-algebra: point indicators, or e^{+-2 pi i x}.
inline std::vector<Function> generating_family(const DynSystem& sys) {
    std::vector<Function> fam;
    if (sys.is_finite()) {
        for (std::size_t x = 0; x < sys.size(); ++x) fam.push_back(Function::indicator(sys.size(), {x}));
    } else {
        fam.push_back(Function::character(1));
        fam.push_back(Function::character(-1));
    }
    return fam;
}

inline NormEstimate commutator_norm(const DynSystem& sys, const GenPoly& a, const Function& f, const NormOptions& opt = {}) {
    const CrossedProduct alg(sys);
    return operator_norm(sys, alg.commutator(a, alg.embed(f)), opt);
}

struct CommutantBasis {
    long cutoff = 0;
    std::map<long, std::vector<std::size_t>> support;  // degree -> points of Per^n

    std::size_t dimension() const {
        std::size_t d = 0;
        for (const auto& [n, pts] : support) d += pts.size();
        return d;
    }

    /// The generators 1_x delta^n.
    std::vector<GenPoly> elements(const DynSystem& sys) const {
        std::vector<GenPoly> out;
        for (const auto& [n, pts] : support)
            for (auto x : pts) out.push_back(GenPoly::term(n, Function::indicator(sys.size(), {x})));
        return out;
    }
};

inline CommutantBasis commutant_basis(const DynSystem& sys, long cutoff) {
    if (!sys.is_finite()) throw UnsupportedKind("commutant bases are enumerated only for finite systems");
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    CommutantBasis b{cutoff, {}};
    for (long n = -cutoff; n <= cutoff; ++n) b.support[n] = periodic_points(sys, n).points;
    return b;
}

/// Null space of the linear map a -> ([a, b_1], ..., [a, b_m]) on generalized
/// polynomials with degrees in [-degree, degree] and, on the circle, trig
/// frequencies in [-freq, freq].
struct NullspaceReport {
    std::size_t unknowns = 0;
    std::size_t dimension = 0;
    std::map<long, std::size_t> by_degree;  // degree -> rank of the null space projected to that degree
    bool support_ok = true;                 // every null vector satisfies the support condition
    double max_violation = 0.0;
};

namespace detail {

struct Unknown {
    long degree;
    long slot;  // point index or trig frequency
};

inline GenPoly unknown_element(const DynSystem& sys, const Unknown& u) {
    if (sys.is_finite()) return GenPoly::term(u.degree, Function::indicator(sys.size(), {static_cast<std::size_t>(u.slot)}));
    return GenPoly::term(u.degree, Function::character(u.slot));
}

inline void flatten(const DynSystem& sys, const GenPoly& a, std::map<std::pair<long, long>, cplx>& out) {
    for (const auto& [n, f] : a.terms()) {
        if (sys.is_finite()) {
            for (std::size_t x = 0; x < f.size(); ++x)
                if (f.at(x) != cplx(0.0)) out[{n, static_cast<long>(x)}] += f.at(x);
        } else {
            for (const auto& [k, c] : f.coeffs()) out[{n, k}] += c;
        }
    }
}

inline bool slot_allowed(const DynSystem& sys, const Unknown& u) {
    const PointSet per = periodic_points(sys, u.degree);
    return sys.is_finite() ? per.contains(static_cast<std::size_t>(u.slot)) : per.whole;
}

}  // namespace detail

inline NullspaceReport commutant_nullspace(const DynSystem& sys, const std::vector<GenPoly>& constraints, long degree, long freq = 0) {
    const CrossedProduct alg(sys);
    std::vector<detail::Unknown> unknowns;
    for (long n = -degree; n <= degree; ++n) {
        if (sys.is_finite()) {
            for (std::size_t x = 0; x < sys.size(); ++x) unknowns.push_back({n, static_cast<long>(x)});
        } else {
            for (long k = -freq; k <= freq; ++k) unknowns.push_back({n, k});
        }
    }
    const auto d = static_cast<Eigen::Index>(unknowns.size());
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
    std::vector<GenPoly> basis;
    for (const auto& u : unknowns) basis.push_back(detail::unknown_element(sys, u));
    for (const auto& b : constraints) {
        std::map<std::pair<long, long>, Eigen::Index> rows;
        std::vector<std::map<std::pair<long, long>, cplx>> cols(unknowns.size());
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            detail::flatten(sys, alg.commutator(basis[i], b), cols[i]);
            for (const auto& [key, v] : cols[i]) rows.emplace(key, 0);
        }
        Eigen::Index r = 0;
        for (auto& [key, idx] : rows) idx = r++;
        Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(r, d);
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            for (const auto& [key, v] : cols[i]) l(rows[key], static_cast<Eigen::Index>(i)) += v;
        gram += l.adjoint() * l;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    NullspaceReport rep;
    rep.unknowns = unknowns.size();
    std::vector<Eigen::VectorXcd> null;
    for (Eigen::Index i = 0; i < d; ++i)
        if (es.eigenvalues()[i] <= 1e-10 * top) null.push_back(es.eigenvectors().col(i));
    rep.dimension = null.size();
    for (const auto& v : null) {
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            if (!detail::slot_allowed(sys, unknowns[i])) {
                const double m = std::abs(v[static_cast<Eigen::Index>(i)]);
                rep.max_violation = std::max(rep.max_violation, m);
                if (m > 1e-8) rep.support_ok = false;
            }
        }
    }
    // Rank of the null space restricted to each degree.
    for (long n = -degree; n <= degree; ++n) {
        std::vector<Eigen::Index> idx;
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            if (unknowns[i].degree == n) idx.push_back(static_cast<Eigen::Index>(i));
        if (null.empty()) {
            rep.by_degree[n] = 0;
            continue;
        }
        Eigen::MatrixXcd block(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(null.size()));
        for (std::size_t c = 0; c < null.size(); ++c)
            for (std::size_t r = 0; r < idx.size(); ++r) block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = null[c][idx[r]];
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(block);
        qr.setThreshold(1e-8);
        rep.by_degree[n] = static_cast<std::size_t>(qr.rank());
    }
    return rep;
}

struct MaximalAbelianCertificate {
    bool maximal_abelian = false;
    bool pairwise_commute = false;
    std::size_t basis_dimension = 0;
    std::map<long, std::size_t> basis_dims;
    NullspaceReport nullspace;
};

/// The commutant basis up to the cutoff commutes pairwise, and every generalized
/// polynomial of degree <= cutoff commuting with all of it satisfies the support condition.
inline MaximalAbelianCertificate is_maximal_abelian(const DynSystem& sys, long cutoff) {
    const CrossedProduct alg(sys);
    const CommutantBasis basis = commutant_basis(sys, cutoff);
    const auto elems = basis.elements(sys);
    MaximalAbelianCertificate cert;
    cert.basis_dimension = basis.dimension();
    for (const auto& [n, pts] : basis.support) cert.basis_dims[n] = pts.size();
    cert.pairwise_commute = true;
    for (std::size_t i = 0; i < elems.size() && cert.pairwise_commute; ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if (!alg.commutator(elems[i], elems[j]).is_zero()) {
                cert.pairwise_commute = false;
                break;
            }
    cert.nullspace = commutant_nullspace(sys, elems, cutoff);
    cert.maximal_abelian = cert.pairwise_commute && cert.nullspace.support_ok && cert.nullspace.dimension == cert.basis_dimension;
    return cert;
}

/// An element f delta^n of C(X)' outside C(X), when the system has one.
inline std::optional<GenPoly> noncentral_witness(const DynSystem& sys) {
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete: {
            const auto& o = sys.orbit_list().front();
            return GenPoly::term(o.period, Function::indicator(sys.size(), o.points));
        }
        case SystemKind::RationalRotation: return GenPoly::term(sys.q(), Function::constant(sys, 1.0));
        case SystemKind::IrrationalRotation: return std::nullopt;
    }
    return std::nullopt;
}

/// A character of C(X)': gamma(x) = point evaluation of a(0) for aperiodic x, or
/// gamma(y,t)(a) = sum over p | k of a(k)(y) t^{k/p} for y of period p.
struct SpectrumChar {
    Point y;
    cplx t = 1.0;
    long p = 0;  // 0 for aperiodic points

    bool periodic() const { return p != 0; }
};

inline cplx gamma_eval(const DynSystem& sys, const SpectrumChar& ch, const GenPoly& a) {
    cplx s = 0.0;
    for (const auto& [k, f] : a.terms()) {
        check_model(sys, f);
        if (!ch.periodic()) {
            if (k == 0) s += f(ch.y);
        } else if (k % ch.p == 0) {
            s += f(ch.y) * std::pow(ch.t, static_cast<int>(k / ch.p));
        }
    }
    return s;
}

/// The induced map on characters: (y, t) -> (s(y), t).
inline SpectrumChar induced_map(const DynSystem& sys, const SpectrumChar& ch) {
    return SpectrumChar{sys.apply(ch.y, 1), ch.t, ch.p};
}

/// Characters at every point of every orbit (finite) or every point of the sampled
/// orbits (rotations), for each sampled t.
inline std::vector<SpectrumChar> spectrum_chars(const DynSystem& sys, const SampleGrid& grid) {
    std::vector<SpectrumChar> out;
    if (sys.kind() == SystemKind::IrrationalRotation) {
        for (std::size_t j = 0; j < grid.y_points; ++j)
            out.push_back(SpectrumChar{Point::on_circle(static_cast<double>(j) / static_cast<double>(grid.y_points)), 1.0, 0});
        return out;
    }
    for (const Point& base : base_points(sys, grid.y_points)) {
        const long p = sys.period_of(base);
        for (long r = 0; r < p; ++r)
            for (std::size_t m = 0; m < grid.t_points; ++m) out.push_back(SpectrumChar{sys.apply(base, r), grid_t(m, grid.t_points), p});
    }
    return out;
}

/// The common exact period q when X = Per_q, or 0 when periods are mixed.
inline long uniform_period(const DynSystem& sys) {
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete: {
            const long p = sys.orbit_list().front().period;
            for (const auto& o : sys.orbit_list())
                if (o.period != p) return 0;
            return p;
        }
        case SystemKind::RationalRotation: return sys.q();
        case SystemKind::IrrationalRotation: return 0;
    }
    return 0;
}

/// The norm-one projection onto C(X)' for X = Per_q: keeps exactly the degrees
/// divisible by q. On irrational rotations C(X)' = C(X) and this is E.
inline GenPoly e0_projection(const DynSystem& sys, const GenPoly& a) {
    long q = 0;
    if (sys.kind() == SystemKind::IrrationalRotation) {
        const CrossedProduct alg(sys);
        return alg.embed(alg.expectation(a));
    }
    q = uniform_period(sys);
    if (q == 0) throw PreconditionViolation("E_0 is implemented only when every point has the same exact period");
    GenPoly::Terms out;
    for (const auto& [n, f] : a.terms()) {
        check_model(sys, f);
        if (n % q == 0) out.emplace(n, f);
    }
    return GenPoly(std::move(out));
}

struct E0Existence {
    bool exists = true;
    std::map<long, std::string> witness;  // k -> why the interior of Per_k is closed
};

/// Every interior of Per_k is closed on the supported models.
inline E0Existence e0_exists(const DynSystem& sys) {
    E0Existence e;
    const auto prof = periodicity_profile(sys, default_max_n(sys));
    for (const auto& [k, set] : prof.per_exact) {
        if (sys.is_finite())
            e.witness[k] = "discrete topology: every subset is open and closed";
        else if (set.whole)
            e.witness[k] = "interior is the whole circle";
        else
            e.witness[k] = "empty set";
    }
    return e;
}

}  // namespace crossprod
