#pragma once

// The irreducible representations pi_{y,t} (periodic points) and truncated pi_x
// (aperiodic points), pure states, the single-orbit picture C(T, M_p) and the
// splitting of a finite system along an invariant partition.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <utility>
#include <vector>

#include "genpoly.hpp"
#include "laurent.hpp"

namespace crossprod {

using RepMatrix = Eigen::MatrixXcd;

/// Sampling of the representation parameters: t on the circle, and for rotations
/// the base point y on the transversal [0, 1/q).
struct SampleGrid {
    std::size_t t_points = 512;
    std::size_t y_points = 64;
};

struct RepPoint {
    Point y;
    cplx t;
    long p = 0;
};

inline cplx grid_t(std::size_t m, std::size_t count) {
    return unit(static_cast<double>(m) / static_cast<double>(count));
}

/// One base point per orbit: the lowest index for finite systems, y_j = j/(q*count) for rational rotations.
inline std::vector<Point> base_points(const DynSystem& sys, std::size_t y_points) {
    std::vector<Point> out;
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete:
            for (const auto& o : sys.orbit_list()) out.push_back(Point::at(o.points.front()));
            break;
        case SystemKind::RationalRotation:
            for (std::size_t j = 0; j < y_points; ++j)
                out.push_back(Point::on_circle(static_cast<double>(j) / static_cast<double>(y_points * static_cast<std::size_t>(sys.q()))));
            break;
        case SystemKind::IrrationalRotation:
            throw UnsupportedKind("irrational rotations have no periodic points");
    }
    return out;
}

inline std::vector<RepPoint> rep_points(const DynSystem& sys, const SampleGrid& grid) {
    std::vector<RepPoint> out;
    for (const Point& y : base_points(sys, grid.y_points)) {
        const long p = sys.period_of(y);
        for (std::size_t m = 0; m < grid.t_points; ++m) out.push_back(RepPoint{y, grid_t(m, grid.t_points), p});
    }
    return out;
}

inline long require_periodic(const DynSystem& sys, Point y) {
    const long p = sys.period_of(y);
    if (p == 0) throw PreconditionViolation("base point is not periodic");
    return p;
}

/// pi_{y,t}(a) with z in place of t: entry (r, j) of pi(f delta^n) is
/// f(s^r y) z^{floor((j+n)/p)} where r = (j+n) mod p.
inline MatrixLaurent symbolic_rep(const DynSystem& sys, Point y, const GenPoly& a) {
    const long p = require_periodic(sys, y);
    MatrixLaurent m(static_cast<std::size_t>(p));
    std::vector<Point> orbit;
    for (long r = 0; r < p; ++r) orbit.push_back(sys.apply(y, r));
    for (const auto& [n, f] : a.terms()) {
        check_model(sys, f);
        std::vector<cplx> vals;
        for (const Point& pt : orbit) vals.push_back(f(pt));
        for (long j = 0; j < p; ++j) {
            const long r = pos_mod(j + n, p);
            const cplx v = vals[static_cast<std::size_t>(r)];
            if (v != cplx(0.0)) m.add(static_cast<std::size_t>(r), static_cast<std::size_t>(j), floor_div(j + n, p), v);
        }
    }
    return m;
}

inline RepMatrix rep_periodic(const DynSystem& sys, Point y, cplx t, const GenPoly& a) {
    if (std::abs(std::abs(t) - 1.0) > 1e-9) throw PreconditionViolation("rep parameter t must have modulus one");
    const long p = require_periodic(sys, y);
    RepMatrix m = RepMatrix::Zero(p, p);
    for (const auto& [n, f] : a.terms()) {
        check_model(sys, f);
        for (long j = 0; j < p; ++j) {
            const long r = pos_mod(j + n, p);
            m(r, j) += f(sys.apply(y, r)) * std::pow(t, static_cast<int>(floor_div(j + n, p)));
        }
    }
    return m;
}

/// phi_{y,t}(a) = <pi_{y,t}(a) e_0, e_0> = sum_l a(lp)(y) t^l.
inline cplx pure_state(const DynSystem& sys, Point y, cplx t, const GenPoly& a) {
    const long p = require_periodic(sys, y);
    cplx s = 0.0;
    for (const auto& [n, f] : a.terms()) {
        check_model(sys, f);
        if (n % p == 0) s += f(y) * std::pow(t, static_cast<int>(n / p));
    }
    return s;
}

/// Compression of pi_x(a) to span{e_{-W}, ..., e_W}; row/column i + W holds index i.
struct TruncatedRep {
    long window = 0;
    Eigen::MatrixXcd matrix;
};

inline TruncatedRep rep_aperiodic(const DynSystem& sys, double x, long window, const GenPoly& a) {
    if (sys.kind() != SystemKind::IrrationalRotation) throw UnsupportedKind("truncated pi_x is only used for irrational rotations");
    if (window < a.degree_bound()) throw PreconditionViolation("window must be at least the degree bound");
    const long size = 2 * window + 1;
    TruncatedRep rep{window, Eigen::MatrixXcd::Zero(size, size)};
    for (const auto& [n, f] : a.terms()) {
        check_model(sys, f);
        // pi_x(f delta^n) e_i = f(s^{i+n} x) e_{i+n}
        for (long i = -window; i <= window; ++i) {
            const long row = i + n;
            if (row < -window || row > window) continue;
            rep.matrix(row + window, i + window) += f.eval(sys.apply(x, row));
        }
    }
    return rep;
}

/// The isomorphism C*(X, s) -> C(T, M_p) for a system made of one orbit of period p,
/// based at the lowest-index point.
inline MatrixLaurent single_orbit_iso(const DynSystem& sys, const GenPoly& a) {
    if (!sys.is_finite() || sys.orbit_list().size() != 1) throw PreconditionViolation("system must consist of exactly one orbit");
    return symbolic_rep(sys, Point::at(sys.orbit_list().front().points.front()), a);
}

/// u(z): ones on the subdiagonal and z in the top-right corner.
inline MatrixLaurent shift_matrix(std::size_t p) {
    MatrixLaurent u(p);
    for (std::size_t j = 0; j + 1 < p; ++j) u.add(j + 1, j, 0, 1.0);
    u.add(0, p - 1, 1, 1.0);
    return u;
}

/// diag(f(x), f(s x), ..., f(s^{p-1} x)) as a constant matrix function.
inline MatrixLaurent diagonal_matrix(const std::vector<cplx>& d) {
    MatrixLaurent m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != cplx(0.0)) m.add(i, i, 0, d[i]);
    return m;
}

/// Preimage of the matrix unit E_{rj} z^k under single_orbit_iso: 1_{s^r x} delta^{r - j + kp}.
inline GenPoly matrix_unit_preimage(const DynSystem& sys, std::size_t r, std::size_t j, long k) {
    if (!sys.is_finite() || sys.orbit_list().size() != 1) throw PreconditionViolation("system must consist of exactly one orbit");
    const auto& orbit = sys.orbit_list().front();
    const long p = orbit.period;
    if (static_cast<long>(r) >= p || static_cast<long>(j) >= p) throw std::out_of_range("matrix unit index");
    const long deg = static_cast<long>(r) - static_cast<long>(j) + k * p;
    return GenPoly::term(deg, Function::indicator(sys.size(), {orbit.points[r]}));
}

/// Restriction of a finite system to complementary invariant subsets A1 and A2.
class DirectSumSplit {
   public:
    DirectSumSplit(const DynSystem& sys, std::vector<std::size_t> first) : sys_(sys) {
        if (!sys.is_finite()) throw UnsupportedKind("direct sum splitting needs a finite system");
        std::vector<int> side(sys.size(), 1);
        for (auto x : first) {
            if (x >= sys.size()) throw std::out_of_range("point index out of range");
            side[x] = 0;
        }
        for (std::size_t x = 0; x < sys.size(); ++x)
            if (side[sys.apply(x, 1)] != side[x]) throw PreconditionViolation("partition is not invariant");
        for (std::size_t x = 0; x < sys.size(); ++x) pts_[side[x]].push_back(x);
        if (pts_[0].empty() || pts_[1].empty()) throw PreconditionViolation("both parts must be nonempty");
        for (int s = 0; s < 2; ++s) {
            std::vector<std::size_t> local(sys.size(), 0);
            for (std::size_t i = 0; i < pts_[s].size(); ++i) local[pts_[s][i]] = i;
            std::vector<std::size_t> sig;
            std::vector<std::string> lab;
            for (auto x : pts_[s]) {
                sig.push_back(local[sys.apply(x, 1)]);
                if (!sys.labels().empty()) lab.push_back(sys.labels()[x]);
            }
            parts_.push_back(DynSystem::finite(std::move(sig), std::move(lab)));
        }
    }

    const DynSystem& part(int i) const { return parts_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::size_t>& points(int i) const { return pts_[i]; }

    Function restrict(const Function& f, int i) const {
        check_model(sys_, f);
        std::vector<cplx> v;
        for (auto x : pts_[i]) v.push_back(f.at(x));
        return Function::discrete(std::move(v));
    }

    std::pair<GenPoly, GenPoly> split(const GenPoly& a) const {
        GenPoly::Terms t0, t1;
        for (const auto& [n, f] : a.terms()) {
            t0.emplace(n, restrict(f, 0));
            t1.emplace(n, restrict(f, 1));
        }
        return {GenPoly(std::move(t0)), GenPoly(std::move(t1))};
    }

    /// Inverse of split.
    GenPoly join(const GenPoly& a0, const GenPoly& a1) const {
        GenPoly::Terms out;
        auto place = [&](const GenPoly& a, int i) {
            for (const auto& [n, f] : a.terms()) {
                auto it = out.find(n);
                if (it == out.end()) it = out.emplace(n, Function::constant(sys_, 0.0)).first;
                std::vector<cplx> v = it->second.values();
                for (std::size_t k = 0; k < pts_[i].size(); ++k) v[pts_[i][k]] = f.at(k);
                it->second = Function::discrete(std::move(v));
            }
        };
        place(a0, 0);
        place(a1, 1);
        return GenPoly(std::move(out));
    }

   private:
    DynSystem sys_;
    std::vector<std::size_t> pts_[2];
    std::vector<DynSystem> parts_;
};

inline DirectSumSplit direct_sum_split(const DynSystem& sys, std::vector<std::size_t> first) {
    return DirectSumSplit(sys, std::move(first));
}

/// a = a^* and every sampled pi_{y,t}(a) is positive semidefinite within tol.
inline bool positivity_check(const DynSystem& sys, const GenPoly& a, const SampleGrid& grid,
                             double tol = kDefaultTol.psd) {
    const CrossedProduct alg(sys);
    if (distance(a, alg.adjoint(a)) > kDefaultTol.zero) throw PreconditionViolation("positivity needs a self-adjoint element");
    for (const Point& y : base_points(sys, grid.y_points)) {
        const MatrixLaurent rep = symbolic_rep(sys, y, a);
        for (std::size_t m = 0; m < grid.t_points; ++m) {
            RepMatrix mat = rep(grid_t(m, grid.t_points));
            mat = (mat + mat.adjoint()) * 0.5;
            Eigen::SelfAdjointEigenSolver<RepMatrix> es(mat, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -tol) return false;
        }
    }
    return true;
}

}  // namespace crossprod
