#pragma once

// Topological dynamical systems on the three exactly representable models:
// a permutation of a finite discrete set, a rational rotation of the circle,
// and an irrational rotation of the circle. Circle points are measured in
// turns, i.e. x in [0, 1).

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace crossprod {

enum class SystemKind { FiniteDiscrete, RationalRotation, IrrationalRotation };

inline const char* to_string(SystemKind k) {
    switch (k) {
        case SystemKind::FiniteDiscrete: return "finite";
        case SystemKind::RationalRotation: return "rational-rotation";
        case SystemKind::IrrationalRotation: return "irrational-rotation";
    }
    return "?";
}

/// A point of X: an index for finite systems, a circle coordinate otherwise.
struct Point {
    std::size_t index = 0;
    double turn = 0.0;

    static Point at(std::size_t i) { return Point{i, 0.0}; }
    static Point on_circle(double x) { return Point{0, x - std::floor(x)}; }
};

struct Orbit {
    std::vector<std::size_t> points;  // x, s(x), ..., s^{p-1}(x) with x the lowest index
    long period = 0;
};

class DynSystem {
   public:
    static DynSystem finite(std::vector<std::size_t> sigma, std::vector<std::string> labels = {}) {
        const std::size_t n = sigma.size();
        if (n == 0) throw std::invalid_argument("finite system needs at least one point");
        std::vector<bool> hit(n, false);
        for (std::size_t v : sigma) {
            if (v >= n || hit[v]) throw std::invalid_argument("sigma is not a permutation");
            hit[v] = true;
        }
        if (!labels.empty() && labels.size() != n)
            throw std::invalid_argument("label count does not match point count");
        DynSystem s;
        s.kind_ = SystemKind::FiniteDiscrete;
        s.sigma_ = std::move(sigma);
        s.labels_ = std::move(labels);
        s.build_orbits();
        return s;
    }

    static DynSystem rotation(long p, long q) {
        if (q < 1 || p < 0 || p >= q) throw std::invalid_argument("rotation needs 0 <= p < q");
        if (std::gcd(p, q) != 1) throw std::invalid_argument("rotation fraction p/q must be in lowest terms");
        DynSystem s;
        s.kind_ = SystemKind::RationalRotation;
        s.p_ = p;
        s.q_ = q;
        s.roots_.resize(static_cast<std::size_t>(q));
        for (long j = 0; j < q; ++j) s.roots_[static_cast<std::size_t>(j)] = unit(static_cast<double>(j) / static_cast<double>(q));
        return s;
    }

    /// The angle is taken on trust to be irrational.
    static DynSystem irrational(double theta) {
        if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("irrational angle must lie in (0, 1)");
        DynSystem s;
        s.kind_ = SystemKind::IrrationalRotation;
        s.theta_ = theta;
        return s;
    }

    SystemKind kind() const { return kind_; }
    bool is_finite() const { return kind_ == SystemKind::FiniteDiscrete; }
    bool is_circle() const { return !is_finite(); }
    bool is_periodic_type() const { return kind_ != SystemKind::IrrationalRotation; }

    std::size_t size() const { return sigma_.size(); }
    const std::vector<std::size_t>& sigma() const { return sigma_; }
    const std::vector<std::string>& labels() const { return labels_; }
    long p() const { return p_; }
    long q() const { return q_; }
    double theta() const { return kind_ == SystemKind::RationalRotation ? static_cast<double>(p_) / static_cast<double>(q_) : theta_; }

    const std::vector<Orbit>& orbit_list() const { return orbits_; }
    std::size_t orbit_index(std::size_t x) const { return orbit_of_[x]; }
    std::size_t orbit_position(std::size_t x) const { return position_[x]; }

    /// s^n(x) on a finite system.
    std::size_t apply(std::size_t x, long n) const {
        const Orbit& o = orbits_[orbit_of_[x]];
        return o.points[static_cast<std::size_t>(pos_mod(static_cast<long>(position_[x]) + n, o.period))];
    }

    /// s^n(x) on a rotation, reduced to [0, 1).
    double apply(double x, long n) const {
        double y;
        if (kind_ == SystemKind::RationalRotation) {
            y = x + static_cast<double>(pos_mod(n * p_, q_)) / static_cast<double>(q_);
        } else {
            y = x + static_cast<double>(n) * theta_;
        }
        return y - std::floor(y);
    }

    Point apply(Point pt, long n) const {
        return is_finite() ? Point::at(apply(pt.index, n)) : Point::on_circle(apply(pt.turn, n));
    }

    /// Exact period of a point, 0 when aperiodic.
    long period_of(Point pt) const {
        switch (kind_) {
            case SystemKind::FiniteDiscrete: return orbits_[orbit_of_[pt.index]].period;
            case SystemKind::RationalRotation: return q_;
            case SystemKind::IrrationalRotation: return 0;
        }
        return 0;
    }

    /// Multiplier of the k-th Fourier coefficient under f -> f o s^n, i.e. e^{2 pi i k n theta}.
    /// Rational angles use a root-of-unity table so that q-periodicity is exact.
    cplx shift_phase(long k, long n) const {
        if (kind_ == SystemKind::RationalRotation) {
            const long long idx = (static_cast<long long>(k) * n % q_) * p_ % q_;
            return roots_[static_cast<std::size_t>(pos_mod(static_cast<long>(idx), q_))];
        }
        const double frac = std::fmod(static_cast<double>(k) * static_cast<double>(n) * theta_, 1.0);
        return unit(frac);
    }

    friend bool operator==(const DynSystem& a, const DynSystem& b) {
        return a.kind_ == b.kind_ && a.sigma_ == b.sigma_ && a.labels_ == b.labels_ && a.p_ == b.p_ &&
               a.q_ == b.q_ && a.theta_ == b.theta_;
    }

   private:
    DynSystem() = default;

    void build_orbits() {
        const std::size_t n = sigma_.size();
        orbit_of_.assign(n, n);
        position_.assign(n, 0);
        for (std::size_t start = 0; start < n; ++start) {
            if (orbit_of_[start] != n) continue;
            Orbit o;
            std::size_t x = start;
            do {
                orbit_of_[x] = orbits_.size();
                position_[x] = o.points.size();
                o.points.push_back(x);
                x = sigma_[x];
            } while (x != start);
            o.period = static_cast<long>(o.points.size());
            orbits_.push_back(std::move(o));
        }
    }

    SystemKind kind_ = SystemKind::FiniteDiscrete;
    std::vector<std::size_t> sigma_;
    std::vector<std::string> labels_;
    long p_ = 0;
    long q_ = 1;
    double theta_ = 0.0;
    std::vector<cplx> roots_;
    std::vector<Orbit> orbits_;
    std::vector<std::size_t> orbit_of_;
    std::vector<std::size_t> position_;
};

/// Subset of X. Circle systems only ever need the empty set and the whole circle.
struct PointSet {
    bool whole = false;
    std::vector<std::size_t> points;  // sorted, finite systems

    static PointSet all_of_circle() { return PointSet{true, {}}; }
    bool empty() const { return !whole && points.empty(); }
    bool contains(std::size_t x) const { return whole || std::binary_search(points.begin(), points.end(), x); }
    friend bool operator==(const PointSet&, const PointSet&) = default;
};

struct PeriodicityProfile {
    long max_n = 0;
    std::map<long, PointSet> per_n;      // points with s^n(x) = x, key 0 is all of X
    std::map<long, PointSet> per_exact;  // points of exact period k
    std::vector<Orbit> orbits;
    PointSet aperiodic;
    PointSet pip;  // periodic interior points
};

inline std::vector<Orbit> orbits(const DynSystem& sys) {
    if (!sys.is_finite()) throw UnsupportedKind("orbit lists exist only for finite systems");
    return sys.orbit_list();
}

inline long lcm_of_periods(const DynSystem& sys) {
    long l = 1;
    for (const auto& o : sys.orbit_list()) l = std::lcm(l, o.period);
    return l;
}

inline long default_max_n(const DynSystem& sys) {
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete: return 2 * lcm_of_periods(sys);
        case SystemKind::RationalRotation: return 2 * sys.q();
        case SystemKind::IrrationalRotation: return 2;
    }
    return 2;
}

/// Per^n(s) for one n >= 0 (n = 0 gives X).
inline PointSet periodic_points(const DynSystem& sys, long n) {
    n = std::abs(n);
    PointSet s;
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete:
            for (const auto& o : sys.orbit_list())
                if (n == 0 || n % o.period == 0) s.points.insert(s.points.end(), o.points.begin(), o.points.end());
            std::sort(s.points.begin(), s.points.end());
            break;
        case SystemKind::RationalRotation: s.whole = (n % sys.q() == 0); break;
        case SystemKind::IrrationalRotation: s.whole = (n == 0); break;
    }
    return s;
}

inline PeriodicityProfile periodicity_profile(const DynSystem& sys, long max_n) {
    if (max_n < 1) throw std::invalid_argument("max_n must be positive");
    PeriodicityProfile prof;
    prof.max_n = max_n;
    for (long n = 0; n <= max_n; ++n) prof.per_n[n] = periodic_points(sys, n);
    switch (sys.kind()) {
        case SystemKind::FiniteDiscrete: {
            prof.orbits = sys.orbit_list();
            long top = max_n;
            for (const auto& o : prof.orbits) top = std::max(top, o.period);
            for (long k = 1; k <= top; ++k) prof.per_exact[k] = PointSet{};
            for (const auto& o : prof.orbits) {
                auto& pts = prof.per_exact[o.period].points;
                pts.insert(pts.end(), o.points.begin(), o.points.end());
            }
            for (auto& [k, set] : prof.per_exact) std::sort(set.points.begin(), set.points.end());
            // Discrete topology: every periodic point is interior to its Per_k.
            prof.pip = prof.per_n[0];
            break;
        }
        case SystemKind::RationalRotation:
            for (long k = 1; k <= std::max(max_n, sys.q()); ++k)
                prof.per_exact[k] = (k == sys.q()) ? PointSet::all_of_circle() : PointSet{};
            prof.pip = PointSet::all_of_circle();
            break;
        case SystemKind::IrrationalRotation:
            for (long k = 1; k <= max_n; ++k) prof.per_exact[k] = PointSet{};
            prof.aperiodic = PointSet::all_of_circle();
            break;
    }
    return prof;
}

/// Every Per^n with n >= 1 has empty interior.
inline bool is_topologically_free(const DynSystem& sys) {
    // Finite systems: every point is periodic and open. Rational rotations: Per^q = X.
    return sys.kind() == SystemKind::IrrationalRotation;
}

/// Density of the union of aperiodic points and periodic interior points.
inline bool dense_union_check(const DynSystem& sys) {
    const auto prof = periodicity_profile(sys, default_max_n(sys));
    if (prof.aperiodic.whole || prof.pip.whole) return true;
    if (!sys.is_finite()) return false;
    // Closures are identities in the discrete topology.
    std::vector<bool> covered(sys.size(), false);
    for (auto x : prof.aperiodic.points) covered[x] = true;
    for (auto x : prof.pip.points) covered[x] = true;
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

}  // namespace crossprod
