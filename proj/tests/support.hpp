#pragma once

// Fixtures and independent reference computations for the test suites.

#include <Eigen/SVD>
#include <cmath>
#include <crossprod/crossprod.hpp>
#include <string>
#include <vector>

namespace fixtures {

using crossprod::DynSystem;

inline DynSystem swap() { return DynSystem::finite({1, 0}); }
inline DynSystem swap_fixed() { return DynSystem::finite({1, 0, 2}); }
inline DynSystem two_2cycles() { return DynSystem::finite({1, 0, 3, 2}); }
inline DynSystem three_cycle() { return DynSystem::finite({1, 2, 0}); }
inline DynSystem rot12() { return DynSystem::rotation(1, 2); }
inline DynSystem rot13() { return DynSystem::rotation(1, 3); }
inline DynSystem golden() { return DynSystem::irrational(0.5 * (std::sqrt(5.0) - 1.0)); }

struct Named {
    std::string name;
    DynSystem sys;
};

inline std::vector<Named> periodic() {
    return {{"swap", swap()}, {"swap+fixed", swap_fixed()}, {"two-2-cycles", two_2cycles()}, {"rotation 1/3", rot13()}, {"rotation 1/2", rot12()}};
}

inline std::vector<Named> finite() { return {{"swap", swap()}, {"swap+fixed", swap_fixed()}, {"two-2-cycles", two_2cycles()}}; }

inline std::vector<Named> all() {
    auto v = periodic();
    v.push_back({"irrational", golden()});
    return v;
}

}  // namespace fixtures

namespace oracle {

using crossprod::cplx;
using crossprod::DynSystem;
using crossprod::Function;
using crossprod::GenPoly;
using Mat = Eigen::MatrixXcd;

/// sigma^n(x) on a finite system by repeated application of the permutation table.
inline std::size_t iterate(const DynSystem& sys, std::size_t x, long n) {
    const auto& s = sys.sigma();
    if (n >= 0) {
        for (long k = 0; k < n; ++k) x = s[x];
        return x;
    }
    std::vector<std::size_t> inv(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) inv[s[i]] = i;
    for (long k = 0; k < -n; ++k) x = inv[x];
    return x;
}

inline std::vector<std::size_t> fixed_points_of_power(const DynSystem& sys, long n) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < sys.size(); ++x)
        if (iterate(sys, x, n) == x) out.push_back(x);
    return out;
}

inline long period_by_iteration(const DynSystem& sys, std::size_t x) {
    long p = 1;
    while (iterate(sys, x, p) != x) ++p;
    return p;
}

/// Base point of a periodic representation: a point index (finite) or a turn (rotation).
struct Base {
    std::size_t index = 0;
    double turn = 0.0;
};

inline long period(const DynSystem& sys, const Base& y) { return sys.is_finite() ? period_by_iteration(sys, y.index) : sys.q(); }

inline cplx value_along_orbit(const DynSystem& sys, const Function& f, const Base& y, long r) {
    if (sys.is_finite()) return f.at(iterate(sys, y.index, r));
    return f.eval(y.turn + static_cast<double>(r * sys.p()) / static_cast<double>(sys.q()));
}

/// The unitary U(t): e_j -> e_{j+1} for j < p - 1 and e_{p-1} -> t e_0.
inline Mat shift_unitary(long p, cplx t) {
    Mat u = Mat::Zero(p, p);
    for (long j = 0; j + 1 < p; ++j) u(j + 1, j) = 1.0;
    u(0, p - 1) = t;
    return u;
}

inline Mat power(const Mat& u, long n) {
    Mat base = n >= 0 ? u : Mat(u.adjoint());
    Mat out = Mat::Identity(u.rows(), u.cols());
    for (long k = 0; k < std::abs(n); ++k) out = out * base;
    return out;
}

/// pi_{y,t}(sum f_n delta^n) = sum diag(f_n(sigma^r y)) U(t)^n, built from explicit matrix powers.
inline Mat rep(const DynSystem& sys, const Base& y, cplx t, const GenPoly& a) {
    const long p = period(sys, y);
    const Mat u = shift_unitary(p, t);
    Mat out = Mat::Zero(p, p);
    for (const auto& [n, f] : a.terms()) {
        Mat d = Mat::Zero(p, p);
        for (long r = 0; r < p; ++r) d(r, r) = value_along_orbit(sys, f, y, r);
        out += d * power(u, n);
    }
    return out;
}

inline cplx t_point(std::size_t m, std::size_t count) {
    return std::polar(1.0, 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(count));
}

inline std::vector<Base> bases(const DynSystem& sys, std::size_t y_count) {
    std::vector<Base> out;
    if (sys.is_finite()) {
        std::vector<bool> seen(sys.size(), false);
        for (std::size_t x = 0; x < sys.size(); ++x) {
            if (seen[x]) continue;
            out.push_back(Base{x, 0.0});
            for (std::size_t z = x; !seen[z]; z = sys.sigma()[z]) seen[z] = true;
        }
    } else {
        for (std::size_t j = 0; j < y_count; ++j)
            out.push_back(Base{0, static_cast<double>(j) / static_cast<double>(y_count * sys.q())});
    }
    return out;
}

inline double top_singular(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

/// Dense-sampling norm lower bound: max singular value over a t grid and base points.
inline double dense_norm(const DynSystem& sys, const GenPoly& a, std::size_t t_count = 256, std::size_t y_count = 32) {
    double best = 0.0;
    for (const auto& y : bases(sys, y_count))
        for (std::size_t m = 0; m < t_count; ++m) best = std::max(best, top_singular(rep(sys, y, t_point(m, t_count), a)));
    return best;
}

/// Sampled supremum of |f|: exact on finite sets, dense grid on the circle.
inline double sup_abs(const Function& f, std::size_t samples = 2048) {
    double s = 0.0;
    if (f.model() == crossprod::Model::Discrete) {
        for (auto v : f.values()) s = std::max(s, std::abs(v));
        return s;
    }
    for (std::size_t k = 0; k < samples; ++k) s = std::max(s, std::abs(f.eval(static_cast<double>(k) / static_cast<double>(samples))));
    return s;
}

/// Random generalized polynomial whose coefficients live on the fixed points of sigma^n
/// (finite), only in degrees divisible by q (rational rotation), or in degree 0 (irrational).
inline GenPoly random_member(const DynSystem& sys, crossprod::Random& rng, long degree) {
    GenPoly::Terms t;
    for (long n = -degree; n <= degree; ++n) {
        if (sys.is_finite()) {
            const auto pts = fixed_points_of_power(sys, n);
            if (pts.empty()) continue;
            std::vector<cplx> v(sys.size(), 0.0);
            for (auto x : pts) v[x] = rng.coefficient();
            t.emplace(n, Function::discrete(std::move(v)));
        } else if (sys.kind() == crossprod::SystemKind::IrrationalRotation ? n == 0 : n % sys.q() == 0) {
            t.emplace(n, rng.function(sys, 2));
        }
    }
    return GenPoly(std::move(t));
}

}  // namespace oracle
