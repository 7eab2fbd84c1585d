#pragma once

// Operator norms: supremum of ||pi_{y,t}(a)|| over the separating family, with an
// enclosure radius from the grid spacing; truncated lower bounds for aperiodic systems.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "reps.hpp"

namespace crossprod {

struct NormOptions {
    std::size_t grid = 512;     // t samples
    std::size_t y_grid = 64;    // base points on [0, 1/q) for rational rotations
    double tol = 1e-4;          // target enclosure radius
    std::size_t max_grid = 4096;
    std::size_t max_y_grid = 1024;
    long window = 256;          // truncated window for aperiodic points
    std::size_t x_samples = 8;  // aperiodic base points
};

struct NormEstimate {
    double estimate = 0.0;
    double rigor = 0.0;  // the norm lies in [estimate, estimate + rigor]
    bool lower_bound_only = false;
    std::size_t grid = 0;
    std::size_t y_grid = 0;

    double upper() const { return estimate + rigor; }
};

/// Largest singular value of a small complex matrix.
inline double spectral_norm(const Eigen::MatrixXcd& a) {
    const auto n = a.rows();
    if (n == 0) return 0.0;
    if (n == 1 && a.cols() == 1) return std::abs(a(0, 0));
    if (n == 2 && a.cols() == 2) {
        // Top eigenvalue of a^* a with the discriminant as a sum of squares (no cancellation).
        const Eigen::Matrix2cd b = a.adjoint() * a;
        const double d = b(0, 0).real() - b(1, 1).real();
        const double lam = 0.5 * (b(0, 0).real() + b(1, 1).real() + std::sqrt(d * d + 4.0 * std::norm(b(0, 1))));
        return std::sqrt(std::max(0.0, lam));
    }
    // The trigonometric closed form loses half the digits near repeated eigenvalues.
    if (n == 3 && a.cols() == 3) return Eigen::JacobiSVD<Eigen::Matrix3cd>(Eigen::Matrix3cd(a)).singularValues()(0);
    const Eigen::MatrixXcd b = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

namespace detail {

/// Largest singular value of a dense matrix by power iteration on a^* a. Every
/// iterate is a Rayleigh quotient, so the result never exceeds the true value.
inline double power_norm(const Eigen::MatrixXcd& a, int iters = 200) {
    if (a.size() == 0) return 0.0;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()) / std::sqrt(static_cast<double>(a.cols()));
    double best = 0.0;
    for (int i = 0; i < iters; ++i) {
        Eigen::VectorXcd w = a * v;
        best = std::max(best, w.norm());
        Eigen::VectorXcd u = a.adjoint() * w;
        const double nu = u.norm();
        if (nu == 0.0) break;
        Eigen::VectorXcd next = u / nu;
        if ((next - v).norm() < 1e-13) {
            v = next;
            break;
        }
        v = next;
    }
    return std::max(best, (a * v).norm());
}

inline double max_over_t(const MatrixLaurent& rep, std::size_t grid) {
    const long lo = rep.lo();
    const std::size_t dim = rep.dim();
    double best = 0.0;
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t k = 0; k < grid; ++k) {
        const cplx t = grid_t(k, grid);
        cplx tp = std::pow(t, static_cast<int>(lo));
        long pw = lo;
        m.setZero();
        for (const auto& [e, c] : rep.coeffs()) {
            while (pw < e) {
                tp *= t;
                ++pw;
            }
            m += c * tp;
        }
        best = std::max(best, spectral_norm(m));
    }
    return best;
}

}  // namespace detail

/// Frequency span of the coefficient functions in the base point y (rotations only).
inline long y_frequency_span(const GenPoly& a) {
    long lo = 0, hi = 0;
    bool any = false;
    for (const auto& [n, f] : a.terms()) {
        if (f.model() != Model::Trig || f.coeffs().empty()) continue;
        lo = any ? std::min(lo, f.min_frequency()) : f.min_frequency();
        hi = any ? std::max(hi, f.max_frequency()) : f.max_frequency();
        any = true;
    }
    return hi - lo;
}

/// ||a|| as a supremum over the periodic representations, or a lower bound from
/// truncated aperiodic representations.
///
/// Enclosure: for a maximizer (y*, t*) with top singular pair (u, v), the real
/// exponential sum s -> Re<A u, v> along the segment to the nearest grid point has
/// type at most pi (N_t |dt| + N_y |dy|) and is bounded by ||a||, so Bernstein's
/// inequality gives ||a|| <= est / (1 - c) with c = pi^2 (N_t h_t + N_y h_y)^2 / 2.
/// A first-order Lipschitz slack is also computed and the smaller radius reported.
inline NormEstimate operator_norm(const DynSystem& sys, const GenPoly& a, const NormOptions& opt = {}) {
    NormEstimate out;
    if (a.is_zero()) return out;
    if (sys.kind() == SystemKind::IrrationalRotation) {
        const long w = std::max(opt.window, a.degree_bound());
        for (std::size_t s = 0; s < opt.x_samples; ++s) {
            const double x = static_cast<double>(s) / static_cast<double>(opt.x_samples);
            out.estimate = std::max(out.estimate, detail::power_norm(rep_aperiodic(sys, x, w, a).matrix));
        }
        out.rigor = std::numeric_limits<double>::infinity();
        out.lower_bound_only = true;
        return out;
    }
    if (opt.grid < 16) throw PreconditionViolation("norm grid needs at least 16 points");

    const bool rotation = sys.kind() == SystemKind::RationalRotation;
    const double q = rotation ? static_cast<double>(sys.q()) : 1.0;
    const long ny = rotation ? y_frequency_span(a) : 0;

    // Lipschitz constants in the t-angle and in y, both measured in turns.
    long p = rotation ? sys.q() : std::numeric_limits<long>::max();
    for (const auto& o : sys.orbit_list()) p = std::min(p, o.period);
    double lip_t = 0.0, lip_y = 0.0;
    for (const auto& [n, f] : a.terms()) {
        lip_t += kTwoPi * static_cast<double>((std::abs(n) + p - 1) / p) * f.sup_bound();
        lip_y += f.derivative_bound();
    }

    std::size_t grid = opt.grid;
    std::size_t ygrid = rotation ? std::max<std::size_t>(opt.y_grid, 1) : 1;
    for (;;) {
        double est = 0.0;
        long nt = 0;
        for (const Point& y : base_points(sys, ygrid)) {
            const MatrixLaurent rep = symbolic_rep(sys, y, a);
            nt = std::max(nt, rep.hi() - rep.lo());
            est = std::max(est, detail::max_over_t(rep, grid));
        }
        const double ht = 0.5 / static_cast<double>(grid);
        const double hy = rotation ? 0.5 / (q * static_cast<double>(ygrid)) : 0.0;
        const double arg = static_cast<double>(nt) * ht + static_cast<double>(ny) * hy;
        const double c = 0.5 * std::pow(std::numbers::pi * arg, 2);
        double rigor = lip_t * ht + lip_y * hy;
        if (c < 1.0) rigor = std::min(rigor, est * c / (1.0 - c));
        rigor += 4e-15 * est;
        out = NormEstimate{est, rigor, false, grid, rotation ? ygrid : 0};
        const bool t_open = grid < opt.max_grid;
        const bool y_open = rotation && ny > 0 && ygrid < opt.max_y_grid;
        if (rigor <= opt.tol || (!t_open && !y_open)) break;
        // Refine the direction with the larger share of the spacing term.
        const bool prefer_y = static_cast<double>(ny) * hy > static_cast<double>(nt) * ht;
        if (y_open && (prefer_y || !t_open))
            ygrid *= 2;
        else
            grid *= 2;
    }
    return out;
}

}  // namespace crossprod
