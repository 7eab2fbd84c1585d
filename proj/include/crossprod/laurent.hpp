#pragma once

// Laurent polynomials in the circle variable z and matrices of them.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "common.hpp"

namespace crossprod {

class Laurent {
   public:
    Laurent() = default;
    explicit Laurent(std::map<long, cplx> coeffs) : c_(std::move(coeffs)) { prune(0.0); }

    static Laurent monomial(long k, cplx c = 1.0) { return Laurent({{k, c}}); }

    const std::map<long, cplx>& coeffs() const { return c_; }
    bool is_zero(double tol = 0.0) const {
        return std::all_of(c_.begin(), c_.end(), [&](const auto& kv) { return std::abs(kv.second) <= tol; });
    }
    long lo() const { return c_.empty() ? 0 : c_.begin()->first; }
    long hi() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    double norm1() const {
        double s = 0.0;
        for (const auto& [k, v] : c_) s += std::abs(v);
        return s;
    }

    cplx operator()(cplx z) const {
        cplx s = 0.0;
        for (const auto& [k, v] : c_) s += v * std::pow(z, static_cast<int>(k));
        return s;
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [k, v] : o.c_) c_[k] += v;
        prune(0.0);
        return *this;
    }
    Laurent& operator*=(cplx s) {
        for (auto& [k, v] : c_) v *= s;
        prune(0.0);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator*(Laurent a, cplx s) { return a *= s; }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        std::map<long, cplx> out;
        for (const auto& [i, u] : a.c_)
            for (const auto& [j, v] : b.c_) out[i + j] += u * v;
        return Laurent(std::move(out));
    }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }

    void prune(double tol) {
        std::erase_if(c_, [&](const auto& kv) { return std::abs(kv.second) <= tol; });
    }

   private:
    std::map<long, cplx> c_;
};

/// Zeros of a family of Laurent polynomials on the unit circle, as turns in [0,1).
struct CircleZeros {
    bool whole = false;
    std::vector<double> turns;
};

namespace detail {

inline cplx polish_root(const std::vector<cplx>& poly, cplx z) {
    // poly[k] is the coefficient of z^k.
    for (int it = 0; it < 60; ++it) {
        cplx p = 0.0, dp = 0.0;
        for (std::size_t k = poly.size(); k-- > 0;) {
            dp = dp * z + p;
            p = p * z + poly[k];
        }
        if (std::abs(dp) == 0.0) break;
        const cplx step = p / dp;
        z -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return z;
}

}  // namespace detail

/// Roots on |z| = 1 of one nonzero Laurent polynomial, found from the companion
/// matrix eigenvalues and polished by Newton steps.
inline std::vector<double> unit_circle_roots(const Laurent& l, double tol) {
    Laurent q = l;
    q.prune(tol);
    if (q.coeffs().empty()) return {};
    const long lo = q.lo();
    const long deg = q.hi() - lo;
    if (deg == 0) return {};
    std::vector<cplx> poly(static_cast<std::size_t>(deg + 1), 0.0);
    for (const auto& [k, v] : q.coeffs()) poly[static_cast<std::size_t>(k - lo)] = v;

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    const cplx lead = poly.back();
    for (long i = 0; i < deg; ++i) comp(0, i) = -poly[static_cast<std::size_t>(deg - 1 - i)] / lead;
    for (long i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);

    const double scale = std::max(1.0, q.norm1());
    std::vector<double> out;
    for (long i = 0; i < deg; ++i) {
        cplx z = es.eigenvalues()[i];
        if (std::abs(std::abs(z) - 1.0) > 1e-4) continue;
        z = detail::polish_root(poly, z);
        z /= std::abs(z);
        if (std::abs(q(z)) > 1e-9 * scale) continue;
        double turn = std::arg(z) / kTwoPi;
        if (turn < 0) turn += 1.0;
        if (turn >= 1.0) turn -= 1.0;
        out.push_back(turn);
    }
    std::sort(out.begin(), out.end());
    std::vector<double> uniq;
    for (double t : out) {
        if (uniq.empty() || t - uniq.back() > 1e-7) uniq.push_back(t);
    }
    if (uniq.size() > 1 && uniq.front() + 1.0 - uniq.back() <= 1e-7) uniq.pop_back();
    return uniq;
}

/// Common zeros on the unit circle of a family of Laurent polynomials.
inline CircleZeros common_circle_zeros(const std::vector<Laurent>& family, double tol = kDefaultTol.zero) {
    const Laurent* pivot = nullptr;
    double scale = 1.0;
    for (const auto& l : family) {
        scale = std::max(scale, l.norm1());
        if (l.is_zero(tol)) continue;
        if (!pivot || (l.hi() - l.lo()) < (pivot->hi() - pivot->lo())) pivot = &l;
    }
    CircleZeros z;
    if (!pivot) {
        z.whole = true;
        return z;
    }
    for (double turn : unit_circle_roots(*pivot, tol)) {
        const cplx w = unit(turn);
        bool all = true;
        for (const auto& l : family) {
            if (std::abs(l(w)) > 1e-9 * scale) {
                all = false;
                break;
            }
        }
        if (all) z.turns.push_back(turn);
    }
    return z;
}

/// A p x p matrix whose entries are Laurent polynomials, stored as dense
/// matrix coefficients sum_k M_k z^k.
class MatrixLaurent {
   public:
    MatrixLaurent() = default;
    explicit MatrixLaurent(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    const std::map<long, Eigen::MatrixXcd>& coeffs() const { return coef_; }
    long lo() const { return coef_.empty() ? 0 : coef_.begin()->first; }
    long hi() const { return coef_.empty() ? 0 : coef_.rbegin()->first; }

    void add(std::size_t r, std::size_t c, long power, cplx v) {
        auto it = coef_.find(power);
        if (it == coef_.end()) it = coef_.emplace(power, Eigen::MatrixXcd::Zero(dim_, dim_)).first;
        it->second(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += v;
    }

    Eigen::MatrixXcd operator()(cplx z) const {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
        for (const auto& [k, c] : coef_) m += c * std::pow(z, static_cast<int>(k));
        return m;
    }

    Laurent entry(std::size_t r, std::size_t c) const {
        std::map<long, cplx> out;
        for (const auto& [k, m] : coef_) {
            const cplx v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (v != cplx(0.0)) out[k] = v;
        }
        return Laurent(std::move(out));
    }

    bool is_zero(double tol) const {
        for (const auto& [k, m] : coef_)
            if (m.cwiseAbs().maxCoeff() > tol) return false;
        return true;
    }

    /// Drops matrix coefficients whose entries are all below tol.
    void prune(double tol) {
        std::erase_if(coef_, [&](const auto& kv) { return kv.second.cwiseAbs().maxCoeff() <= tol; });
    }

    friend MatrixLaurent operator*(const MatrixLaurent& a, const MatrixLaurent& b) {
        MatrixLaurent out(a.dim_);
        for (const auto& [i, x] : a.coef_) {
            for (const auto& [j, y] : b.coef_) {
                auto it = out.coef_.find(i + j);
                if (it == out.coef_.end())
                    out.coef_.emplace(i + j, x * y);
                else
                    it->second += x * y;
            }
        }
        return out;
    }

    /// Pointwise adjoint on the circle: (sum M_k z^k)^* = sum M_k^* z^{-k}.
    MatrixLaurent adjoint() const {
        MatrixLaurent out(dim_);
        for (const auto& [k, m] : coef_) out.coef_.emplace(-k, m.adjoint());
        return out;
    }

    friend double distance(const MatrixLaurent& a, const MatrixLaurent& b) {
        double d = 0.0;
        std::map<long, Eigen::MatrixXcd> diff = a.coef_;
        for (const auto& [k, m] : b.coef_) {
            auto it = diff.find(k);
            if (it == diff.end())
                diff.emplace(k, -m);
            else
                it->second -= m;
        }
        for (const auto& [k, m] : diff) d = std::max(d, m.cwiseAbs().maxCoeff());
        return d;
    }

   private:
    std::size_t dim_ = 0;
    std::map<long, Eigen::MatrixXcd> coef_;
};

}  // namespace crossprod
