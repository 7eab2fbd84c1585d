#pragma once

// Finite unions of arcs of the circle R/Z with rational endpoints, measured in turns.

#include <algorithm>
#include <boost/rational.hpp>
#include <cmath>
#include <vector>

namespace crossprod {

using Rational = boost::rational<long>;

inline Rational frac(Rational x) {
    const long fl = (x.numerator() >= 0) ? x.numerator() / x.denominator()
                                         : -((-x.numerator() + x.denominator() - 1) / x.denominator());
    return x - Rational(fl);
}

inline double to_double(Rational x) { return boost::rational_cast<double>(x); }

/// Closest fraction with denominator at most max_den, by Stern-Brocot descent.
inline Rational to_rational(double x, long max_den = 1000000) {
    const double fl = std::floor(x);
    const double rem = x - fl;
    long ln = 0, ld = 1, hn = 1, hd = 1;
    Rational best = rem < 0.5 ? Rational(0) : Rational(1);
    double best_err = std::min(rem, 1.0 - rem);
    while (ld + hd <= max_den && best_err > 1e-15) {
        const long mn = ln + hn, md = ld + hd;
        const double m = static_cast<double>(mn) / static_cast<double>(md);
        const double err = std::abs(m - rem);
        if (err < best_err) {
            best = Rational(mn, md);
            best_err = err;
        }
        if (m < rem) {
            ln = mn;
            ld = md;
        } else {
            hn = mn;
            hd = md;
        }
    }
    return best + Rational(static_cast<long>(fl));
}

/// Closed arc {start + s : 0 <= s <= length} mod 1, with 0 <= start < 1 and 0 <= length < 1.
struct Arc {
    Rational start{0};
    Rational length{0};

    static Arc between(Rational a, Rational b) { return Arc{frac(a), frac(b - a)}; }
    static Arc point(Rational a) { return Arc{frac(a), Rational(0)}; }

    Rational end() const { return start + length; }
    bool contains(Rational x) const { return frac(x - start) <= length; }
    bool contains(double x, double tol = 0.0) const {
        double d = std::fmod(x - to_double(start), 1.0);
        if (d < 0) d += 1.0;
        return d <= to_double(length) + tol || d >= 1.0 - tol;
    }
    bool interior_contains(Rational x) const {
        const Rational d = frac(x - start);
        return d > Rational(0) && d < length;
    }
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Closed subset of the circle: empty, everything, or a finite union of closed arcs
/// (single points are arcs of length zero).
class CircleSet {
   public:
    CircleSet() = default;

    static CircleSet everything() {
        CircleSet s;
        s.full_ = true;
        return s;
    }
    static CircleSet of(std::vector<Arc> arcs) {
        CircleSet s;
        s.arcs_ = std::move(arcs);
        s.normalize();
        return s;
    }
    static CircleSet points(const std::vector<Rational>& pts) {
        std::vector<Arc> arcs;
        for (auto p : pts) arcs.push_back(Arc::point(p));
        return of(std::move(arcs));
    }

    bool full() const { return full_; }
    bool empty() const { return !full_ && arcs_.empty(); }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool contains(Rational x) const {
        return full_ || std::any_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.contains(x); });
    }
    bool contains(double x, double tol = 0.0) const {
        return full_ || std::any_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.contains(x, tol); });
    }

    /// Finitely many points (every arc has length zero).
    bool is_finite() const {
        return !full_ && std::all_of(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.length == Rational(0); });
    }

    /// Exact: the closed sets share a point.
    friend bool intersects(const CircleSet& a, const CircleSet& b) {
        if (a.empty() || b.empty()) return false;
        if (a.full_ || b.full_) return true;
        for (const auto& x : a.arcs_)
            for (const auto& y : b.arcs_)
                if (x.contains(y.start) || y.contains(x.start)) return true;
        return false;
    }

    /// Exact: a union b is the whole circle.
    friend bool covers_circle(const CircleSet& a, const CircleSet& b) {
        if (a.full_ || b.full_) return true;
        std::vector<std::pair<Rational, Rational>> iv;
        auto push = [&](const Arc& arc) {
            const Rational e = arc.end();
            if (e <= Rational(1)) {
                iv.emplace_back(arc.start, e);
            } else {
                iv.emplace_back(arc.start, Rational(1));
                iv.emplace_back(Rational(0), e - Rational(1));
            }
        };
        for (const auto& arc : a.arcs_) push(arc);
        for (const auto& arc : b.arcs_) push(arc);
        std::sort(iv.begin(), iv.end());
        Rational reach(0);
        for (const auto& [s, e] : iv) {
            if (s > reach) return false;
            reach = std::max(reach, e);
        }
        return reach >= Rational(1);
    }

    bool is_proper() const { return !full_ && !empty() && !covers_circle(*this, CircleSet{}); }

    friend bool operator==(const CircleSet&, const CircleSet&) = default;

   private:
    void normalize() {
        std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
            return x.start < y.start || (x.start == y.start && x.length < y.length);
        });
        arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
        if (!arcs_.empty() && covers_circle(*this, CircleSet{})) {
            full_ = true;
            arcs_.clear();
        }
    }

    bool full_ = false;
    std::vector<Arc> arcs_;
};

/// Finite union of open arcs (start, start + length); used for open invariant sets U in X = circle.
class OpenArcSet {
   public:
    OpenArcSet() = default;
    explicit OpenArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
        std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
    }

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }

    bool contains(Rational x) const {
        return std::any_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.interior_contains(x); });
    }
    bool contains(double x) const {
        for (const auto& a : arcs_) {
            double d = std::fmod(x - to_double(a.start), 1.0);
            if (d < 0) d += 1.0;
            if (d > 0.0 && d < to_double(a.length)) return true;
        }
        return false;
    }

    /// Exact disjointness of the open sets.
    friend bool disjoint(const OpenArcSet& u, const OpenArcSet& v) {
        for (const auto& a : u.arcs_)
            for (const auto& b : v.arcs_) {
                if (a.length == Rational(0) || b.length == Rational(0)) continue;
                if (a.start == b.start || a.interior_contains(b.start) || b.interior_contains(a.start)) return false;
            }
        return true;
    }

    /// The set is mapped onto itself by x -> x + shift.
    bool invariant_under(Rational shift) const {
        std::vector<Arc> moved;
        for (const auto& a : arcs_) moved.push_back(Arc{frac(a.start + shift), a.length});
        std::sort(moved.begin(), moved.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
        return moved == arcs_;
    }

   private:
    std::vector<Arc> arcs_;
};

}  // namespace crossprod
