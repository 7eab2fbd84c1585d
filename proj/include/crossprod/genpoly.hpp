#pragma once

// Generalized polynomials sum_n f_n delta^n and the crossed-product operations on them.

#include <cstdlib>
#include <map>
#include <utility>

#include "function.hpp"

namespace crossprod {

/// A finite sum sum_n f_n delta^n. Zero coefficients are never stored.
class GenPoly {
   public:
    using Terms = std::map<long, Function>;

    GenPoly() = default;

    explicit GenPoly(Terms terms, double tol = kDefaultTol.zero) : terms_(std::move(terms)) { prune(tol); }

    static GenPoly term(long degree, Function f) { return GenPoly(Terms{{degree, std::move(f)}}); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    long degree_bound() const {
        long d = 0;
        for (const auto& [n, f] : terms_) d = std::max(d, std::abs(n));
        return d;
    }

    const Function* find(long n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? nullptr : &it->second;
    }

    GenPoly& operator+=(const GenPoly& o) {
        for (const auto& [n, f] : o.terms_) {
            auto it = terms_.find(n);
            if (it == terms_.end()) {
                if (!terms_.empty()) terms_.begin()->second.check_compatible(f);
                terms_.emplace(n, f);
            } else {
                it->second += f;
            }
        }
        prune(kDefaultTol.zero);
        return *this;
    }

    GenPoly& operator*=(cplx s) {
        for (auto& [n, f] : terms_) f *= s;
        prune(kDefaultTol.zero);
        return *this;
    }

    GenPoly& operator-=(const GenPoly& o) { return *this += o * cplx(-1.0); }

    friend GenPoly operator+(GenPoly a, const GenPoly& b) { return a += b; }
    friend GenPoly operator-(GenPoly a, const GenPoly& b) { return a -= b; }
    friend GenPoly operator*(GenPoly a, cplx s) { return a *= s; }
    friend GenPoly operator*(cplx s, GenPoly a) { return a *= s; }

    friend bool operator==(const GenPoly& a, const GenPoly& b) { return a.terms_ == b.terms_; }

    /// Max coefficient difference over all degrees.
    friend double distance(const GenPoly& a, const GenPoly& b) {
        double d = 0.0;
        for (const auto& [n, f] : a.terms_) {
            const Function* g = b.find(n);
            d = std::max(d, g ? distance(f, *g) : distance(f, f * cplx(0.0)));
        }
        for (const auto& [n, g] : b.terms_)
            if (!a.find(n)) d = std::max(d, distance(g, g * cplx(0.0)));
        return d;
    }

    /// Largest coefficient magnitude (sup bound) over all degrees.
    double max_coefficient() const {
        double m = 0.0;
        for (const auto& [n, f] : terms_) m = std::max(m, f.sup_bound());
        return m;
    }

   private:
    void prune(double tol) {
        std::erase_if(terms_, [&](const auto& kv) { return kv.second.is_zero(tol); });
    }

    Terms terms_;
};

inline GenPoly add(const GenPoly& a, const GenPoly& b) { return a + b; }
inline GenPoly scale(const GenPoly& a, cplx s) { return a * s; }

/// The crossed product C(X) x_s Z of one system; supplies the operations that
/// need the action, i.e. delta f = (f o s^{-1}) delta.
class CrossedProduct {
   public:
    explicit CrossedProduct(DynSystem sys) : sys_(std::move(sys)) {}

    const DynSystem& system() const { return sys_; }
    Model model() const { return sys_.is_finite() ? Model::Discrete : Model::Trig; }

    Function constant(cplx c) const { return Function::constant(sys_, c); }
    Function zero_function() const { return constant(0.0); }

    GenPoly one() const { return GenPoly::term(0, constant(1.0)); }
    GenPoly delta(long n = 1) const { return GenPoly::term(n, constant(1.0)); }

    GenPoly embed(Function f, long degree = 0) const {
        check_model(sys_, f);
        return GenPoly::term(degree, std::move(f));
    }

    Function compose(const Function& f, long n) const { return crossprod::compose(sys_, f, n); }

    void check(const GenPoly& a) const {
        for (const auto& [n, f] : a.terms()) check_model(sys_, f);
    }

    /// (f delta^m)(g delta^n) = f (g o s^{-m}) delta^{m+n}, extended bilinearly.
    GenPoly mul(const GenPoly& a, const GenPoly& b) const {
        check(a);
        check(b);
        GenPoly::Terms out;
        for (const auto& [m, f] : a.terms()) {
            for (const auto& [n, g] : b.terms()) {
                Function prod = f * compose(g, -m);
                auto it = out.find(m + n);
                if (it == out.end())
                    out.emplace(m + n, std::move(prod));
                else
                    it->second += prod;
            }
        }
        return GenPoly(std::move(out));
    }

    /// (f delta^n)^* = (conj(f) o s^n) delta^{-n}.
    GenPoly adjoint(const GenPoly& a) const {
        GenPoly::Terms out;
        for (const auto& [n, f] : a.terms()) out.emplace(-n, compose(f.conj(), n));
        return GenPoly(std::move(out));
    }

    GenPoly commutator(const GenPoly& a, const GenPoly& b) const { return mul(a, b) - mul(b, a); }

    /// E(sum f_n delta^n) = f_0.
    Function expectation(const GenPoly& a) const {
        const Function* f = a.find(0);
        return f ? *f : zero_function();
    }

    /// a(j) = E(a delta^{-j}).
    Function fourier(const GenPoly& a, long j) const {
        const Function* f = a.find(j);
        return f ? *f : zero_function();
    }

    /// sum_{|i| <= n} (1 - |i|/(n+1)) a(i) delta^i.
    GenPoly cesaro(const GenPoly& a, long n) const {
        if (n < 0) throw std::invalid_argument("cesaro order must be non-negative");
        GenPoly::Terms out;
        for (const auto& [i, f] : a.terms()) {
            if (std::abs(i) > n) continue;
            const double w = 1.0 - static_cast<double>(std::abs(i)) / static_cast<double>(n + 1);
            out.emplace(i, f * cplx(w));
        }
        return GenPoly(std::move(out));
    }

    /// delta^k a delta^{-k}: coefficientwise a(n) -> a(n) o s^{-k}.
    GenPoly ad_delta(const GenPoly& a, long k = 1) const {
        GenPoly::Terms out;
        for (const auto& [n, f] : a.terms()) out.emplace(n, compose(f, -k));
        return GenPoly(std::move(out));
    }

    /// Multiply by a function on the left, f a.
    GenPoly left_mul(const Function& f, const GenPoly& a) const { return mul(embed(f), a); }

   private:
    DynSystem sys_;
};

}  // namespace crossprod
