#pragma once

// Elements of C(X): complex vectors over a finite X, or trigonometric
// polynomials sum_k c_k e^{2 pi i k x} on the circle.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "common.hpp"
#include "dynsys.hpp"

namespace crossprod {

enum class Model { Discrete, Trig };

inline const char* to_string(Model m) { return m == Model::Discrete ? "discrete" : "trig"; }

class Function {
   public:
    Function() = default;

    static Function discrete(std::vector<cplx> values) {
        Function f;
        f.model_ = Model::Discrete;
        f.values_ = std::move(values);
        return f;
    }

    static Function trig(std::map<long, cplx> coeffs, double tol = kDefaultTol.zero) {
        Function f;
        f.model_ = Model::Trig;
        f.coeffs_ = std::move(coeffs);
        f.prune(tol);
        return f;
    }

    static Function constant(Model m, std::size_t n, cplx c) {
        if (m == Model::Discrete) return discrete(std::vector<cplx>(n, c));
        return trig({{0, c}});
    }

    /// Constant function on the model used by a system.
    static Function constant(const DynSystem& sys, cplx c) {
        return constant(sys.is_finite() ? Model::Discrete : Model::Trig, sys.size(), c);
    }

    static Function indicator(std::size_t n, const std::vector<std::size_t>& pts) {
        std::vector<cplx> v(n, 0.0);
        for (auto x : pts) v.at(x) = 1.0;
        return discrete(std::move(v));
    }

    /// x -> e^{2 pi i k x}.
    static Function character(long k) { return trig({{k, 1.0}}); }

    Model model() const { return model_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    const std::map<long, cplx>& coeffs() const { return coeffs_; }

    cplx at(std::size_t i) const { return values_.at(i); }

    cplx eval(double x) const {
        if (coeffs_.empty()) return 0.0;
        // Powers of w = e^{2 pi i x} by repeated multiplication from the lowest frequency.
        const cplx w = unit(x);
        const long lo = coeffs_.begin()->first;
        cplx wk = unit(static_cast<double>(lo) * x - std::floor(static_cast<double>(lo) * x));
        cplx sum = 0.0;
        long k = lo;
        for (const auto& [freq, c] : coeffs_) {
            while (k < freq) {
                wk *= w;
                ++k;
            }
            sum += c * wk;
        }
        return sum;
    }

    cplx operator()(Point pt) const { return model_ == Model::Discrete ? at(pt.index) : eval(pt.turn); }

    bool is_zero(double tol = kDefaultTol.zero) const {
        if (model_ == Model::Discrete)
            return std::all_of(values_.begin(), values_.end(), [&](cplx v) { return std::abs(v) <= tol; });
        return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const auto& kv) { return std::abs(kv.second) <= tol; });
    }

    /// Upper bound for sup|f|: exact for discrete data, the coefficient l1 norm for trig data.
    double sup_bound() const {
        double s = 0.0;
        if (model_ == Model::Discrete) {
            for (auto v : values_) s = std::max(s, std::abs(v));
        } else {
            for (const auto& [k, c] : coeffs_) s += std::abs(c);
        }
        return s;
    }

    /// Bound for sup|f'| with x measured in turns (zero for discrete data).
    double derivative_bound() const {
        double s = 0.0;
        for (const auto& [k, c] : coeffs_) s += kTwoPi * std::abs(static_cast<double>(k)) * std::abs(c);
        return s;
    }

    long min_frequency() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
    long max_frequency() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    Function conj() const {
        Function f;
        f.model_ = model_;
        if (model_ == Model::Discrete) {
            f.values_.reserve(values_.size());
            for (auto v : values_) f.values_.push_back(std::conj(v));
        } else {
            for (const auto& [k, c] : coeffs_) f.coeffs_[-k] = std::conj(c);
        }
        return f;
    }

    Function& operator+=(const Function& o) {
        check_compatible(o);
        if (model_ == Model::Discrete) {
            for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        } else {
            for (const auto& [k, c] : o.coeffs_) coeffs_[k] += c;
            prune(kDefaultTol.zero);
        }
        return *this;
    }

    Function& operator-=(const Function& o) { return *this += o * cplx(-1.0); }

    Function& operator*=(cplx s) {
        if (model_ == Model::Discrete) {
            for (auto& v : values_) v *= s;
        } else {
            for (auto& [k, c] : coeffs_) c *= s;
            prune(kDefaultTol.zero);
        }
        return *this;
    }

    /// Pointwise product.
    Function& operator*=(const Function& o) {
        check_compatible(o);
        if (model_ == Model::Discrete) {
            for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
        } else {
            std::map<long, cplx> out;
            for (const auto& [k1, c1] : coeffs_)
                for (const auto& [k2, c2] : o.coeffs_) out[k1 + k2] += c1 * c2;
            coeffs_ = std::move(out);
            prune(kDefaultTol.zero);
        }
        return *this;
    }

    friend Function operator+(Function a, const Function& b) { return a += b; }
    friend Function operator-(Function a, const Function& b) { return a -= b; }
    friend Function operator*(Function a, const Function& b) { return a *= b; }
    friend Function operator*(Function a, cplx s) { return a *= s; }
    friend Function operator*(cplx s, Function a) { return a *= s; }

    friend bool operator==(const Function& a, const Function& b) {
        return a.model_ == b.model_ && a.values_ == b.values_ && a.coeffs_ == b.coeffs_;
    }

    /// Max coefficientwise difference, infinity when the models differ.
    friend double distance(const Function& a, const Function& b) {
        if (a.model_ != b.model_ || a.values_.size() != b.values_.size()) return INFINITY;
        double d = 0.0;
        if (a.model_ == Model::Discrete) {
            for (std::size_t i = 0; i < a.values_.size(); ++i) d = std::max(d, std::abs(a.values_[i] - b.values_[i]));
        } else {
            std::map<long, cplx> diff = a.coeffs_;
            for (const auto& [k, c] : b.coeffs_) diff[k] -= c;
            for (const auto& [k, c] : diff) d = std::max(d, std::abs(c));
        }
        return d;
    }

    void check_compatible(const Function& o) const {
        if (model_ != o.model_) throw ModelMismatch("coefficient models differ");
        if (model_ == Model::Discrete && values_.size() != o.values_.size())
            throw ModelMismatch("discrete functions have different lengths");
    }

   private:
    void prune(double tol) { std::erase_if(coeffs_, [&](const auto& kv) { return std::abs(kv.second) <= tol; }); }

    Model model_ = Model::Discrete;
    std::vector<cplx> values_;
    std::map<long, cplx> coeffs_;
};

/// f o s^n. Exact permutation of values, or the coefficient phases c_k e^{2 pi i k n theta}.
inline Function compose(const DynSystem& sys, const Function& f, long n) {
    if (n == 0) return f;
    if (f.model() == Model::Discrete) {
        if (!sys.is_finite() || f.size() != sys.size()) throw ModelMismatch("discrete function used with a non-matching system");
        std::vector<cplx> out(f.size());
        for (std::size_t x = 0; x < out.size(); ++x) out[x] = f.at(sys.apply(x, n));
        return Function::discrete(std::move(out));
    }
    if (sys.is_finite()) throw ModelMismatch("trig function used with a finite system");
    std::map<long, cplx> out;
    for (const auto& [k, c] : f.coeffs()) out[k] = c * sys.shift_phase(k, n);
    return Function::trig(std::move(out));
}

inline void check_model(const DynSystem& sys, const Function& f) {
    if (sys.is_finite()) {
        if (f.model() != Model::Discrete || f.size() != sys.size())
            throw ModelMismatch("finite systems take discrete functions of matching length");
    } else if (f.model() != Model::Trig) {
        throw ModelMismatch("circle systems take trigonometric polynomials");
    }
}

}  // namespace crossprod
