#pragma once

// Seeded generators of functions and generalized polynomials for property suites.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "genpoly.hpp"

namespace crossprod {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// The seed from CROSSPROD_SEED when set, otherwise the fallback.
inline std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed) {
    if (const char* s = std::getenv("CROSSPROD_SEED")) {
        try {
            return std::stoull(s, nullptr, 0);
        } catch (const std::exception&) {
        }
    }
    return fallback;
}

class Random {
   public:
    explicit Random(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
    cplx coefficient() { return {uniform(-0.5, 0.5), uniform(-0.5, 0.5)}; }
    std::mt19937_64& engine() { return eng_; }

    /// Random element of C(X): uniform entries, or trig degree <= trig_degree with
    /// coefficients scaled by 1/(2 D + 1) so that sup|f| < 1.
    Function function(const DynSystem& sys, long trig_degree = 2) {
        if (sys.is_finite()) {
            std::vector<cplx> v(sys.size());
            for (auto& x : v) x = coefficient();
            return Function::discrete(std::move(v));
        }
        std::map<long, cplx> c;
        const double s = 1.0 / static_cast<double>(2 * trig_degree + 1);
        for (long k = -trig_degree; k <= trig_degree; ++k) c[k] = coefficient() * s;
        return Function::trig(std::move(c));
    }

    /// Random generalized polynomial with degrees in [-degree, degree]; each degree
    /// is present with probability density.
    GenPoly genpoly(const DynSystem& sys, long degree, double density = 1.0, long trig_degree = 2) {
        GenPoly::Terms t;
        for (long n = -degree; n <= degree; ++n)
            if (coin(density)) t.emplace(n, function(sys, trig_degree));
        return GenPoly(std::move(t));
    }

    GenPoly nonzero_genpoly(const DynSystem& sys, long degree, double density = 1.0, long trig_degree = 2) {
        for (;;) {
            GenPoly a = genpoly(sys, degree, density, trig_degree);
            if (!a.is_zero()) return a;
        }
    }

   private:
    std::mt19937_64 eng_;
};

}  // namespace crossprod
