#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crossprod {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default tolerances shared by every module.
struct Tolerances {
    double zero = 1e-12;  // coefficient pruning
    double num = 1e-10;   // homomorphism / multiplicativity checks
    double psd = 1e-10;   // positive semidefiniteness
};

inline constexpr Tolerances kDefaultTol{};

class ModelMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedKind : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class PreconditionViolation : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// e^{2 pi i x} for x in turns.
inline cplx unit(double turns) { return std::polar(1.0, kTwoPi * turns); }

inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long pos_mod(long a, long b) {
    long r = a % b;
    return r < 0 ? r + b : r;
}

}  // namespace crossprod
