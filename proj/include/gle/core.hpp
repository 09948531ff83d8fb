#ifndef GLE_CORE_HPP
#define GLE_CORE_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace gle {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline const cplx iu{0.0, 1.0};
inline const cplx two_pi_i{0.0, 2.0 * pi};

// Base class for all library errors; subclasses name the failing precondition.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveImaginaryPart : Error { using Error::Error; };
struct AccuracyUnreachable : Error { using Error::Error; };
struct PoleProximity : Error { using Error::Error; };
struct InversionFailed : Error { using Error::Error; };
struct DegeneratePosition : Error { using Error::Error; };
struct PlanningFailed : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };
struct NotCommuting : Error { using Error::Error; };
struct TrivialProjective : Error { using Error::Error; };
struct HalfIntegerPair : Error { using Error::Error; };
struct ZrsVanishes : Error { using Error::Error; };
struct DenominatorVanishes : Error { using Error::Error; };
struct BranchCut : Error { using Error::Error; };
struct ZeroCountMismatch : Error { using Error::Error; };
struct WordNotFound : Error { using Error::Error; };
struct DegeneracyHit : Error { using Error::Error; };

// 2x2 complex matrix, row-major: [[a, b], [c, d]].
struct Mat2 {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Mat2 identity() { return {}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }

    cplx trace() const { return a + d; }
    cplx det() const { return a * d - b * c; }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 inverse() const {
        cplx dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    // max-abs entry norm
    double norm() const {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }
};

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

inline double sq(double x) { return x * x; }

}  // namespace gle

#endif
