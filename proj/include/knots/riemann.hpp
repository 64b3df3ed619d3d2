#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "knots/errors.hpp"

namespace knots {

using Complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// A point of the logarithmic Riemann surface over C \ {0}: modulus plus
/// an unwrapped (unbounded) argument. The branch point itself is excluded.
struct SurfacePoint {
    double rho;   // |xi| > 0
    double theta; // unwrapped arg, radians

    /// Principal-plane image, e^{i theta} periodicity applied.
    Complex principal() const { return Complex(rho * std::cos(theta), rho * std::sin(theta)); }
};

struct SectorIndex {
    int k; // sector S_k covers theta in ((k-1) pi, k pi)
};

struct PrincipalDecomposition {
    SurfacePoint principal; // theta in (-pi, pi]
    int sheet_shift;        // even integer m with theta = principal.theta + m*pi
};

inline SurfacePoint from_cartesian(double x, double y, int sheet_shift = 0) {
    if (x == 0.0 && y == 0.0) throw BranchPointError();
    return SurfacePoint{std::hypot(x, y), std::atan2(y, x) + 2.0 * pi * sheet_shift};
}

/// Split theta = theta_p + m*pi with theta_p in (-pi, pi] and m even.
inline PrincipalDecomposition to_principal(const SurfacePoint& p) {
    // k = number of full turns to remove; theta - 2*pi*k in (-pi, pi]
    double k = std::ceil(p.theta / (2.0 * pi) - 0.5);
    double theta_p = p.theta - 2.0 * pi * k;
    if (theta_p <= -pi) { theta_p += 2.0 * pi; k -= 1.0; } // guard rounding at the seam
    if (theta_p > pi)   { theta_p -= 2.0 * pi; k += 1.0; }
    return PrincipalDecomposition{SurfacePoint{p.rho, theta_p}, 2 * static_cast<int>(k)};
}

inline SectorIndex sector_of(const SurfacePoint& p) {
    double q = p.theta / pi;
    if (q == std::floor(q)) throw SectorBoundaryError(p.theta);
    return SectorIndex{static_cast<int>(std::floor(q)) + 1};
}

/// xi^a, single-valued on the surface: exp(a (ln rho + i theta)).
inline Complex surface_power(const SurfacePoint& p, Complex a) {
    return std::exp(a * Complex(std::log(p.rho), p.theta));
}

inline Complex surface_power(const SurfacePoint& p, double a) {
    return surface_power(p, Complex(a, 0.0));
}

/// Surface logarithm, the branch fixed by the unwrapped angle.
inline Complex surface_log(const SurfacePoint& p) {
    return Complex(std::log(p.rho), p.theta);
}

inline SurfacePoint scaled(const SurfacePoint& p, double factor) {
    return SurfacePoint{p.rho * factor, p.theta};
}

} // namespace knots
