#pragma once

#include <utility>

#include "knots/riemann.hpp"

namespace knots {

struct HankelValue {
    Complex h1, h2;
    double order;
    SurfacePoint at; // argument z on the surface
};

/// Values and z-derivatives of both kinds at one point.
struct HankelPair {
    Complex h1, h2, dh1, dh2;
};

/// Linear map (H1, H2)(z) -> (H1, H2)(z e^{i m pi}) for non-integer order.
struct WindingMatrix {
    Complex a11, a12; // H1(z e^{im pi}) = a11 H1(z) + a12 H2(z)
    Complex a21, a22; // H2(z e^{im pi}) = a21 H1(z) + a22 H2(z)
};

/// Ascending series with surface powers; single-valued on the whole surface.
Complex bessel_j_surface(double nu, const SurfacePoint& z, int terms = 200);

HankelValue hankel_principal(double nu, const SurfacePoint& z);

/// Truncated large-|z| expansion, `order` correction terms (0..2).
HankelValue hankel_asymptotic(double nu, const SurfacePoint& z, int order);

WindingMatrix winding_matrix(double nu, int m);

HankelValue continue_winding(double nu, int m, const HankelValue& at_principal);

HankelValue hankel_on_surface(double nu, const SurfacePoint& z);

/// Leading near-origin solution pair (xi^{l+1}, xi^{-l}); corrections O(rho^2).
std::pair<Complex, Complex> near_origin_basis(double ell, const SurfacePoint& z);

/// Values and derivatives at a principal-plane point (|theta| < pi).
/// Unlike hankel_principal this also accepts integer orders, for which it
/// requires rho above the series/asymptotic crossover.
HankelPair hankel_pair_principal(double nu, const SurfacePoint& z);

/// Relative defect of H1 H2' - H2 H1' = -4i/(pi z).
double wronskian_residual(double nu, const SurfacePoint& z);

inline constexpr double series_cutoff = 25.0;    // ascending series valid up to here
inline constexpr double series_crossover = 12.0; // switch to the asymptotic expansion

} // namespace knots
