#pragma once

#include <vector>

#include "knots/contour.hpp"
#include "knots/hankel.hpp"

namespace knots {

/// ODE state carried along the path: the wave function and its xi-derivative.
struct State {
    Complex psi;
    Complex dpsi; // d psi / d xi
};

struct TrajectoryPoint {
    double s;
    Complex psi, dpsi; // launch A, after rescaling
    double scale_log;  // true value = stored value * exp(scale_log)
};

struct ShootOptions {
    double tol = 1e-12;              // local error tolerance, in [1e-12, 1e-6]
    double min_step = 1e-9;
    double rescale_threshold = 1e120;
    double b_target = 3.7;           // endpoint exponential contrast exp(2 b_target)
    double admit_threshold = 1e-6;
    double reject_threshold = 1e2;
};

struct IntegrationResult {
    std::vector<TrajectoryPoint> trajectory; // launch A only
    State final_a, final_b;                  // scaled states at s_end
    double scale_log;
    double wronskian_drift;
    std::size_t steps;
};

struct Decomposition {
    Complex c_physical;   // coefficient of sqrt(xi) H2_nu(kappa xi_p) at the endpoint
    Complex c_unphysical; // coefficient of sqrt(xi) H1_nu(kappa xi_p)
    double weight_physical, weight_unphysical; // |basis value| at the endpoint
    /// growing-over-decaying contribution ratio at the endpoint,
    /// |c_unphysical| w_unphysical / (|c_physical| w_physical)
    double contribution_ratio;
};

enum class Admissibility { Admissible, Rejected, Indeterminate };

struct ShootResult {
    double nu;
    double kappa;
    int winding;
    Complex c_physical, c_unphysical;
    double ratio;          // endpoint contribution ratio used for classification
    Complex coeff_ratio;   // c_unphysical / c_physical without endpoint weights;
                           // comparable to the winding-matrix prediction
    double wronskian_drift;
    Admissibility classification;
    bool admissible() const { return classification == Admissibility::Admissible; }
};

State rhs(double ell, double kappa, const SurfacePoint& point, const State& state,
          Complex velocity);

/// Physical start: psi = sqrt(xi) H2_nu(kappa xi) in S_0.
State initial_state(double nu, double kappa, const Contour& c, double s_start);

/// Companion start from the growing branch, used for the Wronskian gate.
State companion_initial_state(double nu, double kappa, const Contour& c, double s_start);

IntegrationResult integrate(double nu, double kappa, const Contour& c, double s_start,
                            double s_end, double tol, const State& a0, const State& b0,
                            const ShootOptions& opts = {});

/// Convenience overload launching the physical/companion pair itself.
IntegrationResult integrate(double nu, double kappa, const Contour& c, double s_start,
                            double s_end, double tol);

Decomposition decompose(const State& final_state, double nu, double kappa,
                        const SurfacePoint& endpoint);

ShootResult verify_admissibility(double nu, int N, double kappa, const Contour& c,
                                 const ShootOptions& opts = {});

/// Arc-length L2 norm accumulated over a trajectory (trapezoid rule).
double norm_on_contour(const std::vector<TrajectoryPoint>& trajectory, const Contour& c);

/// Integration span used by verify_admissibility for the given contour/kappa.
double shooting_span(const Contour& c, double kappa, const ShootOptions& opts = {});

} // namespace knots
