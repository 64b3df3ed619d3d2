#pragma once

#include <vector>

#include "knots/riemann.hpp"

namespace knots {

/// Knotted integration path: two tilted straight asymptotic branches joined
/// by a smooth middle section that makes `winding` counterclockwise turns
/// around the origin. The left branch lives in sector S_0, the right branch
/// in S_{2N}, and the whole path is PT-symmetric in the principal plane.
struct Contour {
    int winding;           // N >= 0
    double junction;       // s0 > 0
    double tilt;           // eps > 0
    double turn_radius;    // r0 in (0, s0]
    int samples_per_turn;  // discretization hint for exports/integrators

    // derived parameterization constants, filled by build_contour
    double speed;          // sqrt(1 + eps^2), |dxi/ds| on the branches
    double middle_half;    // s1: middle section covers |s| < s1
    double theta_left;     // -pi + atan(eps)
    double theta_right;    // 2 pi N - atan(eps)
    double bump_slope;     // q in the radial dip profile
    double bump_exponent;  // a in the radial dip profile
};

struct ContourSample {
    double s;
    SurfacePoint point;
    Complex velocity; // dxi/ds, principal plane
};

struct PolylineRow {
    double s, x, y, theta;
    int sector;
};

Contour build_contour(int winding, double junction, double tilt, double turn_radius,
                      int samples_per_turn = 64);

/// Default parameters used by the CLI and the verification suite.
inline Contour default_contour(int winding) { return build_contour(winding, 5.0, 0.25, 1.0); }

ContourSample sample(const Contour& c, double s);

std::vector<PolylineRow> export_polyline(const Contour& c, double s_min, double s_max, int n);

} // namespace knots
