#include "knots/contour.hpp"

#include <cmath>

namespace knots {

Contour build_contour(int winding, double junction, double tilt, double turn_radius,
                      int samples_per_turn) {
    if (winding < 0) throw ContourParameterError("winding number N must be >= 0");
    if (junction <= 0.0) throw ContourParameterError("junction s0 must be > 0");
    if (tilt <= 0.0) throw ContourParameterError("tilt eps must be > 0");
    if (turn_radius <= 0.0) throw ContourParameterError("turn radius r0 must be > 0");
    if (turn_radius > junction) throw ContourParameterError("turn radius r0 must not exceed s0");
    if (samples_per_turn < 4) throw ContourParameterError("samples per turn must be >= 4");

    Contour c{};
    c.winding = winding;
    c.junction = junction;
    c.tilt = tilt;
    c.turn_radius = turn_radius;
    c.samples_per_turn = samples_per_turn;

    c.speed = std::sqrt(1.0 + tilt * tilt);
    // The straight-branch formulas reach the origin at |s| = s0, so the middle
    // section takes over at |s| = s1 where the branch radius equals r0.
    c.middle_half = junction + turn_radius / c.speed;
    c.theta_left = -pi + std::atan(tilt);
    c.theta_right = 2.0 * pi * winding - std::atan(tilt);

    // Radial profile inside the middle section: rho = r0 (1 - b(u)/2) with
    // b(u) = q u^a (1-u), u = |s|/s1. b'(1) = -q matches the branch slope,
    // and a >= ceil(q) keeps max b < 2/e so rho stays above ~0.8 r0.
    c.bump_slope = 2.0 * c.speed * c.middle_half / turn_radius;
    c.bump_exponent = std::max(2.0, std::ceil(c.bump_slope));
    return c;
}

ContourSample sample(const Contour& c, double s) {
    if (!std::isfinite(s)) throw ContourParameterError("path parameter s must be finite");
    const double s1 = c.middle_half;

    if (s <= -s1) {
        double t = s + c.junction; // t <= -r0/speed < 0
        return ContourSample{s, SurfacePoint{-t * c.speed, c.theta_left}, Complex(1.0, c.tilt)};
    }
    if (s >= s1) {
        double t = s - c.junction;
        return ContourSample{s, SurfacePoint{t * c.speed, c.theta_right}, Complex(1.0, -c.tilt)};
    }

    // middle section: smooth dip/spiral at base radius r0
    const double u = std::abs(s) / s1;
    const double ua = std::pow(u, c.bump_exponent);
    const double b = c.bump_slope * ua * (1.0 - u);
    const double db_du = c.bump_slope * (c.bump_exponent * (u > 0.0 ? ua / u : 0.0) -
                                         (c.bump_exponent + 1.0) * ua);
    const double rho = c.turn_radius * (1.0 - 0.5 * b);
    const double drho_ds = -0.5 * c.turn_radius * db_du / s1 * (s < 0.0 ? -1.0 : 1.0);

    const double t = (s + s1) / (2.0 * s1); // in (0, 1)
    const double w = t * t * (3.0 - 2.0 * t);
    const double dw_ds = 6.0 * t * (1.0 - t) / (2.0 * s1);
    const double span = c.theta_right - c.theta_left;
    const double theta = c.theta_left + span * w;
    const double dtheta_ds = span * dw_ds;

    const Complex phase(std::cos(theta), std::sin(theta));
    const Complex velocity = Complex(drho_ds, rho * dtheta_ds) * phase;
    return ContourSample{s, SurfacePoint{rho, theta}, velocity};
}

std::vector<PolylineRow> export_polyline(const Contour& c, double s_min, double s_max, int n) {
    if (!(s_min < s_max)) throw ContourParameterError("s_min must be < s_max");
    if (n < 2) throw ContourParameterError("need at least two samples");

    std::vector<PolylineRow> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = s_min + (s_max - s_min) * static_cast<double>(i) / (n - 1);
        ContourSample cs = sample(c, s);
        Complex z = cs.point.principal();
        // boundary hits (theta an exact multiple of pi) are assigned upward
        int sector = static_cast<int>(std::floor(cs.point.theta / pi)) + 1;
        rows.push_back(PolylineRow{s, z.real(), z.imag(), cs.point.theta, sector});
    }
    return rows;
}

} // namespace knots
