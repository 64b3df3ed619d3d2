#include "knots/shoot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace knots {

namespace {

using Vec4 = std::array<Complex, 4>;

Vec4 ode_rhs(double coef, double kappa, const Contour& c, double s, const Vec4& y) {
    const ContourSample cs = sample(c, s);
    const Complex xi = cs.point.principal();
    const Complex q = cs.velocity * (coef / (xi * xi) - kappa * kappa);
    return Vec4{cs.velocity * y[1], q * y[0], cs.velocity * y[3], q * y[2]};
}

double pair_scale(const Vec4& y, int launch) {
    return std::abs(y[2 * launch]) + std::abs(y[2 * launch + 1]);
}

State boundary_state(double nu, double kappa, const Contour& c, double s_start, bool physical) {
    const ContourSample cs = sample(c, s_start);
    if (sector_of(cs.point).k != 0)
        throw SectorError("shooting must start inside sector S_0");
    const SurfacePoint z{kappa * cs.point.rho, cs.point.theta};
    if (z.rho < 10.0)
        throw ValidationError("start point too close to the origin: kappa * rho < 10");
    const HankelPair hp = hankel_pair_principal(nu, z);
    const Complex h = physical ? hp.h2 : hp.h1;
    const Complex dh = physical ? hp.dh2 : hp.dh1;
    const Complex root = surface_power(cs.point, 0.5);
    return State{root * h, 0.5 / root * h + root * kappa * dh};
}

double wrapped_angle(const Complex& a, const Complex& b) {
    double d = std::arg(a) - std::arg(b);
    while (d > pi) d -= 2.0 * pi;
    while (d < -pi) d += 2.0 * pi;
    return std::abs(d);
}

} // namespace

State rhs(double ell, double kappa, const SurfacePoint& point, const State& state,
          Complex velocity) {
    if (point.rho <= 0.0) throw BranchPointError();
    const Complex xi = point.principal();
    const Complex coef = ell * (ell + 1.0) / (xi * xi) - kappa * kappa;
    return State{velocity * state.dpsi, velocity * coef * state.psi};
}

State initial_state(double nu, double kappa, const Contour& c, double s_start) {
    return boundary_state(nu, kappa, c, s_start, true);
}

State companion_initial_state(double nu, double kappa, const Contour& c, double s_start) {
    return boundary_state(nu, kappa, c, s_start, false);
}

IntegrationResult integrate(double nu, double kappa, const Contour& c, double s_start,
                            double s_end, double tol, const State& a0, const State& b0,
                            const ShootOptions& opts) {
    if (!(s_start < s_end)) throw ValidationError("s_start must be < s_end");
    if (!(tol >= 1e-12 && tol <= 1e-6)) throw ValidationError("tol must lie in [1e-12, 1e-6]");

    // Dormand-Prince 5(4)
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double coef = nu * nu - 0.25; // ell (ell + 1)
    Vec4 y{a0.psi, a0.dpsi, b0.psi, b0.dpsi};
    double s = s_start;
    double h = std::min(1e-3, (s_end - s_start) / 16.0);
    double scale_log = 0.0;

    IntegrationResult res{};
    res.trajectory.push_back(TrajectoryPoint{s, y[0], y[1], scale_log});

    const Complex w0 = y[0] * y[3] - y[2] * y[1];
    if (std::abs(w0) == 0.0) throw ValidationError("launch pair is linearly dependent");
    const double w0_log = std::log(std::abs(w0)) + 2.0 * scale_log;
    double drift = 0.0;

    Vec4 k1 = ode_rhs(coef, kappa, c, s, y);
    while (s < s_end) {
        h = std::min(h, s_end - s);
        Vec4 t, k2, k3, k4, k5, k6, k7, ynew;
        auto stage = [&](double cc, auto... terms) {
            for (int i = 0; i < 4; ++i) {
                Complex acc = 0.0;
                ((acc += terms.first * terms.second[i]), ...);
                t[i] = y[i] + h * acc;
            }
            return ode_rhs(coef, kappa, c, s + cc * h, t);
        };
        k2 = stage(c2, std::pair{a21, k1});
        k3 = stage(c3, std::pair{a31, k1}, std::pair{a32, k2});
        k4 = stage(c4, std::pair{a41, k1}, std::pair{a42, k2}, std::pair{a43, k3});
        k5 = stage(c5, std::pair{a51, k1}, std::pair{a52, k2}, std::pair{a53, k3},
                   std::pair{a54, k4});
        k6 = stage(1.0, std::pair{a61, k1}, std::pair{a62, k2}, std::pair{a63, k3},
                   std::pair{a64, k4}, std::pair{a65, k5});
        for (int i = 0; i < 4; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = ode_rhs(coef, kappa, c, s + h, ynew);

        double err = 0.0;
        for (int launch = 0; launch < 2; ++launch) {
            // error per unit step: keeps the accumulated global error near tol
            // over the whole span instead of tol per step; the lower clamp stops
            // the bound from dropping under the roundoff floor of one step
            const double h_eff =
                std::clamp(h, 20.0 * std::numeric_limits<double>::epsilon() / tol, 1.0);
            const double sc = tol * h_eff *
                              (std::max(pair_scale(y, launch), pair_scale(ynew, launch)) + 1e-290);
            for (int j = 0; j < 2; ++j) {
                const int i = 2 * launch + j;
                const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                       e6 * k6[i] + e7 * k7[i]);
                err = std::max(err, std::abs(e) / sc);
            }
        }

        if (err <= 1.0) {
            s += h;
            y = ynew;
            k1 = k7; // FSAL
            ++res.steps;

            double m = 0.0;
            for (const Complex& v : y) m = std::max(m, std::abs(v));
            if (m > opts.rescale_threshold) {
                for (Complex& v : y) v /= m;
                for (Complex& v : k1) v /= m;
                scale_log += std::log(m);
            }

            const Complex w = y[0] * y[3] - y[2] * y[1];
            if (std::abs(w) > 0.0) {
                const double mag = std::abs(std::log(std::abs(w)) + 2.0 * scale_log - w0_log);
                drift = std::max(drift, mag + wrapped_angle(w, w0));
            }
            res.trajectory.push_back(TrajectoryPoint{s, y[0], y[1], scale_log});
        }

        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (h < opts.min_step && s < s_end) throw StiffnessError(s);
    }

    res.final_a = State{y[0], y[1]};
    res.final_b = State{y[2], y[3]};
    res.scale_log = scale_log;
    res.wronskian_drift = drift;
    return res;
}

IntegrationResult integrate(double nu, double kappa, const Contour& c, double s_start,
                            double s_end, double tol) {
    return integrate(nu, kappa, c, s_start, s_end, tol,
                     initial_state(nu, kappa, c, s_start),
                     companion_initial_state(nu, kappa, c, s_start));
}

Decomposition decompose(const State& final_state, double nu, double kappa,
                        const SurfacePoint& endpoint) {
    const SurfacePoint z{kappa * endpoint.rho, endpoint.theta};
    if (z.rho < 10.0)
        throw ValidationError("decomposition endpoint requires kappa * rho >= 10");

    const PrincipalDecomposition pd = to_principal(z);
    const HankelPair hp = hankel_pair_principal(nu, pd.principal);
    const Complex root = surface_power(endpoint, 0.5);
    const Complex droot = 0.5 / root;

    Eigen::Matrix2cd basis;
    basis(0, 0) = root * hp.h1;
    basis(0, 1) = root * hp.h2;
    basis(1, 0) = droot * hp.h1 + root * kappa * hp.dh1;
    basis(1, 1) = droot * hp.h2 + root * kappa * hp.dh2;

    // column-normalized solve; the Wronskian -4i/pi keeps this well conditioned
    const double n1 = basis.col(0).norm();
    const double n2 = basis.col(1).norm();
    Eigen::Matrix2cd scaled_basis = basis;
    scaled_basis.col(0) /= n1;
    scaled_basis.col(1) /= n2;
    if (std::abs(scaled_basis.determinant()) < 1e-12)
        throw DecompositionError("endpoint basis is numerically degenerate");

    Eigen::Vector2cd rhs_vec(final_state.psi, final_state.dpsi);
    Eigen::Vector2cd coeffs = scaled_basis.partialPivLu().solve(rhs_vec);
    coeffs(0) /= n1;
    coeffs(1) /= n2;

    Decomposition d{};
    d.c_unphysical = coeffs(0);
    d.c_physical = coeffs(1);
    d.weight_unphysical = std::abs(basis(0, 0));
    d.weight_physical = std::abs(basis(0, 1));
    d.contribution_ratio = std::abs(d.c_unphysical) * d.weight_unphysical /
                           (std::abs(d.c_physical) * d.weight_physical);
    return d;
}

double shooting_span(const Contour& c, double kappa, const ShootOptions& opts) {
    if (kappa <= 0.0) throw ValidationError("kappa must be > 0");
    const double reach = std::max(10.5 / (kappa * c.speed), opts.b_target / (kappa * c.tilt));
    return c.middle_half + reach;
}

ShootResult verify_admissibility(double nu, int N, double kappa, const Contour& c,
                                 const ShootOptions& opts) {
    if (c.winding != N)
        throw ValidationError("contour winding does not match requested N");
    const double span = shooting_span(c, kappa, opts);
    IntegrationResult run = integrate(nu, kappa, c, -span, span, opts.tol,
                                      initial_state(nu, kappa, c, -span),
                                      companion_initial_state(nu, kappa, c, -span));

    const SurfacePoint endpoint = sample(c, span).point;
    Decomposition d = decompose(run.final_a, nu, kappa, endpoint);

    ShootResult out{};
    out.nu = nu;
    out.kappa = kappa;
    out.winding = N;
    const double descale = std::exp(std::min(run.scale_log, 700.0));
    out.c_physical = d.c_physical * descale;
    out.c_unphysical = d.c_unphysical * descale;
    out.ratio = d.contribution_ratio;
    out.coeff_ratio = d.c_unphysical / d.c_physical;
    out.wronskian_drift = run.wronskian_drift;
    if (out.ratio <= opts.admit_threshold)
        out.classification = Admissibility::Admissible;
    else if (out.ratio >= opts.reject_threshold)
        out.classification = Admissibility::Rejected;
    else
        out.classification = Admissibility::Indeterminate;
    return out;
}

double norm_on_contour(const std::vector<TrajectoryPoint>& trajectory, const Contour& c) {
    if (trajectory.size() < 2) return 0.0;
    const double base = trajectory.front().scale_log;
    double acc = 0.0;
    double prev_f = 0.0, prev_s = trajectory.front().s;
    bool first = true;
    for (const TrajectoryPoint& p : trajectory) {
        const double amp = std::abs(p.psi) * std::exp(p.scale_log - base);
        const double f = amp * amp * std::abs(sample(c, p.s).velocity);
        if (!first) acc += 0.5 * (f + prev_f) * (p.s - prev_s);
        prev_f = f;
        prev_s = p.s;
        first = false;
    }
    return acc * std::exp(2.0 * base);
}

} // namespace knots
