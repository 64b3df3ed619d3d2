#include <doctest.h>

#include <cmath>

#include "knots/shoot.hpp"

using namespace knots;

namespace {

const Complex I(0.0, 1.0);

State basis_state(double nu, double kappa, const SurfacePoint& endpoint, bool physical) {
    const PrincipalDecomposition pd = to_principal(SurfacePoint{kappa * endpoint.rho, endpoint.theta});
    const HankelPair hp = hankel_pair_principal(nu, pd.principal);
    const Complex h = physical ? hp.h2 : hp.h1;
    const Complex dh = physical ? hp.dh2 : hp.dh1;
    const Complex root = surface_power(endpoint, 0.5);
    return State{root * h, 0.5 / root * h + root * kappa * dh};
}

} // namespace

TEST_CASE("rhs basics") {
    SurfacePoint p{1.0, 0.0};
    // zero state maps to zero derivative
    State d0 = rhs(1.0, 1.0, p, State{0.0, 0.0}, Complex(1.0, 0.25));
    CHECK(std::abs(d0.psi) == 0.0);
    CHECK(std::abs(d0.dpsi) == 0.0);

    // ell = 1, xi = 1, kappa = 1: psi'' = (2 - 1) psi = psi
    Complex v(0.3, -0.1);
    State d1 = rhs(1.0, 1.0, p, State{1.0, 0.0}, v);
    CHECK(std::abs(d1.dpsi - v) < 1e-15);

    // centrifugal term off: psi'' = -kappa^2 psi
    State d2 = rhs(0.0, 2.0, p, State{1.0, 0.0}, Complex(1.0, 0.0));
    CHECK(std::abs(d2.dpsi + 4.0) < 1e-15);
}

TEST_CASE("initial state") {
    Contour c = default_contour(1);
    double span = shooting_span(c, 1.0);

    State a = initial_state(0.5, 1.0, c, -span);
    CHECK(std::abs(a.psi) > 0.0);

    // linearity is trivially a property of the construction; check the closed
    // form instead: psi = sqrt(xi) H2_{1/2}(kappa xi) = i sqrt(2/(pi kappa)) e^{-i kappa xi}
    SurfacePoint p = sample(c, -span).point;
    Complex xi = p.principal();
    Complex expected = I * std::sqrt(2.0 / (pi * 1.0)) * std::exp(-I * xi);
    // sqrt branch: theta in (-pi, -pi/2), surface and principal roots agree
    CHECK(std::abs(a.psi - expected) <= 1e-9 * std::abs(expected));

    CHECK_THROWS_AS(initial_state(0.5, 1.0, c, span), SectorError);       // wrong sector
    CHECK_THROWS_AS(initial_state(0.5, 1.0, c, -c.junction), ValidationError); // too close in
}

TEST_CASE("N=0 run reproduces the closed form at the far end") {
    Contour c = default_contour(0);
    double span = shooting_span(c, 1.0);
    IntegrationResult run = integrate(0.5, 1.0, c, -span, span, 1e-12);
    CHECK(run.wronskian_drift <= 1e-7);

    State expected = basis_state(0.5, 1.0, sample(c, span).point, true);
    Complex got = run.final_a.psi * std::exp(run.scale_log);
    CHECK(std::abs(got - expected.psi) <= 1e-6 * std::abs(expected.psi));
}

TEST_CASE("decomposition round trips") {
    Contour c = default_contour(1);
    double span = shooting_span(c, 1.0);
    SurfacePoint endpoint = sample(c, span).point;

    State pure = basis_state(0.6, 1.0, endpoint, true);
    Decomposition d = decompose(pure, 0.6, 1.0, endpoint);
    CHECK(std::abs(d.c_physical - 1.0) <= 1e-10);
    CHECK(d.contribution_ratio <= 1e-10);

    State grow = basis_state(0.6, 1.0, endpoint, false);
    State mix{2.0 * grow.psi + 3.0 * I * pure.psi, 2.0 * grow.dpsi + 3.0 * I * pure.dpsi};
    Decomposition dm = decompose(mix, 0.6, 1.0, endpoint);
    CHECK(std::abs(dm.c_unphysical - 2.0) <= 1e-10 * 2.0);
    CHECK(std::abs(dm.c_physical - 3.0 * I) <= 1e-10 * 3.0);

    CHECK_THROWS_AS(decompose(pure, 0.6, 1.0, SurfacePoint{1.0, 0.0}), ValidationError);
}

TEST_CASE("admissible and rejected orders, kappa independence") {
    Contour c = default_contour(1);
    for (double kappa : {0.5, 1.0, 2.0}) {
        ShootResult good = verify_admissibility(0.5, 1, kappa, c);
        CHECK(good.ratio <= 1e-6);
        CHECK(good.admissible());
        CHECK(good.wronskian_drift <= 1e-7);

        ShootResult bad = verify_admissibility(0.6, 1, kappa, c);
        CHECK(bad.ratio >= 1e2);
        CHECK(bad.classification == Admissibility::Rejected);
        CHECK(bad.wronskian_drift <= 1e-7);
    }
    ShootResult g32 = verify_admissibility(1.5, 1, 1.0, c);
    CHECK(g32.admissible());
}

TEST_CASE("integer orders are rejected by the shooting verdict") {
    Contour c = default_contour(1);
    ShootResult r = verify_admissibility(1.0, 1, 1.0, c);
    CHECK(r.classification == Admissibility::Rejected);
}

TEST_CASE("coefficient ratio matches the winding-matrix oracle") {
    for (int N : {1, 2}) {
        Contour c = default_contour(N);
        for (double nu : {0.6, 0.75, 1.3}) {
            ShootResult r = verify_admissibility(nu, N, 1.0, c);
            WindingMatrix w = winding_matrix(nu, 2 * N);
            Complex predicted = w.a21 / w.a22;
            CHECK(std::abs(r.coeff_ratio - predicted) <= 1e-4 * std::abs(predicted) + 1e-8);
        }
    }
}

TEST_CASE("linearity and rescaling") {
    Contour c = default_contour(1);
    double span = shooting_span(c, 1.0);
    State a0 = initial_state(0.6, 1.0, c, -span);
    State b0 = companion_initial_state(0.6, 1.0, c, -span);

    ShootOptions opts;
    opts.rescale_threshold = 1e6; // force the rescaling path
    State a_big{a0.psi * 1e80, a0.dpsi * 1e80};
    IntegrationResult scaled_run =
        integrate(0.6, 1.0, c, -span, span, 1e-12, a_big, b0, opts);
    IntegrationResult plain_run = integrate(0.6, 1.0, c, -span, span, 1e-12, a0, b0);
    CHECK(scaled_run.scale_log > 0.0);

    SurfacePoint endpoint = sample(c, span).point;
    Decomposition ds = decompose(scaled_run.final_a, 0.6, 1.0, endpoint);
    Decomposition dp = decompose(plain_run.final_a, 0.6, 1.0, endpoint);
    // contribution ratio is scale free
    CHECK(ds.contribution_ratio == doctest::Approx(dp.contribution_ratio).epsilon(1e-6));
    // coefficients recover the 1e80 factor through the scale log
    double recovered = std::log(std::abs(ds.c_physical)) + scaled_run.scale_log;
    double reference = std::log(std::abs(dp.c_physical)) + plain_run.scale_log;
    CHECK(recovered - reference == doctest::Approx(80.0 * std::log(10.0)).epsilon(1e-6));
}

TEST_CASE("norm on the contour") {
    std::vector<TrajectoryPoint> zeros{{-1.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
    Contour c = default_contour(1);
    CHECK(norm_on_contour(zeros, c) == 0.0);

    // admissible order: the norm saturates as the endpoints extend
    double span = shooting_span(c, 1.0);
    auto short_run = integrate(0.5, 1.0, c, -span, span, 1e-10);
    auto long_run = integrate(0.5, 1.0, c, -span - 4.0, span + 4.0, 1e-10);
    double n_short = norm_on_contour(short_run.trajectory, c);
    double n_long = norm_on_contour(long_run.trajectory, c);
    CHECK(n_long == doctest::Approx(n_short).epsilon(0.01));

    // rejected order: the growing component dominates and the norm diverges
    auto bad_short = integrate(0.6, 1.0, c, -span, span, 1e-10);
    auto bad_long = integrate(0.6, 1.0, c, -span - 4.0, span + 4.0, 1e-10);
    CHECK(norm_on_contour(bad_long.trajectory, c) >
          5.0 * norm_on_contour(bad_short.trajectory, c));
}

TEST_CASE("integration preconditions") {
    Contour c = default_contour(1);
    State s{1.0, 0.0};
    CHECK_THROWS_AS(integrate(0.5, 1.0, c, 1.0, -1.0, 1e-12, s, State{0.0, 1.0}),
                    ValidationError);
    CHECK_THROWS_AS(integrate(0.5, 1.0, c, -1.0, 1.0, 1e-3, s, State{0.0, 1.0}),
                    ValidationError);
    CHECK_THROWS_AS(integrate(0.5, 1.0, c, -1.0, 1.0, 1e-12, s, State{2.0, 0.0}),
                    ValidationError); // dependent launches
}
