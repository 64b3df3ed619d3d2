#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "knots/metric.hpp"

using namespace knots;

namespace {

double herm_residual(const Eigen::MatrixXcd& A) {
    return (A - A.adjoint()).norm() / std::max(1.0, A.norm());
}

} // namespace

TEST_CASE("model construction invariants") {
    CHECK_THROWS_AS(build_model(1, 7, 0.5), ValidationError);
    CHECK_THROWS_AS(build_model(6, 7, -0.1), ValidationError);
    CHECK_THROWS_AS(build_model(6, 7, 2.5), ValidationError);

    MetricModel m = build_model(6, 42, 0.5);
    CHECK(m.dim == 6);
    CHECK(herm_residual(m.h) <= 1e-14);
    CHECK(herm_residual(m.Theta_exact) <= 1e-13);

    // Theta is positive definite
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.Theta_exact);
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    // intertwining relation H^dag Theta = Theta H
    Eigen::MatrixXcd lhs = m.H.adjoint() * m.Theta_exact;
    Eigen::MatrixXcd rhs = m.Theta_exact * m.H;
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());

    // determinism
    MetricModel m2 = build_model(6, 42, 0.5);
    CHECK((m.H - m2.H).norm() == 0.0);

    // levels are the common spectrum: sorted, distinct, near i + 1
    for (Eigen::Index i = 0; i < m.dim; ++i) {
        CHECK(m.levels(i) >= i + 1.0);
        CHECK(m.levels(i) <= i + 1.5);
    }
}

TEST_CASE("isospectrality") {
    MetricModel m = build_model(8, 3, 1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.H);
    std::vector<double> re(m.dim);
    for (Eigen::Index i = 0; i < m.dim; ++i) {
        CHECK(std::abs(es.eigenvalues()(i).imag()) <= 1e-9);
        re[i] = es.eigenvalues()(i).real();
    }
    std::sort(re.begin(), re.end());
    for (Eigen::Index i = 0; i < m.dim; ++i)
        CHECK(re[i] == doctest::Approx(m.levels(i)).epsilon(1e-9));
}

TEST_CASE("skew = 0 collapses to the Hermitian picture") {
    MetricModel m = build_model(5, 11, 0.0);
    CHECK((m.Omega - Eigen::MatrixXcd::Identity(5, 5)).norm() <= 1e-14);
    CHECK((m.H - m.h).norm() <= 1e-14);
    CHECK((m.Theta_exact - Eigen::MatrixXcd::Identity(5, 5)).norm() <= 1e-14);
}

TEST_CASE("full-rank truncation with unit weights recovers an exact metric") {
    MetricModel m = build_model(6, 9, 0.8);
    std::vector<double> ones(6, 1.0);
    TruncatedMetric t = theta_truncated(m, 6, ones);
    CHECK(t.rank == 6);
    CHECK(herm_residual(t.Theta_M) <= 1e-12);
    CHECK(t.residual <= 1e-10);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t.Theta_M);
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    CHECK_THROWS_AS(theta_truncated(m, 0, ones), ValidationError);
    CHECK_THROWS_AS(theta_truncated(m, 7, ones), ValidationError);
    std::vector<double> bad(6, 1.0);
    bad[2] = -1.0;
    CHECK_THROWS_AS(theta_truncated(m, 6, bad), ValidationError);
}

TEST_CASE("truncated metrics satisfy the relation on the kept subspace") {
    MetricModel m = build_model(8, 5, 1.0);
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> w(8);
        for (auto& x : w) x = u(gen);
        // every partial sum of dual projectors intertwines exactly
        for (int M : {2, 5, 8}) {
            TruncatedMetric t = theta_truncated(m, M, w);
            CHECK(t.residual <= 1e-10);
            CHECK(static_cast<int>(t.weights.size()) == M);
        }
    }
}

TEST_CASE("residual curve is monotone in coverage and ends exact") {
    MetricModel m = build_model(7, 21, 0.9);
    std::vector<double> ones(7, 1.0);
    auto curve = residual_curve(m, ones);
    REQUIRE(curve.size() == 7);
    for (std::size_t i = 0; i < curve.size(); ++i)
        CHECK(curve[i].first == static_cast<int>(i) + 1);
    CHECK(curve.back().second <= 1e-10);
}

TEST_CASE("three inner products agree where they should") {
    MetricModel m = build_model(6, 13, 0.7);
    std::mt19937 gen(99);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXcd a(6), b(6);
        for (int i = 0; i < 6; ++i) {
            a(i) = std::complex<double>(g(gen), g(gen));
            b(i) = std::complex<double>(g(gen), g(gen));
        }
        InnerProducts p = inner_products(m, a, b);
        // the physical product is the Theta-weighted one
        CHECK(std::abs(p.physical - p.third) <= 1e-12 * std::abs(p.third));
        // positivity on the diagonal
        InnerProducts d = inner_products(m, a, a);
        CHECK(d.third.real() > 0.0);
        CHECK(std::abs(d.third.imag()) <= 1e-12 * d.third.real());
    }

    // with skew the original product differs from the physical one
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(6);
    InnerProducts q = inner_products(m, v, v);
    CHECK(std::abs(q.original - q.physical) > 1e-6 * std::abs(q.physical));

    // without skew all three coincide
    MetricModel flat = build_model(6, 13, 0.0);
    InnerProducts f = inner_products(flat, v, v);
    CHECK(std::abs(f.original - f.physical) <= 1e-13 * std::abs(f.original));
    CHECK(std::abs(f.original - f.third) <= 1e-13 * std::abs(f.original));
}

TEST_CASE("hand-checked 2x2 case") {
    MetricModel m = build_model(2, 1, 0.3);
    // h is diagonal, so Omega-conjugation is the whole story
    Eigen::MatrixXcd back = m.Omega * m.H * m.Omega.inverse();
    CHECK((back - m.h).norm() <= 1e-12 * m.h.norm());
    CHECK((m.Theta_exact - m.Omega.adjoint() * m.Omega).norm() <= 1e-13 * m.Theta_exact.norm());
}
