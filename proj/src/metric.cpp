#include "knots/metric.hpp"

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace knots {

namespace {

// Biorthogonally normalized eigenvectors of H^dagger, ordered by the real part
// of the spectrum: Psi_k = k-th column of (P^{-1})^dagger where H = P D P^{-1}.
Eigen::MatrixXcd dual_eigenbasis(const MetricModel& model) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(model.H);
    if (es.info() != Eigen::Success) throw DegeneracyError("eigensolver failed on H");

    const Eigen::Index n = model.dim;
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return es.eigenvalues()(a).real() < es.eigenvalues()(b).real();
    });

    Eigen::MatrixXcd P(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        P.col(i) = es.eigenvectors().col(order[static_cast<size_t>(i)]);

    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double gap = std::abs(es.eigenvalues()(order[static_cast<size_t>(i + 1)]) -
                                    es.eigenvalues()(order[static_cast<size_t>(i)]));
        if (gap < 1e-8) throw DegeneracyError("H has a (near-)degenerate eigenvalue pair");
    }
    return P.inverse().adjoint(); // columns are the Psi_k
}

} // namespace

MetricModel build_model(int n, unsigned seed, double skew) {
    if (n < 2) throw ValidationError("model dimension must be >= 2");
    if (skew < 0.0 || skew > 2.0) throw ValidationError("skew must lie in [0, 2]");

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 0.5);
    std::normal_distribution<double> gauss(0.0, 1.0);

    MetricModel m{};
    m.dim = n;
    m.levels = Eigen::VectorXd(n);
    for (int i = 0; i < n; ++i) m.levels(i) = static_cast<double>(i + 1) + jitter(rng);
    m.h = m.levels.cast<std::complex<double>>().asDiagonal();

    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    if (skew > 0.0)
        A *= skew / A.norm();
    else
        A.setZero();

    m.Omega = A.exp();
    m.H = m.Omega.inverse() * m.h * m.Omega;
    m.Theta_exact = m.Omega.adjoint() * m.Omega;
    return m;
}

TruncatedMetric theta_truncated(const MetricModel& model, int M,
                                const std::vector<double>& weights) {
    if (M < 1 || M > model.dim) throw ValidationError("truncation rank M must lie in [1, n]");
    if (static_cast<int>(weights.size()) < M)
        throw ValidationError("need at least M weights");
    for (int k = 0; k < M; ++k)
        if (!(weights[static_cast<size_t>(k)] > 0.0))
            throw ValidationError("weights must all be positive");

    const Eigen::MatrixXcd Psi = dual_eigenbasis(model);
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(model.dim, model.dim);
    for (int k = 0; k < M; ++k)
        T += weights[static_cast<size_t>(k)] * Psi.col(k) * Psi.col(k).adjoint();
    T = 0.5 * (T + T.adjoint().eval()); // exact Hermiticity

    TruncatedMetric out{};
    out.rank = M;
    out.weights.assign(weights.begin(), weights.begin() + M);
    out.Theta_M = T;
    const Eigen::MatrixXcd defect = model.H.adjoint() * T - T * model.H;
    out.residual = defect.norm() / (T * model.H).norm();
    return out;
}

InnerProducts inner_products(const MetricModel& model, const Eigen::VectorXcd& psi,
                             const Eigen::VectorXcd& psi_prime) {
    if (psi.size() != model.dim || psi_prime.size() != model.dim)
        throw ValidationError("vector length does not match the model dimension");
    InnerProducts p{};
    p.original = psi.dot(psi_prime); // Eigen::dot conjugates the left argument
    p.physical = (model.Omega * psi).dot(model.Omega * psi_prime);
    p.third = psi.dot(model.Theta_exact * psi_prime);
    return p;
}

std::vector<std::pair<int, double>> residual_curve(const MetricModel& model,
                                                   const std::vector<double>& weights) {
    std::vector<std::pair<int, double>> curve;
    curve.reserve(static_cast<size_t>(model.dim));
    for (int M = 1; M <= model.dim; ++M)
        curve.emplace_back(M, theta_truncated(model, M, weights).residual);
    return curve;
}

} // namespace knots
