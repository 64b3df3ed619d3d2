#pragma once

#include <vector>

#include <Eigen/Dense>

#include "knots/errors.hpp"

namespace knots {

/// Finite-dimensional quasi-Hermitian triple: H acts in the "original" space,
/// h = Omega H Omega^{-1} is Hermitian, Theta = Omega^dagger Omega is the metric.
struct MetricModel {
    Eigen::Index dim;
    Eigen::MatrixXcd H;
    Eigen::MatrixXcd Omega;
    Eigen::MatrixXcd h;
    Eigen::MatrixXcd Theta_exact;
    Eigen::VectorXd levels; // diagonal of h, the common spectrum
};

struct TruncatedMetric {
    int rank;                    // M
    std::vector<double> weights; // s_n > 0
    Eigen::MatrixXcd Theta_M;    // Hermitian by construction
    double residual;             // ||H^dag Theta_M - Theta_M H|| / ||Theta_M H||
};

struct InnerProducts {
    std::complex<double> original; // <psi|psi'>
    std::complex<double> physical; // (Omega psi)^dag (Omega psi')
    std::complex<double> third;    // psi^dag Theta psi'
};

MetricModel build_model(int n, unsigned seed, double skew);

TruncatedMetric theta_truncated(const MetricModel& model, int M,
                                const std::vector<double>& weights);

InnerProducts inner_products(const MetricModel& model, const Eigen::VectorXcd& psi,
                             const Eigen::VectorXcd& psi_prime);

std::vector<std::pair<int, double>> residual_curve(const MetricModel& model,
                                                   const std::vector<double>& weights);

} // namespace knots
