#ifndef PAGRAPH_STATS_HPP
#define PAGRAPH_STATS_HPP

#include <Eigen/Dense>

#include <vector>

namespace pagraph::stats {

/** Empirical moments of a sample matrix (rows = replicas, columns = components). */
struct Moments {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;              // unbiased (divisor R-1)
    Eigen::VectorXd skewness;         // NaN where the component is constant
    Eigen::VectorXd excess_kurtosis;  // NaN where the component is constant
};

Moments empirical_moments(const Eigen::MatrixXd& samples);

/** One-sample Kolmogorov–Smirnov outcome. */
struct KsResult {
    double d_statistic = 0.0;
    double p_value = 0.0;
};

// Standard normal CDF.
double normal_cdf(double z);

// Survival function of the Kolmogorov distribution, Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);

// One-sample KS test of `samples` against N(0, sigma_sq); the p-value uses the
// asymptotic Kolmogorov distribution with the Stephens small-sample correction
// lambda = (sqrt(R) + 0.12 + 0.11/sqrt(R)) * D. Requires sigma_sq > 0, R >= 20.
KsResult ks_normal(const std::vector<double>& samples, double sigma_sq);

} // namespace pagraph::stats

#endif // PAGRAPH_STATS_HPP
