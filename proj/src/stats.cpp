#include <pagraph/stats.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pagraph::stats {

Moments empirical_moments(const Eigen::MatrixXd& samples) {
    const auto r = samples.rows();
    const auto k = samples.cols();
    if (r < 2) {
        throw std::invalid_argument("empirical_moments requires at least 2 samples");
    }

    Moments m;
    m.mean = samples.colwise().mean();
    const Eigen::MatrixXd centered = samples.rowwise() - m.mean.transpose();
    m.cov = centered.transpose() * centered / static_cast<double>(r - 1);

    m.skewness.resize(k);
    m.excess_kurtosis.resize(k);
    for (Eigen::Index c = 0; c < k; ++c) {
        const double var = centered.col(c).squaredNorm() / static_cast<double>(r);
        if (var <= 0.0) {
            m.skewness(c) = std::numeric_limits<double>::quiet_NaN();
            m.excess_kurtosis(c) = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        const double sd = std::sqrt(var);
        const double m3 = centered.col(c).array().cube().mean();
        const double m4 = centered.col(c).array().pow(4).mean();
        m.skewness(c) = m3 / (sd * sd * sd);
        m.excess_kurtosis(c) = m4 / (var * var) - 3.0;
    }
    return m;
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) {
        return 1.0;
    }
    constexpr double pi = 3.14159265358979323846;
    if (lambda < 1.18) {
        // Theta-function form, rapidly convergent for small lambda.
        const double t = std::exp(-pi * pi / (8.0 * lambda * lambda));
        const double cdf = std::sqrt(2.0 * pi) / lambda
            * (t + std::pow(t, 9) + std::pow(t, 25) + std::pow(t, 49));
        return 1.0 - cdf;
    }
    // Alternating series, rapidly convergent for large lambda.
    double q = 0.0;
    for (int j = 1; j <= 8; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        q += (j % 2 == 1) ? 2.0 * term : -2.0 * term;
        if (term < 1e-18) {
            break;
        }
    }
    return std::clamp(q, 0.0, 1.0);
}

KsResult ks_normal(const std::vector<double>& samples, double sigma_sq) {
    if (sigma_sq <= 0.0) {
        throw std::invalid_argument("ks_normal requires sigma_sq > 0");
    }
    if (samples.size() < 20) {
        throw std::invalid_argument("ks_normal requires at least 20 samples");
    }

    std::vector<double> z(samples);
    const double sd = std::sqrt(sigma_sq);
    for (double& value : z) {
        value /= sd;
    }
    std::sort(z.begin(), z.end());

    const auto r = static_cast<double>(z.size());
    double d = 0.0;
    for (std::size_t idx = 0; idx < z.size(); ++idx) {
        const double cdf = normal_cdf(z[idx]);
        const double upper = static_cast<double>(idx + 1) / r - cdf;
        const double lower = cdf - static_cast<double>(idx) / r;
        d = std::max({d, upper, lower});
    }

    const double root_r = std::sqrt(r);
    const double lambda = (root_r + 0.12 + 0.11 / root_r) * d;
    return {d, kolmogorov_q(lambda)};
}

} // namespace pagraph::stats
