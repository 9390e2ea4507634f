#include <pagraph/theory.hpp>
#include <pagraph/model.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pagraph::theory {

namespace {

double lfact(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

} // namespace

double pk(int k, double delta) {
    validate_delta(delta);
    if (k <= 0) {
        throw std::invalid_argument("pk requires k >= 1");
    }
    // Log-space: every gamma argument is positive for delta > -1.
    return std::exp(std::log(2.0 + delta) + std::lgamma(3.0 + 2.0 * delta) - std::lgamma(1.0 + delta)
                    + std::lgamma(k + delta) - std::lgamma(k + 3.0 + 2.0 * delta));
}

double c_norm(double delta) {
    validate_delta(delta);
    return std::exp(std::log(2.0 + delta) + std::lgamma(3.0 + 2.0 * delta) - std::lgamma(1.0 + delta));
}

double sigma1_sq(double delta) {
    validate_delta(delta);
    const double p = 3.0 + 2.0 * delta;
    return (1.0 + delta) * (2.0 + delta) * (2.0 + delta) / (p * p * (4.0 + 3.0 * delta));
}

double pk_tail(int k_start, double delta) {
    validate_delta(delta);
    if (k_start < 1) {
        throw std::invalid_argument("pk_tail requires k_start >= 1");
    }
    // sum_{k >= K} p_k = c(delta) Gamma(K+delta) / ((2+delta) Gamma(K+2+2delta))
    return std::exp(std::lgamma(3.0 + 2.0 * delta) - std::lgamma(1.0 + delta)
                    + std::lgamma(k_start + delta) - std::lgamma(k_start + 2.0 + 2.0 * delta));
}

double weighted_pk_tail(int m_start, double delta) {
    validate_delta(delta);
    if (m_start < 1) {
        throw std::invalid_argument("weighted_pk_tail requires m_start >= 1");
    }
    // sum_{m >= M} (m+delta) p_m = (2+delta) Gamma(3+2delta) Gamma(M+1+delta)
    //                              / (Gamma(2+delta) Gamma(M+2+2delta))
    return std::exp(std::log(2.0 + delta) + std::lgamma(3.0 + 2.0 * delta)
                    + std::lgamma(m_start + 1.0 + delta)
                    - std::lgamma(2.0 + delta) - std::lgamma(m_start + 2.0 + 2.0 * delta));
}

double b_coef(int j, int k, double delta) {
    validate_delta(delta);
    if (j <= 0) {
        throw std::invalid_argument("b_coef requires j >= 1");
    }
    if (j > k) {
        return 0.0;
    }
    const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(std::lgamma(k + delta) - lfact(k - j) - std::lgamma(j + delta));
}

double a_coef(std::int64_t n, int k, double delta) {
    validate_delta(delta);
    if (k < 1 || n < k) {
        throw std::invalid_argument("a_coef requires n >= k >= 1");
    }
    // Closed gamma form; the arguments k + (1-k)/(2+delta) = (k(1+delta)+1)/(2+delta)
    // and its n counterpart stay positive for all delta > -1.
    const double g = (1.0 + delta) / (2.0 + delta);
    const double shift = (1.0 - k) / (2.0 + delta);
    const auto nn = static_cast<double>(n);
    return std::exp(std::lgamma(nn + g) + std::lgamma(k + shift)
                    - std::lgamma(k + g) - std::lgamma(nn + shift));
}

NormalizerSequence::NormalizerSequence(double delta_in)
    : delta(delta_in), gamma((1.0 + delta_in) / (2.0 + delta_in)) {
    validate_delta(delta_in);
}

namespace {

// One forward step of the mean recursion; nu is 1-indexed by degree.
void mean_step(std::vector<double>& nu, std::int64_t n, int k_rows, double delta) {
    const double mass = static_cast<double>(n) * (2.0 + delta) + (1.0 + delta);
    std::vector<double> next(nu.size(), 0.0);
    next[1] = (nu[1] + 1.0) * (1.0 - (1.0 + delta) / mass);
    if (k_rows >= 2) {
        next[2] = (1.0 - (2.0 + delta) / mass) * nu[2] + (1.0 + delta) / mass * (1.0 + nu[1]);
    }
    for (int k = 3; k <= k_rows; ++k) {
        next[k] = (1.0 - (k + delta) / mass) * nu[k] + (k - 1.0 + delta) / mass * nu[k - 1];
    }
    nu.swap(next);
}

} // namespace

MeanTable mean_recursion(std::int64_t n_max, int k_max, double delta) {
    validate_delta(delta);
    if (n_max < 1 || k_max < 2) {
        throw std::invalid_argument("mean_recursion requires n_max >= 1 and k_max >= 2");
    }
    const int k_rows = k_max + 1;
    std::vector<double> nu(static_cast<std::size_t>(k_rows) + 1, 0.0);
    nu[2] = 1.0;

    MeanTable table;
    table.delta = delta;
    table.k_max = k_max;
    table.n_max = n_max;
    table.values.resize(static_cast<std::size_t>(n_max) * static_cast<std::size_t>(k_max));

    for (std::int64_t n = 1; n <= n_max; ++n) {
        for (int k = 1; k <= k_max; ++k) {
            table.values[static_cast<std::size_t>(n - 1) * k_max + (k - 1)] = nu[k];
        }
        if (n < n_max) {
            mean_step(nu, n, k_rows, delta);
        }
    }
    return table;
}

std::vector<double> mean_row(std::int64_t n, int k_max, double delta) {
    validate_delta(delta);
    if (n < 1 || k_max < 1) {
        throw std::invalid_argument("mean_row requires n >= 1 and k_max >= 1");
    }
    const int k_rows = std::max(k_max, 2) + 1;
    std::vector<double> nu(static_cast<std::size_t>(k_rows) + 1, 0.0);
    nu[2] = 1.0;
    for (std::int64_t m = 1; m < n; ++m) {
        mean_step(nu, m, k_rows, delta);
    }
    return {nu.begin() + 1, nu.begin() + 1 + k_max};
}

double zero_identity_residual(int i, double delta) {
    validate_delta(delta);
    if (i < 1) {
        throw std::invalid_argument("zero_identity_residual requires i >= 1");
    }
    // Accumulate in extended precision: the terms cancel exactly and the
    // residual is meant to isolate formula errors, not rounding noise. The
    // individual terms grow rapidly with i and delta, so the residual is
    // reported relative to the largest cancelling term.
    long double acc = 0.0L;
    long double scale = 1.0L;
    for (int d = 1; d <= i - 1; ++d) {
        const long double p = static_cast<long double>(pk(d, delta));
        const long double left =
            (i - d) * static_cast<long double>(b_coef(d, i, delta));
        const long double right = (d + static_cast<long double>(delta))
                                  * static_cast<long double>(b_coef(d + 1, i, delta));
        acc += p * (left + right);
        // The two bracket components have opposite signs, so the cancellation
        // budget of the sum is the component magnitudes, not the net terms.
        scale = std::max(scale, p * (std::abs(left) + std::abs(right)));
    }
    return static_cast<double>(acc / scale);
}

double simplify_rhs(int i, double delta) {
    validate_delta(delta);
    if (i < 1) {
        throw std::invalid_argument("simplify_rhs requires i >= 1");
    }
    const double sign = ((i - 1) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(std::log(2.0 + delta) - std::lgamma(1.0 + delta) + std::lgamma(i + delta)
                           - lfact(i - 1) - std::log(i + 2.0 + 2.0 * delta));
}

double simplify_identity_residual(int i, double delta) {
    long double weighted = 0.0L;
    for (int d = 1; d <= i; ++d) {
        weighted += static_cast<long double>(b_coef(d, i, delta)) * static_cast<long double>(pk(d, delta));
    }
    const long double lhs = static_cast<long double>(b_coef(1, i, delta))
        - (i + static_cast<long double>(delta)) / (2.0L + static_cast<long double>(delta)) * weighted;
    const long double rhs = simplify_rhs(i, delta);
    const long double scale = std::max(std::fabs(static_cast<double>(lhs)), std::fabs(static_cast<double>(rhs)));
    return static_cast<double>(std::abs(lhs - rhs) / scale);
}

double ident_b_residual(int i, int j, double r, double delta) {
    validate_delta(delta);
    if (j < 1 || j > i) {
        throw std::invalid_argument("ident_b_residual requires 1 <= j <= i");
    }
    long double lhs = 0.0L;
    long double r_pow = 1.0L;
    for (int m = j; m <= i; ++m) {
        lhs += r_pow * static_cast<long double>(b_coef(m, i, delta))
             * static_cast<long double>(b_coef(j, m, delta));
        r_pow *= r;
    }
    const long double rhs = static_cast<long double>(b_coef(j, i, delta))
        * std::pow(1.0L + static_cast<long double>(r), i - j);
    const long double scale = std::max({std::abs(static_cast<double>(lhs)),
                                        std::abs(static_cast<double>(rhs)), 1.0});
    return static_cast<double>(std::abs(lhs - rhs) / scale);
}

} // namespace pagraph::theory
