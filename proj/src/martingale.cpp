#include <pagraph/martingale.hpp>
#include <pagraph/oracle.hpp>

#include <cmath>
#include <stdexcept>

namespace pagraph::martingale {

double martingale_value(const DegreeCensus& census, const std::vector<double>& nu_row,
                        int k, double delta) {
    if (census.k_max() < k || static_cast<int>(nu_row.size()) < k) {
        throw std::invalid_argument("census/nu rows too short for martingale_value");
    }
    double sum = 0.0;
    for (int j = 1; j <= k; ++j) {
        sum += theory::b_coef(j, k, delta)
             * (static_cast<double>(census.at(j)) - nu_row[static_cast<std::size_t>(j) - 1]);
    }
    return theory::a_coef(static_cast<std::int64_t>(census.stage), k, delta) * sum;
}

MartingalePath martingale_path(const std::vector<DegreeCensus>& series, int k, double delta) {
    validate_delta(delta);
    if (k < 1) {
        throw std::invalid_argument("martingale_path requires k >= 1");
    }
    if (series.empty() || series.front().stage != 1
        || series.back().stage < static_cast<std::uint64_t>(k)) {
        throw std::invalid_argument("census series must cover stages 1..n_max with n_max >= k");
    }
    for (std::size_t idx = 0; idx < series.size(); ++idx) {
        if (series[idx].stage != idx + 1) {
            throw std::invalid_argument("census series must be contiguous from stage 1");
        }
    }

    const auto n_max = static_cast<std::int64_t>(series.size());
    const auto nu = theory::mean_recursion(n_max, std::max(k, 2), delta);

    MartingalePath path;
    path.k = k;
    path.delta = delta;
    path.start_stage = k;
    path.values.reserve(static_cast<std::size_t>(n_max - k + 1));
    for (std::int64_t n = k; n <= n_max; ++n) {
        std::vector<double> nu_row(static_cast<std::size_t>(k));
        for (int j = 1; j <= k; ++j) {
            nu_row[static_cast<std::size_t>(j) - 1] = nu.at(n, j);
        }
        path.values.push_back(martingale_value(series[static_cast<std::size_t>(n - 1)],
                                               nu_row, k, delta));
    }
    path.increments.reserve(path.values.size() - 1);
    for (std::size_t idx = 1; idx < path.values.size(); ++idx) {
        path.increments.push_back(path.values[idx] - path.values[idx - 1]);
    }
    return path;
}

double mg_one_step_residual(const GraphState& state, int k, double delta) {
    validate_delta(delta);
    const auto n = static_cast<std::int64_t>(state.n());
    if (k < 1 || n < k) {
        throw std::invalid_argument("mg_one_step_residual requires stage n >= k >= 1");
    }
    const auto nu = theory::mean_recursion(n + 1, std::max(k, 2), delta);
    const auto nu_row = [&](std::int64_t stage) {
        std::vector<double> row(static_cast<std::size_t>(k));
        for (int j = 1; j <= k; ++j) {
            row[static_cast<std::size_t>(j) - 1] = nu.at(stage, j);
        }
        return row;
    };

    const double current = martingale_value(degree_census(state, k), nu_row(n), k, delta);
    const auto next_row = nu_row(n + 1);
    const double expected = oracle::exact_cond_step(state, [&](const GraphState& next) {
        return martingale_value(degree_census(next, k), next_row, k, delta);
    });
    return std::abs(expected - current);
}

Eigen::MatrixXd scaled_increment_array(const std::vector<MartingalePath>& paths, std::int64_t n) {
    const auto k = static_cast<int>(paths.size());
    if (k < 1) {
        throw std::invalid_argument("scaled_increment_array requires at least one path");
    }
    for (int j = 1; j <= k; ++j) {
        const auto& path = paths[static_cast<std::size_t>(j) - 1];
        if (path.k != j || path.end_stage() < n) {
            throw std::invalid_argument("paths must be ordered j = 1..k and reach stage n");
        }
    }
    if (n <= k) {
        throw std::invalid_argument("scaled_increment_array requires n > k");
    }

    const double root_n = std::sqrt(static_cast<double>(n));
    Eigen::MatrixXd x(n - k, k);
    for (int j = 1; j <= k; ++j) {
        const auto& path = paths[static_cast<std::size_t>(j) - 1];
        const double scale = theory::a_coef(n, j, path.delta) * root_n;
        for (std::int64_t m = k + 1; m <= n; ++m) {
            x(m - k - 1, j - 1) = (path.value_at(m) - path.value_at(m - 1)) / scale;
        }
    }
    return x;
}

std::vector<DegreeCensus> simulate_census_series(const ModelParams& params,
                                                std::uint64_t n_max, int k_max) {
    if (n_max < 1) {
        throw std::invalid_argument("simulate_census_series requires n_max >= 1");
    }
    auto rng = params.make_rng();
    GraphState state(params);
    state.reserve(n_max);

    std::vector<DegreeCensus> series;
    series.reserve(n_max);
    series.push_back(degree_census(state, k_max));
    while (state.n() < n_max) {
        grow_step(state, rng);
        series.push_back(degree_census(state, k_max));
    }
    return series;
}

} // namespace pagraph::martingale
