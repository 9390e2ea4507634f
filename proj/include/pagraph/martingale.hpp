#ifndef PAGRAPH_MARTINGALE_HPP
#define PAGRAPH_MARTINGALE_HPP

#include <pagraph/model.hpp>
#include <pagraph/theory.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace pagraph::martingale {

/**
 * The degree-k martingale M_n^(k) = a_n^(k) sum_j b_j^(k) (N_n(j) - nu_n(j))
 * along one path, together with its increments d_m = M_m - M_{m-1}.
 */
struct MartingalePath {
    int k = 0;
    double delta = 0.0;
    std::int64_t start_stage = 0;     // = k
    std::vector<double> values;       // M_n for n = start_stage..n_max
    std::vector<double> increments;   // increments[m - start_stage - 1] = M_m - M_{m-1}

    std::int64_t end_stage() const {
        return start_stage + static_cast<std::int64_t>(values.size()) - 1;
    }
    double value_at(std::int64_t n) const {
        return values[static_cast<std::size_t>(n - start_stage)];
    }
};

// M_n^(k) for a single census (nu_row holds nu_n(1..>=k) at the same stage).
double martingale_value(const DegreeCensus& census, const std::vector<double>& nu_row,
                        int k, double delta);

// Build the martingale along a census series covering stages 1..n_max (the
// series must start at stage 1 and be contiguous); values start at stage k.
MartingalePath martingale_path(const std::vector<DegreeCensus>& series, int k, double delta);

// |E(M_{n+1}^(k) | state) - M_n^(k)|: the one-step martingale property,
// evaluated against the exact attachment law. Zero up to rounding.
double mg_one_step_residual(const GraphState& state, int k, double delta);

// Scaled difference array X_{n,m,j} = (M_m^(j) - M_{m-1}^(j)) / (a_n^(j) sqrt(n)),
// rows m = k+1..n, columns j = 1..k (paths must cover stage n; k = paths.size()).
Eigen::MatrixXd scaled_increment_array(const std::vector<MartingalePath>& paths, std::int64_t n);

// Convenience: simulate one path to n_max recording the census at every stage.
std::vector<DegreeCensus> simulate_census_series(const ModelParams& params,
                                                std::uint64_t n_max, int k_max);

} // namespace pagraph::martingale

#endif // PAGRAPH_MARTINGALE_HPP
