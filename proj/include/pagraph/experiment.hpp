#ifndef PAGRAPH_EXPERIMENT_HPP
#define PAGRAPH_EXPERIMENT_HPP

#include <pagraph/model.hpp>
#include <pagraph/stats.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pagraph::experiment {

enum class Centering {
    exact_mean, // center at nu_n(k)/n: removes the finite-n mean bias
    limit_pk    // center at p_k: the limit statement taken literally
};

/** Full specification of a replicated growth experiment. */
struct ExperimentConfig {
    double delta = 0.0;
    std::uint64_t n = 0;
    std::uint32_t replicas = 0;
    int k_max = 1;
    Centering centering = Centering::exact_mean;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
    std::uint64_t step_budget = 4'000'000'000ULL; // guard on replicas * n

    void validate() const; // throws std::invalid_argument on bad fields
};

/** One named pass/fail check; `gated` is false when R is too small to test. */
struct Verdict {
    std::string name;
    bool pass = true;
    bool gated = true;
    std::string detail;
};

/**
 * Everything produced by one experiment: the scaled samples
 * T_n(k) = sqrt(n) (N_n(k)/n - center_k), their moments, the distributional
 * test battery against the theoretical covariance, and the verdicts.
 */
struct ExperimentReport {
    ExperimentConfig config;
    Eigen::MatrixXd samples;            // replicas x k_max
    Eigen::VectorXd center;             // center_k actually used
    Eigen::VectorXd mean_shift;         // (nu_n(k) - n p_k)/sqrt(n), reported per k
    stats::Moments moments;
    Eigen::MatrixXd sigma_theory;       // limiting covariance for k = 1..k_max
    std::vector<stats::KsResult> ks_per_k;
    Eigen::MatrixXd cov_bootstrap_se;   // bootstrap SE per covariance entry
    Eigen::MatrixXd cov_deviation_se;   // |emp - theory| / SE
    Eigen::MatrixXd cw_weights;         // 3 x k_max Cramér–Wold directions
    std::vector<stats::KsResult> cw_ks;
    std::vector<Verdict> verdicts;
    bool all_pass = true;               // conjunction over gated verdicts
};

// Grow R independent replicas (substreams 0..R-1 of the master seed), collect
// censuses, form scaled samples, and run the test battery. Deterministic for
// a fixed config, independent of the worker count.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Scaled samples as CSV (columns: replica,k,t_value).
void write_samples_csv(const ExperimentReport& report, std::ostream& out);

// Full report as JSON (schema: docs/experiment_report.schema.json).
void write_report_json(const ExperimentReport& report, std::ostream& out);

} // namespace pagraph::experiment

#endif // PAGRAPH_EXPERIMENT_HPP
