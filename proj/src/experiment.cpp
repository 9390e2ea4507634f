#include <pagraph/experiment.hpp>
#include <pagraph/theory.hpp>

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace pagraph::experiment {

namespace {

// Substream name spaces: replicas take ids 0..R-1 (< 2^32); these offsets keep
// auxiliary randomness (bootstrap resamples, projection directions) disjoint.
constexpr std::uint64_t kBootstrapStreamBase = 0x100000000ULL;
constexpr std::uint64_t kProjectionStreamBase = 0x200000000ULL;
constexpr int kBootstrapResamples = 200;
constexpr int kProjectionCount = 3;

std::string fmt(const char* pattern, ...) {
    char buffer[256];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buffer, sizeof(buffer), pattern, args);
    va_end(args);
    return buffer;
}

void grow_replicas(const ExperimentConfig& config, const Eigen::VectorXd& center,
                   Eigen::MatrixXd& samples) {
    const double root_n = std::sqrt(static_cast<double>(config.n));
    std::atomic<std::uint32_t> next_replica{0};

    const auto worker = [&] {
        for (;;) {
            const std::uint32_t r = next_replica.fetch_add(1);
            if (r >= config.replicas) {
                return;
            }
            ModelParams params(config.delta, config.master_seed, r);
            auto rng = params.make_rng();
            GraphState state(params);
            grow_to(state, config.n, rng);
            const DegreeCensus census = degree_census(state, config.k_max);
            for (int k = 1; k <= config.k_max; ++k) {
                const double freq = static_cast<double>(census.at(k)) / static_cast<double>(config.n);
                samples(r, k - 1) = root_n * (freq - center(k - 1));
            }
        }
    };

    const unsigned pool = std::min<unsigned>(std::max(1u, config.workers), config.replicas);
    if (pool <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (unsigned t = 0; t < pool; ++t) {
        threads.emplace_back(worker);
    }
    for (auto& thread : threads) {
        thread.join();
    }
}

Eigen::MatrixXd bootstrap_cov_se(const Eigen::MatrixXd& samples, std::uint64_t master_seed) {
    const auto r = samples.rows();
    const auto k = samples.cols();
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, k);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(k, k);

    Eigen::MatrixXd resampled(r, k);
    for (int b = 0; b < kBootstrapResamples; ++b) {
        Xoshiro256pp rng(master_seed, kBootstrapStreamBase + static_cast<std::uint64_t>(b));
        for (Eigen::Index row = 0; row < r; ++row) {
            resampled.row(row) = samples.row(static_cast<Eigen::Index>(
                rng.below(static_cast<std::uint64_t>(r))));
        }
        const Eigen::RowVectorXd mean = resampled.colwise().mean();
        const Eigen::MatrixXd centered = resampled.rowwise() - mean;
        const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(r - 1);
        sum += cov;
        sum_sq += cov.cwiseProduct(cov);
    }
    const double b_count = kBootstrapResamples;
    const Eigen::MatrixXd mean = sum / b_count;
    const Eigen::MatrixXd variance =
        (sum_sq / b_count - mean.cwiseProduct(mean)) * (b_count / (b_count - 1.0));
    return variance.cwiseMax(0.0).cwiseSqrt();
}

} // namespace

void ExperimentConfig::validate() const {
    validate_delta(delta);
    if (replicas < 2) {
        throw std::invalid_argument("experiment requires replicas >= 2");
    }
    if (k_max < 1) {
        throw std::invalid_argument("experiment requires k_max >= 1");
    }
    if (n < static_cast<std::uint64_t>(k_max)) {
        throw std::invalid_argument("experiment requires n >= k_max");
    }
    if (static_cast<std::uint64_t>(replicas) * n > step_budget) {
        throw std::invalid_argument(fmt("experiment budget exceeded: replicas*n = %llu > %llu",
                                        static_cast<unsigned long long>(replicas) * n,
                                        static_cast<unsigned long long>(step_budget)));
    }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();

    ExperimentReport report;
    report.config = config;

    // Centering vectors and the finite-n mean shift, from the exact recursion.
    const auto nu_row = theory::mean_row(static_cast<std::int64_t>(config.n), config.k_max,
                                         config.delta);
    const double root_n = std::sqrt(static_cast<double>(config.n));
    report.center.resize(config.k_max);
    report.mean_shift.resize(config.k_max);
    for (int k = 1; k <= config.k_max; ++k) {
        const double nu_frac = nu_row[static_cast<std::size_t>(k) - 1] / static_cast<double>(config.n);
        const double limit = theory::pk(k, config.delta);
        report.center(k - 1) = (config.centering == Centering::exact_mean) ? nu_frac : limit;
        report.mean_shift(k - 1) = root_n * (nu_frac - limit);
    }

    report.samples.resize(config.replicas, config.k_max);
    grow_replicas(config, report.center, report.samples);

    report.moments = stats::empirical_moments(report.samples);
    report.sigma_theory = theory::sigma_matrix(config.k_max, config.delta);

    const bool gated = config.replicas >= 20;
    const auto add_verdict = [&](const std::string& name, bool pass, const std::string& detail) {
        report.verdicts.push_back({name, pass, gated, detail});
        if (gated && !pass) {
            report.all_pass = false;
        }
    };

    // Mean consistency: exact centering must leave no detectable bias; limit
    // centering shifts the mean by mean_shift, which is reported, not gated.
    if (config.centering == Centering::exact_mean) {
        bool pass = true;
        std::string detail;
        for (int k = 1; k <= config.k_max; ++k) {
            const double sd = std::sqrt(report.moments.cov(k - 1, k - 1));
            const double bound = 4.0 * sd / std::sqrt(static_cast<double>(config.replicas));
            const double mean = report.moments.mean(k - 1);
            if (std::abs(mean) > bound) {
                pass = false;
                detail += fmt("k=%d mean %.4g exceeds %.4g; ", k, mean, bound);
            }
        }
        add_verdict("mean_zero", pass, pass ? "all k within 4 SE of 0" : detail);
    }

    // Variance within 10% of theory, per component.
    {
        bool pass = true;
        std::string detail;
        for (int k = 1; k <= config.k_max; ++k) {
            const double ratio = report.moments.cov(k - 1, k - 1) / report.sigma_theory(k - 1, k - 1);
            detail += fmt("k=%d ratio %.4f; ", k, ratio);
            if (std::abs(ratio - 1.0) > 0.10) {
                pass = false;
            }
        }
        add_verdict("variance_ratio", pass, detail);
    }

    // Marginal KS tests and shape gates.
    if (gated) {
        bool ks_pass = true;
        bool shape_pass = true;
        std::string ks_detail;
        std::string shape_detail;
        for (int k = 1; k <= config.k_max; ++k) {
            std::vector<double> column(report.samples.col(k - 1).data(),
                                       report.samples.col(k - 1).data() + config.replicas);
            const auto ks = stats::ks_normal(column, report.sigma_theory(k - 1, k - 1));
            report.ks_per_k.push_back(ks);
            ks_detail += fmt("k=%d p=%.4f; ", k, ks.p_value);
            if (ks.p_value <= 0.01) {
                ks_pass = false;
            }
            const double skew = report.moments.skewness(k - 1);
            const double kurt = report.moments.excess_kurtosis(k - 1);
            shape_detail += fmt("k=%d skew=%.3f exk=%.3f; ", k, skew, kurt);
            if (!(std::abs(skew) < 0.2) || !(std::abs(kurt) < 0.4)) {
                shape_pass = false;
            }
        }
        add_verdict("ks_marginal", ks_pass, ks_detail);
        add_verdict("moment_shape", shape_pass, shape_detail);
    }

    // Covariance entries against theory, in bootstrap-SE units.
    if (gated) {
        report.cov_bootstrap_se = bootstrap_cov_se(report.samples, config.master_seed);
        report.cov_deviation_se.resize(config.k_max, config.k_max);
        bool pass = true;
        double worst = 0.0;
        for (int a = 0; a < config.k_max; ++a) {
            for (int b = 0; b < config.k_max; ++b) {
                const double se = report.cov_bootstrap_se(a, b);
                const double dev = std::abs(report.moments.cov(a, b) - report.sigma_theory(a, b));
                const double units = (se > 0.0) ? dev / se : 0.0;
                report.cov_deviation_se(a, b) = units;
                worst = std::max(worst, units);
                if (units > 5.0) {
                    pass = false;
                }
            }
        }
        add_verdict("covariance_se", pass, fmt("max deviation %.2f SE (gate 5)", worst));
    }

    // Joint normality probes: KS along fixed random directions.
    if (gated) {
        report.cw_weights.resize(kProjectionCount, config.k_max);
        bool pass = true;
        std::string detail;
        for (int c = 0; c < kProjectionCount; ++c) {
            Xoshiro256pp rng(config.master_seed, kProjectionStreamBase + static_cast<std::uint64_t>(c));
            Eigen::VectorXd w(config.k_max);
            for (int k = 0; k < config.k_max; ++k) {
                w(k) = rng.standard_normal();
            }
            w.normalize();
            report.cw_weights.row(c) = w.transpose();

            const Eigen::VectorXd projected = report.samples * w;
            std::vector<double> y(projected.data(), projected.data() + config.replicas);
            const double var_theory = (w.transpose() * report.sigma_theory * w).value();
            const auto ks = stats::ks_normal(y, var_theory);
            report.cw_ks.push_back(ks);
            detail += fmt("dir %d p=%.4f; ", c, ks.p_value);
            if (ks.p_value <= 0.01) {
                pass = false;
            }
        }
        add_verdict("cramer_wold", pass, detail);
    }

    return report;
}

void write_samples_csv(const ExperimentReport& report, std::ostream& out) {
    out << "replica,k,t_value\n";
    char buffer[64];
    for (Eigen::Index r = 0; r < report.samples.rows(); ++r) {
        for (Eigen::Index k = 0; k < report.samples.cols(); ++k) {
            std::snprintf(buffer, sizeof(buffer), "%.17g", report.samples(r, k));
            out << r << ',' << (k + 1) << ',' << buffer << '\n';
        }
    }
}

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
    nlohmann::json values = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        values.push_back(v(i));
    }
    return values;
}

} // namespace

void write_report_json(const ExperimentReport& report, std::ostream& out) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config"] = {
        {"delta", report.config.delta},
        {"n", report.config.n},
        {"replicas", report.config.replicas},
        {"k_max", report.config.k_max},
        {"centering", report.config.centering == Centering::exact_mean ? "exact_mean" : "limit_pk"},
        {"master_seed", report.config.master_seed},
        {"workers", report.config.workers},
    };
    j["center"] = vector_json(report.center);
    j["mean_shift"] = vector_json(report.mean_shift);
    j["moments"] = {
        {"mean", vector_json(report.moments.mean)},
        {"cov", matrix_json(report.moments.cov)},
        {"skewness", vector_json(report.moments.skewness)},
        {"excess_kurtosis", vector_json(report.moments.excess_kurtosis)},
    };
    j["sigma_theory"] = matrix_json(report.sigma_theory);

    nlohmann::json ks = nlohmann::json::array();
    for (std::size_t k = 0; k < report.ks_per_k.size(); ++k) {
        ks.push_back({{"k", k + 1},
                      {"d", report.ks_per_k[k].d_statistic},
                      {"p_value", report.ks_per_k[k].p_value}});
    }
    j["ks_marginal"] = ks;

    if (report.cov_bootstrap_se.size() > 0) {
        j["cov_bootstrap_se"] = matrix_json(report.cov_bootstrap_se);
        j["cov_deviation_se"] = matrix_json(report.cov_deviation_se);
    }
    if (report.cw_weights.size() > 0) {
        nlohmann::json cw = nlohmann::json::array();
        for (std::size_t c = 0; c < report.cw_ks.size(); ++c) {
            cw.push_back({{"weights", vector_json(report.cw_weights.row(static_cast<Eigen::Index>(c)).transpose())},
                          {"d", report.cw_ks[c].d_statistic},
                          {"p_value", report.cw_ks[c].p_value}});
        }
        j["cramer_wold"] = cw;
    }

    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& verdict : report.verdicts) {
        verdicts.push_back({{"name", verdict.name},
                            {"pass", verdict.pass},
                            {"gated", verdict.gated},
                            {"detail", verdict.detail}});
    }
    j["verdicts"] = verdicts;
    j["all_pass"] = report.all_pass;

    out << j.dump(2) << '\n';
}

} // namespace pagraph::experiment
