// pagraph: command-line front end for the preferential-attachment census
// toolkit. Four subcommands cover the library surface:
//
//   theory      limit quantities p_k, sigma_1^2, and the covariance tables
//   simulate    one growth path, census snapshots at checkpoint stages
//   oracle      exact small-n census distribution vs. the mean recursion
//   experiment  replicated CLT experiment with the full test battery
//
// Every subcommand is deterministic given its flags; see docs/file_formats.md
// for the emitted columns and JSON schemas.

#include <pagraph/experiment.hpp>
#include <pagraph/model.hpp>
#include <pagraph/oracle.hpp>
#include <pagraph/theory.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;

unsigned default_workers() {
    if (const char* env = std::getenv("PAGRAPH_WORKERS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) {
            return static_cast<unsigned>(parsed);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Run `body` against the chosen sink: a file when --output was given,
// stdout otherwise.
template <typename Body>
void with_output(const std::string& path, Body&& body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    body(out);
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

struct CommonFlags {
    double delta = 0.0;
    std::uint64_t n = 0;
    int k_max = 0;
    std::uint64_t seed = 0;
    std::string format;
    std::string output;
};

int cmd_theory(const CommonFlags& flags) {
    pagraph::validate_delta(flags.delta);
    const auto cov = pagraph::theory::CovarianceTheory::build(flags.k_max, flags.delta);

    std::vector<double> p(static_cast<std::size_t>(flags.k_max));
    for (int k = 1; k <= flags.k_max; ++k) {
        p[static_cast<std::size_t>(k) - 1] = pagraph::theory::pk(k, flags.delta);
    }
    std::vector<double> nu;
    std::vector<double> a_row;
    if (flags.n > 0) {
        nu = pagraph::theory::mean_row(static_cast<std::int64_t>(flags.n), flags.k_max, flags.delta);
        a_row.resize(static_cast<std::size_t>(flags.k_max));
        for (int k = 1; k <= flags.k_max; ++k) {
            a_row[static_cast<std::size_t>(k) - 1] =
                pagraph::theory::a_coef(static_cast<std::int64_t>(flags.n), k, flags.delta);
        }
    }

    with_output(flags.output, [&](std::ostream& out) {
        if (flags.format == "json") {
            json j;
            j["schema_version"] = 1;
            j["delta"] = flags.delta;
            j["k_max"] = flags.k_max;
            j["gamma"] = (1.0 + flags.delta) / (2.0 + flags.delta);
            j["c_norm"] = pagraph::theory::c_norm(flags.delta);
            j["sigma1_sq"] = pagraph::theory::sigma1_sq(flags.delta);
            j["p"] = p;
            j["pk_tail"] = pagraph::theory::pk_tail(flags.k_max + 1, flags.delta);
            j["sigma"] = matrix_json(cov.sigma);
            j["r_z"] = matrix_json(cov.r_z);
            if (flags.n > 0) {
                j["n"] = flags.n;
                j["nu"] = nu;
                j["a_coef"] = a_row;
            }
            out << j.dump(2) << '\n';
        } else {
            char buffer[64];
            out << "k,p_k,sigma_kk,r_z_kk";
            if (flags.n > 0) {
                out << ",nu_n_k,a_n_k";
            }
            out << '\n';
            for (int k = 1; k <= flags.k_max; ++k) {
                out << k;
                for (const double value :
                     {p[static_cast<std::size_t>(k) - 1], cov.sigma(k - 1, k - 1), cov.r_z(k - 1, k - 1)}) {
                    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
                    out << ',' << buffer;
                }
                if (flags.n > 0) {
                    for (const double value :
                         {nu[static_cast<std::size_t>(k) - 1], a_row[static_cast<std::size_t>(k) - 1]}) {
                        std::snprintf(buffer, sizeof(buffer), "%.17g", value);
                        out << ',' << buffer;
                    }
                }
                out << '\n';
            }
        }
    });
    return 0;
}

int cmd_simulate(const CommonFlags& flags) {
    if (flags.n < 1) {
        throw std::invalid_argument("simulate requires n >= 1");
    }
    pagraph::ModelParams params(flags.delta, flags.seed, /*stream_id=*/0);
    auto rng = params.make_rng();
    pagraph::GraphState state(params);
    state.reserve(flags.n);

    // Checkpoints: powers of two up to n, plus n itself.
    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t stage = 1; stage < flags.n; stage *= 2) {
        checkpoints.push_back(stage);
    }
    checkpoints.push_back(flags.n);

    std::vector<pagraph::DegreeCensus> snapshots;
    snapshots.reserve(checkpoints.size());
    for (const std::uint64_t stage : checkpoints) {
        pagraph::grow_to(state, stage, rng);
        snapshots.push_back(pagraph::degree_census(state, flags.k_max));
    }

    with_output(flags.output, [&](std::ostream& out) {
        if (flags.format == "json") {
            json j;
            j["schema_version"] = 1;
            j["delta"] = flags.delta;
            j["n"] = flags.n;
            j["seed"] = flags.seed;
            j["k_max"] = flags.k_max;
            json list = json::array();
            for (const auto& census : snapshots) {
                list.push_back({{"stage", census.stage},
                                {"counts", census.counts},
                                {"overflow", census.overflow},
                                {"overflow_degree_mass", census.overflow_degree_mass}});
            }
            j["checkpoints"] = std::move(list);
            out << j.dump(2) << '\n';
        } else {
            // Row k = 0 carries the overflow count, so per-stage count sums
            // equal the node count n.
            out << "stage,k,count\n";
            for (const auto& census : snapshots) {
                out << census.stage << ",0," << census.overflow << '\n';
                for (int k = 1; k <= census.k_max(); ++k) {
                    out << census.stage << ',' << k << ',' << census.at(k) << '\n';
                }
            }
        }
    });
    return 0;
}

int cmd_oracle(const CommonFlags& flags, int budget) {
    const int n = static_cast<int>(flags.n);
    const auto levels = pagraph::oracle::enumerate(n, flags.delta, budget);
    const auto& dist = levels.back();

    const auto nu = pagraph::theory::mean_row(n, dist.k_max, flags.delta);
    std::vector<double> exact(static_cast<std::size_t>(dist.k_max));
    std::vector<double> residual(static_cast<std::size_t>(dist.k_max));
    double max_residual = 0.0;
    for (int k = 1; k <= dist.k_max; ++k) {
        const auto idx = static_cast<std::size_t>(k) - 1;
        exact[idx] = dist.mean_count(k);
        residual[idx] = std::abs(exact[idx] - nu[idx]);
        max_residual = std::max(max_residual, residual[idx]);
    }

    with_output(flags.output, [&](std::ostream& out) {
        if (flags.format == "json") {
            json j;
            j["schema_version"] = 1;
            j["delta"] = flags.delta;
            j["n"] = n;
            j["k_max"] = dist.k_max;
            json support = json::array();
            for (const auto& [census, probability] : dist.support) {
                support.push_back({{"census", census}, {"probability", probability}});
            }
            j["support"] = std::move(support);
            j["total_probability"] = dist.total_probability();
            json means = json::array();
            for (int k = 1; k <= dist.k_max; ++k) {
                const auto idx = static_cast<std::size_t>(k) - 1;
                means.push_back({{"k", k},
                                 {"exact", exact[idx]},
                                 {"recursion", nu[idx]},
                                 {"residual", residual[idx]}});
            }
            j["means"] = std::move(means);
            j["max_residual"] = max_residual;
            out << j.dump(2) << '\n';
        } else {
            char buffer[64];
            out << "k,exact_mean,recursion_mean,residual\n";
            for (int k = 1; k <= dist.k_max; ++k) {
                const auto idx = static_cast<std::size_t>(k) - 1;
                out << k;
                for (const double value : {exact[idx], nu[idx], residual[idx]}) {
                    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
                    out << ',' << buffer;
                }
                out << '\n';
            }
        }
    });
    std::fprintf(stderr, "oracle: stage %d, %zu census classes, max residual %.3e\n",
                 n, dist.support.size(), max_residual);
    return 0;
}

int cmd_experiment(const CommonFlags& flags, std::uint32_t replicas, unsigned workers,
                   const std::string& centering, const std::string& samples_out,
                   std::uint64_t budget) {
    pagraph::experiment::ExperimentConfig config;
    config.delta = flags.delta;
    config.n = flags.n;
    config.replicas = replicas;
    config.k_max = flags.k_max;
    config.centering = (centering == "limit_pk") ? pagraph::experiment::Centering::limit_pk
                                                 : pagraph::experiment::Centering::exact_mean;
    config.master_seed = flags.seed;
    config.workers = workers;
    if (budget > 0) {
        config.step_budget = budget;
    }

    const auto report = pagraph::experiment::run_experiment(config);

    with_output(flags.output, [&](std::ostream& out) {
        if (flags.format == "json") {
            pagraph::experiment::write_report_json(report, out);
        } else {
            pagraph::experiment::write_samples_csv(report, out);
        }
    });
    if (!samples_out.empty()) {
        std::ofstream out(samples_out);
        if (!out) {
            throw std::runtime_error("cannot open samples file: " + samples_out);
        }
        pagraph::experiment::write_samples_csv(report, out);
    }

    for (const auto& verdict : report.verdicts) {
        std::fprintf(stderr, "experiment: %-16s %s%s\n", verdict.name.c_str(),
                     verdict.pass ? "pass" : "FAIL", verdict.gated ? "" : " (not gated)");
    }
    return report.all_pass ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"preferential-attachment degree censuses: theory tables, simulation, "
                 "exact enumeration, and CLT experiments"};
    app.require_subcommand(1);

    // Each subcommand owns its flag set so the defaults stay independent.
    CommonFlags theory_flags, sim_flags, oracle_flags, exp_flags;
    std::uint32_t replicas = 0;
    unsigned workers = default_workers();
    int budget = pagraph::oracle::kDefaultBudget;
    std::uint64_t step_budget = 0;
    std::string centering = "exact_mean";
    std::string samples_out;

    const auto add_common = [](CLI::App* sub, CommonFlags& flags, const char* default_format) {
        sub->add_option("--delta", flags.delta, "affinity offset, must be > -1")->required();
        flags.format = default_format;
        sub->add_option("--format", flags.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        sub->add_option("--output", flags.output, "output path (default: stdout)");
    };

    int exit_code = 0;

    auto* theory = app.add_subcommand("theory", "limit frequencies and covariance tables");
    add_common(theory, theory_flags, "json");
    theory_flags.k_max = 8;
    theory->add_option("--k-max", theory_flags.k_max, "largest degree in the tables")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    theory->add_option("--n", theory_flags.n, "also tabulate the stage-n mean row and normalizers");
    theory->callback([&] { exit_code = cmd_theory(theory_flags); });

    auto* simulate = app.add_subcommand("simulate", "grow one path, census at checkpoints");
    add_common(simulate, sim_flags, "csv");
    sim_flags.k_max = 10;
    simulate->add_option("--n", sim_flags.n, "final stage (number of nodes)")->required();
    simulate->add_option("--seed", sim_flags.seed, "master seed")->capture_default_str();
    simulate->add_option("--k-max", sim_flags.k_max, "census width; larger degrees aggregate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->callback([&] { exit_code = cmd_simulate(sim_flags); });

    auto* oracle = app.add_subcommand("oracle", "exact census distribution at small n");
    add_common(oracle, oracle_flags, "json");
    oracle->add_option("--n", oracle_flags.n, "stage to enumerate")
        ->required()
        ->check(CLI::PositiveNumber);
    oracle->add_option("--budget", budget, "largest stage the enumerator will accept")
        ->capture_default_str();
    oracle->callback([&] { exit_code = cmd_oracle(oracle_flags, budget); });

    auto* experiment = app.add_subcommand("experiment", "replicated CLT experiment");
    add_common(experiment, exp_flags, "json");
    exp_flags.k_max = 3;
    experiment->add_option("--n", exp_flags.n, "final stage per replica")->required();
    experiment->add_option("--replicas", replicas, "number of independent replicas")->required();
    experiment->add_option("--k-max", exp_flags.k_max, "census components 1..k_max")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    experiment->add_option("--seed", exp_flags.seed, "master seed")->capture_default_str();
    experiment->add_option("--workers", workers, "worker threads (env PAGRAPH_WORKERS)")
        ->capture_default_str();
    experiment->add_option("--centering", centering, "exact_mean | limit_pk")
        ->check(CLI::IsMember({"exact_mean", "limit_pk"}))
        ->capture_default_str();
    experiment->add_option("--samples-out", samples_out, "also write the samples CSV here");
    experiment->add_option("--budget", step_budget, "override the replicas*n step budget");
    experiment->callback([&] {
        exit_code = cmd_experiment(exp_flags, replicas, workers, centering, samples_out, step_budget);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
