#include <pagraph/oracle.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace pagraph::oracle {

namespace {

// Sorted degree multiset -> probability; the census is a sufficient statistic
// for the dynamics, so merging by multiset is exact.
using Level = std::map<std::vector<std::uint32_t>, double>;

Level initial_level() {
    return {{{2}, 1.0}};
}

Level expand(const Level& level, std::uint64_t n, double delta) {
    const double mass = static_cast<double>(n) * (2.0 + delta) + (1.0 + delta);
    Level next;
    for (const auto& [degrees, probability] : level) {
        // Attach to one node of each distinct degree value; the multiset has
        // count(d) interchangeable choices.
        for (std::size_t pos = 0; pos < degrees.size(); ++pos) {
            if (pos > 0 && degrees[pos] == degrees[pos - 1]) {
                continue; // same degree value already expanded
            }
            const auto count = static_cast<double>(
                std::count(degrees.begin(), degrees.end(), degrees[pos]));
            const double p_attach = probability * count * (degrees[pos] + delta) / mass;

            std::vector<std::uint32_t> child = degrees;
            child[pos] += 1;
            child.push_back(1);
            std::sort(child.begin(), child.end());
            next[child] += p_attach;
        }
        // Self-loop: the newcomer arrives with degree 2.
        std::vector<std::uint32_t> child = degrees;
        child.push_back(2);
        std::sort(child.begin(), child.end());
        next[child] += probability * (1.0 + delta) / mass;
    }
    return next;
}

void check_budget(int n_max, int budget) {
    if (n_max < 1) {
        throw std::invalid_argument("enumerate requires n_max >= 1");
    }
    if (n_max > budget) {
        throw std::invalid_argument("enumeration budget exceeded: n_max = "
                                    + std::to_string(n_max) + " > budget = "
                                    + std::to_string(budget));
    }
}

ExactDistribution to_distribution(const Level& level, std::uint64_t stage) {
    ExactDistribution dist;
    dist.stage = stage;
    dist.k_max = static_cast<int>(stage) + 1; // max reachable degree is n+1
    for (const auto& [degrees, probability] : level) {
        std::vector<std::uint64_t> census(static_cast<std::size_t>(dist.k_max), 0);
        for (std::uint32_t d : degrees) {
            census[d - 1] += 1;
        }
        dist.support.emplace_back(std::move(census), probability);
    }
    return dist;
}

} // namespace

double ExactDistribution::total_probability() const {
    double sum = 0.0;
    for (const auto& [census, probability] : support) {
        sum += probability;
    }
    return sum;
}

double ExactDistribution::mean_count(int k) const {
    if (k < 1 || k > k_max) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& [census, probability] : support) {
        sum += static_cast<double>(census[static_cast<std::size_t>(k) - 1]) * probability;
    }
    return sum;
}

std::vector<ExactDistribution> enumerate(int n_max, double delta, int budget) {
    validate_delta(delta);
    check_budget(n_max, budget);

    std::vector<ExactDistribution> stages;
    stages.reserve(static_cast<std::size_t>(n_max));
    Level level = initial_level();
    stages.push_back(to_distribution(level, 1));
    for (int n = 1; n < n_max; ++n) {
        level = expand(level, static_cast<std::uint64_t>(n), delta);
        stages.push_back(to_distribution(level, static_cast<std::uint64_t>(n) + 1));
    }
    return stages;
}

std::vector<WeightedState> enumerate_states(int n, double delta, int budget) {
    validate_delta(delta);
    check_budget(n, budget);

    Level level = initial_level();
    for (int m = 1; m < n; ++m) {
        level = expand(level, static_cast<std::uint64_t>(m), delta);
    }
    std::vector<WeightedState> states;
    states.reserve(level.size());
    for (const auto& [degrees, probability] : level) {
        states.push_back({GraphState::from_degrees(delta, degrees), probability});
    }
    return states;
}

double exact_mean(int n, int k, double delta) {
    const auto stages = enumerate(n, delta);
    return stages.back().mean_count(k);
}

double exact_cov(int n, int i, int j, double delta) {
    const auto stages = enumerate(n, delta);
    const auto& dist = stages.back();
    const auto count = [&](const std::vector<std::uint64_t>& census, int k) {
        return (k >= 1 && k <= dist.k_max)
            ? static_cast<double>(census[static_cast<std::size_t>(k) - 1]) : 0.0;
    };
    double mean_i = 0.0;
    double mean_j = 0.0;
    double cross = 0.0;
    for (const auto& [census, probability] : dist.support) {
        mean_i += count(census, i) * probability;
        mean_j += count(census, j) * probability;
        cross += count(census, i) * count(census, j) * probability;
    }
    return cross - mean_i * mean_j;
}

double exact_cond_step(const GraphState& state,
                       const std::function<double(const GraphState&)>& functional) {
    const double delta = state.delta();
    const double mass = state.attachment_mass();
    const auto n = state.n();

    double expectation = 0.0;
    for (std::uint32_t v = 1; v <= n; ++v) {
        std::vector<std::uint32_t> degrees = state.degrees();
        degrees[v - 1] += 1;
        degrees.push_back(1);
        const GraphState next = GraphState::from_degrees(delta, degrees);
        expectation += (state.degree(v) + delta) / mass * functional(next);
    }
    std::vector<std::uint32_t> degrees = state.degrees();
    degrees.push_back(2);
    const GraphState next = GraphState::from_degrees(delta, degrees);
    expectation += (1.0 + delta) / mass * functional(next);
    return expectation;
}

} // namespace pagraph::oracle
