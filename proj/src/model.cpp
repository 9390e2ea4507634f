#include <pagraph/model.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pagraph {

void validate_delta(double delta) {
    if (!(std::isfinite(delta)) || !(delta > -1.0)) {
        throw std::invalid_argument("delta must be > -1 (got " + std::to_string(delta) + ")");
    }
}

ModelParams::ModelParams(double delta_in, std::uint64_t seed_in, std::uint64_t stream_in)
    : delta(delta_in), seed(seed_in), stream_id(stream_in) {
    validate_delta(delta_in);
}

double AttachmentDistribution::total() const {
    double sum = self_loop_probability;
    for (double p : node_probability) {
        sum += p;
    }
    return sum;
}

GraphState::GraphState(const ModelParams& params) : delta_(params.delta) {
    degrees_ = {2};
    excess_endpoints_ = {1};
    census_ = {0, 0, 1}; // one node of degree 2
}

GraphState GraphState::from_degrees(double delta, const std::vector<std::uint32_t>& degrees) {
    validate_delta(delta);
    if (degrees.empty()) {
        throw std::invalid_argument("degree sequence must be non-empty");
    }
    std::uint64_t degree_sum = 0;
    std::uint32_t max_deg = 0;
    for (std::uint32_t d : degrees) {
        if (d < 1) {
            throw std::invalid_argument("every degree must be >= 1");
        }
        degree_sum += d;
        max_deg = std::max(max_deg, d);
    }
    if (degree_sum != 2 * degrees.size()) {
        throw std::invalid_argument("degree sum must equal 2n");
    }

    GraphState state(delta);
    state.degrees_ = degrees;
    state.census_.assign(max_deg + 1, 0);
    state.excess_endpoints_.reserve(degrees.size());
    for (std::uint32_t v = 1; v <= degrees.size(); ++v) {
        const std::uint32_t d = degrees[v - 1];
        state.census_[d] += 1;
        for (std::uint32_t rep = 1; rep < d; ++rep) {
            state.excess_endpoints_.push_back(v);
        }
    }
    return state;
}

std::uint64_t GraphState::census_count(std::uint32_t deg) const {
    if (deg >= census_.size()) {
        return 0;
    }
    return census_[deg];
}

double GraphState::attachment_mass() const {
    const auto nn = static_cast<double>(n());
    return nn * (2.0 + delta_) + (1.0 + delta_);
}

void GraphState::reserve(std::uint64_t n_target) {
    degrees_.reserve(n_target);
    excess_endpoints_.reserve(n_target);
}

void GraphState::apply_attach(std::uint32_t target) {
    const std::uint32_t old_degree = degrees_[target - 1];
    degrees_[target - 1] = old_degree + 1;
    if (old_degree + 1 >= census_.size()) {
        census_.resize(old_degree + 2, 0);
    }
    census_[old_degree] -= 1;
    census_[old_degree + 1] += 1;

    degrees_.push_back(1);
    census_[1] += 1;
    excess_endpoints_.push_back(target);
}

void GraphState::apply_self_loop() {
    degrees_.push_back(2);
    census_[2] += 1;
    excess_endpoints_.push_back(static_cast<std::uint32_t>(degrees_.size()));
}

AttachmentDistribution attachment_distribution(const GraphState& state) {
    const double mass = state.attachment_mass();
    const double delta = state.delta();

    AttachmentDistribution dist;
    dist.node_probability.reserve(state.n());
    for (std::uint32_t d : state.degrees()) {
        dist.node_probability.push_back((static_cast<double>(d) + delta) / mass);
    }
    dist.self_loop_probability = (1.0 + delta) / mass;
    return dist;
}

StepOutcome grow_step(GraphState& state, Xoshiro256pp& rng) {
    // Degree-proportional sampling by mass decomposition, valid for all
    // delta > -1: write D(v) + delta = (1+delta) + (D(v) - 1). The three
    // regions then carry masses n(1+delta), n, and (1+delta), summing to the
    // attachment mass n(2+delta) + (1+delta).
    const std::uint64_t n = state.n();
    const double delta = state.delta();
    const double affinity = 1.0 + delta;
    const double uniform_region = static_cast<double>(n) * affinity;
    const double excess_region = static_cast<double>(n);

    const double u = rng.uniform01() * state.attachment_mass();

    std::uint32_t target = 0;
    if (u < uniform_region) {
        target = static_cast<std::uint32_t>(rng.below(n)) + 1;
    } else if (u < uniform_region + excess_region) {
        target = state.excess_endpoints_[rng.below(n)];
    }

    if (target != 0) {
        const std::uint32_t old_degree = state.degrees_[target - 1];
        state.apply_attach(target);
        return {StepOutcome::Kind::attached_to_existing, target, old_degree, n + 1};
    }
    state.apply_self_loop();
    return {StepOutcome::Kind::self_loop, 0, 0, n + 1};
}

void grow_to(GraphState& state, std::uint64_t n_target, Xoshiro256pp& rng) {
    if (n_target < state.n()) {
        throw std::invalid_argument("grow_to target is below the current stage");
    }
    state.reserve(n_target);
    while (state.n() < n_target) {
        grow_step(state, rng);
    }
}

DegreeCensus degree_census(const GraphState& state, int k_max) {
    if (k_max < 1) {
        throw std::invalid_argument("k_max must be >= 1");
    }
    DegreeCensus census;
    census.stage = state.n();
    census.counts.assign(static_cast<std::size_t>(k_max), 0);

    std::uint64_t counted = 0;
    std::uint64_t counted_mass = 0;
    const auto top = std::min<std::uint32_t>(static_cast<std::uint32_t>(k_max), state.max_degree());
    for (std::uint32_t k = 1; k <= top; ++k) {
        const std::uint64_t c = state.census_count(k);
        census.counts[k - 1] = c;
        counted += c;
        counted_mass += static_cast<std::uint64_t>(k) * c;
    }
    census.overflow = state.n() - counted;
    census.overflow_degree_mass = 2 * state.n() - counted_mass;
    return census;
}

} // namespace pagraph
