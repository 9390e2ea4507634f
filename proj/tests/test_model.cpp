#include <doctest.h>

#include <pagraph/model.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace pagraph;

TEST_SUITE("model") {

TEST_CASE("initial state is a single node with a self-loop") {
    ModelParams params(0.0);
    GraphState state(params);
    CHECK(state.n() == 1);
    CHECK(state.degree(1) == 2);
    CHECK(state.max_degree() == 2);
    CHECK(state.census_count(2) == 1);
    CHECK(state.excess_endpoints() == std::vector<std::uint32_t>{1});
    CHECK(state.attachment_mass() == doctest::Approx(3.0)); // 1*(2+0) + (1+0)
}

TEST_CASE("delta validation rejects the boundary and below") {
    CHECK_THROWS_AS(validate_delta(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(validate_delta(-1.5), std::invalid_argument);
    CHECK_THROWS_AS((ModelParams(-2.0)), std::invalid_argument);
    CHECK_NOTHROW(validate_delta(-0.999));
    CHECK_NOTHROW(validate_delta(7.5));
}

TEST_CASE("attachment law at stage 1 matches hand values") {
    SUBCASE("delta = 0") {
        GraphState state(ModelParams{0.0});
        const auto law = attachment_distribution(state);
        REQUIRE(law.node_probability.size() == 1);
        CHECK(law.node_probability[0] == doctest::Approx(2.0 / 3.0));
        CHECK(law.self_loop_probability == doctest::Approx(1.0 / 3.0));
        CHECK(law.total() == doctest::Approx(1.0));
    }
    SUBCASE("delta = 1") {
        GraphState state(ModelParams{1.0});
        const auto law = attachment_distribution(state);
        CHECK(law.node_probability[0] == doctest::Approx(3.0 / 5.0));
        CHECK(law.self_loop_probability == doctest::Approx(2.0 / 5.0));
    }
}

TEST_CASE("attachment law sums to one along a growing path") {
    ModelParams params(0.7, 99, 0);
    auto rng = params.make_rng();
    GraphState state(params);
    for (int step = 0; step < 50; ++step) {
        const auto law = attachment_distribution(state);
        CHECK(law.total() == doctest::Approx(1.0).epsilon(1e-12));
        grow_step(state, rng);
    }
}

TEST_CASE("growth maintains the degree bookkeeping invariants") {
    ModelParams params(0.5, 1234, 3);
    auto rng = params.make_rng();
    GraphState state(params);
    grow_to(state, 200, rng);

    CHECK(state.n() == 200);
    const auto& degrees = state.degrees();
    const std::uint64_t degree_sum = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
    CHECK(degree_sum == 2 * state.n()); // every stage adds one edge (two endpoints)

    // Excess endpoints: node v appears degree(v) - 1 times, total n.
    CHECK(state.excess_endpoints().size() == state.n());
    std::vector<std::uint64_t> appearances(state.n() + 1, 0);
    for (const auto v : state.excess_endpoints()) {
        ++appearances[v];
    }
    for (std::uint32_t v = 1; v <= state.n(); ++v) {
        CHECK(appearances[v] == state.degree(v) - 1);
    }

    // Census totals: node count and degree mass.
    std::uint64_t census_nodes = 0;
    std::uint64_t census_mass = 0;
    for (std::uint32_t d = 1; d <= state.max_degree(); ++d) {
        census_nodes += state.census_count(d);
        census_mass += state.census_count(d) * d;
    }
    CHECK(census_nodes == state.n());
    CHECK(census_mass == 2 * state.n());
}

TEST_CASE("step outcomes report the transition that happened") {
    ModelParams params(0.0, 7, 0);
    auto rng = params.make_rng();
    GraphState state(params);
    for (std::uint64_t stage = 1; stage < 60; ++stage) {
        const std::uint64_t n_before = state.n();
        const auto outcome = grow_step(state, rng);
        CHECK(outcome.new_stage == n_before + 1);
        CHECK(state.n() == n_before + 1);
        if (outcome.kind == StepOutcome::Kind::self_loop) {
            CHECK(outcome.target_node == 0);
            CHECK(state.degree(static_cast<std::uint32_t>(state.n())) == 2);
        } else {
            REQUIRE(outcome.target_node >= 1);
            REQUIRE(outcome.target_node <= n_before);
            CHECK(state.degree(outcome.target_node) == outcome.target_old_degree + 1);
            CHECK(state.degree(static_cast<std::uint32_t>(state.n())) == 1);
        }
    }
}

TEST_CASE("same seed and stream replay identically; streams differ") {
    const auto grow = [](std::uint64_t stream) {
        ModelParams params(0.0, 2024, stream);
        auto rng = params.make_rng();
        GraphState state(params);
        grow_to(state, 300, rng);
        return state.degrees();
    };
    CHECK(grow(5) == grow(5));
    CHECK(grow(5) != grow(6));
}

TEST_CASE("from_degrees rebuilds a consistent state and validates input") {
    const std::vector<std::uint32_t> degrees{5, 3, 2, 1, 1, 1, 1}; // sum 14 = 2*7
    const auto state = GraphState::from_degrees(0.0, degrees);
    CHECK(state.n() == 7);
    CHECK(state.degree(1) == 5);
    CHECK(state.census_count(1) == 4);
    CHECK(state.census_count(2) == 1);
    CHECK(state.census_count(3) == 1);
    CHECK(state.census_count(5) == 1);
    CHECK(state.excess_endpoints().size() == 7);

    CHECK_THROWS_AS(GraphState::from_degrees(0.0, {2, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(GraphState::from_degrees(0.0, {4, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(GraphState::from_degrees(0.0, {}), std::invalid_argument);
}

TEST_CASE("degree census truncates with overflow aggregation") {
    const auto state = GraphState::from_degrees(0.0, {5, 3, 2, 1, 1, 1, 1});
    const auto census = degree_census(state, 2);
    CHECK(census.stage == 7);
    CHECK(census.k_max() == 2);
    CHECK(census.at(1) == 4);
    CHECK(census.at(2) == 1);
    CHECK(census.overflow == 2);             // degrees 3 and 5
    CHECK(census.overflow_degree_mass == 8); // 3 + 5

    const auto wide = degree_census(state, 10);
    CHECK(wide.overflow == 0);
    CHECK(wide.overflow_degree_mass == 0);
    std::uint64_t total = wide.overflow;
    for (int k = 1; k <= wide.k_max(); ++k) {
        total += wide.at(k);
    }
    CHECK(total == state.n());
}

TEST_CASE("grow_to rejects targets behind the current stage") {
    ModelParams params(0.0, 1, 0);
    auto rng = params.make_rng();
    GraphState state(params);
    grow_to(state, 10, rng);
    CHECK_THROWS_AS(grow_to(state, 5, rng), std::invalid_argument);
    CHECK_NOTHROW(grow_to(state, 10, rng)); // no-op
}

TEST_CASE("one-step frequencies match the attachment law") {
    // From the stage-1 state at delta = 0: self-loop probability 1/3.
    const int trials = 20000;
    int self_loops = 0;
    for (int t = 0; t < trials; ++t) {
        ModelParams params(0.0, 515, static_cast<std::uint64_t>(t));
        auto rng = params.make_rng();
        GraphState state(params);
        const auto outcome = grow_step(state, rng);
        if (outcome.kind == StepOutcome::Kind::self_loop) {
            ++self_loops;
        }
    }
    const double freq = static_cast<double>(self_loops) / trials;
    // 5-sigma band around 1/3 with sigma = sqrt(p(1-p)/trials) ~ 0.0033.
    CHECK(freq == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("rng substreams are reproducible and well distributed") {
    Xoshiro256pp a(42, 0);
    Xoshiro256pp b(42, 0);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next() == b.next());
    }
    Xoshiro256pp c(42, 1);
    bool any_diff = false;
    for (int i = 0; i < 10; ++i) {
        any_diff |= (a.next() != c.next());
    }
    CHECK(any_diff);

    Xoshiro256pp u(7, 0);
    double sum = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const double x = u.uniform01();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        sum += x;
    }
    CHECK(sum / draws == doctest::Approx(0.5).epsilon(0.01));

    Xoshiro256pp bounded(9, 2);
    for (int i = 0; i < 1000; ++i) {
        CHECK(bounded.below(17) < 17);
    }
}

} // TEST_SUITE("model")
