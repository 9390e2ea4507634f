#ifndef PAGRAPH_ORACLE_HPP
#define PAGRAPH_ORACLE_HPP

#include <pagraph/model.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace pagraph::oracle {

// Stages above this need an explicit budget override; the state space is the
// set of degree multisets, which stays desk-sized only for small n.
inline constexpr int kDefaultBudget = 9;

/** A reachable state together with its exact path probability. */
struct WeightedState {
    GraphState state;
    double probability;
};

/** Exact distribution of the degree census at one stage. */
struct ExactDistribution {
    std::uint64_t stage = 0;
    int k_max = 0; // censuses carry counts for k = 1..k_max (= stage + 1)
    std::vector<std::pair<std::vector<std::uint64_t>, double>> support;

    double total_probability() const;
    // E N_stage(k); zero for k outside 1..k_max.
    double mean_count(int k) const;
};

// Exact census distribution at every stage 1..n_max by exhaustive expansion
// of the attachment dynamics, merging states by degree multiset.
std::vector<ExactDistribution> enumerate(int n_max, double delta, int budget = kDefaultBudget);

// All reachable degree multisets at stage n, as representative graph states
// with their probabilities (probabilities sum to 1).
std::vector<WeightedState> enumerate_states(int n, double delta, int budget = kDefaultBudget);

// E N_n(k) by enumeration (the ground truth for the mean recursion).
double exact_mean(int n, int k, double delta);

// Exact Cov(N_n(i), N_n(j)) from the enumerated distribution.
double exact_cov(int n, int i, int j, double delta);

// One-step conditional expectation: sum over the n+1 attachment outcomes of
// probability times functional(next state).
double exact_cond_step(const GraphState& state,
                       const std::function<double(const GraphState&)>& functional);

} // namespace pagraph::oracle

#endif // PAGRAPH_ORACLE_HPP
