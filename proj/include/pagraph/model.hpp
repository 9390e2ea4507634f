#ifndef PAGRAPH_MODEL_HPP
#define PAGRAPH_MODEL_HPP

#include <pagraph/rng.hpp>

#include <cstdint>
#include <vector>

namespace pagraph {

/**
 * Model parameters: affinity offset delta (must be > -1) plus the seeding
 * policy (master seed and replica stream index) that fixes the random stream.
 */
struct ModelParams {
    double delta;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    explicit ModelParams(double delta, std::uint64_t seed = 0, std::uint64_t stream_id = 0);

    Xoshiro256pp make_rng() const { return Xoshiro256pp(seed, stream_id); }
};

// Throws std::invalid_argument unless delta is finite and > -1.
void validate_delta(double delta);

/** One growth step: either the newcomer attached to an existing node or it self-looped. */
struct StepOutcome {
    enum class Kind { attached_to_existing, self_loop };

    Kind kind;
    std::uint32_t target_node;       // 1-based id; 0 for self_loop
    std::uint32_t target_old_degree; // degree before increment; 0 for self_loop
    std::uint64_t new_stage;         // n+1
};

/** Degree counts N_n(k) for k = 1..k_max, with degrees above k_max aggregated. */
struct DegreeCensus {
    std::uint64_t stage = 0;
    std::vector<std::uint64_t> counts;     // counts[k-1] = N_n(k)
    std::uint64_t overflow = 0;            // nodes with degree > k_max
    std::uint64_t overflow_degree_mass = 0; // sum of degrees above k_max

    std::uint64_t at(int k) const { return counts.at(static_cast<std::size_t>(k) - 1); }
    int k_max() const { return static_cast<int>(counts.size()); }
};

/** Attachment law at the current stage: per-node probabilities plus the self-loop mass. */
struct AttachmentDistribution {
    std::vector<double> node_probability;  // node_probability[v-1] = P(attach to v)
    double self_loop_probability = 0.0;

    double total() const;
};

/**
 * The growing graph in degree-census form.
 *
 * Stores, for a graph on n nodes: the degree of every node, the excess-endpoint
 * list (node v appears degree(v) - 1 times, total length n), and the running
 * census (count of nodes per degree value). Edges are never materialized; the
 * degree sequence is a sufficient statistic for every quantity computed here.
 */
class GraphState {
public:
    // Stage-1 graph: a single node with a self-loop, so degree(1) = 2.
    explicit GraphState(const ModelParams& params);

    // Rebuild a state from an explicit degree sequence (sum must equal 2n).
    // Used by the enumeration oracle to materialize representative states.
    static GraphState from_degrees(double delta, const std::vector<std::uint32_t>& degrees);

    std::uint64_t n() const { return degrees_.size(); }
    double delta() const { return delta_; }
    std::uint32_t degree(std::uint32_t node) const { return degrees_[node - 1]; }
    const std::vector<std::uint32_t>& degrees() const { return degrees_; }
    const std::vector<std::uint32_t>& excess_endpoints() const { return excess_endpoints_; }

    // Count of nodes with the given exact degree (0 if none).
    std::uint64_t census_count(std::uint32_t deg) const;
    std::uint32_t max_degree() const { return static_cast<std::uint32_t>(census_.size()) - 1; }

    // Normalizing mass of the attachment law: n(2+delta) + (1+delta).
    double attachment_mass() const;

    void reserve(std::uint64_t n_target);

    friend StepOutcome grow_step(GraphState& state, Xoshiro256pp& rng);

private:
    GraphState(double delta) : delta_(delta) {}

    void apply_attach(std::uint32_t target);
    void apply_self_loop();

    double delta_;
    std::vector<std::uint32_t> degrees_;
    std::vector<std::uint32_t> excess_endpoints_;
    std::vector<std::uint64_t> census_; // census_[d] = #nodes of degree d; index 0 unused
};

// Exact attachment law of the current state; entries sum to 1.
AttachmentDistribution attachment_distribution(const GraphState& state);

// Advance one stage, sampling exactly the attachment_distribution law.
StepOutcome grow_step(GraphState& state, Xoshiro256pp& rng);

// Repeated grow_step until stage n_target (error if n_target < current stage).
void grow_to(GraphState& state, std::uint64_t n_target, Xoshiro256pp& rng);

// Snapshot of the census truncated at k_max, with overflow aggregation.
DegreeCensus degree_census(const GraphState& state, int k_max);

} // namespace pagraph

#endif // PAGRAPH_MODEL_HPP
