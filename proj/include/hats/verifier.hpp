#ifndef HATS_VERIFIER_HPP
#define HATS_VERIFIER_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hats/strategy.hpp"

namespace hats {

enum class Outcome {
    winning_verified, // every enumerated placement has a correct vertex
    disproved,        // witness placement with zero correct vertices
    sampled_clean,    // no disproof among the samples; not a proof
    undecided,        // budget refusal
};

std::string outcome_name(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::undecided;
    std::optional<HatPlacement> witness;
    int witness_hint_start = -1; // window start for hint-game witnesses
    u64 placements_checked = 0;
    double wall_time_s = 0.0;
    u64 seed = 0;
    std::string note;     // refusal reason, required-count message
    std::string required; // decimal or log10 form of the required enumeration size
};

struct VerifyOptions {
    int threads = 0;           // 0 = hardware concurrency
    u64 budget = 20000000000ULL; // max placements (or placement-window pairs)
};

// Exhaustive decision for hint-free games: winning-verified iff every
// placement has at least one correct vertex, otherwise disproved with the
// lexicographically-first witness (vertex 0 most significant). Deterministic
// for any thread count.
Verdict verify_exhaustive(const Strategy& strategy, const VerifyOptions& opts = {});

// Exhaustive decision for hint games: enumerates every (placement, window
// start) pair with the hint vertex's color inside the window. Also checks
// that non-hint vertices' guesses do not depend on the window start.
Verdict verify_hint_game(const Strategy& strategy, const VerifyOptions& opts = {});

// Seeded uniform sampling; sound for refutation only, hence the distinct
// sampled_clean outcome. Returns the disproof with the smallest sample index
// when one exists, so results are thread-count independent.
Verdict verify_sampled(const Strategy& strategy, u64 n_samples, u64 seed,
                       int threads = 0);

// Full per-vertex guess map plus the set of correct vertices.
struct Evaluation {
    std::vector<GuessSet> guesses;
    std::vector<Vertex> correct;
};
Evaluation evaluate_all(const Strategy& strategy, const HatPlacement& placement,
                        int hint_start = -1);

enum class SolveStatus { winning, losing, undecided };

struct SolveResult {
    SolveStatus status = SolveStatus::undecided;
    std::shared_ptr<const LookupStrategy> strategy; // present when winning
    u64 nodes_explored = 0;
    std::string note;
    std::string space; // strategy-space size (decimal or log10 form)
    double wall_time_s = 0.0;
};

struct SolveOptions {
    u64 budget = 1000000000ULL; // bound on both strategy-space size and nodes explored
};

// Exact decision by backtracking over per-vertex lookup tables with
// placement-coverage pruning; the independent oracle for everything else in
// the engine. Refuses (undecided) when the strategy space exceeds the budget.
SolveResult brute_force_decide(const HatGame& game, const SolveOptions& opts = {});

// Strategy-space size: product over v of C(h(v), g(v)) ^ (table entries of v),
// saturating at the u128 maximum.
u128 strategy_space_size(const HatGame& game);

} // namespace hats

#endif
