#pragma once

#include <cstdint>
#include <optional>

#include "core/coloring.hpp"
#include "core/graph.hpp"
#include "core/rng.hpp"
#include "stream/stream.hpp"

namespace dyncolor {

enum class AdversaryKind { ObliviousUniform, AdaptiveConflict };

struct AdversarySpec {
    AdversaryKind kind = AdversaryKind::ObliviousUniform;
    std::uint32_t n = 2;   // target order; graph starts as n isolated vertices
    std::uint64_t t = 0;   // number of updates
    std::uint64_t seed = 0;
};

// t edge insertions, each uniform over the current non-edges. Deterministic
// given the seed. If the graph becomes complete early the stream is truncated
// (truncated flag set when provided).
UpdateStream gen_oblivious_stream(const AdversarySpec& spec, bool* truncated = nullptr);

// One adaptive step: an EdgeInsert whose endpoints currently share a color
// when such a non-adjacent pair exists, else a uniform non-edge. Reads only
// the public coloring. Throws StreamExhausted when the graph is complete.
UpdateEvent adaptive_conflict_step(const DynamicGraph& g, const Coloring& coloring, Rng& rng);

// Uniform over current non-edges; throws StreamExhausted when complete.
UpdateEvent uniform_nonedge(const DynamicGraph& g, Rng& rng);

// Insert/delete churn keeping every degree at most delta_cap: below the
// target edge count it inserts (uniform over cap-respecting non-edges),
// above it deletes (uniform over edges), in between a fair coin decides.
// Oblivious: never looks at any coloring. Used by scaling experiments whose
// update budgets exceed what insert-only streams can reach.
UpdateStream gen_churn_stream(std::uint32_t n, std::uint64_t t, std::uint32_t delta_cap,
                              std::uint64_t seed);

}  // namespace dyncolor
