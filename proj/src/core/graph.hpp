#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "core/errors.hpp"
#include "core/types.hpp"

namespace dyncolor {

struct UpdateOutcome {
    // Only insertions can corrupt a proper coloring; deletions never do.
    bool can_corrupt_coloring = false;
};

// Undirected dynamic graph under edge/vertex updates. Tracks the running
// maximum degree across the whole update sequence (Delta), which palette
// sizes are based on. Vertex ids are dense in [0, num_ids()); deleted ids
// stay dead unless explicitly re-inserted (the edge-as-vertex-ops simulation
// does exactly that).
//
// Deletion modes: Eager removes a deleted edge immediately. Lazy keeps it in
// the adjacency (so degrees and Delta still count it) and only drops it when
// one of its endpoints is deleted; re-inserting a pending edge resurrects it.
class DynamicGraph {
public:
    enum class DeletionMode { Eager, Lazy };

    explicit DynamicGraph(std::uint32_t n = 0, DeletionMode mode = DeletionMode::Eager);

    UpdateOutcome apply(const UpdateEvent& e);

    // Appends a fresh isolated vertex and returns its id.
    VertexId add_vertex();

    bool is_live(VertexId v) const { return v < live_.size() && live_[v]; }
    bool has_edge(VertexId u, VertexId v) const;        // includes lazy ghosts
    bool has_edge_true(VertexId u, VertexId v) const;   // excludes lazy ghosts

    std::span<const VertexId> neighbors(VertexId v) const;
    std::uint32_t degree(VertexId v) const;

    std::uint32_t num_ids() const { return static_cast<std::uint32_t>(live_.size()); }
    std::uint32_t live_count() const { return live_count_; }
    std::uint64_t edge_count() const { return edge_count_; }
    std::uint64_t true_edge_count() const { return edge_count_ - pending_.size(); }

    std::uint32_t max_degree() const;                   // current
    std::uint32_t delta() const { return delta_running_; }
    std::uint64_t timestamp() const { return timestamp_; }
    DeletionMode deletion_mode() const { return mode_; }

    // True iff all pairs of live vertices are adjacent (no more insertions fit).
    bool complete() const;

    // Section-style factoring of an edge insertion into vertex updates:
    // delete u, then re-insert u with its old neighborhood plus v.
    std::vector<UpdateEvent> simulate_edge_insert_as_vertex_ops(VertexId u, VertexId v) const;

    // Full structural audit: symmetry, no loops, no duplicates, liveness.
    bool verify_adjacency() const;

    std::vector<VertexId> live_vertices() const;

private:
    friend struct GraphTestAccess;  // fault-injection fixtures

    void check_live(VertexId v, const char* who) const;
    void insert_edge(VertexId u, VertexId v);
    void delete_edge(VertexId u, VertexId v);
    void insert_vertex(VertexId v, const std::vector<VertexId>& nbrs);
    void delete_vertex(VertexId v);
    void bump_delta(VertexId v);
    static std::uint64_t edge_key(VertexId u, VertexId v);

    std::vector<SlotSet> adj_;
    std::vector<bool> live_;
    std::unordered_set<std::uint64_t> pending_;  // lazily deleted edges
    std::uint32_t live_count_ = 0;
    std::uint64_t edge_count_ = 0;
    std::uint32_t delta_running_ = 0;
    std::uint64_t timestamp_ = 0;
    DeletionMode mode_;
};

}  // namespace dyncolor
