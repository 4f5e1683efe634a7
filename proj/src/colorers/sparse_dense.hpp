#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "colorers/colorer.hpp"
#include "core/rng.hpp"

namespace dyncolor {

// Sparse/dense split with almost-cliques. sparse(v) holds exactly when the
// neighborhood of v carries at most (1 - eps^2) * C(Delta, 2) edges; the
// remaining vertices partition into almost-cliques C_1..C_k, each of order
// within [(1-eps)Delta, (1+eps)Delta], each member adjacent to all but at
// most eps*Delta of its clique with at most eps*Delta outside edges.
struct Decomposition {
    double epsilon = 0.3;
    std::vector<int> membership;               // -1 sparse, else clique index
    std::vector<std::vector<VertexId>> cliques;
    bool fallback_all_sparse = false;

    bool is_sparse(VertexId v) const {
        return v >= membership.size() || membership[v] < 0;
    }
};

// Number of edges inside N(v).
std::uint64_t neighborhood_edges(const DynamicGraph& g, VertexId v);

bool sparse_predicate(const DynamicGraph& g, VertexId v, double epsilon);

// Constructive decomposition: candidates failing the sparsity bound are
// grouped into components of the "large common neighborhood" relation and
// validated against the almost-clique predicates; any failure falls back to
// all-sparse (flagged).
Decomposition hss_decompose(const DynamicGraph& g, double epsilon);

// Violation messages for the decomposition predicates; empty when clean.
std::vector<std::string> check_decomposition(const DynamicGraph& g, const Decomposition& d);

struct SparseDenseOptions {
    double epsilon = 0.3;
    double theta_heavy = 0.05;        // heavy-color threshold factor of Delta
    double sample_cap_a = 4.0;        // sparse: ceil(a / eps^2) samples
    double sample_cap_b = 4.0;        // dense: ceil(b * eps * Delta * ln n) samples
    double load_cap = 4.0;            // invariant bound: cap * (n/Delta) * ln n
    std::uint64_t batch_override = 0;     // refresh period; 0 = ceil(eps^2 * Delta)
    std::uint64_t decompose_interval = 0; // 0 = live vertex count
    std::uint64_t seed = 1;
};

// Adaptive-adversary-robust (Delta+1) colorer: sparse vertices get one-shot
// batch refreshes plus rejection-sampled recoloring backed by the per-color
// load index; dense vertices are colored per almost-clique by a non-edge
// matching (two vertices per color) plus a perfect vertex-to-color matching,
// repaired on conflict by augmenting paths or unused-color sampling.
class SparseDenseColorer : public Colorer {
public:
    explicit SparseDenseColorer(SparseDenseOptions opt);

    void attach(DynamicGraph& g) override;
    RecolorReport apply(DynamicGraph& g, const UpdateEvent& e) override;
    const Coloring& coloring() const override { return chi_; }
    std::string name() const override { return "sparse-dense"; }
    std::uint64_t work() const override { return work_; }
    void stats(json& out) const override;
    void violation_counts(json& out) const override;

    const Decomposition& decomposition() const { return decomp_; }
    std::uint32_t max_color_load() const { return chi_.max_load(); }
    double load_bound(const DynamicGraph& g) const;

    // One-shot refresh over all sparse vertices; returns the successfully
    // assigned ones (the rest are recolored by the greedy fallback).
    std::vector<VertexId> one_shot_sparse_coloring(DynamicGraph& g);

    // Heavy colors of a clique under the configured threshold.
    std::vector<Color> classify_heavy_colors(const DynamicGraph& g, int clique) const;

    // Rebuilds a clique's coloring from scratch (matching + perfect matching).
    void color_dense_clique(DynamicGraph& g, int clique, RecolorReport& report);

    // Kuhn-style assignment of the clique's remaining vertices to remaining
    // colors; throws MatchingError with a Hall witness when impossible.
    void perfect_match_remaining(const DynamicGraph& g, int clique, RecolorReport& report);

    void force_color_for_test(VertexId v, Color c) { chi_.set(v, c); }

    void recompute_decomposition(DynamicGraph& g, RecolorReport& report);

    // Installs a decomposition without touching colors; callers then rebuild
    // cliques explicitly. Fixture hook for the dense machinery.
    void install_decomposition(Decomposition d);

    // One-shot refresh plus the greedy fallback, as the batch boundary runs it.
    void refresh_now(DynamicGraph& g, RecolorReport& report) { run_refresh(g, report); }

    std::uint64_t refresh_count() const { return refreshes_; }
    double last_batch_mean_surplus() const { return last_mean_surplus_; }
    std::uint64_t batch_period_now(const DynamicGraph& g) const { return batch_period(g); }

    // Routes a recoloring by membership, as a conflicting insertion would.
    void recolor_now(DynamicGraph& g, VertexId v, RecolorReport& report) {
        recolor_vertex(g, v, report);
    }
    std::uint64_t dense_unused_samples() const { return dense_samples_; }
    std::uint64_t dense_unused_rejections() const { return dense_rejections_; }

private:
    struct CliqueState {
        std::vector<std::pair<VertexId, VertexId>> pairs;  // matched non-edges
        std::vector<VertexId> singles;
        std::vector<Color> heavy;
    };

    bool color_feasible(const DynamicGraph& g, VertexId v, Color c) const;
    // feasible for v given only constraints outside the remaining set
    bool color_feasible_outside(const DynamicGraph& g, VertexId v, Color c,
                                const std::vector<char>& in_remaining) const;
    Color min_load_feasible(const DynamicGraph& g, VertexId v);
    void recolor_vertex(DynamicGraph& g, VertexId v, RecolorReport& report);
    Color recolor_sparse(DynamicGraph& g, VertexId v, RecolorReport& report);
    void recolor_dense(DynamicGraph& g, VertexId v, RecolorReport& report);
    bool augment_repair(DynamicGraph& g, VertexId v, int clique, std::size_t depth_cap,
                        RecolorReport& report);
    void run_refresh(DynamicGraph& g, RecolorReport& report);
    void check_load_invariant(const DynamicGraph& g);
    std::uint64_t batch_period(const DynamicGraph& g) const;

    SparseDenseOptions opt_;
    Coloring chi_;
    Rng rng_;
    Decomposition decomp_;
    std::vector<CliqueState> clique_state_;
    std::vector<std::uint64_t> tau_;
    std::uint64_t recolor_seq_ = 0;

    std::uint64_t updates_ = 0;
    std::uint64_t since_refresh_ = 0;
    std::uint64_t since_decompose_ = 0;
    std::uint64_t work_ = 0;
    std::uint64_t refreshes_ = 0;
    std::uint64_t decompositions_ = 0;
    std::uint64_t conflicts_ = 0;
    std::uint64_t sparse_recolors_ = 0;
    std::uint64_t dense_recolors_ = 0;
    std::uint64_t full_clique_rebuilds_ = 0;
    std::uint64_t dropped_cliques_ = 0;
    double last_mean_surplus_ = 0.0;
    double surplus_mean_accum_ = 0.0;
    std::uint64_t surplus_batches_ = 0;
    double surplus_frac_ge1_min_ = 1.0;

    std::uint64_t load_violations_ = 0;
    std::uint64_t palette_overflows_ = 0;
    std::uint64_t matching_failures_ = 0;
    std::uint64_t dense_samples_ = 0;     // unused-color draws in small cliques
    std::uint64_t dense_rejections_ = 0;  // draws rejected by a neighbor
};

}  // namespace dyncolor
