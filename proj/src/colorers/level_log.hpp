#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colorers/colorer.hpp"
#include "colorers/palette.hpp"
#include "core/rng.hpp"

namespace dyncolor {

struct LevelLogOptions {
    std::uint32_t beta = 4;   // level base, >= 2
    std::uint64_t seed = 1;
    bool audit = true;        // incremental candidate-size lower-bound audit
};

// Randomized (Delta+1) colorer over a level data structure with levels
// {4..L}, L = ceil(log_beta Delta). Maintains per-vertex down/same neighbor
// counts, repairs the two level invariants after every update, and on a
// monochromatic insertion recolors the more recently recolored endpoint by
// sampling from the truncated candidate palette. Recolor chains have fan-out
// at most one and descend strictly in level.
class LevelLogColorer : public Colorer {
public:
    explicit LevelLogColorer(LevelLogOptions opt);

    void attach(DynamicGraph& g) override;
    RecolorReport apply(DynamicGraph& g, const UpdateEvent& e) override;
    void finish(DynamicGraph& g) override;  // final full candidate-bound sweep
    const Coloring& coloring() const override { return chi_; }
    std::string name() const override { return "log"; }
    std::uint64_t work() const override { return work_; }
    void stats(json& out) const override;
    void violation_counts(json& out) const override;

    int level(VertexId v) const { return level_[v]; }
    std::uint32_t down_degree(VertexId v) const { return down_count_[v]; }
    std::uint32_t same_degree(VertexId v) const { return same_count_[v]; }
    std::uint64_t tau(VertexId v) const { return tau_[v]; }

    // Table-2 sets from the maintained structures (levels, counts, chi).
    PaletteView view(const DynamicGraph& g, VertexId v) const;

    // Candidate colors in canonical ascending order, truncated at the first
    // beta^level(v) of them.
    std::vector<Color> truncated_candidates(const DynamicGraph& g, VertexId v);
    Color sample_from_truncated(const DynamicGraph& g, VertexId v, Rng& rng);

    // Empty iff both level invariants hold for every live vertex.
    std::vector<std::string> check_invariants(const DynamicGraph& g) const;

    // True iff the maintained down/same counts match a recount from scratch.
    bool recount_matches(const DynamicGraph& g) const;

    // Runs the invariant repair loop directly (normally part of apply).
    std::uint32_t update_levels(DynamicGraph& g);

    // test hooks: force level, color or recency to build palette fixtures
    void force_level(DynamicGraph& g, VertexId v, int level);
    void force_color(VertexId v, Color c) { chi_.set(v, c); }
    void force_tau(VertexId v, std::uint64_t t) { tau_[v] = t; }

    std::uint64_t chain_count() const { return chain_count_; }
    double mean_chain_length_hidelta() const {
        return chain_count_hi_ ? static_cast<double>(chain_len_hi_) / chain_count_hi_ : 0.0;
    }
    std::uint64_t candidate_bound_exceptions() const { return candidate_bound_exceptions_; }
    std::uint64_t recursion_draws_hidelta() const { return draws_hi_; }
    std::uint64_t recursions_hidelta() const { return recursions_hi_; }
    double recursion_bound_sum_hidelta() const { return recursion_bound_sum_hi_; }

private:
    void ensure_vertex(VertexId v);
    void add_edge_counts(VertexId u, VertexId v);
    void remove_edge_counts(VertexId u, VertexId v);
    void mark_dirty(VertexId v);
    bool upper_bound_violated(VertexId v) const;
    bool lower_bound_violated(VertexId v) const;
    void set_level(const DynamicGraph& g, VertexId v, int new_level);
    void recolor_chain(DynamicGraph& g, VertexId root, RecolorReport& report);
    void audit_changed(const DynamicGraph& g);
    std::uint64_t threshold_up(VertexId v) const;    // beta^level(v)
    std::uint64_t threshold_down(VertexId v) const;  // beta^(level(v)-5)

    LevelLogOptions opt_;
    Coloring chi_;
    Rng rng_;
    PaletteScratch scratch_;

    std::vector<int> level_;
    std::vector<std::uint64_t> tau_;
    std::vector<std::uint32_t> down_count_;
    std::vector<std::uint32_t> same_count_;
    std::vector<char> dirty_flag_;
    std::vector<VertexId> dirty_up_;
    std::vector<VertexId> dirty_down_;
    std::uint64_t recolor_seq_ = 0;

    SlotSet audit_set_;  // vertices whose candidate palette may have changed

    std::uint64_t work_ = 0;
    std::uint64_t conflicts_ = 0;
    std::uint64_t level_moves_ = 0;
    std::uint64_t chain_count_ = 0;
    std::uint64_t chain_len_total_ = 0;
    std::uint64_t chain_count_hi_ = 0;   // chains while Delta >= 50
    std::uint64_t chain_len_hi_ = 0;
    std::uint64_t draws_hi_ = 0;         // recolor draws while Delta >= 50
    std::uint64_t recursions_hi_ = 0;    // draws that hit a down-neighbor
    double recursion_bound_sum_hi_ = 0;  // sum of 2/(|L(v)|/2 + 1) per draw
    std::uint64_t max_chain_ = 0;
    std::uint64_t fanout_violations_ = 0;
    std::uint64_t candidate_bound_exceptions_ = 0;
    std::uint64_t palette_overflows_ = 0;
    std::uint64_t descent_violations_ = 0;
};

}  // namespace dyncolor
