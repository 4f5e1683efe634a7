#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "colorers/colorer.hpp"
#include "colorers/palette.hpp"
#include "core/rng.hpp"

namespace dyncolor {

enum class EpochCause : std::uint8_t {
    Original,  // ended by a root recolor call (conflicting insertion endpoint)
    Induced,   // ended by a recursive recolor call
    Final,     // never ended; the vertex was done changing color
};

const char* to_string(EpochCause c);

struct EpochRecord {
    VertexId vertex = 0;
    std::uint64_t start = 0;      // update index at which the epoch opened
    std::uint64_t end = 0;        // update index at which it closed
    int level = -1;               // vertex level throughout the epoch
    Color color = kNoColor;
    EpochCause cause = EpochCause::Final;
    std::uint64_t cost = 0;       // work of the recolor call that began it
    std::uint64_t dur = 0;        // edge insertions during the epoch
    std::uint64_t psdur = 0;      // distinct neighbor colors until a hit
};

enum class LevelHeaviness { Empty, InducedHeavy, FinalHeavy, OriginalHeavy };

const char* to_string(LevelHeaviness h);

// Per-level classification: induced-heavy when at least half the epochs are
// induced, else final-heavy when at least an eighth are final, else
// original-heavy (so at least 3/8 are original).
LevelHeaviness classify_level(std::uint64_t induced, std::uint64_t final_count,
                              std::uint64_t total);

struct ConstOptions {
    std::uint64_t seed = 1;
    bool phi_audit = true;  // recount phi on every recolor call
};

// Constant-expected-time (Delta+1) colorer. Levels {-1 .. ceil(log3 n)};
// fresh vertices enter at level 0, deterministic recoloring parks a vertex
// at -1, the random branch raises the level while enough neighbors sit
// below and samples from a palette truncated to (3^l + 1)/2 colors.
// Epoch bookkeeping (cause, cost, duration, pseudo-duration) is kept for
// every vertex; call finish() to close open epochs before reading them.
class LevelConstColorer : public Colorer {
public:
    explicit LevelConstColorer(ConstOptions opt);

    void attach(DynamicGraph& g) override;
    RecolorReport apply(DynamicGraph& g, const UpdateEvent& e) override;
    void finish(DynamicGraph& g) override;
    const Coloring& coloring() const override { return chi_; }
    std::string name() const override { return "const"; }
    std::uint64_t work() const override { return work_; }
    std::uint64_t init_work() const override { return init_work_; }
    void stats(json& out) const override;
    void violation_counts(json& out) const override;

    int level(VertexId v) const { return level_[v]; }

    // Number of neighbors of v strictly below lstar, from the maintained
    // per-vertex level histogram.
    std::uint32_t phi(VertexId v, int lstar) const;
    std::uint32_t phi_brute(const DynamicGraph& g, VertexId v, int lstar) const;

    PaletteView view(const DynamicGraph& g, VertexId v) const;

    const std::vector<EpochRecord>& closed_epochs() const { return closed_; }

    // (level, palette size) recorded at every random recolor landing.
    const std::vector<std::pair<int, std::uint32_t>>& recorded_palette_sizes() const {
        return palette_sizes_;
    }

    // Charged costs: a level -1 epoch's cost moves to the vertex's previous
    // epoch. Returns per-epoch charged values aligned with closed_epochs().
    std::vector<std::uint64_t> charged_costs() const;

    std::uint64_t deterministic_recolors() const { return det_recolors_; }
    std::uint64_t random_recolors() const { return rand_recolors_; }
    std::uint64_t insertions_seen() const { return inserts_seen_; }

    // test hooks
    void force_level(const DynamicGraph& g, VertexId v, int level);
    void force_color(VertexId v, Color c) { chi_.set(v, c); }
    void force_tau(VertexId v, std::uint64_t t) { tau_[v] = t; }

private:
    enum class CallKind { Original, Induced };

    void ensure_vertex(VertexId v);
    int hist_index(int level) const { return level + 1; }
    void hist_add(VertexId v, int level, int delta);
    void set_level(const DynamicGraph& g, VertexId v, int new_level);
    void assign_initial_color(const DynamicGraph& g, VertexId v);
    void recolor_const(DynamicGraph& g, VertexId v, CallKind kind, RecolorReport& report,
                       std::uint32_t depth);
    void deterministic_recolor(const DynamicGraph& g, VertexId v, std::uint64_t& call_work);
    // returns the vertex to recurse on, or none
    std::optional<VertexId> random_recolor(const DynamicGraph& g, VertexId v,
                                           std::uint64_t& call_work);
    void close_epoch(VertexId v, EpochCause cause);
    void open_epoch(VertexId v, std::uint64_t cost);
    void note_color_taken(const DynamicGraph& g, VertexId who, Color c);
    void note_color_single(VertexId target, Color c);
    void settle_psdur_marks(bool count);

    ConstOptions opt_;
    Coloring chi_;
    Rng rng_;
    PaletteScratch scratch_;

    std::vector<int> level_;
    std::vector<std::uint64_t> tau_;
    std::vector<std::vector<std::uint32_t>> nbr_hist_;  // neighbor count by level index
    std::uint64_t recolor_seq_ = 0;

    // open epoch per vertex
    struct OpenEpoch {
        bool open = false;
        std::uint64_t start = 0;
        std::uint64_t start_inserts = 0;
        int level = -1;
        Color color = kNoColor;
        std::uint64_t cost = 0;
        std::uint64_t psdur = 0;
        bool frozen = false;
        bool new_color_mark = false;  // a new distinct color arrived this update
        std::unordered_set<Color> seen;
    };
    std::vector<OpenEpoch> open_;
    std::vector<EpochRecord> closed_;
    std::vector<VertexId> psdur_touched_;
    std::vector<std::pair<int, std::uint32_t>> palette_sizes_;
    bool finished_ = false;

    std::uint64_t update_index_ = 0;
    std::uint64_t inserts_seen_ = 0;
    std::uint64_t work_ = 0;
    std::uint64_t init_work_ = 0;
    std::uint64_t det_recolors_ = 0;
    std::uint64_t rand_recolors_ = 0;
    std::uint64_t conflicts_ = 0;

    std::uint64_t palette_bound_violations_ = 0;
    std::uint64_t phi_mismatches_ = 0;
    std::uint64_t palette_overflows_ = 0;
    std::uint64_t det_recursions_ = 0;  // deterministic branch must never recurse
    std::uint64_t tiling_violations_ = 0;
    std::uint64_t charge_violations_ = 0;
};

}  // namespace dyncolor
