#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "core/coloring.hpp"
#include "core/graph.hpp"

namespace dyncolor {

using LevelFn = std::function<int(VertexId)>;

// The per-vertex color sets of the level data structure, all ascending.
// blank/up_used/once_down/multi_down partition the palette:
//   blank      B  : used by no neighbor
//   up_used    C_H: used by some up-neighbor (level >= own)
//   once_down  U_L: no up-neighbor, exactly one down-neighbor
//   multi_down M_L: no up-neighbor, two or more down-neighbors
//   candidates D  : B plus U_L (no up-neighbor, at most one down-neighbor)
struct PaletteView {
    std::vector<Color> blank;
    std::vector<Color> up_used;
    std::vector<Color> once_down;
    std::vector<Color> multi_down;
    std::vector<Color> candidates;

    bool operator==(const PaletteView&) const = default;
};

// One neighborhood scan, then O(1) per-color queries. Stamp arrays are kept
// across calls and invalidated by a generation counter, so repeated scans do
// not pay for clearing.
class PaletteScratch {
public:
    // Scans N(v). Returns the number of neighbor touches (work units).
    std::uint64_t scan(const DynamicGraph& g, const Coloring& chi, VertexId v,
                       const LevelFn& level);

    std::uint32_t down_count(Color c) const {
        return (c < gen_.size() && gen_[c] == gen_cur_) ? down_count_[c] : 0u;
    }
    bool up_used(Color c) const {
        return c < up_gen_.size() && up_gen_[c] == gen_cur_;
    }
    bool is_candidate(Color c) const { return !up_used(c) && down_count(c) <= 1; }
    bool is_blank(Color c) const { return !up_used(c) && down_count(c) == 0; }

    // Candidate colors in ascending order, stopping after `limit` of them
    // (0 = no limit). Call scan() first. Adds k palette-walk work units to
    // *work when provided.
    std::vector<Color> candidates(Color k, std::size_t limit, std::uint64_t* work = nullptr) const;

    // |D| over the full palette.
    std::uint32_t candidate_count(Color k) const;

private:
    std::vector<std::uint32_t> down_count_;
    std::vector<std::uint64_t> gen_;
    std::vector<std::uint64_t> up_gen_;
    std::uint64_t gen_cur_ = 0;
};

// Full PaletteView via the single-scan path; the colorers' "maintained" view.
PaletteView palette_view(const DynamicGraph& g, const Coloring& chi, VertexId v,
                         const LevelFn& level, Color k);

}  // namespace dyncolor
