#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/graph.hpp"
#include "core/types.hpp"

namespace dyncolor {

// Vertex -> color assignment with a per-color index of holders. load(c) is
// the exact number of vertices currently holding c; holders(c) lists them,
// which is what makes color feasibility checks cost O(load) instead of
// O(degree).
class Coloring {
public:
    void ensure_ids(std::uint32_t num_ids) {
        if (chi_.size() < num_ids) chi_.resize(num_ids, kNoColor);
    }

    void ensure_palette(Color k) {
        if (buckets_.size() < static_cast<std::size_t>(k) + 1) buckets_.resize(k + 1);
        if (k > palette_) palette_ = k;
    }

    Color palette_size() const { return palette_; }

    Color color(VertexId v) const { return v < chi_.size() ? chi_[v] : kNoColor; }

    void set(VertexId v, Color c) {
        ensure_ids(v + 1);
        ensure_palette(c);
        const Color old = chi_[v];
        if (old == c) return;
        if (old != kNoColor) buckets_[old].erase(v);
        chi_[v] = c;
        buckets_[c].insert(v);
    }

    void clear(VertexId v) {
        if (v >= chi_.size() || chi_[v] == kNoColor) return;
        buckets_[chi_[v]].erase(v);
        chi_[v] = kNoColor;
    }

    std::uint32_t load(Color c) const {
        return c < buckets_.size() ? static_cast<std::uint32_t>(buckets_[c].size()) : 0u;
    }

    const SlotSet& holders(Color c) const {
        static const SlotSet empty;
        return c < buckets_.size() ? buckets_[c] : empty;
    }

    std::uint32_t max_load() const {
        std::uint32_t m = 0;
        for (Color c = 1; c < buckets_.size(); ++c) {
            m = std::max(m, static_cast<std::uint32_t>(buckets_[c].size()));
        }
        return m;
    }

    std::uint32_t colors_in_use() const {
        std::uint32_t n = 0;
        for (Color c = 1; c < buckets_.size(); ++c) {
            if (!buckets_[c].empty()) ++n;
        }
        return n;
    }

    Color max_color_in_use() const {
        Color m = 0;
        for (Color c = 1; c < buckets_.size(); ++c) {
            if (!buckets_[c].empty()) m = c;
        }
        return m;
    }

    // Recount the per-color index from chi; true iff it matches the
    // incrementally maintained one. Test hook.
    bool recount_matches() const {
        std::vector<std::uint32_t> count(buckets_.size(), 0);
        for (VertexId v = 0; v < chi_.size(); ++v) {
            if (chi_[v] != kNoColor) {
                if (chi_[v] >= count.size()) return false;
                ++count[chi_[v]];
            }
        }
        for (Color c = 1; c < buckets_.size(); ++c) {
            if (count[c] != buckets_[c].size()) return false;
        }
        return true;
    }

    // Every live vertex colored, within the palette.
    bool covers(const DynamicGraph& g) const {
        for (VertexId v : g.live_vertices()) {
            const Color c = color(v);
            if (c == kNoColor || c > palette_) return false;
        }
        return true;
    }

private:
    std::vector<Color> chi_;
    std::vector<SlotSet> buckets_;  // buckets_[c] = vertices holding c
    Color palette_ = 0;
};

}  // namespace dyncolor
