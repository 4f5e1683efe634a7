#include "colorers/palette.hpp"

namespace dyncolor {

std::uint64_t PaletteScratch::scan(const DynamicGraph& g, const Coloring& chi, VertexId v,
                                   const LevelFn& level) {
    ++gen_cur_;
    const int lv = level(v);
    std::uint64_t touches = 0;
    for (VertexId w : g.neighbors(v)) {
        ++touches;
        const Color c = chi.color(w);
        if (c == kNoColor) continue;
        if (c >= gen_.size()) {
            gen_.resize(c + 1, 0);
            up_gen_.resize(c + 1, 0);
            down_count_.resize(c + 1, 0);
        }
        if (level(w) < lv) {
            if (gen_[c] != gen_cur_) {
                gen_[c] = gen_cur_;
                down_count_[c] = 0;
            }
            ++down_count_[c];
        } else {
            up_gen_[c] = gen_cur_;
        }
    }
    return touches;
}

std::vector<Color> PaletteScratch::candidates(Color k, std::size_t limit, std::uint64_t* work) const {
    std::vector<Color> out;
    for (Color c = 1; c <= k; ++c) {
        if (work) ++*work;
        if (is_candidate(c)) {
            out.push_back(c);
            if (limit != 0 && out.size() >= limit) break;
        }
    }
    return out;
}

std::uint32_t PaletteScratch::candidate_count(Color k) const {
    std::uint32_t n = 0;
    for (Color c = 1; c <= k; ++c) {
        if (is_candidate(c)) ++n;
    }
    return n;
}

PaletteView palette_view(const DynamicGraph& g, const Coloring& chi, VertexId v,
                         const LevelFn& level, Color k) {
    PaletteScratch scratch;
    scratch.scan(g, chi, v, level);
    PaletteView view;
    for (Color c = 1; c <= k; ++c) {
        const bool up = scratch.up_used(c);
        const std::uint32_t down = scratch.down_count(c);
        if (up) view.up_used.push_back(c);
        if (!up && down == 0) view.blank.push_back(c);
        if (!up && down == 1) view.once_down.push_back(c);
        if (!up && down >= 2) view.multi_down.push_back(c);
        if (!up && down <= 1) view.candidates.push_back(c);
    }
    return view;
}

}  // namespace dyncolor
