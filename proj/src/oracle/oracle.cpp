#include "oracle/oracle.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace dyncolor {
namespace oracle {

std::string Violation::describe() const {
    switch (kind) {
        case ViolationKind::MonochromaticEdge:
            return "monochromatic edge (" + std::to_string(u) + "," + std::to_string(v) +
                   ") color " + std::to_string(color);
        case ViolationKind::MissingColor:
            return "vertex " + std::to_string(u) + " has no color";
        case ViolationKind::PaletteOverflow:
            return "vertex " + std::to_string(u) + " color " + std::to_string(color) +
                   " exceeds palette " ;
    }
    return "?";
}

std::vector<Violation> verify_proper(const DynamicGraph& g, const Coloring& coloring,
                                     Color palette_limit) {
    std::vector<Violation> out;
    const Color k = palette_limit != 0 ? palette_limit : coloring.palette_size();
    for (VertexId v = 0; v < g.num_ids(); ++v) {
        if (!g.is_live(v)) continue;
        const Color cv = coloring.color(v);
        if (cv == kNoColor) {
            out.push_back({ViolationKind::MissingColor, v, 0, 0});
            continue;
        }
        if (cv > k) {
            out.push_back({ViolationKind::PaletteOverflow, v, 0, cv});
        }
        for (VertexId w : g.neighbors(v)) {
            if (w > v && coloring.color(w) == cv) {
                out.push_back({ViolationKind::MonochromaticEdge, v, w, cv});
            }
        }
    }
    return out;
}

Coloring greedy_delta_plus_one(const DynamicGraph& g) {
    Coloring chi;
    chi.ensure_ids(g.num_ids());
    chi.ensure_palette(g.delta() + 1);
    std::vector<char> used;
    for (VertexId v = 0; v < g.num_ids(); ++v) {
        if (!g.is_live(v)) continue;
        used.assign(g.degree(v) + 2, 0);
        for (VertexId w : g.neighbors(v)) {
            const Color c = chi.color(w);
            if (c != kNoColor && c < used.size()) used[c] = 1;
        }
        Color c = 1;
        while (used[c]) ++c;
        chi.set(v, c);
    }
    return chi;
}

namespace {

struct BnbState {
    std::vector<std::vector<int>> adj;  // dense index adjacency
    std::vector<int> color;
    int best;
    int n;

    bool feasible(int v, int c) const {
        for (int w : adj[v]) {
            if (color[w] == c) return false;
        }
        return true;
    }

    void expand(int v, int used) {
        if (used >= best) return;
        if (v == n) {
            best = used;
            return;
        }
        for (int c = 1; c <= used && c < best; ++c) {
            if (feasible(v, c)) {
                color[v] = c;
                expand(v + 1, used);
                color[v] = 0;
            }
        }
        if (used + 1 < best) {
            color[v] = used + 1;
            expand(v + 1, used + 1);
            color[v] = 0;
        }
    }
};

}  // namespace

int exact_chromatic_number(const DynamicGraph& g) {
    const auto live = g.live_vertices();
    const int n = static_cast<int>(live.size());
    if (n > 16) throw Error("exact_chromatic_number: graph too large (n > 16)");
    if (n == 0) return 0;

    // largest-degree-first ordering over a dense re-index
    std::vector<VertexId> order(live);
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        return g.degree(a) > g.degree(b);
    });
    std::vector<int> index(g.num_ids(), -1);
    for (int i = 0; i < n; ++i) index[order[i]] = i;

    BnbState s;
    s.n = n;
    s.adj.resize(n);
    for (int i = 0; i < n; ++i) {
        for (VertexId w : g.neighbors(order[i])) {
            s.adj[i].push_back(index[w]);
        }
    }
    s.color.assign(n, 0);
    const Coloring greedy = greedy_delta_plus_one(g);
    s.best = static_cast<int>(greedy.colors_in_use());

    // fix the first vertex's color to break color symmetry
    s.color[0] = 1;
    s.expand(1, 1);
    return s.best;
}

PaletteView brute_force_palette(const DynamicGraph& g, const Coloring& coloring, VertexId v,
                                const LevelFn& level, Color k) {
    PaletteView view;
    const int lv = level(v);
    for (Color c = 1; c <= k; ++c) {
        int down = 0;
        bool up = false;
        for (VertexId w : g.neighbors(v)) {
            if (coloring.color(w) != c) continue;
            if (level(w) < lv) {
                ++down;
            } else {
                up = true;
            }
        }
        if (up) view.up_used.push_back(c);
        if (!up && down == 0) view.blank.push_back(c);
        if (!up && down == 1) view.once_down.push_back(c);
        if (!up && down >= 2) view.multi_down.push_back(c);
        if (!up && down <= 1) view.candidates.push_back(c);
    }
    return view;
}

}  // namespace oracle
}  // namespace dyncolor
