#include "stream/generators.hpp"

#include <algorithm>
#include <unordered_map>

#include "core/errors.hpp"

namespace dyncolor {

namespace {

// Exhaustive uniform non-edge pick; used once rejection sampling stalls.
std::optional<std::pair<VertexId, VertexId>> enumerate_nonedge(const DynamicGraph& g, Rng& rng) {
    std::vector<std::pair<VertexId, VertexId>> nonedges;
    const auto live = g.live_vertices();
    for (std::size_t i = 0; i < live.size(); ++i) {
        for (std::size_t j = i + 1; j < live.size(); ++j) {
            if (!g.has_edge_true(live[i], live[j])) nonedges.emplace_back(live[i], live[j]);
        }
    }
    if (nonedges.empty()) return std::nullopt;
    return nonedges[rng.below(nonedges.size())];
}

}  // namespace

UpdateEvent uniform_nonedge(const DynamicGraph& g, Rng& rng) {
    const auto live = g.live_vertices();
    if (live.size() >= 2) {
        for (int tries = 0; tries < 4096; ++tries) {
            const VertexId u = live[rng.below(live.size())];
            const VertexId v = live[rng.below(live.size())];
            if (u != v && !g.has_edge_true(u, v)) return UpdateEvent::edge_insert(u, v);
        }
    }
    if (auto p = enumerate_nonedge(g, rng)) {
        return UpdateEvent::edge_insert(p->first, p->second);
    }
    throw StreamExhausted("graph is complete, no non-edge left");
}

UpdateStream gen_oblivious_stream(const AdversarySpec& spec, bool* truncated) {
    if (spec.n < 2) throw ConfigError("oblivious stream needs n >= 2");
    UpdateStream s;
    s.n0 = spec.n;
    s.n_max = spec.n;
    s.seed = spec.seed;
    if (truncated) *truncated = false;

    DynamicGraph g(spec.n);
    Rng rng(spec.seed);
    for (std::uint64_t i = 0; i < spec.t; ++i) {
        UpdateEvent e;
        try {
            e = uniform_nonedge(g, rng);
        } catch (const StreamExhausted&) {
            if (truncated) *truncated = true;
            break;
        }
        g.apply(e);
        s.events.push_back(std::move(e));
    }
    return s;
}

UpdateEvent adaptive_conflict_step(const DynamicGraph& g, const Coloring& coloring, Rng& rng) {
    if (g.complete()) throw StreamExhausted("graph is complete, adversary done");

    // Group live vertices by color, ascending id within a class.
    std::unordered_map<Color, std::vector<VertexId>> classes;
    for (VertexId v : g.live_vertices()) {
        const Color c = coloring.color(v);
        if (c != kNoColor) classes[c].push_back(v);
    }
    std::vector<Color> colors;
    colors.reserve(classes.size());
    std::uint64_t total_pairs = 0;
    for (const auto& [c, members] : classes) {
        if (members.size() >= 2) {
            colors.push_back(c);
            total_pairs += members.size() * (members.size() - 1) / 2;
        }
    }
    std::sort(colors.begin(), colors.end());

    // When the coloring is proper, any same-colored pair is non-adjacent, so
    // the first draw almost always lands. Retries cover transient states.
    if (total_pairs > 0) {
        for (int tries = 0; tries < 32; ++tries) {
            std::uint64_t idx = rng.below(total_pairs);
            for (Color c : colors) {
                const auto& members = classes[c];
                const std::uint64_t pairs = members.size() * (members.size() - 1) / 2;
                if (idx >= pairs) {
                    idx -= pairs;
                    continue;
                }
                // unrank pair idx within the class
                std::size_t i = 0;
                std::uint64_t row = members.size() - 1;
                while (idx >= row) {
                    idx -= row;
                    --row;
                    ++i;
                }
                const VertexId u = members[i];
                const VertexId v = members[i + 1 + idx];
                if (!g.has_edge_true(u, v)) return UpdateEvent::edge_insert(u, v);
                break;
            }
        }
        // transiently improper coloring: enumerate
        std::vector<std::pair<VertexId, VertexId>> options;
        for (Color c : colors) {
            const auto& members = classes[c];
            for (std::size_t i = 0; i < members.size(); ++i) {
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    if (!g.has_edge_true(members[i], members[j])) {
                        options.emplace_back(members[i], members[j]);
                    }
                }
            }
        }
        if (!options.empty()) {
            const auto& p = options[rng.below(options.size())];
            return UpdateEvent::edge_insert(p.first, p.second);
        }
    }
    return uniform_nonedge(g, rng);
}

UpdateStream gen_churn_stream(std::uint32_t n, std::uint64_t t, std::uint32_t delta_cap,
                              std::uint64_t seed) {
    if (n < 2 || delta_cap < 1) throw ConfigError("churn stream needs n >= 2 and delta_cap >= 1");
    UpdateStream s;
    s.n0 = n;
    s.n_max = n;
    s.seed = seed;

    DynamicGraph g(n);
    Rng rng(seed);
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::unordered_map<std::uint64_t, std::size_t> edge_pos;
    auto key = [](VertexId u, VertexId v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | v;
    };
    const std::uint64_t target = static_cast<std::uint64_t>(n) * delta_cap / 4;

    auto try_insert = [&]() -> std::optional<UpdateEvent> {
        for (int tries = 0; tries < 4096; ++tries) {
            const VertexId u = static_cast<VertexId>(rng.below(n));
            const VertexId v = static_cast<VertexId>(rng.below(n));
            if (u == v || g.has_edge(u, v)) continue;
            if (g.degree(u) >= delta_cap || g.degree(v) >= delta_cap) continue;
            return UpdateEvent::edge_insert(u, v);
        }
        return std::nullopt;  // saturated under the cap (or very unlucky)
    };

    for (std::uint64_t i = 0; i < t; ++i) {
        const bool want_insert =
            edges.empty() || (edges.size() < target ? true : rng.coin());
        std::optional<UpdateEvent> e;
        if (want_insert) e = try_insert();
        if (!e) {
            if (edges.empty()) throw ConfigError("churn stream cannot make progress");
            const std::size_t idx = rng.below(edges.size());
            const auto [u, v] = edges[idx];
            e = UpdateEvent::edge_delete(u, v);
        }
        g.apply(*e);
        if (e->kind == UpdateKind::EdgeInsert) {
            edge_pos[key(e->u, e->v)] = edges.size();
            edges.emplace_back(e->u, e->v);
        } else {
            const std::size_t idx = edge_pos.at(key(e->u, e->v));
            edge_pos[key(edges.back().first, edges.back().second)] = idx;
            edges[idx] = edges.back();
            edges.pop_back();
            edge_pos.erase(key(e->u, e->v));
        }
        s.events.push_back(std::move(*e));
    }
    return s;
}

}  // namespace dyncolor
