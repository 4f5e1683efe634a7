#include "colorers/sparse_dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <unordered_set>

#include "core/errors.hpp"

namespace dyncolor {

namespace {

// row bitsets over vertex ids, for triangle-ish counting
struct BitRows {
    std::size_t words = 0;
    std::vector<std::uint64_t> data;

    BitRows(const DynamicGraph& g) {
        const std::size_t n = g.num_ids();
        words = (n + 63) / 64;
        data.assign(words * n, 0);
        for (VertexId v = 0; v < n; ++v) {
            if (!g.is_live(v)) continue;
            for (VertexId w : g.neighbors(v)) {
                data[v * words + w / 64] |= 1ull << (w % 64);
            }
        }
    }

    std::uint64_t common(VertexId a, VertexId b) const {
        const std::uint64_t* ra = &data[a * words];
        const std::uint64_t* rb = &data[b * words];
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < words; ++i) n += std::popcount(ra[i] & rb[i]);
        return n;
    }
};

double binom2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

std::uint64_t neighborhood_edges(const DynamicGraph& g, VertexId v) {
    // sum over neighbors u of |N(u) cap N(v)|, each edge counted twice
    std::unordered_set<VertexId> nv(g.neighbors(v).begin(), g.neighbors(v).end());
    std::uint64_t twice = 0;
    for (VertexId u : g.neighbors(v)) {
        for (VertexId w : g.neighbors(u)) {
            if (w != v && nv.count(w)) ++twice;
        }
    }
    return twice / 2;
}

bool sparse_predicate(const DynamicGraph& g, VertexId v, double epsilon) {
    const double bound = (1.0 - epsilon * epsilon) * binom2(g.delta());
    return static_cast<double>(neighborhood_edges(g, v)) <= bound;
}

Decomposition hss_decompose(const DynamicGraph& g, double epsilon) {
    Decomposition d;
    d.epsilon = epsilon;
    d.membership.assign(g.num_ids(), -1);
    const double delta = g.delta();
    if (g.delta() < 1) return d;

    BitRows rows(g);
    const double sparse_bound = (1.0 - epsilon * epsilon) * binom2(delta);

    std::vector<VertexId> candidates;
    std::vector<char> is_candidate(g.num_ids(), 0);
    for (VertexId v : g.live_vertices()) {
        // edges inside N(v), via bit rows
        std::uint64_t twice = 0;
        for (VertexId u : g.neighbors(v)) twice += rows.common(u, v);
        if (static_cast<double>(twice / 2) > sparse_bound) {
            candidates.push_back(v);
            is_candidate[v] = 1;
        }
    }
    if (candidates.empty()) return d;

    // friend relation: adjacent candidates with a large common neighborhood
    const double friend_bound = std::max(1.0, (1.0 - 2.0 * epsilon) * delta);
    std::vector<int> comp(g.num_ids(), -1);
    std::vector<std::vector<VertexId>> groups;
    for (VertexId seed : candidates) {
        if (comp[seed] >= 0) continue;
        const int id = static_cast<int>(groups.size());
        groups.emplace_back();
        std::vector<VertexId> stack{seed};
        comp[seed] = id;
        while (!stack.empty()) {
            const VertexId x = stack.back();
            stack.pop_back();
            groups[id].push_back(x);
            for (VertexId y : g.neighbors(x)) {
                if (comp[y] >= 0 || !is_candidate[y]) continue;
                if (static_cast<double>(rows.common(x, y)) >= friend_bound) {
                    comp[y] = id;
                    stack.push_back(y);
                }
            }
        }
        std::sort(groups[id].begin(), groups[id].end());
    }

    // validate the almost-clique predicates; any failure rejects the split
    for (auto& c : groups) {
        const double size = static_cast<double>(c.size());
        if (size < (1.0 - epsilon) * delta - 1e-9 || size > (1.0 + epsilon) * delta + 1e-9) {
            d.fallback_all_sparse = true;
            return d;
        }
        std::unordered_set<VertexId> in_c(c.begin(), c.end());
        for (VertexId v : c) {
            std::uint64_t inside = 0;
            for (VertexId w : g.neighbors(v)) {
                if (in_c.count(w)) ++inside;
            }
            const double missing = size - static_cast<double>(inside);
            const double outside = static_cast<double>(g.degree(v)) - static_cast<double>(inside);
            if (missing > epsilon * delta + 1e-9 || outside > epsilon * delta + 1e-9) {
                d.fallback_all_sparse = true;
                return d;
            }
        }
    }

    d.cliques = std::move(groups);
    for (std::size_t i = 0; i < d.cliques.size(); ++i) {
        for (VertexId v : d.cliques[i]) d.membership[v] = static_cast<int>(i);
    }
    return d;
}

std::vector<std::string> check_decomposition(const DynamicGraph& g, const Decomposition& d) {
    std::vector<std::string> out;
    const double delta = g.delta();
    const double eps = d.epsilon;
    for (VertexId v : g.live_vertices()) {
        if (d.is_sparse(v) && !d.fallback_all_sparse && !sparse_predicate(g, v, eps)) {
            out.push_back("dense vertex " + std::to_string(v) + " left in the sparse set");
        }
    }
    for (std::size_t i = 0; i < d.cliques.size(); ++i) {
        const auto& c = d.cliques[i];
        const double size = static_cast<double>(c.size());
        if (size < (1.0 - eps) * delta - 1e-9 || size > (1.0 + eps) * delta + 1e-9) {
            out.push_back("clique " + std::to_string(i) + " order out of range");
        }
        std::unordered_set<VertexId> in_c(c.begin(), c.end());
        for (VertexId v : c) {
            if (d.membership[v] != static_cast<int>(i)) {
                out.push_back("membership mismatch at " + std::to_string(v));
            }
            std::uint64_t inside = 0;
            for (VertexId w : g.neighbors(v)) {
                if (in_c.count(w)) ++inside;
            }
            if (size - inside > eps * delta + 1e-9) {
                out.push_back("vertex " + std::to_string(v) + " misses too much of its clique");
            }
            if (g.degree(v) - inside > eps * delta + 1e-9) {
                out.push_back("vertex " + std::to_string(v) + " has too many outside edges");
            }
        }
    }
    return out;
}

SparseDenseColorer::SparseDenseColorer(SparseDenseOptions opt) : opt_(opt), rng_(opt.seed) {
    if (opt_.epsilon <= 0.0 || opt_.epsilon >= 1.0) {
        throw ConfigError("sparse-dense colorer needs epsilon in (0,1)");
    }
}

bool SparseDenseColorer::color_feasible(const DynamicGraph& g, VertexId v, Color c) const {
    for (VertexId u : g.neighbors(v)) {
        if (chi_.color(u) == c) return false;
    }
    return true;
}

bool SparseDenseColorer::color_feasible_outside(const DynamicGraph& g, VertexId v, Color c,
                                                const std::vector<char>& in_remaining) const {
    // checked through the per-color load index: cost proportional to load(c)
    for (VertexId u : chi_.holders(c).items()) {
        if (u < in_remaining.size() && in_remaining[u]) continue;
        if (g.has_edge(u, v)) return false;
    }
    return true;
}

Color SparseDenseColorer::min_load_feasible(const DynamicGraph& g, VertexId v) {
    const Color k = chi_.palette_size();
    Color best = kNoColor;
    std::uint32_t best_load = 0;
    std::vector<char> used(k + 1, 0);
    for (VertexId u : g.neighbors(v)) {
        ++work_;
        const Color c = chi_.color(u);
        if (c <= k) used[c] = 1;
    }
    for (Color c = 1; c <= k; ++c) {
        ++work_;
        if (used[c]) continue;
        if (best == kNoColor || chi_.load(c) < best_load) {
            best = c;
            best_load = chi_.load(c);
        }
    }
    if (best == kNoColor) throw InvariantError("no feasible color for vertex " + std::to_string(v));
    return best;
}

std::uint64_t SparseDenseColorer::batch_period(const DynamicGraph& g) const {
    if (opt_.batch_override > 0) return opt_.batch_override;
    const double d = std::max<double>(g.delta(), 1.0);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
        std::ceil(opt_.epsilon * opt_.epsilon * d)));
}

double SparseDenseColorer::load_bound(const DynamicGraph& g) const {
    const double n = std::max<double>(g.live_count(), 2.0);
    const double delta = std::max<double>(g.delta(), 1.0);
    return opt_.load_cap * (n / delta) * std::log(n);
}

void SparseDenseColorer::check_load_invariant(const DynamicGraph& g) {
    if (g.delta() < 1) return;
    const double bound = load_bound(g);
    if (static_cast<double>(chi_.max_load()) > bound) ++load_violations_;
}

void SparseDenseColorer::attach(DynamicGraph& g) {
    chi_.ensure_ids(g.num_ids());
    chi_.ensure_palette(g.delta() + 1);
    tau_.assign(g.num_ids(), 0);
    for (VertexId v : g.live_vertices()) {
        chi_.set(v, min_load_feasible(g, v));
    }
    RecolorReport ignore;
    recompute_decomposition(g, ignore);
    check_load_invariant(g);
}

std::vector<VertexId> SparseDenseColorer::one_shot_sparse_coloring(DynamicGraph& g) {
    const Color k = chi_.palette_size();
    std::vector<VertexId> sparse;
    for (VertexId v : g.live_vertices()) {
        if (decomp_.is_sparse(v)) sparse.push_back(v);
    }
    std::vector<Color> tentative(sparse.size());
    for (std::size_t i = 0; i < sparse.size(); ++i) {
        tentative[i] = 1 + static_cast<Color>(rng_.below(k));
    }
    std::vector<VertexId> assigned;
    for (std::size_t i = 0; i < sparse.size(); ++i) {
        const VertexId v = sparse[i];
        const Color c = tentative[i];
        ++work_;
        if (color_feasible(g, v, c)) {
            work_ += g.degree(v);
            chi_.set(v, c);
            tau_[v] = ++recolor_seq_;
            assigned.push_back(v);
        } else {
            work_ += g.degree(v);
        }
    }
    return assigned;
}

void SparseDenseColorer::run_refresh(DynamicGraph& g, RecolorReport& report) {
    const auto assigned = one_shot_sparse_coloring(g);
    std::vector<char> got(g.num_ids(), 0);
    for (VertexId v : assigned) got[v] = 1;
    for (VertexId v : assigned) report.recolored.push_back(v);

    // leftover sparse vertices go through the greedy fallback
    for (VertexId v : g.live_vertices()) {
        if (!decomp_.is_sparse(v) || got[v]) continue;
        chi_.set(v, min_load_feasible(g, v));
        tau_[v] = ++recolor_seq_;
        report.recolored.push_back(v);
    }
    ++refreshes_;

    // surplus = palette slack after the refresh
    const Color k = chi_.palette_size();
    std::uint64_t sparse_count = 0, with_surplus = 0;
    double surplus_sum = 0.0;
    std::unordered_set<Color> distinct;
    for (VertexId v : g.live_vertices()) {
        if (!decomp_.is_sparse(v)) continue;
        ++sparse_count;
        distinct.clear();
        for (VertexId u : g.neighbors(v)) {
            const Color c = chi_.color(u);
            if (c != kNoColor) distinct.insert(c);
        }
        const double surplus = static_cast<double>(k) - static_cast<double>(distinct.size());
        surplus_sum += surplus;
        if (surplus >= 1.0) ++with_surplus;
    }
    if (sparse_count > 0) {
        last_mean_surplus_ = surplus_sum / static_cast<double>(sparse_count);
        surplus_mean_accum_ += last_mean_surplus_;
        ++surplus_batches_;
        surplus_frac_ge1_min_ = std::min(
            surplus_frac_ge1_min_,
            static_cast<double>(with_surplus) / static_cast<double>(sparse_count));
    }
}

std::vector<Color> SparseDenseColorer::classify_heavy_colors(const DynamicGraph& g,
                                                             int clique) const {
    std::vector<std::uint64_t> boundary(chi_.palette_size() + 1, 0);
    const auto& members = decomp_.cliques[clique];
    std::unordered_set<VertexId> in_c(members.begin(), members.end());
    for (VertexId a : members) {
        const Color c = chi_.color(a);
        if (c == kNoColor) continue;
        for (VertexId b : g.neighbors(a)) {
            if (!in_c.count(b)) ++boundary[c];
        }
    }
    const double threshold = opt_.theta_heavy * std::max<double>(g.delta(), 1.0);
    std::vector<Color> heavy;
    for (Color c = 1; c < boundary.size(); ++c) {
        if (static_cast<double>(boundary[c]) >= threshold) heavy.push_back(c);
    }
    return heavy;
}

void SparseDenseColorer::perfect_match_remaining(const DynamicGraph& g, int clique,
                                                 RecolorReport& report) {
    CliqueState& st = clique_state_[clique];
    const Color k = chi_.palette_size();

    std::vector<char> in_remaining(g.num_ids(), 0);
    for (VertexId v : st.singles) in_remaining[v] = 1;

    // remaining colors: not used by matched pairs, not heavy when excluded
    std::vector<char> color_ok(k + 1, 1);
    color_ok[0] = 0;
    for (const auto& [a, b] : st.pairs) {
        const Color c = chi_.color(a);
        if (c <= k) color_ok[c] = 0;
    }
    const double delta = std::max<double>(g.delta(), 1.0);
    const bool large = static_cast<double>(decomp_.cliques[clique].size()) >= delta + 1.0 ||
                       static_cast<double>(st.pairs.size()) >= delta / 10.0;
    if (large) {
        for (Color c : st.heavy) {
            if (c <= k) color_ok[c] = 0;
        }
    }

    std::vector<int> color_owner(k + 1, -1);  // index into singles
    std::vector<Color> assigned(st.singles.size(), kNoColor);
    std::vector<char> visited_color(k + 1, 0);

    // Kuhn's augmenting search, colors tried in ascending order
    std::function<bool(int)> try_assign = [&](int vi) -> bool {
        const VertexId v = st.singles[vi];
        for (Color c = 1; c <= k; ++c) {
            ++work_;
            if (!color_ok[c] || visited_color[c]) continue;
            if (!color_feasible_outside(g, v, c, in_remaining)) continue;
            visited_color[c] = 1;
            if (color_owner[c] < 0 || try_assign(color_owner[c])) {
                color_owner[c] = vi;
                assigned[vi] = c;
                return true;
            }
        }
        return false;
    };

    for (std::size_t vi = 0; vi < st.singles.size(); ++vi) {
        std::fill(visited_color.begin(), visited_color.end(), 0);
        if (!try_assign(static_cast<int>(vi))) {
            // Hall witness: the failed vertex plus the owners of every color
            // reachable from it, against those colors
            std::vector<VertexId> wit_v{st.singles[vi]};
            std::vector<Color> wit_c;
            for (Color c = 1; c <= k; ++c) {
                if (visited_color[c]) {
                    wit_c.push_back(c);
                    if (color_owner[c] >= 0) wit_v.push_back(st.singles[color_owner[c]]);
                }
            }
            throw MatchingError("no perfect matching from remaining vertices to colors",
                                std::move(wit_v), std::move(wit_c));
        }
    }
    for (std::size_t vi = 0; vi < st.singles.size(); ++vi) {
        const VertexId v = st.singles[vi];
        if (chi_.color(v) != assigned[vi]) {
            chi_.set(v, assigned[vi]);
            tau_[v] = ++recolor_seq_;
            report.recolored.push_back(v);
        }
    }
}

void SparseDenseColorer::color_dense_clique(DynamicGraph& g, int clique, RecolorReport& report) {
    CliqueState& st = clique_state_[clique];
    st.pairs.clear();
    st.singles.clear();
    const auto& members = decomp_.cliques[clique];
    const Color k = chi_.palette_size();

    st.heavy = classify_heavy_colors(g, clique);

    // greedy maximal matching over the clique's non-edges
    std::vector<char> matched(g.num_ids(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (matched[members[i]]) continue;
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            ++work_;
            if (matched[members[j]] || g.has_edge(members[i], members[j])) continue;
            st.pairs.emplace_back(members[i], members[j]);
            matched[members[i]] = 1;
            matched[members[j]] = 1;
            break;
        }
    }

    // one color per pair, feasible for both endpoints against the world
    std::vector<char> used_pair_color(k + 1, 0);
    std::vector<std::pair<VertexId, VertexId>> kept;
    for (const auto& [a, b] : st.pairs) {
        Color best = kNoColor;
        std::uint32_t best_load = 0;
        std::vector<char> blocked(k + 1, 0);
        for (VertexId u : g.neighbors(a)) {
            const Color c = chi_.color(u);
            if (c <= k && u != b) blocked[c] = 1;
            ++work_;
        }
        for (VertexId u : g.neighbors(b)) {
            const Color c = chi_.color(u);
            if (c <= k && u != a) blocked[c] = 1;
            ++work_;
        }
        for (Color c = 1; c <= k; ++c) {
            ++work_;
            if (blocked[c] || used_pair_color[c]) continue;
            if (best == kNoColor || chi_.load(c) < best_load) {
                best = c;
                best_load = chi_.load(c);
            }
        }
        if (best == kNoColor) {
            st.singles.push_back(a);  // give both up to the matching stage
            st.singles.push_back(b);
            continue;
        }
        used_pair_color[best] = 1;
        for (VertexId v : {a, b}) {
            if (chi_.color(v) != best) {
                chi_.set(v, best);
                tau_[v] = ++recolor_seq_;
                report.recolored.push_back(v);
            }
        }
        kept.emplace_back(a, b);
    }
    st.pairs = std::move(kept);

    for (VertexId v : members) {
        if (!matched[v]) st.singles.push_back(v);
    }
    std::sort(st.singles.begin(), st.singles.end());
    perfect_match_remaining(g, clique, report);
    ++full_clique_rebuilds_;
}

void SparseDenseColorer::install_decomposition(Decomposition d) {
    decomp_ = std::move(d);
    clique_state_.assign(decomp_.cliques.size(), CliqueState{});
}

void SparseDenseColorer::recompute_decomposition(DynamicGraph& g, RecolorReport& report) {
    decomp_ = hss_decompose(g, opt_.epsilon);
    clique_state_.assign(decomp_.cliques.size(), CliqueState{});
    ++decompositions_;
    for (int i = 0; i < static_cast<int>(decomp_.cliques.size()); ++i) {
        try {
            color_dense_clique(g, i, report);
        } catch (const MatchingError&) {
            ++matching_failures_;
            // demote the whole clique to the sparse side and recolor greedily
            ++dropped_cliques_;
            for (VertexId v : decomp_.cliques[i]) {
                decomp_.membership[v] = -1;
                chi_.set(v, min_load_feasible(g, v));
                tau_[v] = ++recolor_seq_;
                report.recolored.push_back(v);
            }
            decomp_.cliques[i].clear();
            clique_state_[i] = CliqueState{};
        }
    }
}

Color SparseDenseColorer::recolor_sparse(DynamicGraph& g, VertexId v, RecolorReport& report) {
    const Color k = chi_.palette_size();
    const std::uint64_t cap = static_cast<std::uint64_t>(
        std::ceil(opt_.sample_cap_a / (opt_.epsilon * opt_.epsilon)));
    for (std::uint64_t i = 0; i < cap; ++i) {
        const Color c = 1 + static_cast<Color>(rng_.below(k));
        // feasibility through the load index
        bool ok = true;
        for (VertexId u : chi_.holders(c).items()) {
            ++work_;
            if (g.has_edge(u, v)) {
                ok = false;
                break;
            }
        }
        if (ok && c != chi_.color(v)) {
            chi_.set(v, c);
            tau_[v] = ++recolor_seq_;
            report.recolored.push_back(v);
            ++sparse_recolors_;
            return c;
        }
    }
    const Color c = min_load_feasible(g, v);  // pigeonhole fallback
    chi_.set(v, c);
    tau_[v] = ++recolor_seq_;
    report.recolored.push_back(v);
    ++sparse_recolors_;
    return c;
}

bool SparseDenseColorer::augment_repair(DynamicGraph& g, VertexId v, int clique,
                                        std::size_t depth_cap, RecolorReport& report) {
    CliqueState& st = clique_state_[clique];
    const Color k = chi_.palette_size();

    // v joins the remaining side; if it was paired, the partner keeps the color
    auto pair_it = std::find_if(st.pairs.begin(), st.pairs.end(), [&](const auto& p) {
        return p.first == v || p.second == v;
    });
    if (pair_it != st.pairs.end()) {
        const VertexId partner = pair_it->first == v ? pair_it->second : pair_it->first;
        st.pairs.erase(pair_it);
        st.singles.push_back(partner);
    }
    if (std::find(st.singles.begin(), st.singles.end(), v) == st.singles.end()) {
        st.singles.push_back(v);
    }
    std::sort(st.singles.begin(), st.singles.end());

    std::vector<char> in_remaining(g.num_ids(), 0);
    for (VertexId u : st.singles) in_remaining[u] = 1;

    std::vector<char> color_ok(k + 1, 1);
    color_ok[0] = 0;
    for (const auto& [a, b] : st.pairs) {
        const Color c = chi_.color(a);
        if (c <= k) color_ok[c] = 0;
    }
    const double delta = std::max<double>(g.delta(), 1.0);
    const bool large = static_cast<double>(decomp_.cliques[clique].size()) >= delta + 1.0 ||
                       static_cast<double>(st.pairs.size()) >= delta / 10.0;
    if (large) {
        st.heavy = classify_heavy_colors(g, clique);
        for (Color c : st.heavy) {
            if (c <= k) color_ok[c] = 0;
        }
    }

    // current single -> color assignment from chi, except v which needs one
    std::vector<int> color_owner(k + 1, -1);
    for (std::size_t i = 0; i < st.singles.size(); ++i) {
        const VertexId u = st.singles[i];
        if (u == v) continue;
        const Color c = chi_.color(u);
        if (c <= k && color_owner[c] < 0) color_owner[c] = static_cast<int>(i);
    }
    const int vi = static_cast<int>(
        std::find(st.singles.begin(), st.singles.end(), v) - st.singles.begin());

    std::vector<char> visited_color(k + 1, 0);
    std::vector<Color> newly(st.singles.size(), kNoColor);
    std::function<bool(int, std::size_t)> try_assign = [&](int idx, std::size_t depth) -> bool {
        if (depth >= depth_cap) return false;
        const VertexId u = st.singles[idx];
        for (Color c = 1; c <= k; ++c) {
            ++work_;
            if (!color_ok[c] || visited_color[c]) continue;
            if (!color_feasible_outside(g, u, c, in_remaining)) continue;
            visited_color[c] = 1;
            if (color_owner[c] < 0 || color_owner[c] == idx ||
                try_assign(color_owner[c], depth + 1)) {
                color_owner[c] = idx;
                newly[idx] = c;
                return true;
            }
        }
        return false;
    };

    if (!try_assign(vi, 0)) return false;

    for (std::size_t i = 0; i < st.singles.size(); ++i) {
        if (newly[i] != kNoColor && chi_.color(st.singles[i]) != newly[i]) {
            chi_.set(st.singles[i], newly[i]);
            tau_[st.singles[i]] = ++recolor_seq_;
            report.recolored.push_back(st.singles[i]);
        }
    }
    return true;
}

void SparseDenseColorer::recolor_dense(DynamicGraph& g, VertexId v, RecolorReport& report) {
    const int ci = decomp_.membership[v];
    ++dense_recolors_;
    const double delta = std::max<double>(g.delta(), 1.0);
    CliqueState& st = clique_state_[ci];
    const bool large = static_cast<double>(decomp_.cliques[ci].size()) >= delta + 1.0 ||
                       static_cast<double>(st.pairs.size()) >= delta / 10.0;

    if (!large) {
        // sample colors unused inside the clique
        std::vector<char> used(chi_.palette_size() + 1, 0);
        for (VertexId u : decomp_.cliques[ci]) {
            ++work_;
            const Color c = chi_.color(u);
            if (c != kNoColor) used[c] = 1;
        }
        std::vector<Color> unused;
        for (Color c = 1; c <= chi_.palette_size(); ++c) {
            if (!used[c]) unused.push_back(c);
        }
        if (!unused.empty()) {
            const double n = std::max<double>(g.live_count(), 2.0);
            const std::uint64_t cap = std::max<std::uint64_t>(
                1, static_cast<std::uint64_t>(
                       std::ceil(opt_.sample_cap_b * opt_.epsilon * delta * std::log(n))));
            for (std::uint64_t i = 0; i < cap; ++i) {
                const Color c = unused[rng_.below(unused.size())];
                ++dense_samples_;
                bool ok = true;
                for (VertexId u : chi_.holders(c).items()) {
                    ++work_;
                    if (g.has_edge(u, v)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    chi_.set(v, c);
                    tau_[v] = ++recolor_seq_;
                    report.recolored.push_back(v);
                    return;
                }
                ++dense_rejections_;
            }
        }
        // length-5 augmenting path: three vertices, three colors
        if (augment_repair(g, v, ci, 3, report)) return;
        try {
            color_dense_clique(g, ci, report);  // repair of last resort
        } catch (const MatchingError&) {
            ++matching_failures_;
            recompute_decomposition(g, report);
        }
        return;
    }

    // large clique (or large matching): augmenting path over light colors
    if (augment_repair(g, v, ci, st.singles.size() + 2, report)) return;
    try {
        color_dense_clique(g, ci, report);
    } catch (const MatchingError&) {
        ++matching_failures_;
        recompute_decomposition(g, report);
    }
}

void SparseDenseColorer::recolor_vertex(DynamicGraph& g, VertexId v, RecolorReport& report) {
    if (decomp_.is_sparse(v)) {
        recolor_sparse(g, v, report);
    } else {
        recolor_dense(g, v, report);
    }
    if (chi_.color(v) > g.delta() + 1) ++palette_overflows_;
}

RecolorReport SparseDenseColorer::apply(DynamicGraph& g, const UpdateEvent& e) {
    RecolorReport report;
    const std::uint64_t work_before = work_;
    ++updates_;
    ++since_refresh_;
    ++since_decompose_;
    switch (e.kind) {
        case UpdateKind::EdgeInsert: {
            g.apply(e);
            chi_.ensure_palette(g.delta() + 1);
            if (chi_.color(e.u) == chi_.color(e.v)) {
                report.conflict = true;
                ++conflicts_;
                // prefer the cheap side: a sparse endpoint when there is one
                VertexId x = e.u;
                const bool us = decomp_.is_sparse(e.u), vs = decomp_.is_sparse(e.v);
                if (us != vs) {
                    x = us ? e.u : e.v;
                } else if (tau_[e.v] > tau_[e.u] || (tau_[e.v] == tau_[e.u] && e.v < e.u)) {
                    x = e.v;
                }
                recolor_vertex(g, x, report);
            }
            break;
        }
        case UpdateKind::EdgeDelete:
            g.apply(e);
            break;
        case UpdateKind::VertexInsert: {
            g.apply(e);
            chi_.ensure_ids(g.num_ids());
            chi_.ensure_palette(g.delta() + 1);
            tau_.resize(g.num_ids(), 0);
            if (decomp_.membership.size() < g.num_ids()) {
                decomp_.membership.resize(g.num_ids(), -1);
            }
            chi_.set(e.u, min_load_feasible(g, e.u));
            tau_[e.u] = ++recolor_seq_;
            report.recolored.push_back(e.u);
            break;
        }
        case UpdateKind::VertexDelete: {
            const int ci = decomp_.membership.size() > e.u ? decomp_.membership[e.u] : -1;
            if (ci >= 0) {
                auto& members = decomp_.cliques[ci];
                members.erase(std::remove(members.begin(), members.end(), e.u), members.end());
                auto& st = clique_state_[ci];
                st.singles.erase(std::remove(st.singles.begin(), st.singles.end(), e.u),
                                 st.singles.end());
                auto it = std::find_if(st.pairs.begin(), st.pairs.end(), [&](const auto& p) {
                    return p.first == e.u || p.second == e.u;
                });
                if (it != st.pairs.end()) {
                    st.singles.push_back(it->first == e.u ? it->second : it->first);
                    st.pairs.erase(it);
                }
                decomp_.membership[e.u] = -1;
            }
            chi_.clear(e.u);
            g.apply(e);
            break;
        }
    }

    if (since_decompose_ >= std::max<std::uint64_t>(
            1, opt_.decompose_interval ? opt_.decompose_interval : g.live_count())) {
        since_decompose_ = 0;
        recompute_decomposition(g, report);
    }
    if (since_refresh_ >= batch_period(g)) {
        since_refresh_ = 0;
        run_refresh(g, report);
    }
    check_load_invariant(g);
    report.work = work_ - work_before;
    return report;
}

void SparseDenseColorer::stats(json& out) const {
    json s = json::object();
    s["epsilon"] = opt_.epsilon;
    s["conflicts"] = conflicts_;
    s["sparse_recolors"] = sparse_recolors_;
    s["dense_recolors"] = dense_recolors_;
    s["refreshes"] = refreshes_;
    s["decompositions"] = decompositions_;
    s["clique_rebuilds"] = full_clique_rebuilds_;
    s["dropped_cliques"] = dropped_cliques_;
    s["cliques"] = decomp_.cliques.size();
    s["fallback_all_sparse"] = decomp_.fallback_all_sparse;
    json surplus = json::object();
    surplus["batches"] = surplus_batches_;
    surplus["mean_of_means"] =
        surplus_batches_ ? surplus_mean_accum_ / static_cast<double>(surplus_batches_) : 0.0;
    surplus["last_mean"] = last_mean_surplus_;
    surplus["min_frac_with_surplus"] = surplus_batches_ ? surplus_frac_ge1_min_ : 1.0;
    s["surplus"] = surplus;
    out["sparse_dense"] = s;
}

void SparseDenseColorer::violation_counts(json& out) const {
    out["color_load"] = load_violations_;
    out["palette_overflow"] = palette_overflows_;
}

}  // namespace dyncolor
