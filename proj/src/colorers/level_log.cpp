#include "colorers/level_log.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace dyncolor {

namespace {

constexpr int kFloorLevel = 4;

std::uint64_t ipow_sat(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (1ull << 60)) return 1ull << 62;
        r *= base;
    }
    return r;
}

}  // namespace

LevelLogColorer::LevelLogColorer(LevelLogOptions opt) : opt_(opt), rng_(opt.seed) {
    if (opt_.beta < 2) throw ConfigError("level colorer needs beta >= 2");
}

std::uint64_t LevelLogColorer::threshold_up(VertexId v) const {
    return ipow_sat(opt_.beta, level_[v]);
}

std::uint64_t LevelLogColorer::threshold_down(VertexId v) const {
    return ipow_sat(opt_.beta, level_[v] - 5);
}

bool LevelLogColorer::upper_bound_violated(VertexId v) const {
    return static_cast<std::uint64_t>(down_count_[v]) + same_count_[v] > threshold_up(v);
}

bool LevelLogColorer::lower_bound_violated(VertexId v) const {
    // the floor level is exempt: there is nowhere lower to go
    return level_[v] > kFloorLevel && down_count_[v] < threshold_down(v);
}

void LevelLogColorer::ensure_vertex(VertexId v) {
    if (v < level_.size()) return;
    level_.resize(v + 1, kFloorLevel);
    tau_.resize(v + 1, 0);
    down_count_.resize(v + 1, 0);
    same_count_.resize(v + 1, 0);
    dirty_flag_.resize(v + 1, 0);
}

void LevelLogColorer::mark_dirty(VertexId v) {
    if (dirty_flag_[v]) return;
    if (upper_bound_violated(v)) {
        dirty_flag_[v] = 1;
        dirty_up_.push_back(v);
    } else if (lower_bound_violated(v)) {
        dirty_flag_[v] = 1;
        dirty_down_.push_back(v);
    }
}

void LevelLogColorer::add_edge_counts(VertexId u, VertexId v) {
    if (level_[v] < level_[u]) {
        ++down_count_[u];
    } else if (level_[v] == level_[u]) {
        ++same_count_[u];
    }
    if (level_[u] < level_[v]) {
        ++down_count_[v];
    } else if (level_[u] == level_[v]) {
        ++same_count_[v];
    }
    mark_dirty(u);
    mark_dirty(v);
}

void LevelLogColorer::remove_edge_counts(VertexId u, VertexId v) {
    if (level_[v] < level_[u]) {
        --down_count_[u];
    } else if (level_[v] == level_[u]) {
        --same_count_[u];
    }
    if (level_[u] < level_[v]) {
        --down_count_[v];
    } else if (level_[u] == level_[v]) {
        --same_count_[v];
    }
    mark_dirty(u);
    mark_dirty(v);
}

void LevelLogColorer::set_level(const DynamicGraph& g, VertexId v, int new_level) {
    const int old = level_[v];
    if (old == new_level) return;
    level_[v] = new_level;
    std::uint32_t down = 0, same = 0;
    for (VertexId w : g.neighbors(v)) {
        ++work_;
        // w's view of v changed
        if (old < level_[w]) {
            --down_count_[w];
        } else if (old == level_[w]) {
            --same_count_[w];
        }
        if (new_level < level_[w]) {
            ++down_count_[w];
        } else if (new_level == level_[w]) {
            ++same_count_[w];
        }
        mark_dirty(w);
        if (opt_.audit) audit_set_.insert(w);
        if (level_[w] < new_level) {
            ++down;
        } else if (level_[w] == new_level) {
            ++same;
        }
    }
    down_count_[v] = down;
    same_count_[v] = same;
    mark_dirty(v);
    if (opt_.audit) audit_set_.insert(v);
    ++level_moves_;
}

std::uint32_t LevelLogColorer::update_levels(DynamicGraph& g) {
    const int max_lvl_bound = kFloorLevel + 2 +
        static_cast<int>(std::ceil(std::log(std::max<double>(g.delta(), 2)) / std::log(opt_.beta)));
    const std::uint64_t cap =
        std::max<std::uint64_t>(64, static_cast<std::uint64_t>(g.live_count()) * (max_lvl_bound + 1));
    std::uint64_t iterations = 0;
    std::uint32_t moves = 0;
    std::vector<std::uint32_t> hist;

    auto level_histogram = [&](VertexId x) {
        hist.assign(max_lvl_bound + 2, 0);
        for (VertexId w : g.neighbors(x)) {
            ++work_;
            const int l = std::min(level_[w], max_lvl_bound + 1);
            ++hist[l];
        }
    };

    for (;;) {
        VertexId x = 0;
        bool promote = false;
        bool found = false;
        // invariant-2 violators first, demotions only when no promotion is pending
        while (!dirty_up_.empty()) {
            x = dirty_up_.back();
            dirty_up_.pop_back();
            dirty_flag_[x] = 0;
            if (g.is_live(x) && upper_bound_violated(x)) {
                promote = true;
                found = true;
                break;
            }
            mark_dirty(x);  // may still violate the lower bound
        }
        if (!found) {
            while (!dirty_down_.empty()) {
                x = dirty_down_.back();
                dirty_down_.pop_back();
                dirty_flag_[x] = 0;
                if (g.is_live(x) && lower_bound_violated(x)) {
                    found = true;
                    break;
                }
                mark_dirty(x);  // may have become an invariant-2 violator
            }
        }
        if (!found) {
            if (!dirty_up_.empty()) continue;  // re-routed violators
            break;
        }
        if (++iterations > cap) {
            throw InvariantError("update_levels exceeded its iteration cap (bug)");
        }

        level_histogram(x);
        if (promote) {
            // minimum k > level(x) with |L_k(x)| + |S_k(x)| <= beta^k
            std::uint64_t at_most_k = 0;
            for (int l = 0; l <= std::min(level_[x], max_lvl_bound + 1); ++l) at_most_k += hist[l];
            int k = level_[x];
            for (;;) {
                ++k;
                if (k <= max_lvl_bound + 1) at_most_k += hist[std::min(k, max_lvl_bound + 1)];
                if (at_most_k <= ipow_sat(opt_.beta, k)) break;
            }
            set_level(g, x, k);
        } else {
            // maximum k' < level(x) with |L_k'(x)| >= beta^(k'-1), else the floor
            std::vector<std::uint64_t> below_at(level_[x] + 1, 0);  // # neighbors below l
            for (int l = 1; l <= level_[x]; ++l) {
                below_at[l] = below_at[l - 1] + (l - 1 < static_cast<int>(hist.size()) ? hist[l - 1] : 0);
            }
            int target = kFloorLevel;
            for (int k = level_[x] - 1; k > kFloorLevel; --k) {
                if (below_at[k] >= ipow_sat(opt_.beta, k - 1)) {
                    target = k;
                    break;
                }
            }
            set_level(g, x, target);
        }
        ++moves;
    }
    return moves;
}

void LevelLogColorer::attach(DynamicGraph& g) {
    ensure_vertex(g.num_ids() == 0 ? 0 : g.num_ids() - 1);
    chi_.ensure_ids(g.num_ids());
    chi_.ensure_palette(g.delta() + 1);
    for (VertexId v : g.live_vertices()) {
        for (VertexId w : g.neighbors(v)) {
            if (w > v) add_edge_counts(v, w);
        }
    }
    update_levels(g);
    RecolorReport ignore;
    for (VertexId v : g.live_vertices()) {
        recolor_chain(g, v, ignore);
    }
}

std::vector<Color> LevelLogColorer::truncated_candidates(const DynamicGraph& g, VertexId v) {
    work_ += scratch_.scan(g, chi_, v, [this](VertexId w) { return level_[w]; });
    const std::uint64_t limit = ipow_sat(opt_.beta, level_[v]);
    const Color k = chi_.palette_size();
    return scratch_.candidates(k, static_cast<std::size_t>(std::min<std::uint64_t>(limit, k)), &work_);
}

Color LevelLogColorer::sample_from_truncated(const DynamicGraph& g, VertexId v, Rng& rng) {
    const auto cands = truncated_candidates(g, v);
    if (cands.empty()) {
        throw InvariantError("empty candidate palette at vertex " + std::to_string(v));
    }
    return cands[rng.below(cands.size())];
}

void LevelLogColorer::recolor_chain(DynamicGraph& g, VertexId root, RecolorReport& report) {
    VertexId v = root;
    std::uint32_t length = 0;
    int prev_level = level_[v] + 1;
    for (;;) {
        if (static_cast<int>(level_[v]) >= prev_level) ++descent_violations_;
        prev_level = level_[v];

        const Color c = sample_from_truncated(g, v, rng_);
        if (c > g.delta() + 1) ++palette_overflows_;
        chi_.set(v, c);
        tau_[v] = ++recolor_seq_;
        report.recolored.push_back(v);
        if (opt_.audit) {
            audit_set_.insert(v);
            for (VertexId w : g.neighbors(v)) audit_set_.insert(w);
        }
        ++length;

        // at most one down-neighbor can hold c, by the candidate definition
        VertexId next = 0;
        std::uint32_t hits = 0;
        for (VertexId w : g.neighbors(v)) {
            ++work_;
            if (level_[w] < level_[v] && chi_.color(w) == c) {
                next = w;
                ++hits;
            }
        }
        if (hits > 1) ++fanout_violations_;
        if (g.delta() >= 50) {
            ++draws_hi_;
            recursion_bound_sum_hi_ += 2.0 / (down_count_[v] / 2.0 + 1.0);
            if (hits >= 1) ++recursions_hi_;
        }
        if (hits == 0) break;
        v = next;
    }
    report.chain_length = std::max(report.chain_length, length);
    ++chain_count_;
    chain_len_total_ += length;
    max_chain_ = std::max<std::uint64_t>(max_chain_, length);
    if (g.delta() >= 50) {
        ++chain_count_hi_;
        chain_len_hi_ += length;
    }
}

void LevelLogColorer::finish(DynamicGraph& g) {
    if (!opt_.audit) return;
    for (VertexId v : g.live_vertices()) audit_set_.insert(v);
    audit_changed(g);
}

void LevelLogColorer::audit_changed(const DynamicGraph& g) {
    for (VertexId v : audit_set_.items()) {
        if (!g.is_live(v)) continue;
        work_ += scratch_.scan(g, chi_, v, [this](VertexId w) { return level_[w]; });
        const std::uint32_t d = scratch_.candidate_count(chi_.palette_size());
        if (2ull * d < static_cast<std::uint64_t>(down_count_[v]) + 2) ++candidate_bound_exceptions_;
    }
    audit_set_.clear();
}

RecolorReport LevelLogColorer::apply(DynamicGraph& g, const UpdateEvent& e) {
    RecolorReport report;
    const std::uint64_t work_before = work_;
    switch (e.kind) {
        case UpdateKind::EdgeInsert: {
            const bool ghost = g.has_edge(e.u, e.v);  // lazily retained edge
            g.apply(e);
            chi_.ensure_palette(g.delta() + 1);
            if (ghost) break;  // the constraint never left the adjacency
            add_edge_counts(e.u, e.v);
            if (opt_.audit) {
                audit_set_.insert(e.u);
                audit_set_.insert(e.v);
            }
            update_levels(g);
            if (chi_.color(e.u) == chi_.color(e.v)) {
                report.conflict = true;
                ++conflicts_;
                // more recently recolored endpoint; ties to the smaller id
                VertexId x = e.u;
                if (tau_[e.v] > tau_[e.u] || (tau_[e.v] == tau_[e.u] && e.v < e.u)) x = e.v;
                recolor_chain(g, x, report);
            }
            break;
        }
        case UpdateKind::EdgeDelete: {
            g.apply(e);
            if (g.has_edge(e.u, e.v)) break;  // retained as a lazy ghost
            remove_edge_counts(e.u, e.v);
            if (opt_.audit) {
                audit_set_.insert(e.u);
                audit_set_.insert(e.v);
            }
            update_levels(g);
            break;
        }
        case UpdateKind::VertexInsert: {
            g.apply(e);
            ensure_vertex(g.num_ids() - 1);
            chi_.ensure_ids(g.num_ids());
            chi_.ensure_palette(g.delta() + 1);
            level_[e.u] = kFloorLevel;
            tau_[e.u] = recolor_seq_;
            down_count_[e.u] = 0;
            same_count_[e.u] = 0;
            for (VertexId w : e.neighbors) add_edge_counts(e.u, w);
            if (opt_.audit) {
                audit_set_.insert(e.u);
                for (VertexId w : e.neighbors) audit_set_.insert(w);
            }
            update_levels(g);
            recolor_chain(g, e.u, report);
            break;
        }
        case UpdateKind::VertexDelete: {
            for (VertexId w : g.neighbors(e.u)) {
                remove_edge_counts(e.u, w);
                if (opt_.audit) audit_set_.insert(w);
            }
            chi_.clear(e.u);
            down_count_[e.u] = 0;
            same_count_[e.u] = 0;
            level_[e.u] = kFloorLevel;
            g.apply(e);
            update_levels(g);
            break;
        }
    }
    if (opt_.audit) audit_changed(g);
    report.work = work_ - work_before;
    return report;
}

PaletteView LevelLogColorer::view(const DynamicGraph& g, VertexId v) const {
    return palette_view(g, chi_, v, [this](VertexId w) { return level_[w]; },
                        chi_.palette_size());
}

std::vector<std::string> LevelLogColorer::check_invariants(const DynamicGraph& g) const {
    std::vector<std::string> out;
    for (VertexId v : g.live_vertices()) {
        if (upper_bound_violated(v)) {
            out.push_back("down+same bound exceeded at vertex " + std::to_string(v));
        }
        if (lower_bound_violated(v)) {
            out.push_back("down-neighbor bound broken at vertex " + std::to_string(v));
        }
    }
    return out;
}

bool LevelLogColorer::recount_matches(const DynamicGraph& g) const {
    for (VertexId v : g.live_vertices()) {
        std::uint32_t down = 0, same = 0;
        for (VertexId w : g.neighbors(v)) {
            if (level_[w] < level_[v]) ++down;
            if (level_[w] == level_[v]) ++same;
        }
        if (down != down_count_[v] || same != same_count_[v]) return false;
    }
    return true;
}

void LevelLogColorer::force_level(DynamicGraph& g, VertexId v, int level) {
    set_level(g, v, level);
    audit_set_.clear();
}

void LevelLogColorer::stats(json& out) const {
    json s = json::object();
    s["beta"] = opt_.beta;
    s["conflicts"] = conflicts_;
    s["level_moves"] = level_moves_;
    s["chains"] = chain_count_;
    s["mean_chain_length"] =
        chain_count_ ? static_cast<double>(chain_len_total_) / chain_count_ : 0.0;
    s["max_chain_length"] = max_chain_;
    s["chains_hidelta"] = chain_count_hi_;
    s["mean_chain_length_hidelta"] = mean_chain_length_hidelta();
    s["draws_hidelta"] = draws_hi_;
    s["recursions_hidelta"] = recursions_hi_;
    s["recursion_bound_sum_hidelta"] = recursion_bound_sum_hi_;
    out["level_log"] = s;
}

void LevelLogColorer::violation_counts(json& out) const {
    out["fanout"] = fanout_violations_;
    out["candidate_lower_bound"] = candidate_bound_exceptions_;
    out["palette_overflow"] = palette_overflows_;
    out["chain_descent"] = descent_violations_;
}

}  // namespace dyncolor
