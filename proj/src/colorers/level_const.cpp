#include "colorers/level_const.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <unordered_map>

#include "core/errors.hpp"

namespace dyncolor {

namespace {

std::uint64_t pow3(int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= 3;
    return r;
}

}  // namespace

const char* to_string(EpochCause c) {
    switch (c) {
        case EpochCause::Original: return "original";
        case EpochCause::Induced: return "induced";
        case EpochCause::Final: return "final";
    }
    return "?";
}

const char* to_string(LevelHeaviness h) {
    switch (h) {
        case LevelHeaviness::Empty: return "empty";
        case LevelHeaviness::InducedHeavy: return "induced-heavy";
        case LevelHeaviness::FinalHeavy: return "final-heavy";
        case LevelHeaviness::OriginalHeavy: return "original-heavy";
    }
    return "?";
}

LevelHeaviness classify_level(std::uint64_t induced, std::uint64_t final_count,
                              std::uint64_t total) {
    if (total == 0) return LevelHeaviness::Empty;
    if (2 * induced >= total) return LevelHeaviness::InducedHeavy;
    if (8 * final_count >= total) return LevelHeaviness::FinalHeavy;
    return LevelHeaviness::OriginalHeavy;
}

LevelConstColorer::LevelConstColorer(ConstOptions opt) : opt_(opt), rng_(opt.seed) {}

void LevelConstColorer::ensure_vertex(VertexId v) {
    if (v < level_.size()) return;
    level_.resize(v + 1, 0);
    tau_.resize(v + 1, 0);
    nbr_hist_.resize(v + 1);
    open_.resize(v + 1);
}

void LevelConstColorer::hist_add(VertexId v, int level, int delta) {
    auto& h = nbr_hist_[v];
    const std::size_t idx = hist_index(level);
    if (h.size() <= idx) h.resize(idx + 1, 0);
    h[idx] += delta;
}

std::uint32_t LevelConstColorer::phi(VertexId v, int lstar) const {
    const auto& h = nbr_hist_[v];
    std::uint32_t n = 0;
    const int stop = std::min<int>(hist_index(lstar), static_cast<int>(h.size()));
    for (int i = 0; i < stop; ++i) n += h[i];
    return n;
}

std::uint32_t LevelConstColorer::phi_brute(const DynamicGraph& g, VertexId v, int lstar) const {
    std::uint32_t n = 0;
    for (VertexId w : g.neighbors(v)) {
        if (level_[w] < lstar) ++n;
    }
    return n;
}

void LevelConstColorer::set_level(const DynamicGraph& g, VertexId v, int new_level) {
    const int old = level_[v];
    if (old == new_level) return;
    level_[v] = new_level;
    for (VertexId w : g.neighbors(v)) {
        ++work_;
        hist_add(w, old, -1);
        hist_add(w, new_level, +1);
    }
}

void LevelConstColorer::note_color_single(VertexId target, Color c) {
    if (c == kNoColor || target >= open_.size()) return;
    OpenEpoch& ep = open_[target];
    if (!ep.open || ep.frozen) return;
    if (ep.seen.insert(c).second) {
        if (!ep.new_color_mark) {
            ep.new_color_mark = true;
            psdur_touched_.push_back(target);
        }
    }
    if (c == ep.color) ep.frozen = true;  // counted, then stop
}

void LevelConstColorer::note_color_taken(const DynamicGraph& g, VertexId who, Color c) {
    if (c == kNoColor) return;
    for (VertexId w : g.neighbors(who)) {
        note_color_single(w, c);
    }
}

// At most one pseudo-duration tick per update, and never more ticks than
// insertions witnessed, so psdur <= dur holds by construction even when one
// recolor chain shows a vertex several new colors or revisits it. Ticks only
// count on edge insertions (the model's updates).
void LevelConstColorer::settle_psdur_marks(bool count) {
    for (VertexId v : psdur_touched_) {
        OpenEpoch& ep = open_[v];
        if (count && ep.open && ep.new_color_mark &&
            ep.psdur < inserts_seen_ - ep.start_inserts) {
            ++ep.psdur;
        }
        ep.new_color_mark = false;
    }
    psdur_touched_.clear();
}

void LevelConstColorer::close_epoch(VertexId v, EpochCause cause) {
    OpenEpoch& ep = open_[v];
    if (!ep.open) return;
    EpochRecord rec;
    rec.vertex = v;
    rec.start = ep.start;
    rec.end = update_index_;
    rec.level = ep.level;
    rec.color = ep.color;
    rec.cause = cause;
    rec.cost = ep.cost;
    rec.dur = inserts_seen_ - ep.start_inserts;
    // settle a pending mark into the closing epoch; a tick needs a witnessed
    // insertion interval, so an epoch confined to one update counts none
    if (ep.new_color_mark && cause != EpochCause::Final && ep.psdur < rec.dur) {
        ++ep.psdur;
        ep.new_color_mark = false;
        // the touched entry stays behind harmlessly; the new epoch starts clean
    }
    rec.psdur = ep.psdur;
    closed_.push_back(rec);
    ep.open = false;
    ep.seen.clear();
}

void LevelConstColorer::open_epoch(VertexId v, std::uint64_t cost) {
    OpenEpoch& ep = open_[v];
    ep.open = true;
    ep.start = update_index_;
    ep.start_inserts = inserts_seen_;
    ep.level = level_[v];
    ep.color = chi_.color(v);
    ep.cost = cost;
    ep.psdur = 0;
    ep.frozen = false;
    ep.new_color_mark = false;
    ep.seen.clear();
}

void LevelConstColorer::assign_initial_color(const DynamicGraph& g, VertexId v) {
    // smallest blank color; fresh vertices start at level 0
    std::uint64_t w0 = 0;
    work_ += scratch_.scan(g, chi_, v, [this](VertexId w) { return level_[w]; });
    Color pick = kNoColor;
    for (Color c = 1; c <= chi_.palette_size(); ++c) {
        ++w0;
        if (scratch_.is_blank(c)) {
            pick = c;
            break;
        }
    }
    work_ += w0;
    if (pick == kNoColor) throw InvariantError("no blank color for fresh vertex");
    chi_.set(v, pick);
    note_color_taken(g, v, pick);
    open_epoch(v, w0);
}

void LevelConstColorer::deterministic_recolor(const DynamicGraph& g, VertexId v,
                                              std::uint64_t& call_work) {
    // first candidate not held by any down-neighbor; such a color is blank
    const Color k = chi_.palette_size();
    Color pick = kNoColor;
    for (Color c = 1; c <= k; ++c) {
        ++call_work;
        if (scratch_.is_candidate(c) && scratch_.down_count(c) == 0) {
            pick = c;
            break;
        }
    }
    if (pick == kNoColor) {
        throw InvariantError("deterministic recolor found no usable color at vertex " +
                             std::to_string(v));
    }
    if (pick > g.delta() + 1) ++palette_overflows_;
    chi_.set(v, pick);
    set_level(g, v, -1);
    ++det_recolors_;
}

std::optional<VertexId> LevelConstColorer::random_recolor(const DynamicGraph& g, VertexId v,
                                                          std::uint64_t& call_work) {
    const int old_level = level_[v];
    int lp = old_level;
    while (phi(v, lp + 1) >= pow3(lp + 2)) {
        ++lp;
        ++call_work;
    }
    set_level(g, v, lp);
    if (lp != old_level) {
        // the raise widened the down-neighborhood; refresh the color sets
        call_work += scratch_.scan(g, chi_, v, [this](VertexId w) { return level_[w]; });
    }

    // palette truncated to keep the recorded size within (3^l + 1)/2
    const std::uint64_t cap = (pow3(lp) + 1) / 2;
    const Color k = chi_.palette_size();
    const auto cands = scratch_.candidates(k, static_cast<std::size_t>(cap), &call_work);
    if (cands.empty()) throw InvariantError("empty candidate palette at vertex " + std::to_string(v));
    if (lp != -1 && cands.size() > (pow3(lp) + 1) / 2) ++palette_bound_violations_;
    palette_sizes_.push_back({lp, static_cast<std::uint32_t>(cands.size())});

    const Color c = cands[rng_.below(cands.size())];
    if (c > g.delta() + 1) ++palette_overflows_;
    if (c != chi_.color(v)) {
        chi_.set(v, c);
        note_color_taken(g, v, c);
    }
    ++rand_recolors_;

    if (scratch_.down_count(c) == 1 && !scratch_.up_used(c)) {
        for (VertexId w : g.neighbors(v)) {
            ++call_work;
            if (level_[w] < level_[v] && chi_.color(w) == c && w != v) return w;
        }
    }
    return std::nullopt;
}

void LevelConstColorer::recolor_const(DynamicGraph& g, VertexId v, CallKind kind,
                                      RecolorReport& report, std::uint32_t depth) {
    if (depth > 10 * g.live_count() + 100) {
        throw InvariantError("recolor recursion runaway (bug)");
    }
    close_epoch(v, kind == CallKind::Original ? EpochCause::Original : EpochCause::Induced);

    std::uint64_t call_work = 0;
    call_work += scratch_.scan(g, chi_, v, [this](VertexId w) { return level_[w]; });

    if (opt_.phi_audit) {
        if (phi(v, level_[v]) != phi_brute(g, v, level_[v])) ++phi_mismatches_;
    }

    std::optional<VertexId> next;
    if (phi(v, level_[v]) < pow3(level_[v] + 2)) {
        deterministic_recolor(g, v, call_work);
    } else {
        next = random_recolor(g, v, call_work);
    }
    tau_[v] = ++recolor_seq_;
    report.recolored.push_back(v);
    report.chain_length += 1;
    work_ += call_work;
    open_epoch(v, call_work);

    if (next) {
        recolor_const(g, *next, CallKind::Induced, report, depth + 1);
    }
}

void LevelConstColorer::attach(DynamicGraph& g) {
    const std::uint64_t before = work_;
    ensure_vertex(g.num_ids() == 0 ? 0 : g.num_ids() - 1);
    chi_.ensure_ids(g.num_ids());
    chi_.ensure_palette(g.delta() + 1);
    for (VertexId v : g.live_vertices()) {
        for (VertexId w : g.neighbors(v)) {
            ++work_;
            if (w > v) {
                hist_add(v, level_[w], +1);
                hist_add(w, level_[v], +1);
            }
        }
    }
    for (VertexId v : g.live_vertices()) {
        assign_initial_color(g, v);
    }
    settle_psdur_marks(false);  // epochs start clean at time zero
    init_work_ = work_ - before;
}

RecolorReport LevelConstColorer::apply(DynamicGraph& g, const UpdateEvent& e) {
    RecolorReport report;
    const std::uint64_t work_before = work_;
    ++update_index_;
    switch (e.kind) {
        case UpdateKind::EdgeInsert: {
            const bool ghost = g.has_edge(e.u, e.v);  // lazily retained edge
            g.apply(e);
            chi_.ensure_palette(g.delta() + 1);
            ++inserts_seen_;
            if (ghost) break;  // the constraint never left the adjacency
            hist_add(e.u, level_[e.v], +1);
            hist_add(e.v, level_[e.u], +1);
            // each endpoint sees the other arrive with its color
            note_color_single(e.u, chi_.color(e.v));
            note_color_single(e.v, chi_.color(e.u));
            if (chi_.color(e.u) == chi_.color(e.v)) {
                report.conflict = true;
                ++conflicts_;
                VertexId x = e.u;
                if (tau_[e.v] > tau_[e.u] || (tau_[e.v] == tau_[e.u] && e.v < e.u)) x = e.v;
                recolor_const(g, x, CallKind::Original, report, 0);
            }
            break;
        }
        case UpdateKind::EdgeDelete: {
            g.apply(e);
            if (g.has_edge(e.u, e.v)) break;  // retained as a lazy ghost
            hist_add(e.u, level_[e.v], -1);
            hist_add(e.v, level_[e.u], -1);
            break;
        }
        case UpdateKind::VertexInsert: {
            g.apply(e);
            ensure_vertex(g.num_ids() - 1);
            chi_.ensure_ids(g.num_ids());
            chi_.ensure_palette(g.delta() + 1);
            level_[e.u] = 0;
            tau_[e.u] = recolor_seq_;
            nbr_hist_[e.u].clear();
            for (VertexId w : e.neighbors) {
                hist_add(e.u, level_[w], +1);
                hist_add(w, level_[e.u], +1);
            }
            assign_initial_color(g, e.u);
            break;
        }
        case UpdateKind::VertexDelete: {
            close_epoch(e.u, EpochCause::Final);
            for (VertexId w : g.neighbors(e.u)) {
                hist_add(w, level_[e.u], -1);
            }
            nbr_hist_[e.u].clear();
            chi_.clear(e.u);
            level_[e.u] = 0;
            g.apply(e);
            break;
        }
    }
    settle_psdur_marks(e.kind == UpdateKind::EdgeInsert);
    report.work = work_ - work_before;
    return report;
}

void LevelConstColorer::finish(DynamicGraph&) {
    if (finished_) return;
    finished_ = true;
    for (VertexId v = 0; v < open_.size(); ++v) {
        close_epoch(v, EpochCause::Final);
    }

    // epochs of one vertex must tile its timeline without gaps or overlap
    std::unordered_map<VertexId, std::uint64_t> last_end;
    std::unordered_map<VertexId, bool> seen;
    for (const auto& rec : closed_) {
        auto it = seen.find(rec.vertex);
        if (it != seen.end() && rec.start != last_end[rec.vertex]) ++tiling_violations_;
        seen[rec.vertex] = true;
        last_end[rec.vertex] = rec.end;
    }

    // cost charging must conserve the total
    const auto charged = charged_costs();
    std::uint64_t raw = 0, reassigned = 0;
    for (const auto& rec : closed_) raw += rec.cost;
    for (const auto c : charged) reassigned += c;
    if (raw != reassigned) ++charge_violations_;
}

std::vector<std::uint64_t> LevelConstColorer::charged_costs() const {
    std::vector<std::uint64_t> charged(closed_.size());
    for (std::size_t i = 0; i < closed_.size(); ++i) charged[i] = closed_[i].cost;
    // per vertex, in closing order, a level -1 epoch donates its cost upstream
    std::unordered_map<VertexId, std::size_t> prev;
    for (std::size_t i = 0; i < closed_.size(); ++i) {
        const auto& rec = closed_[i];
        auto it = prev.find(rec.vertex);
        if (rec.level == -1 && it != prev.end()) {
            charged[it->second] += charged[i];
            charged[i] = 0;
        }
        prev[rec.vertex] = i;
    }
    return charged;
}

void LevelConstColorer::force_level(const DynamicGraph& g, VertexId v, int level) {
    set_level(g, v, level);
}

PaletteView LevelConstColorer::view(const DynamicGraph& g, VertexId v) const {
    return palette_view(g, chi_, v, [this](VertexId w) { return level_[w]; },
                        chi_.palette_size());
}

void LevelConstColorer::stats(json& out) const {
    json s = json::object();
    s["conflicts"] = conflicts_;
    s["deterministic_recolors"] = det_recolors_;
    s["random_recolors"] = rand_recolors_;
    s["palette_records"] = palette_sizes_.size();
    s["epochs_closed"] = closed_.size();

    // per-level epoch summary with heaviness classes
    std::map<int, std::array<std::uint64_t, 3>> per_level;
    for (const auto& rec : closed_) {
        auto& row = per_level[rec.level];
        if (rec.cause == EpochCause::Original) ++row[0];
        if (rec.cause == EpochCause::Induced) ++row[1];
        if (rec.cause == EpochCause::Final) ++row[2];
    }
    json levels = json::array();
    for (const auto& [lvl, row] : per_level) {
        const std::uint64_t total = row[0] + row[1] + row[2];
        json jl = json::object();
        jl["level"] = lvl;
        jl["original"] = row[0];
        jl["induced"] = row[1];
        jl["final"] = row[2];
        jl["class"] = to_string(classify_level(row[1], row[2], total));
        levels.push_back(jl);
    }
    s["levels"] = levels;

    std::uint64_t psdur_ok = 0, dur_sum = 0, psdur_sum = 0;
    for (const auto& rec : closed_) {
        if (rec.psdur <= rec.dur) ++psdur_ok;
        dur_sum += rec.dur;
        psdur_sum += rec.psdur;
    }
    s["psdur_le_dur"] = psdur_ok;
    s["dur_total"] = dur_sum;
    s["psdur_total"] = psdur_sum;
    out["epochs"] = s;
}

void LevelConstColorer::violation_counts(json& out) const {
    out["palette_size_bound"] = palette_bound_violations_;
    out["phi_mismatch"] = phi_mismatches_;
    out["palette_overflow"] = palette_overflows_;
    out["deterministic_recursion"] = det_recursions_;
    out["epoch_tiling"] = tiling_violations_;
    out["charge_conservation"] = charge_violations_;
    std::uint64_t psdur_bad = 0;
    for (const auto& rec : closed_) {
        if (rec.psdur > rec.dur) ++psdur_bad;
    }
    out["psdur_exceeds_dur"] = psdur_bad;
}

}  // namespace dyncolor
