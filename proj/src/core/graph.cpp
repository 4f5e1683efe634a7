#include "core/graph.hpp"

#include <algorithm>

namespace dyncolor {

const char* to_string(UpdateKind k) {
    switch (k) {
        case UpdateKind::EdgeInsert: return "+e";
        case UpdateKind::EdgeDelete: return "-e";
        case UpdateKind::VertexInsert: return "+v";
        case UpdateKind::VertexDelete: return "-v";
    }
    return "?";
}

DynamicGraph::DynamicGraph(std::uint32_t n, DeletionMode mode) : mode_(mode) {
    adj_.resize(n);
    live_.assign(n, true);
    live_count_ = n;
}

std::uint64_t DynamicGraph::edge_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

void DynamicGraph::check_live(VertexId v, const char* who) const {
    if (!is_live(v)) {
        throw UpdateError(std::string(who) + ": unknown vertex " + std::to_string(v));
    }
}

bool DynamicGraph::has_edge(VertexId u, VertexId v) const {
    if (!is_live(u) || !is_live(v)) return false;
    return adj_[u].contains(v);
}

bool DynamicGraph::has_edge_true(VertexId u, VertexId v) const {
    return has_edge(u, v) && pending_.find(edge_key(u, v)) == pending_.end();
}

std::span<const VertexId> DynamicGraph::neighbors(VertexId v) const {
    static const std::vector<VertexId> empty;
    const auto& items = is_live(v) ? adj_[v].items() : empty;
    return {items.data(), items.size()};
}

std::uint32_t DynamicGraph::degree(VertexId v) const {
    return is_live(v) ? static_cast<std::uint32_t>(adj_[v].size()) : 0u;
}

std::uint32_t DynamicGraph::max_degree() const {
    std::uint32_t m = 0;
    for (VertexId v = 0; v < num_ids(); ++v) {
        if (live_[v]) m = std::max(m, degree(v));
    }
    return m;
}

bool DynamicGraph::complete() const {
    const std::uint64_t n = live_count_;
    return n < 2 || true_edge_count() == n * (n - 1) / 2;
}

void DynamicGraph::bump_delta(VertexId v) {
    delta_running_ = std::max(delta_running_, degree(v));
}

UpdateOutcome DynamicGraph::apply(const UpdateEvent& e) {
    UpdateOutcome out;
    switch (e.kind) {
        case UpdateKind::EdgeInsert:
            insert_edge(e.u, e.v);
            out.can_corrupt_coloring = true;
            break;
        case UpdateKind::EdgeDelete:
            delete_edge(e.u, e.v);
            break;
        case UpdateKind::VertexInsert:
            insert_vertex(e.u, e.neighbors);
            out.can_corrupt_coloring = true;
            break;
        case UpdateKind::VertexDelete:
            delete_vertex(e.u);
            break;
    }
    ++timestamp_;
    return out;
}

VertexId DynamicGraph::add_vertex() {
    adj_.emplace_back();
    live_.push_back(true);
    ++live_count_;
    return num_ids() - 1;
}

void DynamicGraph::insert_edge(VertexId u, VertexId v) {
    if (u == v) throw UpdateError("+e: self-loop at " + std::to_string(u));
    check_live(u, "+e");
    check_live(v, "+e");
    if (adj_[u].contains(v)) {
        auto it = pending_.find(edge_key(u, v));
        if (it != pending_.end()) {
            pending_.erase(it);  // resurrect a lazily deleted edge
            return;
        }
        throw UpdateError("+e: duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    adj_[u].insert(v);
    adj_[v].insert(u);
    ++edge_count_;
    bump_delta(u);
    bump_delta(v);
}

void DynamicGraph::delete_edge(VertexId u, VertexId v) {
    if (u == v) throw UpdateError("-e: self-loop at " + std::to_string(u));
    check_live(u, "-e");
    check_live(v, "-e");
    if (!has_edge_true(u, v)) {
        throw UpdateError("-e: unknown edge " + std::to_string(u) + " " + std::to_string(v));
    }
    if (mode_ == DeletionMode::Lazy) {
        pending_.insert(edge_key(u, v));
        return;
    }
    adj_[u].erase(v);
    adj_[v].erase(u);
    --edge_count_;
}

void DynamicGraph::insert_vertex(VertexId v, const std::vector<VertexId>& nbrs) {
    if (is_live(v)) throw UpdateError("+v: vertex " + std::to_string(v) + " already live");
    for (VertexId w : nbrs) {
        if (w == v) throw UpdateError("+v: self-loop at " + std::to_string(v));
        check_live(w, "+v");
    }
    // validate before mutating: duplicate neighbors in the list
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            if (nbrs[i] == nbrs[j]) {
                throw UpdateError("+v: duplicate neighbor " + std::to_string(nbrs[i]));
            }
        }
    }
    if (v >= num_ids()) {
        adj_.resize(v + 1);
        live_.resize(v + 1, false);
    }
    live_[v] = true;
    ++live_count_;
    for (VertexId w : nbrs) {
        adj_[v].insert(w);
        adj_[w].insert(v);
        ++edge_count_;
        bump_delta(w);
    }
    bump_delta(v);
}

void DynamicGraph::delete_vertex(VertexId v) {
    check_live(v, "-v");
    for (VertexId w : adj_[v].items()) {
        adj_[w].erase(v);
        pending_.erase(edge_key(v, w));
    }
    edge_count_ -= adj_[v].size();
    adj_[v].clear();
    live_[v] = false;
    --live_count_;
}

std::vector<UpdateEvent> DynamicGraph::simulate_edge_insert_as_vertex_ops(VertexId u, VertexId v) const {
    check_live(u, "simulate");
    check_live(v, "simulate");
    if (u == v) throw UpdateError("simulate: self-loop at " + std::to_string(u));
    if (has_edge_true(u, v)) {
        throw UpdateError("simulate: edge already present " + std::to_string(u) + " " + std::to_string(v));
    }
    std::vector<VertexId> nbrs(adj_[u].begin(), adj_[u].end());
    nbrs.push_back(v);
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    return {UpdateEvent::vertex_delete(u), UpdateEvent::vertex_insert(u, std::move(nbrs))};
}

bool DynamicGraph::verify_adjacency() const {
    std::uint64_t half_edges = 0;
    for (VertexId v = 0; v < num_ids(); ++v) {
        if (!live_[v]) {
            if (!adj_[v].empty()) return false;
            continue;
        }
        std::unordered_set<VertexId> seen;
        for (VertexId w : adj_[v].items()) {
            if (w == v) return false;                       // self-loop
            if (!seen.insert(w).second) return false;       // parallel edge
            if (!is_live(w)) return false;                  // dangling endpoint
            if (!adj_[w].contains(v)) return false;         // asymmetric
        }
        half_edges += adj_[v].size();
    }
    return half_edges == 2 * edge_count_;
}

std::vector<VertexId> DynamicGraph::live_vertices() const {
    std::vector<VertexId> out;
    out.reserve(live_count_);
    for (VertexId v = 0; v < num_ids(); ++v) {
        if (live_[v]) out.push_back(v);
    }
    return out;
}

}  // namespace dyncolor
