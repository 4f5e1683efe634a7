#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace dyncolor {

using VertexId = std::uint32_t;
using Color = std::uint32_t;  // colors are 1-based; 0 means "no color"

inline constexpr Color kNoColor = 0;

enum class UpdateKind : std::uint8_t {
    EdgeInsert,
    EdgeDelete,
    VertexInsert,
    VertexDelete,
};

const char* to_string(UpdateKind k);

struct UpdateEvent {
    UpdateKind kind = UpdateKind::EdgeInsert;
    VertexId u = 0;
    VertexId v = 0;                    // second endpoint, edge events only
    std::vector<VertexId> neighbors;   // VertexInsert only

    static UpdateEvent edge_insert(VertexId a, VertexId b) {
        return UpdateEvent{UpdateKind::EdgeInsert, a, b, {}};
    }
    static UpdateEvent edge_delete(VertexId a, VertexId b) {
        return UpdateEvent{UpdateKind::EdgeDelete, a, b, {}};
    }
    static UpdateEvent vertex_insert(VertexId a, std::vector<VertexId> nbrs) {
        return UpdateEvent{UpdateKind::VertexInsert, a, 0, std::move(nbrs)};
    }
    static UpdateEvent vertex_delete(VertexId a) {
        return UpdateEvent{UpdateKind::VertexDelete, a, 0, {}};
    }

    bool operator==(const UpdateEvent&) const = default;
};

// What a single recolor pass did, reported back to the experiment loop.
struct RecolorReport {
    std::vector<VertexId> recolored;  // vertices whose color changed, in order
    std::uint32_t chain_length = 0;   // recursive recolor chain, level colorers
    std::uint64_t work = 0;           // abstract work units for this update
    bool conflict = false;            // the update was a monochromatic insertion
};

// Insertion-ordered set of ids with O(1) contains / insert / swap-pop erase.
// Iteration order is deterministic for a fixed operation history.
class SlotSet {
public:
    bool contains(VertexId x) const { return pos_.find(x) != pos_.end(); }

    bool insert(VertexId x) {
        if (contains(x)) return false;
        pos_.emplace(x, static_cast<std::uint32_t>(items_.size()));
        items_.push_back(x);
        return true;
    }

    bool erase(VertexId x) {
        auto it = pos_.find(x);
        if (it == pos_.end()) return false;
        const std::uint32_t i = it->second;
        const VertexId last = items_.back();
        items_[i] = last;
        pos_[last] = i;
        items_.pop_back();
        pos_.erase(it);
        return true;
    }

    void clear() {
        items_.clear();
        pos_.clear();
    }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const std::vector<VertexId>& items() const { return items_; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::vector<VertexId> items_;
    std::unordered_map<VertexId, std::uint32_t> pos_;
};

}  // namespace dyncolor
