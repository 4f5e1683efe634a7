#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "core/coloring.hpp"
#include "core/graph.hpp"
#include "core/types.hpp"

namespace dyncolor {

using json = nlohmann::json;

// A dynamic colorer owns its Coloring and maintains it across updates. The
// colorer performs the graph mutation itself so it can sequence its own
// bookkeeping around it (level repairs, vertex-op factoring, batch refreshes).
class Colorer {
public:
    virtual ~Colorer() = default;

    // Called once with the initial graph, before any update.
    virtual void attach(DynamicGraph& g) = 0;

    // Applies one stream event. Throws UpdateError on invalid events.
    virtual RecolorReport apply(DynamicGraph& g, const UpdateEvent& e) = 0;

    // Called once after the last update (closes epochs, final audits).
    virtual void finish(DynamicGraph&) {}

    virtual const Coloring& coloring() const = 0;
    virtual std::string name() const = 0;

    virtual std::uint64_t work() const { return 0; }
    virtual std::uint64_t init_work() const { return 0; }

    // Colorer-specific report sections (epochs, surplus, ...).
    virtual void stats(json&) const {}

    // Named audit counters that must all be zero on a healthy run.
    virtual void violation_counts(json&) const {}
};

}  // namespace dyncolor
