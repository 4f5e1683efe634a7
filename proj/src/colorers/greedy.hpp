#pragma once

#include "colorers/colorer.hpp"

namespace dyncolor {

// The trivial baseline: on a monochromatic insertion, give one endpoint the
// smallest color unused in its neighborhood. A blank color always exists
// within {1..Delta+1} by pigeonhole.
class GreedyColorer : public Colorer {
public:
    void attach(DynamicGraph& g) override;
    RecolorReport apply(DynamicGraph& g, const UpdateEvent& e) override;
    const Coloring& coloring() const override { return chi_; }
    std::string name() const override { return "greedy"; }
    std::uint64_t work() const override { return work_; }
    void violation_counts(json& out) const override {
        out["palette_overflow"] = palette_overflows_;
    }

private:
    Color smallest_blank(const DynamicGraph& g, VertexId v);
    void recolor(const DynamicGraph& g, VertexId v, RecolorReport& report);

    Coloring chi_;
    std::uint64_t work_ = 0;
    std::uint64_t palette_overflows_ = 0;
    std::vector<char> used_;  // scratch
};

}  // namespace dyncolor
