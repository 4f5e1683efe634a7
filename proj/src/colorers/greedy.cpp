#include "colorers/greedy.hpp"

namespace dyncolor {

void GreedyColorer::attach(DynamicGraph& g) {
    chi_.ensure_ids(g.num_ids());
    chi_.ensure_palette(g.delta() + 1);
    RecolorReport ignore;
    for (VertexId v : g.live_vertices()) {
        recolor(g, v, ignore);
    }
}

Color GreedyColorer::smallest_blank(const DynamicGraph& g, VertexId v) {
    used_.assign(g.degree(v) + 2, 0);
    for (VertexId w : g.neighbors(v)) {
        ++work_;
        const Color c = chi_.color(w);
        if (c != kNoColor && c < used_.size()) used_[c] = 1;
    }
    Color c = 1;
    while (used_[c]) {
        ++work_;
        ++c;
    }
    return c;
}

void GreedyColorer::recolor(const DynamicGraph& g, VertexId v, RecolorReport& report) {
    const Color c = smallest_blank(g, v);
    if (c > g.delta() + 1) ++palette_overflows_;
    chi_.set(v, c);
    report.recolored.push_back(v);
}

RecolorReport GreedyColorer::apply(DynamicGraph& g, const UpdateEvent& e) {
    RecolorReport report;
    switch (e.kind) {
        case UpdateKind::EdgeInsert: {
            g.apply(e);
            chi_.ensure_palette(g.delta() + 1);
            if (chi_.color(e.u) == chi_.color(e.v)) {
                report.conflict = true;
                recolor(g, e.v, report);
            }
            break;
        }
        case UpdateKind::EdgeDelete:
            g.apply(e);
            break;
        case UpdateKind::VertexInsert:
            g.apply(e);
            chi_.ensure_ids(g.num_ids());
            chi_.ensure_palette(g.delta() + 1);
            recolor(g, e.u, report);
            break;
        case UpdateKind::VertexDelete:
            chi_.clear(e.u);
            g.apply(e);
            break;
    }
    return report;
}

}  // namespace dyncolor
