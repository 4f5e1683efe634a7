#pragma once

#include <string>
#include <vector>

#include "colorers/palette.hpp"
#include "core/coloring.hpp"
#include "core/graph.hpp"

namespace dyncolor {
namespace oracle {

enum class ViolationKind { MonochromaticEdge, MissingColor, PaletteOverflow };

struct Violation {
    ViolationKind kind;
    VertexId u = 0;
    VertexId v = 0;   // MonochromaticEdge only
    Color color = 0;
    std::string describe() const;
};

// Complete properness scan against the graph; no reliance on colorer state.
// Empty result iff the coloring is proper, covers every live vertex, and
// stays within the palette. palette_limit = 0 means the coloring's own
// declared palette; (Delta+1)-colorers pass delta()+1 explicitly.
std::vector<Violation> verify_proper(const DynamicGraph& g, const Coloring& coloring,
                                     Color palette_limit = 0);

// Static greedy: vertices in ascending id, smallest color unused by any
// neighbor. Uses colors within {1..Delta+1}.
Coloring greedy_delta_plus_one(const DynamicGraph& g);

// Exact chromatic number by branch and bound, largest-degree-first, first
// vertex's color fixed. Refuses graphs with more than 16 live vertices.
int exact_chromatic_number(const DynamicGraph& g);

// Recomputes every palette set per its definition, one full neighbor pass per
// color. Deliberately a different route than the colorers' single-scan view.
PaletteView brute_force_palette(const DynamicGraph& g, const Coloring& coloring, VertexId v,
                                const LevelFn& level, Color k);

}  // namespace oracle
}  // namespace dyncolor
