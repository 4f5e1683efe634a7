#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace dyncolor {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid update against the current graph (unknown vertex, duplicate edge,
// self-loop). The graph is left unchanged when this is thrown.
struct UpdateError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    std::size_t line = 0;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// A colorer's internal invariant broke (empty candidate palette, no usable
// color). Signals a bug, never an expected runtime condition.
struct InvariantError : Error {
    using Error::Error;
};

// The stream generator cannot produce another event (graph complete).
struct StreamExhausted : Error {
    using Error::Error;
};

// Perfect matching on the vertex/color bipartite graph failed; carries a
// Hall-condition witness: a vertex set whose joint feasible colors are fewer.
struct MatchingError : Error {
    MatchingError(const std::string& msg, std::vector<VertexId> vs, std::vector<Color> cs)
        : Error(msg), witness_vertices(std::move(vs)), witness_colors(std::move(cs)) {}
    std::vector<VertexId> witness_vertices;
    std::vector<Color> witness_colors;
};

}  // namespace dyncolor
