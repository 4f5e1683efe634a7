#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/types.hpp"

namespace dyncolor {

// A validated update sequence. n0 is the number of isolated vertices the
// graph starts with before the first event; n_max is the maximum live vertex
// count attained while replaying. seed is the generator seed (0 when the
// stream came from a file without a header).
struct UpdateStream {
    std::vector<UpdateEvent> events;
    std::uint32_t n0 = 0;
    std::uint32_t n_max = 0;
    std::uint64_t seed = 0;

    bool operator==(const UpdateStream&) const = default;
};

// Line grammar (LF line endings, single spaces, decimal ids):
//   +e u v
//   -e u v
//   +v v [n1 n2 ...]
//   -v v
//   # comment
// serialize() writes a "# dyncolor-stream n0=N seed=S" header comment that
// parse() recognizes; without it, n0 is inferred as 1 + the largest id that
// is not first introduced by a +v event.
std::string serialize_stream(const UpdateStream& s);
UpdateStream parse_stream(const std::string& text);

UpdateStream load_stream(const std::string& path);
void save_stream(const UpdateStream& s, const std::string& path);

// Replays the events against a fresh graph of s.n0 isolated vertices,
// throwing UpdateError with the failing event index on an invalid prefix.
// Returns the final graph; fills n_max when out_n_max is given.
DynamicGraph replay_stream(const UpdateStream& s, std::uint32_t* out_n_max = nullptr);

}  // namespace dyncolor
