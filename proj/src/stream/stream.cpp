#include "stream/stream.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace dyncolor {

std::string serialize_stream(const UpdateStream& s) {
    std::string out = "# dyncolor-stream n0=" + std::to_string(s.n0) +
                      " seed=" + std::to_string(s.seed) + "\n";
    for (const UpdateEvent& e : s.events) {
        out += to_string(e.kind);
        out += ' ';
        out += std::to_string(e.u);
        switch (e.kind) {
            case UpdateKind::EdgeInsert:
            case UpdateKind::EdgeDelete:
                out += ' ';
                out += std::to_string(e.v);
                break;
            case UpdateKind::VertexInsert:
                for (VertexId w : e.neighbors) {
                    out += ' ';
                    out += std::to_string(w);
                }
                break;
            case UpdateKind::VertexDelete:
                break;
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

VertexId parse_id(const std::string& tok, std::size_t line_no) {
    VertexId value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("bad vertex id '" + tok + "'", line_no);
    }
    return value;
}

bool parse_header(const std::string& line, std::uint32_t& n0, std::uint64_t& seed) {
    std::istringstream ss(line);
    std::string hash, tag;
    if (!(ss >> hash >> tag) || hash != "#" || tag != "dyncolor-stream") return false;
    std::string kv;
    while (ss >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "n0") n0 = static_cast<std::uint32_t>(std::stoull(val));
        if (key == "seed") seed = std::stoull(val);
    }
    return true;
}

}  // namespace

UpdateStream parse_stream(const std::string& text) {
    UpdateStream s;
    bool have_header = false;

    std::vector<UpdateEvent> events;
    std::vector<std::size_t> event_lines;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_header && events.empty()) {
                have_header = parse_header(line, s.n0, s.seed);
            }
            continue;
        }
        const auto toks = split_ws(line);
        UpdateEvent e;
        if (toks[0] == "+e" || toks[0] == "-e") {
            if (toks.size() != 3) throw ParseError("expected '+e u v'", line_no);
            e.kind = toks[0] == "+e" ? UpdateKind::EdgeInsert : UpdateKind::EdgeDelete;
            e.u = parse_id(toks[1], line_no);
            e.v = parse_id(toks[2], line_no);
            if (e.u == e.v) throw ParseError("self-loop " + std::to_string(e.u), line_no);
        } else if (toks[0] == "+v") {
            if (toks.size() < 2) throw ParseError("expected '+v v [n1 ...]'", line_no);
            e.kind = UpdateKind::VertexInsert;
            e.u = parse_id(toks[1], line_no);
            for (std::size_t i = 2; i < toks.size(); ++i) {
                e.neighbors.push_back(parse_id(toks[i], line_no));
            }
        } else if (toks[0] == "-v") {
            if (toks.size() != 2) throw ParseError("expected '-v v'", line_no);
            e.kind = UpdateKind::VertexDelete;
            e.u = parse_id(toks[1], line_no);
        } else {
            throw ParseError("unknown event '" + toks[0] + "'", line_no);
        }
        events.push_back(std::move(e));
        event_lines.push_back(line_no);
    }

    if (!have_header) {
        // Ids first introduced by a +v event must not be initially live;
        // every other referenced id must be.
        std::uint32_t n0 = 0;
        std::vector<char> seen_vplus;
        for (const UpdateEvent& e : events) {
            auto consider = [&](VertexId v) {
                if (v < seen_vplus.size() && seen_vplus[v]) return;
                n0 = std::max(n0, v + 1);
            };
            if (e.kind == UpdateKind::VertexInsert) {
                if (e.u >= seen_vplus.size()) seen_vplus.resize(e.u + 1, 0);
                seen_vplus[e.u] = 1;
                for (VertexId w : e.neighbors) consider(w);
            } else if (e.kind == UpdateKind::EdgeInsert || e.kind == UpdateKind::EdgeDelete) {
                consider(e.u);
                consider(e.v);
            } else {
                consider(e.u);
            }
        }
        s.n0 = n0;
    }

    s.events = std::move(events);

    // validate every event against the graph state produced by its prefix
    DynamicGraph g(s.n0);
    std::uint32_t n_max = s.n0;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        try {
            g.apply(s.events[i]);
        } catch (const UpdateError& err) {
            throw ParseError(std::string("invalid event #") + std::to_string(i) + ": " + err.what(),
                             event_lines[i]);
        }
        n_max = std::max(n_max, g.live_count());
    }
    s.n_max = n_max;
    return s;
}

UpdateStream load_stream(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stream file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stream(buf.str());
}

void save_stream(const UpdateStream& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write stream file: " + path);
    out << serialize_stream(s);
    if (!out) throw IoError("write failed: " + path);
}

DynamicGraph replay_stream(const UpdateStream& s, std::uint32_t* out_n_max) {
    DynamicGraph g(s.n0);
    std::uint32_t n_max = s.n0;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        try {
            g.apply(s.events[i]);
        } catch (const UpdateError& err) {
            throw UpdateError(std::string("event #") + std::to_string(i) + ": " + err.what());
        }
        n_max = std::max(n_max, g.live_count());
    }
    if (out_n_max) *out_n_max = n_max;
    return g;
}

}  // namespace dyncolor
