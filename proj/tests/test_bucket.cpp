#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "colorers/bucket.hpp"
#include "core/rng.hpp"
#include "oracle/oracle.hpp"

using namespace dyncolor;

TEST_CASE("bucket high points") {
    CHECK(bucket_capacity(1, 2, 16) == 3);   // 16^(1/2) - 16^0
    CHECK(bucket_capacity(2, 2, 16) == 12);  // 16 - 4
    CHECK(bucket_capacity(1, 1, 16) == 15);  // single bucket: N_R - 1
    CHECK(bucket_capacity(1, 1, 977) == 976);
    CHECK(bucket_capacity(1, 3, 8) == 1);
    CHECK(bucket_capacity(3, 3, 8) == 4);
}

TEST_CASE("capacity sum identity holds numerically") {
    for (int d : {1, 2, 3, 4}) {
        for (std::uint64_t nr : {16ull, 81ull, 1024ull, 10000ull}) {
            const double root = std::pow(static_cast<double>(nr), 1.0 / d);
            if (root < 2.0) continue;
            double real_sum = 0.0;
            std::uint64_t rounded_sum = 0;
            for (int i = 1; i <= d; ++i) {
                real_sum += std::pow(static_cast<double>(nr), (i - 1.0) / d);
                rounded_sum += sub_bucket_capacity(i, d, nr);
            }
            const double closed = (static_cast<double>(nr) - 1.0) / (root - 1.0);
            CHECK(std::abs(real_sum - closed) < 1e-6 * closed);
            CHECK(static_cast<double>(rounded_sum) >= closed - 1e-6);
            CHECK(static_cast<double>(rounded_sum) <= closed + d + 1e-6);
        }
    }
}

namespace {

RecolorReport insert_isolated(BucketColorer& c, DynamicGraph& g, VertexId id) {
    return c.apply(g, UpdateEvent::vertex_insert(id, {}));
}

}  // namespace

TEST_CASE("first insertion into an empty hierarchy recolors once") {
    for (bool two_level : {false, true}) {
        BucketOptions opt;
        opt.d = 2;
        opt.nr_init = 16;
        opt.two_level = two_level;
        BucketColorer c(opt);
        DynamicGraph g;
        c.attach(g);
        const auto r = insert_isolated(c, g, 0);
        CHECK(r.recolored.size() == 1);
        CHECK(c.check_invariants().empty());
    }
}

TEST_CASE("a full first bucket cascades on the next insertion") {
    // d=2, N_R=16: h_1 = 3, so the fourth insertion moves three vertices up
    for (bool two_level : {false, true}) {
        BucketOptions opt;
        opt.d = 2;
        opt.nr_init = 16;
        opt.two_level = two_level;
        BucketColorer c(opt);
        DynamicGraph g;
        c.attach(g);
        for (VertexId v = 0; v < 3; ++v) {
            CHECK(insert_isolated(c, g, v).recolored.size() == 1);
        }
        const auto r = insert_isolated(c, g, 3);
        CHECK(r.recolored.size() == 4);  // 3 moved + the new vertex
        CHECK(c.check_invariants().empty());
    }
}

TEST_CASE("cascading past the top bucket resets the whole graph") {
    BucketOptions opt;
    opt.d = 2;
    opt.nr_init = 16;
    BucketColorer c(opt);
    DynamicGraph g;
    c.attach(g);
    // capacity at N_R=16 is h_1 + h_2 = 15; the 16th insertion must reset
    const std::uint64_t resets_before = c.reset_count();
    std::size_t reset_report = 0;
    for (VertexId v = 0; v < 16; ++v) {
        const auto r = insert_isolated(c, g, v);
        if (c.reset_count() > resets_before) {
            reset_report = r.recolored.size();
            break;
        }
    }
    CHECK(c.reset_count() == resets_before + 1);
    CHECK(reset_report == g.live_count());  // every live vertex recolored
    CHECK(c.check_invariants().empty());
}

TEST_CASE("consecutive resets need many insertions in between") {
    BucketOptions opt;
    opt.d = 2;
    opt.nr_init = 16;
    opt.two_level = true;
    BucketColorer c(opt);
    DynamicGraph g;
    c.attach(g);
    std::uint64_t last_reset_at = 0;
    std::uint64_t resets = c.reset_count();
    std::uint64_t h1_after_reset = 0;
    int observed_gaps = 0;
    for (VertexId v = 0; v < 3000; ++v) {
        insert_isolated(c, g, v);
        if (c.reset_count() > resets) {
            if (resets > 0) {
                // after a reset the low buckets are empty; refilling them takes
                // at least h_1 insertions before anything reaches the top again
                CHECK(v - last_reset_at >= h1_after_reset);
                ++observed_gaps;
            }
            last_reset_at = v;
            resets = c.reset_count();
            h1_after_reset = bucket_capacity(1, 2, c.nr());
        }
    }
    REQUIRE(observed_gaps >= 1);
}

TEST_CASE("properness under random vertex and edge updates") {
    for (bool two_level : {false, true}) {
        BucketOptions opt;
        opt.d = 2;
        opt.nr_init = 16;
        opt.two_level = two_level;
        BucketColorer c(opt);
        DynamicGraph g;
        c.attach(g);
        Rng rng(two_level ? 5 : 6);
        VertexId next_id = 0;
        for (int step = 0; step < 1500; ++step) {
            const auto live = g.live_vertices();
            const int kind = static_cast<int>(rng.below(10));
            try {
                if (kind < 4 || live.size() < 2) {
                    std::vector<VertexId> nbrs;
                    for (VertexId w : live) {
                        if (nbrs.size() < 3 && rng.below(live.size() + 1) == 0) nbrs.push_back(w);
                    }
                    c.apply(g, UpdateEvent::vertex_insert(next_id++, nbrs));
                } else if (kind < 8) {
                    const VertexId u = live[rng.below(live.size())];
                    const VertexId v = live[rng.below(live.size())];
                    if (u == v || g.has_edge(u, v)) continue;
                    c.apply(g, UpdateEvent::edge_insert(u, v));
                } else if (kind == 8) {
                    const VertexId u = live[rng.below(live.size())];
                    c.apply(g, UpdateEvent::vertex_delete(u));
                } else {
                    const VertexId u = live[rng.below(live.size())];
                    const auto nb = g.neighbors(u);
                    if (nb.empty()) continue;
                    c.apply(g, UpdateEvent::edge_delete(u, nb[rng.below(nb.size())]));
                }
            } catch (const UpdateError&) {
                continue;
            }
            if (step % 50 == 0) {
                CHECK(oracle::verify_proper(g, c.coloring()).empty());
                CHECK(c.check_invariants().empty());
            }
        }
        CHECK(oracle::verify_proper(g, c.coloring()).empty());
        CHECK(c.check_invariants().empty());
        CHECK(g.verify_adjacency());
    }
}

TEST_CASE("amortized recolorings: A2 flat, A1 grows with n") {
    auto run = [](bool two_level, std::uint32_t n) {
        BucketOptions opt;
        opt.d = 2;
        opt.nr_init = 16;
        opt.two_level = two_level;
        BucketColorer c(opt);
        DynamicGraph g;
        c.attach(g);
        std::uint64_t recolorings = 0;
        for (VertexId v = 0; v < n; ++v) {
            recolorings += insert_isolated(c, g, v).recolored.size();
        }
        return static_cast<double>(recolorings) / n;
    };

    const double a2_small = run(true, 100);
    const double a2_big = run(true, 10000);
    CHECK(a2_big / a2_small < 1.5);
    CHECK(a2_small < 8.0);  // constant-ish per-level moves plus resets

    const double a1_small = run(false, 100);
    const double a1_big = run(false, 10000);
    CHECK(a1_big / a1_small >= 2.0);
}

TEST_CASE("A2 total recolorings stay within a constant times d per insertion") {
    for (int d : {2, 3}) {
        BucketOptions opt;
        opt.d = d;
        opt.nr_init = 16;
        opt.two_level = true;
        BucketColorer c(opt);
        DynamicGraph g;
        c.attach(g);
        std::uint64_t recolorings = 0;
        const std::uint32_t n = 4000;
        for (VertexId v = 0; v < n; ++v) {
            recolorings += insert_isolated(c, g, v).recolored.size();
        }
        // one recoloring per level move (at most once per vertex per level)
        // plus the reset echoes; c = 3 gives comfortable slack
        CHECK(recolorings <= 3ull * d * n);
    }
}

TEST_CASE("color budgets follow the trade-off") {
    auto colors_used = [](bool two_level, std::uint32_t n) {
        BucketOptions opt;
        opt.d = 2;
        opt.nr_init = 16;
        opt.two_level = two_level;
        BucketColorer c(opt);
        DynamicGraph g;
        c.attach(g);
        Rng rng(3);
        for (VertexId v = 0; v < n; ++v) {
            std::vector<VertexId> nbrs;
            for (VertexId w = 0; w < v && nbrs.size() < 4; ++w) {
                if (rng.below(4) == 0 && g.is_live(w)) nbrs.push_back(w);
            }
            c.apply(g, UpdateEvent::vertex_insert(v, nbrs));
        }
        return c.coloring().colors_in_use();
    };
    const auto a1 = colors_used(false, 1000);
    const auto a2 = colors_used(true, 1000);
    CHECK(a1 < a2);  // A1 buys few colors with many recolorings
}

TEST_CASE("reset on a single-vertex graph is trivial") {
    BucketOptions opt;
    opt.d = 2;
    BucketColorer c(opt);
    DynamicGraph g(1);
    c.attach(g);  // distributes the one live vertex
    CHECK(c.coloring().color(0) != kNoColor);
    CHECK(c.check_invariants().empty());
}

TEST_CASE("per-bucket color budgets respect the static colorer bound") {
    // every bucket's members use at most (induced max degree + 1) colors for
    // A1, and every sub-bucket likewise for A2
    for (bool two_level : {false, true}) {
        BucketOptions opt;
        opt.d = 2;
        opt.two_level = two_level;
        BucketColorer c(opt);
        DynamicGraph g;
        c.attach(g);
        Rng rng(two_level ? 31 : 32);
        for (VertexId v = 0; v < 800; ++v) {
            std::vector<VertexId> nbrs;
            for (VertexId w = 0; w < v && nbrs.size() < 5; ++w) {
                if (rng.below(5) == 0 && g.is_live(w)) nbrs.push_back(w);
            }
            c.apply(g, UpdateEvent::vertex_insert(v, nbrs));
        }
        // group members by bucket (A1) or (bucket, sub) cell (A2)
        std::map<std::pair<int, int>, std::vector<VertexId>> cells;
        for (VertexId v : g.live_vertices()) {
            const int b = c.bucket_of(v);
            REQUIRE(b >= 0);
            cells[{b, two_level ? c.sub_bucket_of(v) : 0}].push_back(v);
        }
        for (const auto& [cell, members] : cells) {
            std::set<Color> used;
            std::uint32_t max_deg = 0;
            std::set<VertexId> in_cell(members.begin(), members.end());
            for (VertexId v : members) {
                used.insert(c.coloring().color(v));
                std::uint32_t deg = 0;
                for (VertexId w : g.neighbors(v)) {
                    if (in_cell.count(w)) ++deg;
                }
                max_deg = std::max(max_deg, deg);
            }
            CHECK(used.size() <= max_deg + 1);
        }
    }
}

TEST_CASE("edge insertions route through vertex updates") {
    BucketOptions opt;
    opt.d = 2;
    opt.two_level = true;
    BucketColorer c(opt);
    DynamicGraph g(6);
    c.attach(g);
    for (VertexId v = 1; v < 6; ++v) {
        const auto r = c.apply(g, UpdateEvent::edge_insert(0, v));
        CHECK(r.recolored.size() >= 1);
        CHECK(oracle::verify_proper(g, c.coloring()).empty());
    }
    CHECK(g.degree(0) == 5);
    // deletions leave holes and never recolor
    const auto r = c.apply(g, UpdateEvent::edge_delete(0, 1));
    CHECK(r.recolored.empty());
    CHECK(oracle::verify_proper(g, c.coloring()).empty());
}
