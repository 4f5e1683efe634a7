// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 1, 2, 3, 5, 6, 7 and 12 share one batch of verified runs.

#include <atomic>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bench/experiment.hpp"
#include "colorers/level_const.hpp"
#include "colorers/level_log.hpp"
#include "colorers/sparse_dense.hpp"
#include "oracle/oracle.hpp"
#include "stream/generators.hpp"

using namespace dyncolor;

namespace {

struct CriterionResult {
    int id;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CriterionResult> g_results;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
    g_results.push_back({id, name, pass, detail});
    std::printf("[%2d] %-34s %s  %s\n", id, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

constexpr std::uint32_t kSuiteN = 200;
constexpr std::uint64_t kSuiteT = 10000;
constexpr int kObliviousSeeds = 100;
constexpr int kAdaptiveSeeds = 20;

struct SuiteRun {
    std::string algo;
    bool adaptive = false;
    std::uint64_t seed = 0;
    bool verified = false;       // no verification failure at cadence "every"
    MetricsReport report;
    std::string error;
};

ExperimentConfig suite_config(const std::string& algo, bool adaptive, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.algo = algo;
    cfg.seed = seed;
    cfg.gen = adaptive ? "adaptive-conflict" : "oblivious";
    cfg.n = kSuiteN;
    cfg.t = kSuiteT;
    cfg.verify = VerifyCadence::Every;
    // beta = 4 collapses n=200 to a single level (no level moves at all);
    // beta = 3 keeps promotions and demotions active while the truncated
    // sample window stays wide enough for short chains
    cfg.beta = 3;
    return cfg;
}

std::vector<SuiteRun> run_shared_suite() {
    const std::vector<std::string> algos = {"greedy", "a1",    "a2",
                                            "log",    "const", "sparse-dense"};
    std::vector<SuiteRun> runs;
    for (const auto& algo : algos) {
        for (int s = 1; s <= kObliviousSeeds + kAdaptiveSeeds; ++s) {
            SuiteRun r;
            r.algo = algo;
            r.adaptive = s > kObliviousSeeds;
            r.seed = static_cast<std::uint64_t>(r.adaptive ? s - kObliviousSeeds : s);
            runs.push_back(std::move(r));
        }
    }
    parallel_for(runs.size(), [&](std::size_t i) {
        SuiteRun& r = runs[i];
        try {
            r.report = run_experiment(suite_config(r.algo, r.adaptive, r.seed));
            r.verified = true;
        } catch (const VerificationFailure& e) {
            r.error = e.dump;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });
    return runs;
}

std::uint64_t counter(const MetricsReport& r, const char* key) {
    if (r.violation_detail.contains(key)) return r.violation_detail[key].get<std::uint64_t>();
    return 0;
}

// ---- criterion 4 helpers ------------------------------------------------

UpdateStream vertex_insert_stream(std::uint32_t n, std::uint64_t seed) {
    UpdateStream s;
    s.n0 = 0;
    s.n_max = n;
    s.seed = seed;
    Rng rng(seed);
    for (VertexId v = 0; v < n; ++v) {
        std::vector<VertexId> nbrs;
        for (int k = 0; k < 3 && v > 0; ++k) {
            const VertexId w = static_cast<VertexId>(rng.below(v));
            bool dup = false;
            for (VertexId x : nbrs) dup |= (x == w);
            if (!dup) nbrs.push_back(w);
        }
        s.events.push_back(UpdateEvent::vertex_insert(v, std::move(nbrs)));
    }
    return s;
}

// ---- criterion 9/10 graph builders --------------------------------------

DynamicGraph planted_cliques_graph(std::uint64_t seed, int* cliques_out) {
    Rng rng(seed);
    const std::uint32_t q = 25 + static_cast<std::uint32_t>(rng.below(12));
    const int k = 2 + static_cast<int>(rng.below(2));
    const std::uint32_t tail = 40 + static_cast<std::uint32_t>(rng.below(30));
    DynamicGraph g(k * q + tail);
    for (int c = 0; c < k; ++c) {
        const VertexId base = c * q;
        for (VertexId i = 0; i < q; ++i) {
            for (VertexId j = i + 1; j < q; ++j) {
                g.apply(UpdateEvent::edge_insert(base + i, base + j));
            }
        }
    }
    const VertexId tbase = k * q;
    for (std::uint32_t e = 0; e < 2 * tail; ++e) {
        const VertexId u = tbase + static_cast<VertexId>(rng.below(tail));
        const VertexId v = tbase + static_cast<VertexId>(rng.below(tail));
        if (u != v && !g.has_edge(u, v) && g.degree(u) < q / 2 && g.degree(v) < q / 2) {
            g.apply(UpdateEvent::edge_insert(u, v));
        }
    }
    *cliques_out = k;
    return g;
}

DynamicGraph gnp_graph(std::uint32_t n, double p, std::uint64_t seed) {
    DynamicGraph g(n);
    Rng rng(seed);
    const std::uint64_t scale = 1u << 20;
    const std::uint64_t threshold = static_cast<std::uint64_t>(p * scale);
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            if (rng.below(scale) < threshold) g.apply(UpdateEvent::edge_insert(u, v));
        }
    }
    return g;
}

double surplus_stats(std::uint32_t n, double p, std::uint64_t seed, double* frac_ge1) {
    DynamicGraph g = gnp_graph(n, p, seed);
    SparseDenseOptions opt;
    opt.epsilon = 0.3;
    opt.seed = seed;
    SparseDenseColorer colorer(opt);
    colorer.attach(g);
    RecolorReport report;
    colorer.refresh_now(g, report);

    const Color k = colorer.coloring().palette_size();
    std::uint64_t sparse_count = 0, with_surplus = 0;
    double total = 0.0;
    std::set<Color> distinct;
    for (VertexId v : g.live_vertices()) {
        if (!colorer.decomposition().is_sparse(v)) continue;
        ++sparse_count;
        distinct.clear();
        for (VertexId u : g.neighbors(v)) distinct.insert(colorer.coloring().color(u));
        distinct.erase(kNoColor);
        const double s = static_cast<double>(k) - static_cast<double>(distinct.size());
        total += s;
        if (s >= 1.0) ++with_surplus;
    }
    if (frac_ge1) {
        *frac_ge1 = sparse_count ? static_cast<double>(with_surplus) / sparse_count : 1.0;
    }
    return sparse_count ? total / sparse_count : 0.0;
}

// ---- criterion 11 fixtures ----------------------------------------------

struct DenseFixtureOutcome {
    bool ok = false;
    std::string detail;
};

DenseFixtureOutcome run_dense_fixture(std::uint64_t seed) {
    DenseFixtureOutcome out;
    Rng rng(seed);
    const std::uint32_t m = 4 + static_cast<std::uint32_t>(rng.below(9));  // 4..12
    const std::uint32_t anchors = static_cast<std::uint32_t>(rng.below(8));
    DynamicGraph g(m + anchors);

    // clique m vertices: complete, then drop some internal edges
    for (VertexId i = 0; i < m; ++i) {
        for (VertexId j = i + 1; j < m; ++j) {
            if (rng.below(10) < 8) g.apply(UpdateEvent::edge_insert(i, j));
        }
    }
    for (VertexId a = 0; a < anchors; ++a) {
        const VertexId target = static_cast<VertexId>(rng.below(m));
        g.apply(UpdateEvent::edge_insert(m + a, target));
    }

    SparseDenseOptions opt;
    opt.epsilon = 0.3;
    opt.seed = seed;
    SparseDenseColorer colorer(opt);
    colorer.attach(g);
    // scatter anchor colors
    for (VertexId a = 0; a < anchors; ++a) {
        colorer.force_color_for_test(m + a,
                                     1 + static_cast<Color>(rng.below(g.delta() + 1)));
    }
    Decomposition d;
    d.epsilon = 0.3;
    d.membership.assign(g.num_ids(), -1);
    std::vector<VertexId> members;
    for (VertexId v = 0; v < m; ++v) {
        d.membership[v] = 0;
        members.push_back(v);
    }
    d.cliques = {members};
    colorer.install_decomposition(d);

    RecolorReport report;
    try {
        colorer.color_dense_clique(g, 0, report);
    } catch (const MatchingError& e) {
        // a witness, never a silent improper coloring
        out.ok = e.witness_vertices.size() > e.witness_colors.size();
        if (!out.ok) out.detail = "witness not a Hall certificate";
        return out;
    }
    // verify by brute force: properness of the whole graph
    if (!oracle::verify_proper(g, colorer.coloring()).empty()) {
        out.detail = "improper coloring after dense rebuild";
        return out;
    }
    // inside the clique every color serves at most two vertices, and
    // same-colored members are non-adjacent (matched non-edges)
    std::map<Color, std::vector<VertexId>> by_color;
    for (VertexId v : members) by_color[colorer.coloring().color(v)].push_back(v);
    for (const auto& [c, vs] : by_color) {
        if (vs.size() > 2) {
            out.detail = "clique color used more than twice";
            return out;
        }
        if (vs.size() == 2 && g.has_edge(vs[0], vs[1])) {
            out.detail = "matched pair is adjacent";
            return out;
        }
    }
    out.ok = true;
    return out;
}

bool hall_fixture_throws() {
    // deterministic Hall violator (heavy colors shrink the color side)
    DynamicGraph g(10);
    g.apply(UpdateEvent::edge_insert(0, 1));
    g.apply(UpdateEvent::edge_insert(0, 2));
    g.apply(UpdateEvent::edge_insert(0, 3));
    g.apply(UpdateEvent::edge_insert(1, 2));
    g.apply(UpdateEvent::edge_insert(1, 3));
    for (VertexId a = 4; a <= 6; ++a) g.apply(UpdateEvent::edge_insert(0, a));
    for (VertexId a = 7; a <= 9; ++a) g.apply(UpdateEvent::edge_insert(1, a));
    SparseDenseOptions opt;
    opt.epsilon = 0.3;
    SparseDenseColorer colorer(opt);
    colorer.attach(g);
    for (VertexId a = 4; a <= 6; ++a) colorer.force_color_for_test(a, a - 3);
    for (VertexId a = 7; a <= 9; ++a) colorer.force_color_for_test(a, a - 6);
    colorer.force_color_for_test(0, 6);
    colorer.force_color_for_test(1, 7);
    Decomposition d;
    d.epsilon = 0.3;
    d.membership.assign(10, -1);
    for (VertexId v = 0; v < 4; ++v) d.membership[v] = 0;
    d.cliques = {{0, 1, 2, 3}};
    colorer.install_decomposition(d);
    RecolorReport report;
    try {
        colorer.color_dense_clique(g, 0, report);
    } catch (const MatchingError& e) {
        return e.witness_vertices.size() > e.witness_colors.size();
    }
    return false;
}

// ---- criteria ------------------------------------------------------------

void criterion_4() {
    const std::vector<std::uint32_t> sizes = {100, 1000, 10000};
    std::map<std::string, std::vector<double>> amortized;
    for (std::uint32_t n : sizes) {
        const auto stream = vertex_insert_stream(n, 40 + n);
        for (const std::string algo : {"a1", "a2"}) {
            ExperimentConfig cfg;
            cfg.algo = algo;
            cfg.gen = "oblivious";
            cfg.d = 2;
            cfg.seed = 1;
            cfg.verify = VerifyCadence::End;
            amortized[algo].push_back(run_experiment_on(cfg, stream).amortized_recolorings);
        }
    }
    const auto& a1 = amortized["a1"];
    const auto& a2 = amortized["a2"];
    const double a2_ratio = *std::max_element(a2.begin(), a2.end()) /
                            *std::min_element(a2.begin(), a2.end());
    const double a1_growth = a1.back() / a1.front();
    std::ostringstream detail;
    detail.precision(3);
    detail << "a2 spread x" << a2_ratio << " (<1.5), a1 growth x" << a1_growth << " (>=2)";
    record(4, "bucket trade-off shape", a2_ratio < 1.5 && a1_growth >= 2.0, detail.str());
}

void criterion_8() {
    const std::vector<std::uint32_t> sizes = {128, 256, 512};
    const std::uint32_t delta_cap = 32;
    std::vector<double> work;
    for (std::uint32_t n : sizes) {
        std::uint64_t log2n = 0;
        while ((1u << log2n) < n) ++log2n;
        const std::uint64_t t = 4ull * n * (log2n + delta_cap);
        const auto stream = gen_churn_stream(n, t, delta_cap, 1000 + n);
        ExperimentConfig cfg;
        cfg.algo = "const";
        cfg.gen = "oblivious";
        cfg.seed = n;
        cfg.verify = VerifyCadence::End;
        work.push_back(run_experiment_on(cfg, stream).amortized_work);
    }
    const double ratio =
        *std::max_element(work.begin(), work.end()) / *std::min_element(work.begin(), work.end());
    std::ostringstream detail;
    detail.precision(3);
    detail << "amortized work " << work[0] << "/" << work[1] << "/" << work[2] << ", spread x"
           << ratio;
    record(8, "constant-shape scaling", ratio < 1.5, detail.str());
}

void criterion_9() {
    int bad = 0, cliques_seen = 0;
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        int k = 0;
        DynamicGraph g = planted_cliques_graph(seed, &k);
        const auto d = hss_decompose(g, 0.3);
        if (!check_decomposition(g, d).empty()) ++bad;
        if (static_cast<int>(d.cliques.size()) != k) ++bad;
        cliques_seen += static_cast<int>(d.cliques.size());
    }
    for (std::uint64_t seed = 16; seed <= 30; ++seed) {
        DynamicGraph g = gnp_graph(150, 0.05, seed);
        const auto d = hss_decompose(g, 0.3);
        if (!check_decomposition(g, d).empty()) ++bad;
    }
    std::ostringstream detail;
    detail << "30 graphs, " << cliques_seen << " cliques validated, " << bad << " bad";
    record(9, "decomposition predicates", bad == 0 && cliques_seen >= 30, detail.str());
}

void criterion_10() {
    int low_frac = 0;
    double mean_01 = 0.0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        double frac = 0.0;
        mean_01 += surplus_stats(200, 0.1, seed, &frac);
        if (frac < 0.9) ++low_frac;
    }
    mean_01 /= 30.0;
    double mean_02 = 0.0, mean_04 = 0.0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        mean_02 += surplus_stats(200, 0.2, seed, nullptr);
        mean_04 += surplus_stats(200, 0.4, seed, nullptr);
    }
    mean_02 /= 30.0;
    mean_04 /= 30.0;
    const bool pass = low_frac == 0 && mean_01 > 0.0 && mean_01 < mean_02 && mean_02 < mean_04;
    std::ostringstream detail;
    detail.precision(3);
    detail << "means " << mean_01 << " < " << mean_02 << " < " << mean_04 << ", low-frac batches "
           << low_frac;
    record(10, "sparse surplus", pass, detail.str());
}

void criterion_11() {
    int bad = 0;
    std::string first_detail;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto out = run_dense_fixture(seed);
        if (!out.ok) {
            ++bad;
            if (first_detail.empty()) first_detail = out.detail;
        }
    }
    const bool hall_ok = hall_fixture_throws();
    std::ostringstream detail;
    detail << "200 fixtures, " << bad << " bad; hall witness " << (hall_ok ? "ok" : "missing");
    if (!first_detail.empty()) detail << " (" << first_detail << ")";
    record(11, "dense matching correctness", bad == 0 && hall_ok, detail.str());
}

void criterion_13() {
    // maintained palette views against the brute-force recomputation
    std::uint64_t mismatches = 0, states = 0;
    {
        LevelLogOptions opt;
        opt.beta = 2;
        opt.seed = 77;
        LevelLogColorer c(opt);
        DynamicGraph g(80);
        const auto stream = gen_oblivious_stream({AdversaryKind::ObliviousUniform, 80, 2000, 3});
        c.attach(g);
        Rng pick(5);
        for (const auto& e : stream.events) {
            c.apply(g, e);
            const VertexId v = static_cast<VertexId>(pick.below(g.num_ids()));
            ++states;
            if (!(c.view(g, v) ==
                  oracle::brute_force_palette(g, c.coloring(), v,
                                              [&](VertexId w) { return c.level(w); },
                                              c.coloring().palette_size()))) {
                ++mismatches;
            }
            if (states >= 1000) break;
        }
    }
    {
        ConstOptions opt;
        opt.seed = 78;
        LevelConstColorer c(opt);
        DynamicGraph g(80);
        const auto stream = gen_oblivious_stream({AdversaryKind::ObliviousUniform, 80, 2000, 4});
        c.attach(g);
        Rng pick(6);
        std::uint64_t local = 0;
        for (const auto& e : stream.events) {
            c.apply(g, e);
            const VertexId v = static_cast<VertexId>(pick.below(g.num_ids()));
            ++states;
            ++local;
            if (!(c.view(g, v) ==
                  oracle::brute_force_palette(g, c.coloring(), v,
                                              [&](VertexId w) { return c.level(w); },
                                              c.coloring().palette_size()))) {
                ++mismatches;
            }
            if (local >= 1000) break;
        }
    }

    // chromatic-number lower bound against every colorer on small graphs
    std::uint64_t bound_failures = 0;
    Rng rng(91);
    for (int round = 0; round < 50; ++round) {
        const std::uint32_t n = 5 + static_cast<std::uint32_t>(rng.below(8));  // 5..12
        UpdateStream s;
        s.n0 = n;
        DynamicGraph probe(n);
        for (std::uint32_t e = 0; e < n * 2; ++e) {
            const VertexId u = static_cast<VertexId>(rng.below(n));
            const VertexId v = static_cast<VertexId>(rng.below(n));
            if (u != v && !probe.has_edge(u, v)) {
                probe.apply(UpdateEvent::edge_insert(u, v));
                s.events.push_back(UpdateEvent::edge_insert(u, v));
            }
        }
        s.n_max = n;
        const int chromatic = oracle::exact_chromatic_number(probe);
        for (const std::string algo : {"greedy", "a1", "a2", "log", "const", "sparse-dense"}) {
            ExperimentConfig cfg;
            cfg.algo = algo;
            cfg.gen = "oblivious";
            cfg.seed = round + 1;
            cfg.beta = 2;
            cfg.verify = VerifyCadence::End;
            const auto r = run_experiment_on(cfg, s);
            if (static_cast<int>(r.colors_used) < chromatic) ++bound_failures;
        }
    }
    std::ostringstream detail;
    detail << states << " palette states, " << mismatches << " mismatches; "
           << bound_failures << " chromatic bound failures";
    record(13, "oracle agreement", mismatches == 0 && bound_failures == 0 && states >= 2000,
           detail.str());
}

void criterion_14() {
    int mismatches = 0;
    for (const std::string algo : {"greedy", "a1", "a2", "log", "const", "sparse-dense"}) {
        for (const std::string gen : {"oblivious", "adaptive-conflict"}) {
            ExperimentConfig cfg;
            cfg.algo = algo;
            cfg.gen = gen;
            cfg.n = 100;
            cfg.t = 2000;
            cfg.seed = 17;
            cfg.beta = 2;
            cfg.verify = VerifyCadence::End;
            auto a = run_experiment(cfg).to_json();
            auto b = run_experiment(cfg).to_json();
            a.erase("wall_ms");
            b.erase("wall_ms");
            if (a.dump() != b.dump()) ++mismatches;
        }
    }
    record(14, "determinism", mismatches == 0,
           mismatches == 0 ? "12 repeated configs byte-identical" : "reports diverged");
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    auto wanted = [&](int id) { return only.empty() || only.count(id) > 0; };

    const bool need_suite = wanted(1) || wanted(2) || wanted(3) || wanted(5) || wanted(6) ||
                            wanted(7) || wanted(12);
    if (need_suite) {
        std::printf("running the shared verified suite (%d runs)...\n",
                    6 * (kObliviousSeeds + kAdaptiveSeeds));
        std::fflush(stdout);
        const auto runs = run_shared_suite();

        // criterion 1: every run verified after every update
        std::uint64_t failed = 0;
        std::string first_error;
        for (const auto& r : runs) {
            if (!r.verified) {
                ++failed;
                if (first_error.empty()) first_error = r.algo + ": " + r.error;
            }
        }
        if (wanted(1)) {
            std::ostringstream detail;
            detail << runs.size() << " runs at verify=every, " << failed << " failed";
            if (!first_error.empty()) detail << " (" << first_error.substr(0, 60) << ")";
            record(1, "properness, all colorers", failed == 0, detail.str());
        }

        // criterion 2: palette bound for the (Delta+1) colorers
        if (wanted(2)) {
            std::uint64_t overflow = 0;
            for (const auto& r : runs) {
                if (r.algo == "a1" || r.algo == "a2") continue;
                overflow += counter(r.report, "palette_overflow");
            }
            record(2, "palette bound", overflow == 0,
                   "overflow count " + std::to_string(overflow));
        }

        // criterion 3: candidate-palette lower bound, zero exceptions
        if (wanted(3)) {
            std::uint64_t exceptions = 0;
            for (const auto& r : runs) {
                if (r.algo == "log") exceptions += counter(r.report, "candidate_lower_bound");
            }
            record(3, "candidate size lower bound", exceptions == 0,
                   "exceptions " + std::to_string(exceptions));
        }

        // criterion 5: chain behavior with delta >= 50
        if (wanted(5)) {
            double len_sum = 0.0;
            std::uint64_t chains = 0, fanout = 0;
            for (const auto& r : runs) {
                if (r.algo != "log") continue;
                const auto& s = r.report.extra["level_log"];
                const std::uint64_t c = s["chains_hidelta"].get<std::uint64_t>();
                len_sum += s["mean_chain_length_hidelta"].get<double>() * c;
                chains += c;
                fanout += counter(r.report, "fanout");
            }
            const double mean = chains ? len_sum / chains : 0.0;
            std::ostringstream detail;
            detail.precision(4);
            detail << chains << " chains, mean length " << mean << ", fan-out violations "
                   << fanout;
            record(5, "recolor chain behavior", chains > 0 && mean <= 1.1 && fanout == 0,
                   detail.str());
        }

        // criterion 6: recorded recoloring palette sizes
        if (wanted(6)) {
            std::uint64_t bad = 0, records = 0;
            for (const auto& r : runs) {
                if (r.algo != "const") continue;
                bad += counter(r.report, "palette_size_bound");
                records += r.report.extra["epochs"]["palette_records"].get<std::uint64_t>();
            }
            std::ostringstream detail;
            detail << records << " recorded palettes, " << bad << " above the bound";
            record(6, "recolor palette size audit", bad == 0 && records > 0, detail.str());
        }

        // criterion 7: epoch accounting
        if (wanted(7)) {
            std::uint64_t psdur_bad = 0, tiling = 0, charge = 0, epochs = 0;
            for (const auto& r : runs) {
                if (r.algo != "const") continue;
                psdur_bad += counter(r.report, "psdur_exceeds_dur");
                tiling += counter(r.report, "epoch_tiling");
                charge += counter(r.report, "charge_conservation");
                epochs += r.report.extra["epochs"]["epochs_closed"].get<std::uint64_t>();
            }
            std::ostringstream detail;
            detail << epochs << " epochs; psdur/tiling/charge bad " << psdur_bad << "/" << tiling
                   << "/" << charge;
            record(7, "epoch accounting", epochs > 0 && psdur_bad + tiling + charge == 0,
                   detail.str());
        }

        // criterion 12: color-load invariant during sparse-dense runs
        if (wanted(12)) {
            std::uint64_t load_bad = 0;
            for (const auto& r : runs) {
                if (r.algo == "sparse-dense") load_bad += counter(r.report, "color_load");
            }
            record(12, "color-load bound", load_bad == 0,
                   "violations " + std::to_string(load_bad));
        }
    }

    if (wanted(4)) criterion_4();
    if (wanted(8)) criterion_8();
    if (wanted(9)) criterion_9();
    if (wanted(10)) criterion_10();
    if (wanted(11)) criterion_11();
    if (wanted(13)) criterion_13();
    if (wanted(14)) criterion_14();

    int failures = 0;
    for (const auto& r : g_results) {
        if (!r.pass) ++failures;
    }
    std::printf("%zu criteria checked, %d failed\n", g_results.size(), failures);
    return failures == 0 ? 0 : 1;
}
