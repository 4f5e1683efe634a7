#include "bench/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "colorers/bucket.hpp"
#include "colorers/greedy.hpp"
#include "colorers/level_const.hpp"
#include "colorers/level_log.hpp"
#include "colorers/sparse_dense.hpp"
#include "oracle/oracle.hpp"

namespace dyncolor {

namespace {

VerifyCadence parse_verify(const std::string& s) {
    if (s == "never") return VerifyCadence::Never;
    if (s == "every") return VerifyCadence::Every;
    if (s == "end") return VerifyCadence::End;
    throw ConfigError("verify must be never, every or end, got '" + s + "'");
}

std::string verify_name(VerifyCadence v) {
    switch (v) {
        case VerifyCadence::Never: return "never";
        case VerifyCadence::Every: return "every";
        case VerifyCadence::End: return "end";
    }
    return "?";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    try {
        if (j.contains("algo")) c.algo = j.at("algo").get<std::string>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("d")) c.d = j.at("d").get<int>();
        if (j.contains("beta")) c.beta = j.at("beta").get<std::uint32_t>();
        if (j.contains("nr_init")) c.nr_init = j.at("nr_init").get<std::uint64_t>();
        if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
        if (j.contains("theta_heavy")) c.theta_heavy = j.at("theta_heavy").get<double>();
        if (j.contains("batch_override")) c.batch_override = j.at("batch_override").get<std::uint64_t>();
        if (j.contains("decompose_interval")) {
            c.decompose_interval = j.at("decompose_interval").get<std::uint64_t>();
        }
        if (j.contains("stream_file")) c.stream_file = j.at("stream_file").get<std::string>();
        if (j.contains("gen")) c.gen = j.at("gen").get<std::string>();
        if (j.contains("n")) c.n = j.at("n").get<std::uint32_t>();
        if (j.contains("t")) c.t = j.at("t").get<std::uint64_t>();
        if (j.contains("verify")) c.verify = parse_verify(j.at("verify").get<std::string>());
        if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
        if (j.contains("csv")) c.csv_path = j.at("csv").get<std::string>();
        if (j.contains("trace")) c.trace = j.at("trace").get<bool>();
        if (j.contains("lazy_deletions")) c.lazy_deletions = j.at("lazy_deletions").get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config: ") + e.what());
    }

    static const char* algos[] = {"greedy", "a1", "a2", "log", "const", "sparse-dense"};
    if (std::find_if(std::begin(algos), std::end(algos),
                     [&](const char* a) { return c.algo == a; }) == std::end(algos)) {
        throw ConfigError("unknown algo '" + c.algo + "'");
    }
    const bool has_file = !c.stream_file.empty();
    const bool has_gen = !c.gen.empty();
    if (has_file == has_gen) {
        throw ConfigError("exactly one of stream_file and gen must be set");
    }
    if (has_gen) {
        if (c.gen != "oblivious" && c.gen != "adaptive-conflict") {
            throw ConfigError("gen must be oblivious or adaptive-conflict, got '" + c.gen + "'");
        }
        if (c.n < 2) throw ConfigError("generator needs n >= 2");
    }
    return c;
}

json ExperimentConfig::to_json() const {
    json j;
    j["algo"] = algo;
    j["seed"] = seed;
    j["d"] = d;
    j["beta"] = beta;
    j["nr_init"] = nr_init;
    j["epsilon"] = epsilon;
    j["theta_heavy"] = theta_heavy;
    j["batch_override"] = batch_override;
    j["decompose_interval"] = decompose_interval;
    if (!stream_file.empty()) j["stream_file"] = stream_file;
    if (!gen.empty()) {
        j["gen"] = gen;
        j["n"] = n;
        j["t"] = t;
    }
    j["verify"] = verify_name(verify);
    if (!out_path.empty()) j["out"] = out_path;
    if (!csv_path.empty()) j["csv"] = csv_path;
    j["trace"] = trace;
    j["lazy_deletions"] = lazy_deletions;
    return j;
}

json MetricsReport::to_json() const {
    json j;
    j["algo"] = algo;
    j["seed"] = seed;
    j["stream"] = stream_source;
    j["updates"] = updates;
    j["recolorings"] = recolorings;
    j["amortized_recolorings"] = amortized_recolorings;
    j["work"] = work;
    j["amortized_work"] = amortized_work;
    j["init_work"] = init_work;
    j["conflicts"] = conflicts;
    j["colors_used"] = colors_used;
    j["max_color_load"] = max_color_load;
    j["n_max"] = n_max;
    j["delta"] = delta;
    j["violations"] = violation_total;
    j["violation_detail"] = violation_detail;
    j["extra"] = extra;
    j["wall_ms"] = wall_ms;
    return j;
}

MetricsReport MetricsReport::from_json(const json& j) {
    MetricsReport r;
    r.algo = j.at("algo").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.stream_source = j.at("stream").get<std::string>();
    r.updates = j.at("updates").get<std::uint64_t>();
    r.recolorings = j.at("recolorings").get<std::uint64_t>();
    r.amortized_recolorings = j.at("amortized_recolorings").get<double>();
    r.work = j.at("work").get<std::uint64_t>();
    r.amortized_work = j.at("amortized_work").get<double>();
    r.init_work = j.at("init_work").get<std::uint64_t>();
    r.conflicts = j.at("conflicts").get<std::uint64_t>();
    r.colors_used = j.at("colors_used").get<std::uint32_t>();
    r.max_color_load = j.at("max_color_load").get<std::uint32_t>();
    r.n_max = j.at("n_max").get<std::uint32_t>();
    r.delta = j.at("delta").get<std::uint32_t>();
    r.violation_total = j.at("violations").get<std::uint64_t>();
    r.violation_detail = j.at("violation_detail");
    r.extra = j.at("extra");
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
}

std::string MetricsReport::csv_header() {
    return "algo,seed,updates,recolorings,amortized_recolorings,work,amortized_work,"
           "init_work,conflicts,colors_used,max_color_load,n_max,delta,violations,wall_ms";
}

std::string MetricsReport::csv_row() const {
    std::ostringstream ss;
    ss << algo << ',' << seed << ',' << updates << ',' << recolorings << ','
       << amortized_recolorings << ',' << work << ',' << amortized_work << ',' << init_work << ','
       << conflicts << ',' << colors_used << ',' << max_color_load << ',' << n_max << ','
       << delta << ',' << violation_total << ',' << wall_ms;
    return ss.str();
}

std::unique_ptr<Colorer> make_colorer(const ExperimentConfig& cfg) {
    const std::uint64_t colorer_seed = Rng::derive(cfg.seed, 0xC0102);
    if (cfg.algo == "greedy") return std::make_unique<GreedyColorer>();
    if (cfg.algo == "a1" || cfg.algo == "a2") {
        BucketOptions opt;
        opt.d = cfg.d;
        opt.nr_init = cfg.nr_init;
        opt.two_level = cfg.algo == "a2";
        return std::make_unique<BucketColorer>(opt);
    }
    if (cfg.algo == "log") {
        LevelLogOptions opt;
        opt.beta = cfg.beta;
        opt.seed = colorer_seed;
        return std::make_unique<LevelLogColorer>(opt);
    }
    if (cfg.algo == "const") {
        ConstOptions opt;
        opt.seed = colorer_seed;
        return std::make_unique<LevelConstColorer>(opt);
    }
    if (cfg.algo == "sparse-dense") {
        SparseDenseOptions opt;
        opt.epsilon = cfg.epsilon;
        opt.theta_heavy = cfg.theta_heavy;
        opt.batch_override = cfg.batch_override;
        opt.decompose_interval = cfg.decompose_interval;
        opt.seed = colorer_seed;
        return std::make_unique<SparseDenseColorer>(opt);
    }
    throw ConfigError("unknown algo '" + cfg.algo + "'");
}

namespace {

void verify_or_throw(const DynamicGraph& g, const Colorer& colorer, std::uint64_t at_update,
                     bool delta_plus_one) {
    const auto violations =
        oracle::verify_proper(g, colorer.coloring(), delta_plus_one ? g.delta() + 1 : 0);
    if (violations.empty()) return;
    std::ostringstream dump;
    dump << "update " << at_update << ": " << violations.size() << " violation(s)\n";
    for (std::size_t i = 0; i < violations.size() && i < 20; ++i) {
        dump << "  " << violations[i].describe() << "\n";
    }
    throw VerificationFailure(dump.str());
}

std::uint64_t sum_counters(const json& j) {
    std::uint64_t total = 0;
    for (const auto& [key, value] : j.items()) {
        if (value.is_number_unsigned()) total += value.get<std::uint64_t>();
    }
    return total;
}

MetricsReport run_loop(const ExperimentConfig& cfg, DynamicGraph& g,
                       const std::vector<UpdateEvent>* fixed_events,
                       const std::string& source_name) {
    const auto t0 = std::chrono::steady_clock::now();
    auto colorer = make_colorer(cfg);
    // bucket colorers trade extra colors for fewer recolorings; the rest
    // must stay within the (Delta+1) palette
    const bool delta_plus_one = cfg.algo != "a1" && cfg.algo != "a2";
    colorer->attach(g);
    if (cfg.verify == VerifyCadence::Every) verify_or_throw(g, *colorer, 0, delta_plus_one);

    MetricsReport report;
    report.algo = cfg.algo;
    report.seed = cfg.seed;
    report.stream_source = source_name;
    report.n_max = g.live_count();

    Rng adversary_rng(Rng::derive(cfg.seed, 0xADA9));
    const std::uint64_t total = fixed_events ? fixed_events->size() : cfg.t;

    for (std::uint64_t i = 0; i < total; ++i) {
        UpdateEvent e;
        if (fixed_events) {
            e = (*fixed_events)[i];
        } else {
            try {
                e = adaptive_conflict_step(g, colorer->coloring(), adversary_rng);
            } catch (const StreamExhausted&) {
                break;
            }
        }
        const RecolorReport r = colorer->apply(g, e);
        ++report.updates;
        report.recolorings += r.recolored.size();
        if (r.conflict) ++report.conflicts;
        report.n_max = std::max(report.n_max, g.live_count());
        if (cfg.trace && !r.recolored.empty()) {
            std::cout << "trace update=" << (i + 1) << " kind=" << to_string(e.kind)
                      << " chain=" << r.chain_length << " recolored=";
            for (std::size_t k = 0; k < r.recolored.size(); ++k) {
                std::cout << (k ? "," : "") << r.recolored[k];
            }
            std::cout << "\n";
        }
        if (cfg.verify == VerifyCadence::Every) verify_or_throw(g, *colorer, i + 1, delta_plus_one);
    }
    colorer->finish(g);
    if (cfg.verify == VerifyCadence::End) verify_or_throw(g, *colorer, report.updates, delta_plus_one);

    report.work = colorer->work();
    report.init_work = colorer->init_work();
    report.amortized_recolorings =
        report.updates ? static_cast<double>(report.recolorings) / report.updates : 0.0;
    report.amortized_work =
        report.updates ? static_cast<double>(report.work - report.init_work) / report.updates : 0.0;
    report.colors_used = colorer->coloring().colors_in_use();
    report.max_color_load = colorer->coloring().max_load();
    report.delta = g.delta();
    colorer->violation_counts(report.violation_detail);
    report.violation_total = sum_counters(report.violation_detail);
    colorer->stats(report.extra);

    const auto t1 = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (!cfg.out_path.empty() || !cfg.csv_path.empty()) {
        emit_report(report, cfg.out_path, cfg.csv_path);
    }
    return report;
}

}  // namespace

MetricsReport run_experiment_on(const ExperimentConfig& cfg, const UpdateStream& stream) {
    DynamicGraph g(stream.n0, cfg.lazy_deletions ? DynamicGraph::DeletionMode::Lazy
                                                 : DynamicGraph::DeletionMode::Eager);
    return run_loop(cfg, g, &stream.events, "stream");
}

MetricsReport run_experiment(const ExperimentConfig& cfg) {
    const auto mode = cfg.lazy_deletions ? DynamicGraph::DeletionMode::Lazy
                                         : DynamicGraph::DeletionMode::Eager;
    if (!cfg.stream_file.empty()) {
        const UpdateStream s = load_stream(cfg.stream_file);
        DynamicGraph g(s.n0, mode);
        return run_loop(cfg, g, &s.events, cfg.stream_file);
    }
    if (cfg.gen == "oblivious") {
        AdversarySpec spec;
        spec.kind = AdversaryKind::ObliviousUniform;
        spec.n = cfg.n;
        spec.t = cfg.t;
        spec.seed = cfg.seed;
        const UpdateStream s = gen_oblivious_stream(spec);
        DynamicGraph g(s.n0, mode);
        return run_loop(cfg, g, &s.events, "gen:oblivious");
    }
    // adaptive-conflict: events are chosen against the live coloring
    DynamicGraph g(cfg.n, mode);
    return run_loop(cfg, g, nullptr, "gen:adaptive-conflict");
}

void emit_report(const MetricsReport& report, const std::string& json_path,
                 const std::string& csv_path) {
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw IoError("cannot write report: " + json_path);
        out << report.to_json().dump(2) << "\n";
        if (!out) throw IoError("write failed: " + json_path);
    }
    if (!csv_path.empty()) {
        const bool fresh = !std::ifstream(csv_path).good();
        std::ofstream out(csv_path, std::ios::binary | std::ios::app);
        if (!out) throw IoError("cannot write csv: " + csv_path);
        if (fresh) out << MetricsReport::csv_header() << "\n";
        out << report.csv_row() << "\n";
        if (!out) throw IoError("write failed: " + csv_path);
    }
}

}  // namespace dyncolor
