// Benchmark CLI for the dyncolor engine. Talks to the engine exclusively
// through the C API in dyncolor.h.

#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyncolor.h"

using nlohmann::json;

namespace {

int exit_code_for(dc_status s) {
    switch (s) {
        case DC_OK: return 0;
        case DC_ERR_VERIFY: return 2;
        case DC_ERR_CONFIG:
        case DC_ERR_PARSE:
        case DC_ERR_IO:
        case DC_ERR_INVALID: return 3;
        default: return 1;
    }
}

int fail(dc_status s) {
    std::fprintf(stderr, "color: %s: %s\n", dc_status_name(s), dc_last_error());
    return exit_code_for(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic graph coloring benchmark runner"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run one experiment");
    std::string algo;
    run->add_option("--algo", algo, "colorer: greedy, a1, a2, log, const, sparse-dense")
        ->required();
    int d = 2;
    run->add_option("--d", d, "bucket count for a1/a2");
    unsigned beta = 4;
    run->add_option("--beta", beta, "level base for log");
    double epsilon = 0.3;
    run->add_option("--epsilon", epsilon, "decomposition parameter for sparse-dense");
    double theta_heavy = 0.05;
    run->add_option("--theta-heavy", theta_heavy, "heavy-color threshold factor");
    std::uint64_t batch_override = 0;
    run->add_option("--batch-override", batch_override, "sparse refresh period (0 = auto)");
    std::uint64_t nr_init = 16;
    run->add_option("--nr-init", nr_init, "initial capacity base for a1/a2");
    std::string stream_file;
    auto* stream_opt = run->add_option("--stream", stream_file, "update stream file");
    std::string gen;
    auto* gen_opt =
        run->add_option("--gen", gen, "generator: oblivious or adaptive-conflict");
    gen_opt->excludes(stream_opt);
    std::uint32_t n = 0;
    run->add_option("--n", n, "generator vertex count");
    std::uint64_t t = 0;
    run->add_option("--t", t, "generator update count");
    std::uint64_t seed = 1;
    run->add_option("--seed", seed, "RNG seed");
    std::string verify = "end";
    run->add_option("--verify", verify, "verification cadence: never, every, end");
    std::string out_path;
    run->add_option("--out", out_path, "write the JSON report here");
    std::string csv_path;
    run->add_option("--csv", csv_path, "append a CSV summary row here");
    bool trace = false;
    run->add_flag("--trace", trace, "print per-chain recolor traces");
    bool lazy_deletions = false;
    run->add_flag("--lazy-deletions", lazy_deletions, "defer edge deletions");

    CLI11_PARSE(app, argc, argv);

    if (stream_file.empty() == gen.empty()) {
        std::fprintf(stderr, "color: exactly one of --stream and --gen is required\n");
        return 3;
    }

    json cfg;
    cfg["algo"] = algo;
    cfg["seed"] = seed;
    cfg["d"] = d;
    cfg["beta"] = beta;
    cfg["nr_init"] = nr_init;
    cfg["epsilon"] = epsilon;
    cfg["theta_heavy"] = theta_heavy;
    cfg["batch_override"] = batch_override;
    if (!stream_file.empty()) cfg["stream_file"] = stream_file;
    if (!gen.empty()) {
        cfg["gen"] = gen;
        cfg["n"] = n;
        cfg["t"] = t;
    }
    cfg["verify"] = verify;
    if (!out_path.empty()) cfg["out"] = out_path;
    if (!csv_path.empty()) cfg["csv"] = csv_path;
    cfg["trace"] = trace;
    cfg["lazy_deletions"] = lazy_deletions;

    dc_experiment* exp = nullptr;
    dc_status s = dc_experiment_create(cfg.dump().c_str(), &exp);
    if (s != DC_OK) return fail(s);

    s = dc_experiment_run(exp);
    if (s != DC_OK) {
        dc_experiment_free(exp);
        return fail(s);
    }

    char* report_text = nullptr;
    s = dc_experiment_report(exp, &report_text);
    if (s != DC_OK) {
        dc_experiment_free(exp);
        return fail(s);
    }

    const json report = json::parse(report_text);
    std::printf("%s seed=%llu updates=%llu recolorings=%llu amortized=%.4f colors=%u "
                "max_load=%u violations=%llu\n",
                algo.c_str(), static_cast<unsigned long long>(seed),
                static_cast<unsigned long long>(report.at("updates").get<std::uint64_t>()),
                static_cast<unsigned long long>(report.at("recolorings").get<std::uint64_t>()),
                report.at("amortized_recolorings").get<double>(),
                report.at("colors_used").get<unsigned>(),
                report.at("max_color_load").get<unsigned>(),
                static_cast<unsigned long long>(report.at("violations").get<std::uint64_t>()));
    if (out_path.empty()) std::printf("%s\n", report.dump(2).c_str());

    dc_string_free(report_text);
    dc_experiment_free(exp);
    return 0;
}
