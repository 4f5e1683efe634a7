#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

#include "colorers/colorer.hpp"
#include "core/errors.hpp"
#include "stream/generators.hpp"
#include "stream/stream.hpp"

namespace dyncolor {

enum class VerifyCadence { Never, Every, End };

struct ExperimentConfig {
    std::string algo = "greedy";  // greedy | a1 | a2 | log | const | sparse-dense
    std::uint64_t seed = 1;

    // algorithm parameters
    int d = 2;
    std::uint32_t beta = 4;
    std::uint64_t nr_init = 16;
    double epsilon = 0.3;
    double theta_heavy = 0.05;
    std::uint64_t batch_override = 0;
    std::uint64_t decompose_interval = 0;

    // stream source: a file, or a generator spec
    std::string stream_file;
    std::string gen;  // "" | "oblivious" | "adaptive-conflict"
    std::uint32_t n = 0;
    std::uint64_t t = 0;

    VerifyCadence verify = VerifyCadence::End;
    std::string out_path;
    std::string csv_path;
    bool trace = false;
    bool lazy_deletions = false;

    static ExperimentConfig from_json(const json& j);  // throws ConfigError
    json to_json() const;
};

struct MetricsReport {
    std::string algo;
    std::uint64_t seed = 0;
    std::string stream_source;
    std::uint64_t updates = 0;
    std::uint64_t recolorings = 0;
    double amortized_recolorings = 0.0;
    std::uint64_t work = 0;
    double amortized_work = 0.0;
    std::uint64_t init_work = 0;
    std::uint64_t conflicts = 0;
    std::uint32_t colors_used = 0;
    std::uint32_t max_color_load = 0;
    std::uint32_t n_max = 0;
    std::uint32_t delta = 0;
    std::uint64_t violation_total = 0;  // must be zero
    json violation_detail = json::object();
    json extra = json::object();        // colorer-specific sections
    double wall_ms = 0.0;

    json to_json() const;
    static MetricsReport from_json(const json& j);
    std::string csv_row() const;
    static std::string csv_header();
};

// Thrown when a verification pass finds violations; carries a dump.
struct VerificationFailure : Error {
    explicit VerificationFailure(std::string dump_text)
        : Error("verification failed"), dump(std::move(dump_text)) {}
    std::string dump;
};

std::unique_ptr<Colorer> make_colorer(const ExperimentConfig& cfg);

// Runs the configured experiment end to end: builds the stream (or steps the
// adaptive adversary against the live coloring), feeds the colorer, verifies
// at the configured cadence, and writes the report files when paths are set.
MetricsReport run_experiment(const ExperimentConfig& cfg);

// As above but against a pre-built stream (the file/generator step skipped).
MetricsReport run_experiment_on(const ExperimentConfig& cfg, const UpdateStream& stream);

void emit_report(const MetricsReport& report, const std::string& json_path,
                 const std::string& csv_path = "");

}  // namespace dyncolor
