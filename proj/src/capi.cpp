#include "dyncolor.h"

#include <cstring>
#include <new>
#include <string>

#include "bench/experiment.hpp"
#include "core/errors.hpp"
#include "stream/generators.hpp"
#include "stream/stream.hpp"

using namespace dyncolor;

struct dc_stream {
    UpdateStream s;
};

struct dc_experiment {
    ExperimentConfig cfg;
    MetricsReport report;
    bool ran = false;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
dc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const VerificationFailure& e) {
        g_last_error = e.dump;
        return DC_ERR_VERIFY;
    } catch (const ConfigError& e) {
        g_last_error = e.what();
        return DC_ERR_CONFIG;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return DC_ERR_PARSE;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return DC_ERR_IO;
    } catch (const UpdateError& e) {
        g_last_error = e.what();
        return DC_ERR_INVALID;
    } catch (const InvariantError& e) {
        g_last_error = e.what();
        return DC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DC_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* dc_status_name(dc_status s) {
    switch (s) {
        case DC_OK: return "ok";
        case DC_ERR_INVALID: return "invalid";
        case DC_ERR_VERIFY: return "verification-failure";
        case DC_ERR_CONFIG: return "config-error";
        case DC_ERR_PARSE: return "parse-error";
        case DC_ERR_IO: return "io-error";
        case DC_ERR_INTERNAL: return "internal-error";
    }
    return "?";
}

const char* dc_last_error(void) { return g_last_error.c_str(); }

void dc_string_free(char* s) { delete[] s; }

dc_status dc_stream_parse(const char* text, dc_stream** out) {
    if (!text || !out) {
        g_last_error = "null argument";
        return DC_ERR_INVALID;
    }
    return guarded([&] {
        auto* h = new dc_stream{parse_stream(text)};
        *out = h;
        return DC_OK;
    });
}

dc_status dc_stream_load(const char* path, dc_stream** out) {
    if (!path || !out) {
        g_last_error = "null argument";
        return DC_ERR_INVALID;
    }
    return guarded([&] {
        auto* h = new dc_stream{load_stream(path)};
        *out = h;
        return DC_OK;
    });
}

dc_status dc_stream_generate(const char* kind, uint32_t n, uint64_t t, uint64_t seed,
                             dc_stream** out) {
    if (!kind || !out) {
        g_last_error = "null argument";
        return DC_ERR_INVALID;
    }
    return guarded([&]() -> dc_status {
        if (std::string(kind) != "oblivious") {
            g_last_error = "unknown generator kind (only 'oblivious' is offline)";
            return DC_ERR_CONFIG;
        }
        AdversarySpec spec;
        spec.kind = AdversaryKind::ObliviousUniform;
        spec.n = n;
        spec.t = t;
        spec.seed = seed;
        *out = new dc_stream{gen_oblivious_stream(spec)};
        return DC_OK;
    });
}

dc_status dc_stream_text(const dc_stream* s, char** out_text) {
    if (!s || !out_text) {
        g_last_error = "null argument";
        return DC_ERR_INVALID;
    }
    return guarded([&]() -> dc_status {
        char* text = dup_string(serialize_stream(s->s));
        if (!text) {
            g_last_error = "out of memory";
            return DC_ERR_INTERNAL;
        }
        *out_text = text;
        return DC_OK;
    });
}

dc_status dc_stream_save(const dc_stream* s, const char* path) {
    if (!s || !path) {
        g_last_error = "null argument";
        return DC_ERR_INVALID;
    }
    return guarded([&] {
        save_stream(s->s, path);
        return DC_OK;
    });
}

uint64_t dc_stream_events(const dc_stream* s) { return s ? s->s.events.size() : 0; }

uint32_t dc_stream_n0(const dc_stream* s) { return s ? s->s.n0 : 0; }

void dc_stream_free(dc_stream* s) { delete s; }

dc_status dc_experiment_create(const char* config_json, dc_experiment** out) {
    if (!config_json || !out) {
        g_last_error = "null argument";
        return DC_ERR_INVALID;
    }
    return guarded([&]() -> dc_status {
        json j;
        try {
            j = json::parse(config_json);
        } catch (const json::exception& e) {
            g_last_error = std::string("config is not valid JSON: ") + e.what();
            return DC_ERR_CONFIG;
        }
        auto* h = new dc_experiment{};
        try {
            h->cfg = ExperimentConfig::from_json(j);
        } catch (...) {
            delete h;
            throw;
        }
        *out = h;
        return DC_OK;
    });
}

dc_status dc_experiment_run(dc_experiment* e) {
    if (!e) {
        g_last_error = "null argument";
        return DC_ERR_INVALID;
    }
    return guarded([&] {
        e->report = run_experiment(e->cfg);
        e->ran = true;
        return DC_OK;
    });
}

dc_status dc_experiment_report(const dc_experiment* e, char** out_json) {
    if (!e || !out_json) {
        g_last_error = "null argument";
        return DC_ERR_INVALID;
    }
    if (!e->ran) {
        g_last_error = "experiment has not been run";
        return DC_ERR_INVALID;
    }
    return guarded([&]() -> dc_status {
        char* text = dup_string(e->report.to_json().dump(2));
        if (!text) {
            g_last_error = "out of memory";
            return DC_ERR_INTERNAL;
        }
        *out_json = text;
        return DC_OK;
    });
}

void dc_experiment_free(dc_experiment* e) { delete e; }

}  // extern "C"
