/*
 * dyncolor - dynamic graph vertex coloring engine, C interface.
 *
 * All functions return dc_status; out-parameters are written only on DC_OK.
 * Strings returned through char** are heap-allocated and must be released
 * with dc_string_free. Handles are opaque and single-threaded; distinct
 * handles may be used from distinct threads.
 */
#ifndef DYNCOLOR_H
#define DYNCOLOR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dc_status {
    DC_OK = 0,
    DC_ERR_INVALID = 1,  /* bad argument or update against the current graph */
    DC_ERR_VERIFY = 2,   /* a verification pass found an improper coloring */
    DC_ERR_CONFIG = 3,   /* malformed experiment configuration */
    DC_ERR_PARSE = 4,    /* malformed stream text */
    DC_ERR_IO = 5,       /* file could not be read or written */
    DC_ERR_INTERNAL = 6  /* invariant breakage; a bug, not a user error */
} dc_status;

const char* dc_status_name(dc_status s);

/* Message for the most recent failure on this thread. */
const char* dc_last_error(void);

void dc_string_free(char* s);

/* ---- update streams ------------------------------------------------- */

typedef struct dc_stream dc_stream;

/* Line grammar: "+e u v", "-e u v", "+v v [n1 n2 ...]", "-v v", "#" comments.
 * Parsing validates every event against the graph state its prefix builds. */
dc_status dc_stream_parse(const char* text, dc_stream** out);
dc_status dc_stream_load(const char* path, dc_stream** out);

/* kind: "oblivious" (uniform random non-edge insertions over n vertices). */
dc_status dc_stream_generate(const char* kind, uint32_t n, uint64_t t, uint64_t seed,
                             dc_stream** out);

dc_status dc_stream_text(const dc_stream* s, char** out_text);
dc_status dc_stream_save(const dc_stream* s, const char* path);
uint64_t dc_stream_events(const dc_stream* s);
uint32_t dc_stream_n0(const dc_stream* s);
void dc_stream_free(dc_stream* s);

/* ---- experiments ----------------------------------------------------- */

typedef struct dc_experiment dc_experiment;

/* config_json fields (all optional unless noted):
 *   algo: "greedy" | "a1" | "a2" | "log" | "const" | "sparse-dense" (required)
 *   seed, d, beta, nr_init, epsilon, theta_heavy, batch_override,
 *   decompose_interval, lazy_deletions, trace
 *   stream_file: path  -- or --  gen: "oblivious" | "adaptive-conflict"
 *   n, t: generator size and update count
 *   verify: "never" | "every" | "end"
 *   out: report JSON path, csv: summary row path
 */
dc_status dc_experiment_create(const char* config_json, dc_experiment** out);

/* Runs to completion. DC_ERR_VERIFY when a verification pass fails; the
 * violation dump is available via dc_last_error. */
dc_status dc_experiment_run(dc_experiment* e);

/* Metrics report of a finished run, as a JSON document. */
dc_status dc_experiment_report(const dc_experiment* e, char** out_json);

void dc_experiment_free(dc_experiment* e);

#ifdef __cplusplus
}
#endif

#endif /* DYNCOLOR_H */
