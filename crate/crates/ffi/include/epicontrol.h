#ifndef EPICONTROL_H
#define EPICONTROL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum EcStatus {
  EC_STATUS_OK = 0,
  EC_STATUS_NULL_POINTER = 1,
  EC_STATUS_INVALID_ARGUMENT = 2,
  EC_STATUS_INVALID_CONFIG = 3,
  EC_STATUS_PARSE = 4,
  EC_STATUS_IO = 5,
  EC_STATUS_BUFFER_TOO_SMALL = 6,
  EC_STATUS_RUNTIME = 7,
  EC_STATUS_PANIC = 8,
} EcStatus;

/**
 * Opaque contact network handle.
 */
typedef struct EcNetwork EcNetwork;

/**
 * Opaque live-edge sample set handle.
 */
typedef struct EcSampleSet EcSampleSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *ec_last_error(void);

/**
 * `min(1, beta * rel_trans * rel_sus * freq)`; rejects negative or NaN inputs.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EcStatus ec_edge_weight(double beta,
                             double rel_trans,
                             double rel_sus,
                             double freq,
                             double *out);

/**
 * Generates a synthetic population of `n` agents with default parameters.
 *
 * # Safety
 * `out` must be a valid pointer; the returned handle is owned by the caller.
 */
enum EcStatus ec_network_generate(size_t n, uint64_t seed, struct EcNetwork **out);

/**
 * Generates a population from `population.*` keys in config text.
 *
 * # Safety
 * `config_text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EcStatus ec_network_generate_from_config(const char *config_text,
                                              uint64_t seed,
                                              struct EcNetwork **out);

/**
 * Loads an edge-list file (ages from `<path>.ages` when present).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EcStatus ec_network_load(const char *path, struct EcNetwork **out);

/**
 * # Safety
 * `net` must be a live handle and `path` a NUL-terminated string.
 */
enum EcStatus ec_network_save(const struct EcNetwork *net, const char *path);

/**
 * Releases a network; null is ignored.
 *
 * # Safety
 * `net` must be null or a handle not yet freed.
 */
void ec_network_free(struct EcNetwork *net);

/**
 * Number of agents, or 0 for a null handle.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t ec_network_num_agents(const struct EcNetwork *net);

/**
 * Number of directed edges between agents that are not removed.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t ec_network_num_active_edges(const struct EcNetwork *net);

/**
 * Directed edges in one layer (0 household, 1 school, 2 work, 3 community),
 * counting removed agents too.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t ec_network_layer_edges(const struct EcNetwork *net, uint32_t layer);

/**
 * # Safety
 * `net` must be null or a live handle.
 */
size_t ec_network_removed_count(const struct EcNetwork *net);

/**
 * Removes agents from the network; idempotent.
 *
 * # Safety
 * `net` must be a live handle and `ids` must point to `len` ids.
 */
enum EcStatus ec_network_remove_nodes(struct EcNetwork *net, const uint32_t *ids, size_t len);

/**
 * Dense in-degree histogram: `counts[d]` agents have in-degree `d`.
 * `*len` receives the required length; with a short buffer nothing is
 * written and `BufferTooSmall` is returned.
 *
 * # Safety
 * `net` must be a live handle, `counts` must hold `cap` entries and `len`
 * must be valid.
 */
enum EcStatus ec_network_degree_histogram(const struct EcNetwork *net,
                                          size_t *counts,
                                          size_t cap,
                                          size_t *len);

/**
 * Draws `n_samples` full live-edge samples. `infectious_mean_days <= 0`
 * keeps each edge with probability `w`; otherwise with the probability of
 * at least one transmission over a geometric infectious period.
 *
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum EcStatus ec_samples_build(const struct EcNetwork *net,
                               size_t n_samples,
                               uint64_t seed,
                               double infectious_mean_days,
                               struct EcSampleSet **out);

/**
 * # Safety
 * `set` must be null or a handle not yet freed.
 */
void ec_samples_free(struct EcSampleSet *set);

/**
 * # Safety
 * `set` must be null or a live handle.
 */
size_t ec_samples_len(const struct EcSampleSet *set);

/**
 * Mean number of agents reachable from `infected` with `deleted` removed.
 *
 * # Safety
 * Arrays must hold the given number of ids; `out` must be valid.
 */
enum EcStatus ec_sigma_estimate(const struct EcSampleSet *set,
                                const uint32_t *infected,
                                size_t infected_len,
                                const uint32_t *deleted,
                                size_t deleted_len,
                                double *out);

/**
 * Mean lives saved by vaccinating `seeds` against `infected`.
 *
 * # Safety
 * Arrays must hold the given number of ids; `out` must be valid.
 */
enum EcStatus ec_lives_saved(const struct EcSampleSet *set,
                             const uint32_t *infected,
                             size_t infected_len,
                             const uint32_t *seeds,
                             size_t seeds_len,
                             double *out);

/**
 * Greedy lives-saved selection of up to `k` candidates. Writes the chosen
 * ids in pick order to `out_seeds` (capacity `k`), their number to
 * `out_len` and the estimated lives saved to `out_objective`.
 *
 * # Safety
 * Arrays must hold the given number of entries; out pointers must be valid.
 */
enum EcStatus ec_select_preempt(const struct EcSampleSet *set,
                                const uint32_t *infected,
                                size_t infected_len,
                                const uint32_t *candidates,
                                size_t candidates_len,
                                size_t k,
                                uint32_t *out_seeds,
                                size_t *out_len,
                                double *out_objective);

/**
 * Runs the experiment described by config text and reports the replicate
 * means of final cumulative infections and deaths.
 *
 * # Safety
 * `config_text` must be a NUL-terminated string; out pointers must be valid.
 */
enum EcStatus ec_run_experiment(const char *config_text,
                                double *out_mean_infections,
                                double *out_mean_deaths);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EPICONTROL_H */
