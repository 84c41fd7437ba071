#ifndef REALQUOT_H
#define REALQUOT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Boundary classification of a plumbing graph.
typedef enum RqBoundary {
  RQ_BOUNDARY_SPHERE3 = 0,
  RQ_BOUNDARY_NOT_SPHERE3 = 1,
  RQ_BOUNDARY_INDETERMINATE = 2,
} RqBoundary;

// Result of every fallible call.
typedef enum RqStatus {
  RQ_STATUS_OK = 0,
  // The call succeeded and the answer is negative.
  RQ_STATUS_NEGATIVE = 1,
  RQ_STATUS_INVALID_INPUT = 2,
  RQ_STATUS_INTERNAL = 3,
  RQ_STATUS_NULL_POINTER = 4,
  RQ_STATUS_UTF8 = 5,
  RQ_STATUS_PANIC = 6,
} RqStatus;

// Opaque line arrangement.
typedef struct RqArrangement RqArrangement;

// Opaque real plumbing graph.
typedef struct RqGraph RqGraph;

// Opaque quotient ledger.
typedef struct RqLedger RqLedger;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library from the same thread.
const char *rq_last_error(void);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void rq_string_free(char *s);

// Library version as a static string.
const char *rq_version(void);

// Parse and validate a graph from JSON.
//
// # Safety
// `json` must be a NUL-terminated string and `out_graph` writable.
enum RqStatus rq_graph_from_json(const char *json, struct RqGraph **out_graph);

// # Safety
// `g` must come from this library and not be freed twice. Null is ignored.
void rq_graph_free(struct RqGraph *g);

// Serialize a graph to JSON.
//
// # Safety
// Pointers must be valid; the string is released with `rq_string_free`.
enum RqStatus rq_graph_to_json(const struct RqGraph *g, char **out_json);

// `RQ_STATUS_OK` when the singularity is smoothly folding, `RQ_STATUS_NEGATIVE` otherwise.
//
// # Safety
// `g` must be a valid handle.
enum RqStatus rq_graph_is_sf(const struct RqGraph *g);

// `RQ_STATUS_OK` when the intersection form is negative definite.
//
// # Safety
// `g` must be a valid handle.
enum RqStatus rq_graph_is_negative_definite(const struct RqGraph *g);

// Exact determinant of the intersection form as a decimal string.
//
// # Safety
// Pointers must be valid; the string is released with `rq_string_free`.
enum RqStatus rq_graph_determinant(const struct RqGraph *g, char **out_decimal);

// Blow down equivariantly until minimal. The result is a new handle.
//
// # Safety
// Pointers must be valid.
enum RqStatus rq_graph_reduce(const struct RqGraph *g, struct RqGraph **out_graph);

// Classify the boundary 3-manifold of a negative-definite good tree.
//
// # Safety
// Pointers must be valid.
enum RqStatus rq_graph_boundary(const struct RqGraph *g, enum RqBoundary *out_class);

// A ledger for S⁴ with no summands and no nodes. Never null.
struct RqLedger *rq_ledger_new(void);

// # Safety
// `json` must be a NUL-terminated string and `out_ledger` writable.
enum RqStatus rq_ledger_from_json(const char *json, struct RqLedger **out_ledger);

// # Safety
// `l` must come from this library and not be freed twice. Null is ignored.
void rq_ledger_free(struct RqLedger *l);

// # Safety
// Pointers must be valid; the string is released with `rq_string_free`.
enum RqStatus rq_ledger_to_json(const struct RqLedger *l, char **out_json);

// Euler characteristic of the resolved manifold. `RQ_STATUS_NEGATIVE` when
// the base is not S⁴.
//
// # Safety
// Pointers must be valid.
enum RqStatus rq_ledger_euler(const struct RqLedger *l, int64_t *out_chi);

// `RQ_STATUS_OK` when the ledger is BUS-trivial; fails on an untracked ledger.
//
// # Safety
// `l` must be a valid handle.
enum RqStatus rq_ledger_is_bus_trivial(const struct RqLedger *l);

// Apply a JSON array of events to a ledger. The final ledger is a new handle.
//
// # Safety
// Pointers must be valid.
enum RqStatus rq_ledger_run(const struct RqLedger *l,
                            const char *events_json,
                            struct RqLedger **out_ledger);

// `true` when Seiberg-Witten invariants vanish for the given geometric genera.
bool rq_sw_vanishes(uint64_t pg_res, uint64_t pg_prime);

// Parse and validate an arrangement from JSON.
//
// # Safety
// `json` must be a NUL-terminated string and `out_arrangement` writable.
enum RqStatus rq_arrangement_from_json(const char *json, struct RqArrangement **out_arrangement);

// A generic arrangement of 2k lines. Null when k is 0 or above 64.
struct RqArrangement *rq_arrangement_generic(uint32_t k);

// A pencil of 2k lines. Null when k is 0 or above 64.
struct RqArrangement *rq_arrangement_pencil(uint32_t k);

// # Safety
// `a` must come from this library and not be freed twice. Null is ignored.
void rq_arrangement_free(struct RqArrangement *a);

// Euler characteristic of the quotient of the double plane.
//
// # Safety
// Pointers must be valid.
enum RqStatus rq_arrangement_chi_quotient(const struct RqArrangement *a,
                                          bool perturbed,
                                          int64_t *out_chi);

// Full invariant report as JSON.
//
// # Safety
// Pointers must be valid; the string is released with `rq_string_free`.
enum RqStatus rq_arrangement_report(const struct RqArrangement *a, bool perturbed, char **out_json);

// BUS-triviality certificate for a split branch curve. `RQ_STATUS_NEGATIVE`
// when no certificate exists; the JSON is written in both cases.
//
// # Safety
// `out_json` must be writable; the string is released with `rq_string_free`.
enum RqStatus rq_certify(uint32_t deg_b,
                         uint32_t deg_c,
                         bool rb0,
                         bool rc0,
                         bool rb1,
                         bool rc1,
                         char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REALQUOT_H */
