#ifndef SORTNET_H
#define SORTNET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SortnetStatus {
  SORTNET_STATUS_OK = 0,
  SORTNET_STATUS_NULL_POINTER = 1,
  SORTNET_STATUS_INVALID_ARGUMENT = 2,
  SORTNET_STATUS_INVALID_SHAPE = 3,
  SORTNET_STATUS_INVALID_TABLEAU = 4,
  SORTNET_STATUS_INVALID_NETWORK = 5,
  SORTNET_STATUS_GENERAL_POSITION = 6,
  SORTNET_STATUS_PARSE = 7,
  SORTNET_STATUS_INTERNAL = 8,
} SortnetStatus;

// A sorting network.
typedef struct SortnetNetwork SortnetNetwork;

// A standard Young tableau.
typedef struct SortnetTableau SortnetTableau;

// A space-time window `[time_start, time_end] x [pos_start, pos_end]`.
typedef struct SortnetWindow {
  size_t time_start;
  size_t time_end;
  size_t pos_start;
  size_t pos_end;
} SortnetWindow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. Owned by the
// library; valid until the next failing call on this thread.
const char *sortnet_last_error(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void sortnet_string_free(char *s);

// Whether `swaps[0..len]` is a sorting network of size `n`.
//
// # Safety
// `swaps` must point to `len` readable values (or be NULL with `len == 0`).
bool sortnet_validate_network(const uint32_t *swaps, size_t len, size_t n);

// Builds a network from its swaps.
//
// # Safety
// `swaps` must point to `len` readable values; `out` must be writable.
enum SortnetStatus sortnet_network_new(size_t n,
                                       const uint32_t *swaps,
                                       size_t len,
                                       struct SortnetNetwork **out);

// Samples a uniform network of size `n` from stream `stream` of `seed`.
//
// # Safety
// `out` must be writable.
enum SortnetStatus sortnet_network_sample(size_t n,
                                          uint64_t seed,
                                          uint64_t stream,
                                          struct SortnetNetwork **out);

// Parses `{"n":..,"swaps":[..]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SortnetStatus sortnet_network_from_json(const char *json, struct SortnetNetwork **out);

// # Safety
// `net` must be a live handle; `out` must be writable.
enum SortnetStatus sortnet_network_to_json(const struct SortnetNetwork *net, char **out);

// Size `n` of the network, or 0 for NULL.
//
// # Safety
// `net` must be a live handle or NULL.
size_t sortnet_network_size(const struct SortnetNetwork *net);

// Number of swaps, or 0 for NULL.
//
// # Safety
// `net` must be a live handle or NULL.
size_t sortnet_network_len(const struct SortnetNetwork *net);

// Borrowed pointer to the swaps, valid while the handle lives.
//
// # Safety
// `net` must be a live handle or NULL.
const uint32_t *sortnet_network_swaps(const struct SortnetNetwork *net);

// SVG wiring diagram of the network.
//
// # Safety
// `net` must be a live handle; `out` must be writable.
enum SortnetStatus sortnet_network_render_svg(const struct SortnetNetwork *net, char **out);

// # Safety
// `net` must come from this library and not have been freed. NULL is ignored.
void sortnet_network_free(struct SortnetNetwork *net);

// Samples a uniform tableau of staircase shape `n`.
//
// # Safety
// `out` must be writable.
enum SortnetStatus sortnet_tableau_sample_staircase(size_t n,
                                                    uint64_t seed,
                                                    uint64_t stream,
                                                    struct SortnetTableau **out);

// Parses `{"shape":[..],"entries":[[..],..]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SortnetStatus sortnet_tableau_from_json(const char *json, struct SortnetTableau **out);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum SortnetStatus sortnet_tableau_to_json(const struct SortnetTableau *t, char **out);

// # Safety
// `t` must come from this library and not have been freed. NULL is ignored.
void sortnet_tableau_free(struct SortnetTableau *t);

// Network of a staircase tableau.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SortnetStatus sortnet_eg_forward(const struct SortnetTableau *t, struct SortnetNetwork **out);

// Staircase tableau of a network.
//
// # Safety
// `net` must be a live handle; `out` must be writable.
enum SortnetStatus sortnet_eg_inverse(const struct SortnetNetwork *net,
                                      struct SortnetTableau **out);

// Number of standard tableaux of shape `rows[0..len]`, as a decimal string.
//
// # Safety
// `rows` must point to `len` readable values; `out` must be writable.
enum SortnetStatus sortnet_dimension(const size_t *rows, size_t len, char **out);

// Network swept out by the points `(xs[i], ys[i])`; `eps` is the
// general-position tolerance.
//
// # Safety
// `xs` and `ys` must each point to `len` readable values; `out` must be
// writable.
enum SortnetStatus sortnet_realize(const double *xs,
                                   const double *ys,
                                   size_t len,
                                   double eps,
                                   struct SortnetNetwork **out);

// Searches for the shipped non-realizability certificate. Sets `*found`
// and, when found, the witness window.
//
// # Safety
// `net` must be a live handle; `found` and `window` must be writable.
enum SortnetStatus sortnet_certify(const struct SortnetNetwork *net,
                                   bool *found,
                                   struct SortnetWindow *window);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SORTNET_H */
