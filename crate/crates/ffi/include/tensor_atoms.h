#ifndef TENSOR_ATOMS_H
#define TENSOR_ATOMS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TaStatus {
  TA_STATUS_OK = 0,
  // Malformed or inconsistent input.
  TA_STATUS_INVALID_INPUT = 1,
  // An enumeration cap would be exceeded.
  TA_STATUS_CAP_EXCEEDED = 2,
  TA_STATUS_NULL_POINTER = 3,
  TA_STATUS_INDEX_OUT_OF_RANGE = 4,
  TA_STATUS_INTERNAL = 5,
  // A Rust panic was caught at the boundary.
  TA_STATUS_PANIC = 6,
} TaStatus;

// Opaque tensor-product decomposition with its exact measure.
typedef struct TaLr TaLr;

// Opaque highest weight.
typedef struct TaWeight TaWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static string.
const char *ta_version(void);

// Message of the last failed call on this thread, or an empty string.
// The pointer is valid until the next call into the library on this thread.
const char *ta_last_error(void);

// # Safety
// `s` must come from this library and not have been freed.
void ta_string_free(char *s);

// Parses `"9,7,3"` (negative parts allowed).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum TaStatus ta_weight_parse(const char *text, struct TaWeight **out);

// # Safety
// `w` must come from this library and not have been freed.
void ta_weight_free(struct TaWeight *w);

// Rank `n`, or 0 for a null handle.
//
// # Safety
// `w` must be null or a live handle.
uintptr_t ta_weight_rank(const struct TaWeight *w);

// `"9,7,3"`; null for a null handle. Free with [`ta_string_free`].
//
// # Safety
// `w` must be null or a live handle.
char *ta_weight_to_string(const struct TaWeight *w);

// Dimension `d_λ` as a decimal string.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum TaStatus ta_dim(const struct TaWeight *w, char **out);

// Decomposition of `λ ⊗ μ` with atoms `c·d_ν/(d_λ d_μ)`.
//
// # Safety
// `lambda`, `mu` must be live handles; `out` must be writable.
enum TaStatus ta_lr_measure(const struct TaWeight *lambda,
                            const struct TaWeight *mu,
                            struct TaLr **out);

// Number of distinct `ν`, or 0 for a null handle.
//
// # Safety
// `lr` must be null or a live handle.
uintptr_t ta_lr_len(const struct TaLr *lr);

// Term `index` in increasing lexicographic order of `ν`. Each out-pointer
// may be null to skip that field; strings are `"c"` and `"num/den"`.
//
// # Safety
// `lr` must be a live handle; non-null out-pointers must be writable.
enum TaStatus ta_lr_term(const struct TaLr *lr,
                         uintptr_t index,
                         struct TaWeight **nu,
                         char **multiplicity,
                         char **atom);

// `{"lambda":[..],"mu":[..],"terms":[{"nu":[..],"c":"..","atom":"num/den"}]}`.
//
// # Safety
// `lr` must be a live handle; `out` must be writable.
enum TaStatus ta_lr_to_json(const struct TaLr *lr, char **out);

// # Safety
// `lr` must come from this library and not have been freed.
void ta_lr_free(struct TaLr *lr);

// Whether the max-convolution law equals the law of `ν_1` exactly.
//
// # Safety
// `lambda`, `mu` must be live handles; `equal` must be writable.
enum TaStatus ta_check_identity(const struct TaWeight *lambda,
                                const struct TaWeight *mu,
                                bool *equal);

// `count` uniform patterns of shape `λ` as a JSON array of row arrays.
// `cap` bounds the candidate rows per level; 0 selects the default.
//
// # Safety
// `lambda` must be a live handle; `out` must be writable.
enum TaStatus ta_sample_patterns_json(const struct TaWeight *lambda,
                                      uintptr_t count,
                                      uint64_t seed,
                                      uint64_t cap,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TENSOR_ATOMS_H */
