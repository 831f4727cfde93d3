#ifndef SUSYSPIN_H
#define SUSYSPIN_H

/* Generated by cbindgen from the susyspin-ffi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SusyspinSector {
  SUSYSPIN_SECTOR_MINUS = 0,
  SUSYSPIN_SECTOR_PLUS = 1,
} SusyspinSector;

typedef enum SusyspinStatus {
  SUSYSPIN_STATUS_OK = 0,
  // A required pointer argument was null.
  SUSYSPIN_STATUS_NULL_POINTER = 1,
  // The model or the requested computation is outside its domain.
  SUSYSPIN_STATUS_INVALID_ARGUMENT = 2,
  // The requested quantity does not exist for this model (for example
  // the zero-mode wavevector in the broken phase).
  SUSYSPIN_STATUS_NO_VALUE = 3,
  // The computation started but did not produce a result.
  SUSYSPIN_STATUS_NUMERIC_FAILURE = 4,
} SusyspinStatus;

// Opaque model handle: a field configuration plus a superpotential.
// Create with `susyspin_model_new_zero` or `susyspin_model_new_tanh`,
// release with `susyspin_model_free`.
typedef struct SusyspinModel SusyspinModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the library, as a static NUL-terminated string.
const char *susyspin_version(void);

// Free model: rotating field of strength `b0` and pitch `k`, W = 0.
//
// # Safety
// `out` must be valid for writing one pointer.
enum SusyspinStatus susyspin_model_new_zero(double b0, double k, struct SusyspinModel **out);

// Confining model: same field plus W(z) = alpha·tanh(z), alpha > 0.
//
// # Safety
// `out` must be valid for writing one pointer.
enum SusyspinStatus susyspin_model_new_tanh(double b0,
                                            double k,
                                            double alpha,
                                            struct SusyspinModel **out);

// Release a handle. Null is accepted and ignored.
//
// # Safety
// `model` must be null or a live handle from a constructor; it must not be
// used afterwards.
void susyspin_model_free(struct SusyspinModel *model);

// The two energy bands at wavevector `q`. Free models only; a confining
// superpotential has no translation-invariant bands.
//
// # Safety
// `model` must be a live handle; `e1` and `e2` must be valid for writes.
enum SusyspinStatus susyspin_dispersion(const struct SusyspinModel *model,
                                        double q,
                                        double *e1,
                                        double *e2);

// Wavevector where the lower band touches zero. `NoValue` in the broken
// phase; free models only.
//
// # Safety
// `model` must be a live handle; `q0` must be valid for a write.
enum SusyspinStatus susyspin_zero_mode_wavevector(const struct SusyspinModel *model, double *q0);

// Whether supersymmetry is broken: writes 1 if broken, 0 if unbroken.
//
// # Safety
// `model` must be a live handle; `broken` must be valid for a write.
enum SusyspinStatus susyspin_phase(const struct SusyspinModel *model, int32_t *broken);

// Spatial decay rate λ of the zero-mode candidate: real in the broken
// field regime, imaginary below it. Both parts are written.
//
// # Safety
// `model` must be a live handle; `re` and `im` must be valid for writes.
enum SusyspinStatus susyspin_decay_rate(const struct SusyspinModel *model, double *re, double *im);

// Critical field strength where supersymmetry breaks for this model's
// superpotential asymptote: sqrt(k⁴ + 4k²W∞²).
//
// # Safety
// `model` must be a live handle; `b0_critical` must be valid for a write.
enum SusyspinStatus susyspin_breaking_threshold(const struct SusyspinModel *model,
                                                double *b0_critical);

// Lowest `count` levels of the factorized Hamiltonian on a periodic ring
// of `periods` gauge periods with `n` sites. `out` must hold `count`
// doubles; the number written is stored in `out_len`. Free models only.
//
// # Safety
// `model` must be a live handle; `out` must be valid for `count` writes
// and `out_len` for one.
enum SusyspinStatus susyspin_ring_lowest(const struct SusyspinModel *model,
                                         enum SusyspinSector sector,
                                         uint32_t periods,
                                         size_t n,
                                         size_t count,
                                         double *out,
                                         size_t *out_len);

// Lowest `count` levels of the confining model in a hard box of the given
// `length` with `n` sites. Same buffer contract as `susyspin_ring_lowest`.
//
// # Safety
// `model` must be a live handle; `out` must be valid for `count` writes
// and `out_len` for one.
enum SusyspinStatus susyspin_bound_lowest(const struct SusyspinModel *model,
                                          enum SusyspinSector sector,
                                          double length,
                                          size_t n,
                                          size_t count,
                                          double *out,
                                          size_t *out_len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SUSYSPIN_H */
