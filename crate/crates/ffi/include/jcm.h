#ifndef JCM_H
#define JCM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `JCM_STATUS_OK` is zero.
 */
typedef enum JcmStatus {
  JCM_STATUS_OK = 0,
  JCM_STATUS_NULL_POINTER = 1,
  JCM_STATUS_INVALID_ARGUMENT = 2,
  JCM_STATUS_TRUNCATION = 3,
  JCM_STATUS_DEGENERATE = 4,
  JCM_STATUS_VACUUM = 5,
  JCM_STATUS_NUMERICAL = 6,
  JCM_STATUS_BUFFER_TOO_SMALL = 7,
  JCM_STATUS_PANIC = 8,
} JcmStatus;

/**
 * Atom-field state `|+> (x) field` evolved to a scaled time.
 */
typedef struct JcmJoint JcmJoint;

/**
 * Truncated field state `sum_m C_m |m>`.
 */
typedef struct JcmState JcmState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *jcm_last_error_message(void);

/**
 * Builds the superposition state with parameters `alpha`, `r`, `n` and
 * `eps = eps_re + i eps_im`. `dim = 0` picks the truncation automatically
 * with headroom for evolution under absorption parameter `k`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum JcmStatus jcm_state_new(double alpha,
                             double r,
                             uint32_t n,
                             double eps_re,
                             double eps_im,
                             size_t dim,
                             uint32_t k,
                             struct JcmState **out);

/**
 * Releases a state. Null is ignored.
 *
 * # Safety
 * `state` must come from [`jcm_state_new`] and not be freed twice.
 */
void jcm_state_free(struct JcmState *state);

/**
 * Number of Fock levels held by `state`, or 0 for null.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
size_t jcm_state_dim(const struct JcmState *state);

/**
 * Copies the photon-number distribution into `buf[0..dim]`.
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum JcmStatus jcm_state_pnd(const struct JcmState *state, double *buf, size_t len);

/**
 * Evolves `|+> (x) state` under the `k`-photon model to scaled time `t`.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum JcmStatus jcm_evolve(const struct JcmState *state,
                          uint32_t k,
                          double t,
                          struct JcmJoint **out);

/**
 * Releases an evolved state. Null is ignored.
 *
 * # Safety
 * `joint` must come from [`jcm_evolve`] and not be freed twice.
 */
void jcm_joint_free(struct JcmJoint *joint);

/**
 * Atomic inversion `<sigma_z>`.
 *
 * # Safety
 * `joint` must be a live handle and `out` writable.
 */
enum JcmStatus jcm_inversion(const struct JcmJoint *joint, double *out);

/**
 * Purity of the reduced field state.
 *
 * # Safety
 * `joint` must be a live handle and `out` writable.
 */
enum JcmStatus jcm_purity(const struct JcmJoint *joint, double *out);

/**
 * Mandel Q of the field. Fails with `JCM_STATUS_VACUUM` for an empty field.
 *
 * # Safety
 * `joint` must be a live handle and `out` writable.
 */
enum JcmStatus jcm_mandel_q(const struct JcmJoint *joint, double *out);

/**
 * Quadrature squeezing factors `F` and `S`.
 *
 * # Safety
 * `joint` must be a live handle; `f` and `s` writable.
 */
enum JcmStatus jcm_squeezing(const struct JcmJoint *joint, double *f, double *s);

/**
 * Wigner function of the reduced field at `(x, p)`.
 *
 * # Safety
 * `joint` must be a live handle and `out` writable.
 */
enum JcmStatus jcm_wigner(const struct JcmJoint *joint, double x, double p, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JCM_H */
