#ifndef PFRAC_H
#define PFRAC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stdint.h>

typedef enum PfracErratumMode {
  PFRAC_ERRATUM_MODE_CORRECTED = 0,
  PFRAC_ERRATUM_MODE_PRINTED = 1,
} PfracErratumMode;

typedef enum PfracFamily {
  PFRAC_FAMILY_THEOREM = 0,
  PFRAC_FAMILY_BEUKERS6 = 1,
  PFRAC_FAMILY_EX7 = 2,
  PFRAC_FAMILY_EX8 = 3,
  PFRAC_FAMILY_EX9 = 4,
  PFRAC_FAMILY_EX10 = 5,
  PFRAC_FAMILY_THETA = 6,
} PfracFamily;

typedef enum PfracStatus {
  PFRAC_STATUS_OK = 0,
  PFRAC_STATUS_NULL_POINTER = 1,
  PFRAC_STATUS_INVALID_UTF8 = 2,
  PFRAC_STATUS_USAGE = 3,
  PFRAC_STATUS_DOMAIN = 4,
  PFRAC_STATUS_DIVISION_BY_ZERO = 5,
  PFRAC_STATUS_PARSE = 6,
  PFRAC_STATUS_INTERNAL = 7,
} PfracStatus;

/**
 * A partial-fraction decomposition.
 */
typedef struct PfracDecomposition PfracDecomposition;

/**
 * A rational function `scalar * N(x) / prod (x - r)^e`.
 */
typedef struct PfracSpec PfracSpec;

/**
 * Family instance. `lambda` and `mu` apply to the theorem family, `theta`
 * to the theta family and `mode` to beukers6; other fields are ignored.
 */
typedef struct PfracFamilyParams {
  enum PfracFamily family;
  uint32_t n;
  uint32_t lambda;
  uint32_t mu;
  uint32_t theta;
  enum PfracErratumMode mode;
} PfracFamilyParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or an empty
 * string. Valid until the next `pfrac_*` call on the same thread.
 */
const char *pfrac_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void pfrac_string_free(char *s);

/**
 * Parses a spec from JSON `{"scalar", "numerator", "poles": [{"root", "mult"}]}`.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum PfracStatus pfrac_spec_from_json(const char *json, struct PfracSpec **out);

/**
 * Builds the rational function of a family instance.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PfracStatus pfrac_spec_family(struct PfracFamilyParams params, struct PfracSpec **out);

/**
 * # Safety
 * `spec` must be a valid handle; `out` a valid pointer.
 */
enum PfracStatus pfrac_spec_to_json(const struct PfracSpec *spec, char **out);

/**
 * Evaluates the spec at `x` (a rational string such as `"-3/2"`).
 *
 * # Safety
 * `spec` must be a valid handle, `x` a valid C string, `out` a valid pointer.
 */
enum PfracStatus pfrac_spec_evaluate(const struct PfracSpec *spec, const char *x, char **out);

/**
 * # Safety
 * `spec` must be null or a handle from this library, not freed before.
 */
void pfrac_spec_free(struct PfracSpec *spec);

/**
 * Closed-form decomposition of a family instance.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PfracStatus pfrac_decompose_family(struct PfracFamilyParams params,
                                        struct PfracDecomposition **out);

/**
 * Decomposition by polynomial division and an exact linear solve.
 *
 * # Safety
 * `spec` must be a valid handle; `out` a valid pointer.
 */
enum PfracStatus pfrac_decompose_oracle(const struct PfracSpec *spec,
                                        struct PfracDecomposition **out);

/**
 * JSON `{"polynomial_part": [...], "terms": [{"root", "coeffs"}]}`.
 *
 * # Safety
 * `pfd` must be a valid handle; `out` a valid pointer.
 */
enum PfracStatus pfrac_decomposition_to_json(const struct PfracDecomposition *pfd, char **out);

/**
 * Coefficient of `1/(x - root)^power`, zero when absent.
 *
 * # Safety
 * `pfd` must be a valid handle, `root` a valid C string, `out` a valid pointer.
 */
enum PfracStatus pfrac_decomposition_coefficient(const struct PfracDecomposition *pfd,
                                                 const char *root,
                                                 uint32_t power,
                                                 char **out);

/**
 * Field-by-field equality of two decompositions.
 *
 * # Safety
 * `a` and `b` must be valid handles; `out` a valid pointer.
 */
enum PfracStatus pfrac_decomposition_equal(const struct PfracDecomposition *a,
                                           const struct PfracDecomposition *b,
                                           bool *out);

/**
 * # Safety
 * `pfd` must be null or a handle from this library, not freed before.
 */
void pfrac_decomposition_free(struct PfracDecomposition *pfd);

/**
 * Certifies `spec == pfd`. `equal` receives the verdict; when
 * `certificate_json` is non-null it receives the certificate as JSON.
 *
 * # Safety
 * Handles must be valid; `equal` must be a valid pointer.
 */
enum PfracStatus pfrac_verify(const struct PfracSpec *spec,
                              const struct PfracDecomposition *pfd,
                              bool *equal,
                              char **certificate_json);

/**
 * `Omega_ell(lambda, mu, -k)` as an exact rational string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PfracStatus pfrac_omega_coeff(uint32_t lambda,
                                   uint32_t mu,
                                   uint32_t n,
                                   uint32_t k,
                                   uint32_t ell,
                                   char **out);

/**
 * Coefficient table; `kind` is `omega`, `varpi` or `omega-small` and
 * `format` is `json` or `latex`.
 *
 * # Safety
 * `kind` and `format` must be valid C strings; `out` a valid pointer.
 */
enum PfracStatus pfrac_emit_table(const char *kind,
                                  uint32_t ell_max,
                                  const char *format,
                                  char **out);

/**
 * Runs an identity suite over `n_min..=n_max` with default ranges for the
 * other parameters. Writes the report list as JSON and whether every
 * report passed.
 *
 * # Safety
 * `suite` must be a valid C string; `all_passed` and `out` valid pointers.
 */
enum PfracStatus pfrac_run_suite(const char *suite,
                                 uint32_t n_min,
                                 uint32_t n_max,
                                 enum PfracErratumMode mode,
                                 bool *all_passed,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PFRAC_H */
