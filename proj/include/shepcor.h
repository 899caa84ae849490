/* C interface to the shepcor library.
 *
 * Conventions:
 *   - Every fallible call returns shc_status and writes its result through
 *     an out parameter. On failure the out parameter is untouched and
 *     shc_last_error() describes the problem (thread-local).
 *   - Strings returned through char** are malloc'd; release them with
 *     shc_string_free. Handles are released with their _free function.
 *   - Moment data lives in one of two lanes: exact ("p/q" strings) or
 *     float (doubles). Transforms preserve the lane of their input.
 */
#ifndef SHEPCOR_H
#define SHEPCOR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SHC_OK = 0,
  SHC_ERR_INVALID = 1, /* bad input or usage */
  SHC_ERR_VERIFY = 2   /* a verification suite ran and reported failures */
} shc_status;

typedef enum {
  SHC_TO_RAW = 0,     /* grouped moments -> raw moments */
  SHC_TO_GROUPED = 1  /* raw moments -> grouped moments */
} shc_direction;

/* Grouping of one axis: class width h as an exact decimal or "p/q" string,
 * and the lattice divisor m (0 = continuous parent, >= 1 = discrete). */
typedef struct {
  const char* h;
  long m;
} shc_grouping;

typedef struct shc_seq shc_seq;
typedef struct shc_tensor shc_tensor;
typedef struct shc_histogram shc_histogram;

const char* shc_version(void);
const char* shc_last_error(void);

void shc_string_free(char* s);
void shc_doubles_free(double* values);
void shc_seq_free(shc_seq* seq);
void shc_tensor_free(shc_tensor* tensor);
void shc_histogram_free(shc_histogram* hist);

/* ---- reference tables ------------------------------------------------ */

/* Bernoulli numbers B_0..B_max_order, exact. */
shc_status shc_bernoulli_numbers(long max_order, shc_seq** out);
/* Correction coefficients (2^{1-j}-1) B_j, exact. */
shc_status shc_sheppard_coefficients(long max_order, shc_seq** out);

/* ---- moment sequences ------------------------------------------------ */

shc_status shc_seq_new_exact(const char* const* values, size_t count, shc_seq** out);
shc_status shc_seq_new_float(const double* values, size_t count, shc_seq** out);

/* Parses a JSON moment payload (bare array, {"moments": ...}, or a tensor
 * object); exactly one of *out_seq, *out_tensor receives a new handle. */
shc_status shc_moments_from_json(const char* text, shc_seq** out_seq, shc_tensor** out_tensor);

int shc_seq_is_exact(const shc_seq* seq);
size_t shc_seq_size(const shc_seq* seq);
shc_status shc_seq_value_str(const shc_seq* seq, size_t n, char** out);
shc_status shc_seq_value_double(const shc_seq* seq, size_t n, double* out);
/* JSON array; "p/q" strings in the exact lane, numbers in the float lane. */
shc_status shc_seq_to_json(const shc_seq* seq, char** out);

shc_status shc_seq_correct(const shc_seq* in, shc_grouping grouping, shc_direction direction,
                           shc_seq** out);

/* Copy into the float lane (exact values converted to double). */
shc_status shc_seq_to_float(const shc_seq* seq, shc_seq** out);

/* ---- moment tensors -------------------------------------------------- */

int shc_tensor_is_exact(const shc_tensor* tensor);
size_t shc_tensor_dims(const shc_tensor* tensor);
shc_status shc_tensor_to_json(const shc_tensor* tensor, char** out);

/* One grouping spec per axis. */
shc_status shc_tensor_correct(const shc_tensor* in, const shc_grouping* specs, size_t nspecs,
                              shc_direction direction, shc_tensor** out);

/* Copy into the float lane (exact values converted to double). */
shc_status shc_tensor_to_float(const shc_tensor* tensor, shc_tensor** out);

/* ---- grouped data files ---------------------------------------------- */

/* CSV text `midpoint,frequency`, optional header. */
shc_status shc_histogram_from_csv(const char* text, shc_histogram** out);
shc_status shc_histogram_moments(const shc_histogram* hist, long max_order, shc_seq** out);
/* Class width inferred from the midpoints, as an exact "p/q" string. */
shc_status shc_histogram_width(const shc_histogram* hist, char** out);
/* 1 if the frequencies had to be rescaled to sum to one. */
int shc_histogram_was_normalized(const shc_histogram* hist);

/* One sample per line. Free the array with shc_doubles_free. */
shc_status shc_samples_from_text(const char* text, double** out, size_t* count);

shc_status shc_raw_moments_from_samples(const double* samples, size_t count, long max_order,
                                        shc_seq** out);
/* Monte Carlo lattice-averaged grouped moments; deterministic per seed. */
shc_status shc_randomized_lattice_mean(const double* samples, size_t count, double h,
                                       long max_order, long trials, uint64_t seed,
                                       shc_seq** out);

/* ---- utilities ------------------------------------------------------- */

/* Parses an exact decimal or "p/q" text and re-renders it canonically. */
shc_status shc_rational_canonical(const char* text, char** out);

/* Audit label of the transform selected by the specs and direction; only
 * the m fields are consulted. Returns a static string. */
const char* shc_formula_id(const shc_grouping* specs, size_t nspecs, shc_direction direction);

/* ---- verification ---------------------------------------------------- */

/* Runs a named suite ("bernoulli", "roundtrip", "oracle-discrete",
 * "oracle-continuous", "multivariate", "mc", or "all"). *report_json
 * receives the full report even when checks fail (status SHC_ERR_VERIFY).
 */
shc_status shc_verify(const char* suite, uint64_t seed, double tol, char** report_json);

/* Same, with user data joining the built-in corpora. dist_json,
 * joint_csv, and samples_text may each be NULL; joint_h1/joint_m1/
 * joint_h2/joint_m2 describe the joint table's grouping when present. */
shc_status shc_verify_with_data(const char* suite, uint64_t seed, double tol,
                                const char* dist_json, const char* joint_csv,
                                const char* joint_h1, long joint_m1, const char* joint_h2,
                                long joint_m2, const char* samples_text, char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SHEPCOR_H */
