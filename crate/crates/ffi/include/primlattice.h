#ifndef PRIMLATTICE_H
#define PRIMLATTICE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values 2 to 5 match the CLI exit codes.
 */
typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_PARSE = 2,
  PL_STATUS_DOMAIN = 3,
  PL_STATUS_RESOURCE = 4,
  PL_STATUS_VERIFICATION = 5,
  PL_STATUS_PANIC = 6,
} PlStatus;

/**
 * Opaque handle to a validated positive definite form.
 */
typedef struct PlForm PlForm;

typedef struct PlCount {
  double x;
  /**
   * Lattice points with `Q <= x`, origin included.
   */
  uint64_t all;
  /**
   * Primitive lattice points with `Q <= x`.
   */
  uint64_t primitive;
  double p;
  double r;
} PlCount;

typedef struct PlComplex {
  double re;
  double im;
} PlComplex;

typedef struct PlPotter {
  struct PlComplex s;
  double z;
  struct PlComplex f1;
  double f2_bound;
  /**
   * True only on `Re s = 3/4`, where the bound is proven.
   */
  bool certified;
} PlPotter;

typedef struct PlBoundReport {
  size_t zero_index;
  double gamma;
  double beta0;
  double z;
  double gamma_ratio;
  double prefactor;
  struct PlComplex f1;
  double f1_abs;
  double f2_bound;
  double margin;
  double k0_lower;
  bool valid;
} PlBoundReport;

typedef struct PlWeight {
  double i1;
  double i2;
  double value;
} PlWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (NUL
 * terminated, truncated to `len`). Returns the full message length in bytes
 * without the terminator.
 */
size_t pl_last_error_message(char *buf, size_t len);

enum PlStatus pl_form_new(double a, double b, double c, struct PlForm **out);

/**
 * Parses `"a,b,c"`, each coefficient a decimal or `sqrt(k)`.
 */
enum PlStatus pl_form_parse(const char *text, struct PlForm **out);

/**
 * Releases a handle from [`pl_form_new`] or [`pl_form_parse`]. Null is ignored.
 */
void pl_form_free(struct PlForm *form);

enum PlStatus pl_form_discriminant(const struct PlForm *form, double *out);

enum PlStatus pl_form_kappa(const struct PlForm *form, double *out);

enum PlStatus pl_form_lambda1(const struct PlForm *form, double *out);

enum PlStatus pl_form_eval(const struct PlForm *form, int64_t m, int64_t n, double *out);

/**
 * `A, B, P, R` at `x`. `workers == 0` picks the machine's parallelism.
 */
enum PlStatus pl_count(const struct PlForm *form, double x, size_t workers, struct PlCount *out);

enum PlStatus pl_count_primitive_moebius(const struct PlForm *form, double x, uint64_t *out);

/**
 * `∫₁^Y |R(x)| dx`.
 */
enum PlStatus pl_mean_abs_r(const struct PlForm *form, double y, size_t workers, double *out);

enum PlStatus pl_potter(const struct PlForm *form,
                        struct PlComplex s,
                        double z,
                        struct PlPotter *out);

/**
 * `ζ_Q(s)` from `ζ_Q(1-s)`.
 */
enum PlStatus pl_functional_equation(const struct PlForm *form,
                                     struct PlComplex s,
                                     struct PlComplex value_at_1_minus_s,
                                     struct PlComplex *out);

enum PlStatus pl_k0_lower_bound(const struct PlForm *form,
                                size_t zero_index,
                                double z,
                                struct PlBoundReport *out);

enum PlStatus pl_weight_constant(struct PlWeight *out);

enum PlStatus pl_zeta_real(double s, double *out);

/**
 * `L(s, χ₄)` for `s > 0`.
 */
enum PlStatus pl_dirichlet_l(double s, double *out);

/**
 * Principal branch of `log Γ(z)`.
 */
enum PlStatus pl_log_gamma(struct PlComplex z, struct PlComplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRIMLATTICE_H */
