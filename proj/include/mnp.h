/* SPDX-License-Identifier: Apache-2.0
 *
 * mnp — matrix nearness problems.
 *
 * C interface to the solvers for  min ||A - B X C||_F  subject to structural
 * constraints on X.  All objects are opaque handles; every fallible call
 * returns an mnp_status, and mnp_last_error_message() describes the most
 * recent failure on the calling thread.
 *
 * Matrices passed across this interface are dense, real, and row-major.
 */
#ifndef MNP_H
#define MNP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mnp_matrix mnp_matrix;
typedef struct mnp_report mnp_report;

typedef enum mnp_status {
  MNP_OK = 0,
  MNP_ERR_INVALID_ARGUMENT = 1,
  MNP_ERR_RANK_DEFICIENT = 2,
  MNP_ERR_INFEASIBLE = 3,
  MNP_ERR_CONTRACT = 4,
  MNP_ERR_DIVERGED = 5,
  MNP_ERR_IO = 6,
  MNP_ERR_PARSE = 7,
  MNP_ERR_INTERNAL = 8
} mnp_status;

typedef enum mnp_termination {
  MNP_TERM_STEP_TOL = 0,
  MNP_TERM_MAX_ITERS = 1,
  MNP_TERM_TARGET_REACHED = 2,
  MNP_TERM_CLOSED_FORM = 3
} mnp_termination;

const char* mnp_version(void);
const char* mnp_status_name(mnp_status status);
/* Description of the last failure observed on this thread ("" if none). */
const char* mnp_last_error_message(void);

/* ---- matrices ---------------------------------------------------------- */

/* data may be NULL for an all-zero matrix; otherwise row-major rows*cols. */
mnp_status mnp_matrix_create(int64_t rows, int64_t cols, const double* data, mnp_matrix** out);
void mnp_matrix_destroy(mnp_matrix* m);
int64_t mnp_matrix_rows(const mnp_matrix* m);
int64_t mnp_matrix_cols(const mnp_matrix* m);
/* Copies the entries out in row-major order; `out` must hold rows*cols. */
mnp_status mnp_matrix_copy_data(const mnp_matrix* m, double* out);
double mnp_matrix_frobenius(const mnp_matrix* m);

mnp_status mnp_matrix_read_mm(const char* path, mnp_matrix** out);
mnp_status mnp_matrix_write_mm(const char* path, const mnp_matrix* m);

mnp_status mnp_matrix_multiply(const mnp_matrix* a, const mnp_matrix* b, mnp_matrix** out);
mnp_status mnp_matrix_transpose(const mnp_matrix* a, mnp_matrix** out);
mnp_status mnp_matrix_sub(const mnp_matrix* a, const mnp_matrix* b, mnp_matrix** out);

/* Seeded generators (deterministic for a fixed seed on one platform). */
mnp_status mnp_matrix_random_gaussian(int64_t rows, int64_t cols, uint64_t seed,
                                      mnp_matrix** out);
/* cond >= 1: spectral condition number of the result. */
mnp_status mnp_matrix_random_conditioned(int64_t rows, int64_t cols, double cond, uint64_t seed,
                                         mnp_matrix** out);
/* Random element of a constraint set; `constraint` as in mnp_project. */
mnp_status mnp_matrix_random_member(const char* constraint, int64_t n, uint64_t seed,
                                    mnp_matrix** out);

/* ---- projections ------------------------------------------------------- */

/* Nearest member of the named set.  Names: toeplitz, hankel, circulant,
 * symmetric, skew-symmetric, nonnegative, psd, row-sum-one, col-sum-one,
 * unit-diagonal, eigenvector (needs `eigvec`), stochastic, doubly-stochastic,
 * correlation.  Composite names run Dykstra alternating projections. */
mnp_status mnp_project(const mnp_matrix* a, const char* constraint, const mnp_matrix* eigvec,
                       mnp_matrix** out);

/* ---- closed-form solves ------------------------------------------------ */

mnp_status mnp_solve_rank(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                          int64_t rank, mnp_report** out);
mnp_status mnp_solve_prescribed_eigenvalue(const mnp_matrix* a, const mnp_matrix* b,
                                           const mnp_matrix* c, double eigenvalue,
                                           mnp_report** out);
/* center may be NULL (ball around the origin). */
mnp_status mnp_solve_norm(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                          double rho, const mnp_matrix* center, mnp_report** out);
mnp_status mnp_solve_two_sided(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                               const mnp_matrix* f, const mnp_matrix* g, const mnp_matrix* h,
                               mnp_report** out);
mnp_status mnp_solve_symmetric(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                               mnp_report** out);
mnp_status mnp_solve_skew_symmetric(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                                    mnp_report** out);

/* ---- iterative solve --------------------------------------------------- */

typedef struct mnp_iter_options {
  double lambda;          /* <= 0: optimal default */
  int64_t max_iters;      /* <= 0: 100 * max dimension of X */
  double tol_step;        /* <= 0: 1e-10 */
  int record_history;     /* nonzero: keep per-iteration records */
  const mnp_matrix* forward_error_reference; /* optional ground truth */
  double forward_error_target;               /* <= 0: no target stop */
  const mnp_matrix* initial_x;               /* optional warm start */
} mnp_iter_options;

void mnp_iter_options_init(mnp_iter_options* opts);

/* Composite constraint names dispatch to the multi-projection variant. */
mnp_status mnp_solve_iterative(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                               const char* constraint, const mnp_matrix* eigvec,
                               const mnp_iter_options* opts, mnp_report** out);

double mnp_optimal_lambda(const mnp_matrix* b, const mnp_matrix* c);
/* 1 / (kappa2(B) kappa2(C)); negative on failure (rank-deficient input). */
double mnp_rate_estimate(const mnp_matrix* b, const mnp_matrix* c);

/* ---- oracles (debugging reference solvers) ----------------------------- */

/* parameterization: full, symmetric, skew-symmetric, toeplitz, hankel,
 * circulant, row-sum-one, col-sum-one, unit-diagonal. */
mnp_status mnp_oracle_kron_ls(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                              const char* parameterization, mnp_report** out);
mnp_status mnp_oracle_projected_gradient(const mnp_matrix* a, const mnp_matrix* b,
                                         const mnp_matrix* c, const char* constraint,
                                         const mnp_matrix* eigvec, int64_t steps,
                                         mnp_report** out);

/* ---- reports ----------------------------------------------------------- */

void mnp_report_destroy(mnp_report* r);
mnp_status mnp_report_solution(const mnp_report* r, mnp_matrix** out);
double mnp_report_objective(const mnp_report* r);
int64_t mnp_report_iterations(const mnp_report* r);
mnp_termination mnp_report_termination(const mnp_report* r);
/* Multiplier certificate of the norm solver; NaN when not applicable. */
double mnp_report_lambda(const mnp_report* r);
/* Predicted per-iteration contraction; NaN when unavailable. */
double mnp_report_delta_predicted(const mnp_report* r);
double mnp_report_feasibility_gap(const mnp_report* r);
int64_t mnp_report_history_size(const mnp_report* r);
/* Any output pointer may be NULL. forward_error is NaN without a reference. */
mnp_status mnp_report_history_row(const mnp_report* r, int64_t index, int64_t* iter,
                                  double* objective, double* step_norm, double* forward_error);

/* ---- diagnostics ------------------------------------------------------- */

/* Residuals of the generalized-SVD reconstruction identities of (B, C):
 * factor-form and basis-transformed residuals (relative), the largest
 * deviation of beta^2 + gamma^2 from 1, and the block sizes. */
mnp_status mnp_gsvd_check(const mnp_matrix* b, const mnp_matrix* c, double* residual_factored,
                          double* residual_basis, double* beta_gamma_dev, int64_t* r, int64_t* s,
                          int64_t* k);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MNP_H */
