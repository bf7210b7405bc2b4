/* C interface for the sparse-classification library.
 *
 * Every function that can fail returns an sc_status; on failure the handle
 * outputs are untouched and sc_last_error() describes what went wrong
 * (thread-local). Handles are freed with the matching *_free call; freeing
 * NULL is a no-op.
 */
#ifndef SPARSECLF_H
#define SPARSECLF_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_EINVAL = 1,  /* bad argument or malformed model input */
  SC_EPARSE = 2,  /* file exists but could not be parsed */
  SC_EIO = 3,     /* file could not be opened or written */
  SC_EBUDGET = 4  /* iteration/node budget exhausted before certification */
} sc_status;

const char* sc_last_error(void);

/* ---- datasets ---------------------------------------------------------- */

typedef struct sc_dataset sc_dataset;

/* label_model: "logistic" | "sign"; truth_model: "pm1" | "binary".
 * snr < 0 means noiseless (infinite signal-to-noise). */
sc_status sc_dataset_generate(int n, int p, int k_true, double rho, double snr,
                              const char* label_model, const char* truth_model,
                              double sigma2, uint64_t seed, sc_dataset** out);
sc_status sc_dataset_load_csv(const char* path, sc_dataset** out);
sc_status sc_dataset_save_csv(const sc_dataset* d, const char* path);
void sc_dataset_free(sc_dataset* d);

int sc_dataset_n(const sc_dataset* d);
int sc_dataset_p(const sc_dataset* d);
/* 1 when a generated instance came out with only one label value. */
int sc_dataset_single_class(const sc_dataset* d);
/* Planted coefficient vector (length p). SC_EINVAL on loaded datasets. */
sc_status sc_dataset_true_weights(const sc_dataset* d, double* out);

/* ---- exact sparse fit --------------------------------------------------- */

typedef struct sc_fit sc_fit;

/* loss: "logistic" | "hinge" | "squared_hinge". Returns SC_EBUDGET when the
 * cut budget ran out before the optimality certificate; the best incumbent is
 * still available through the handle in that case. */
sc_status sc_fit_sparse(const sc_dataset* d, int k, double gamma, const char* loss,
                        double epsilon, int max_cuts, double inner_tol, sc_fit** out);
void sc_fit_free(sc_fit* f);

sc_status sc_fit_weights(const sc_fit* f, double* out); /* length p */
double sc_fit_intercept(const sc_fit* f);
double sc_fit_objective(const sc_fit* f);
int sc_fit_cuts(const sc_fit* f);
int sc_fit_iterations(const sc_fit* f);
int sc_fit_certified(const sc_fit* f);
double sc_fit_walltime(const sc_fit* f);
/* Support indicator, length p, entries 0/1. */
sc_status sc_fit_support(const sc_fit* f, int* out);

/* ---- l1 baseline -------------------------------------------------------- */

typedef struct sc_lasso sc_lasso;

/* loss: "logistic" | "hinge" (huber-smoothed svm). */
sc_status sc_lasso_fit(const sc_dataset* d, double lambda, const char* loss,
                       sc_lasso** out);
void sc_lasso_free(sc_lasso* f);

sc_status sc_lasso_weights(const sc_lasso* f, double* out);
double sc_lasso_intercept(const sc_lasso* f);
double sc_lasso_objective(const sc_lasso* f);
int sc_lasso_support_size(const sc_lasso* f);

/* Logarithmic grid from lambda_max down to 1e-4*lambda_max (count >= 2). */
sc_status sc_lambda_grid(const sc_dataset* d, const char* loss, int count, double* out);

/* ---- evaluation --------------------------------------------------------- */

/* AUC and misclassification of the linear scorer x^T w + b on d. */
sc_status sc_eval(const sc_dataset* d, const double* w, double b,
                  double* out_auc, double* out_misclass);
/* Support-recovery counts of w against a planted w_true (both length p). */
sc_status sc_recovery(const double* w, const double* w_true, int p,
                      int* out_true_selected, int* out_false_selected);

/* ---- cross-validation --------------------------------------------------- */

/* Single shuffled train/validation split (train_fraction in (0,1)).
 * table is row-major with 5 columns per grid point, in grid order
 * (k-major then gamma): { k, gamma, val_auc, val_misclass, support_size }. */
sc_status sc_cv_sparse(const sc_dataset* d, const int* k_grid, int nk,
                       const double* gamma_grid, int ng, const char* loss,
                       double train_fraction, uint64_t seed, double epsilon,
                       int max_cuts, double* table, double* k_star,
                       double* gamma_star);
/* Same layout with columns { lambda, 0, val_auc, val_misclass, support_size }. */
sc_status sc_cv_lasso(const sc_dataset* d, const double* lambda_grid, int nl,
                      const char* loss, double train_fraction, uint64_t seed,
                      double* table, double* lambda_star);

/* ---- closed-form quantities and validators ------------------------------ */

sc_status sc_orthant2(double rho, double* out);
sc_status sc_orthant3(double r12, double r13, double r23, double* out);
sc_status sc_disagreement(const double* w, const double* w_prime, int p,
                          double sigma, double* out);
sc_status sc_q_of_ell(int k, int p, double sigma2, int ell, double* out);
sc_status sc_mean_z_exact(int k, int p, double sigma2, int ell, double* out);
sc_status sc_mean_z_lower_bound(int k, int p, double sigma2, int ell, double* out);
sc_status sc_large_dev_bound(long n, int k, int p, double sigma2, int ell, double* out);
sc_status sc_n0_threshold(int k, int p, double sigma2, long* out);
sc_status sc_failure_tail(long n, int k, int p, double sigma2, double* out);

sc_status sc_mc_orthant2(double rho, long samples, uint64_t seed,
                         double* est, double* se);
sc_status sc_mc_orthant3(double r12, double r13, double r23, long samples,
                         uint64_t seed, double* est, double* se);
sc_status sc_mc_disagreement(const double* w, const double* w_prime, int p,
                             double sigma, long samples, uint64_t seed,
                             double* est, double* se);
sc_status sc_mc_mean_z(int k, int p, double sigma2, int ell, long samples,
                       uint64_t seed, double* est, double* se);

/* Exhaustive size-k support search minimizing empirical sign errors.
 * out is a 0/1 indicator of length p. Rejects C(p,k) > 1e6. */
sc_status sc_brute_force_min(const sc_dataset* d, int k, int* out);

#ifdef __cplusplus
}
#endif

#endif
