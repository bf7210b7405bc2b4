#ifndef SPARSECLF_LASSO_HPP
#define SPARSECLF_LASSO_HPP

#include <vector>

#include "sparseclf/dataset.hpp"
#include "sparseclf/losses.hpp"

namespace sparseclf {

struct LassoFit {
  std::vector<double> w;
  double b = 0.0;
  double lambda = 0.0;
  double objective = 0.0;
  int support_size = 0;  // count of |w_j| > 1e-8 * max|w|
  int iterations = 0;
  bool converged = true;
  double smoothing_mu = 0.0;  // final Huber parameter (SVM variant only)
};

struct LassoOptions {
  double tol = 1e-6;
  int max_iter = 20000;
};

// L1-penalized logistic regression, intercept unpenalized, monotone proximal
// gradient with backtracking.
LassoFit fit_lasso_logistic(const Dataset& data, double lambda, const LassoOptions& opts = {});

// L1-penalized SVM via Huber-smoothed hinge with continuation mu -> 1e-4.
LassoFit fit_lasso_svm(const Dataset& data, double lambda, const LassoOptions& opts = {});

// Smallest lambda that zeroes out w (logistic stationarity at the
// intercept-only optimum).
double lambda_max(const Dataset& data, Loss kind = Loss::logistic);

// Logarithmic grid from lambda_max down to 1e-4*lambda_max, strictly decreasing.
std::vector<double> lambda_grid(const Dataset& data, int count, Loss kind = Loss::logistic);

int count_support(const std::vector<double>& w, double rel_threshold = 1e-8);

}  // namespace sparseclf

#endif
