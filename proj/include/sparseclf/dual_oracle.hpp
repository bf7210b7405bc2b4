#ifndef SPARSECLF_DUAL_ORACLE_HPP
#define SPARSECLF_DUAL_ORACLE_HPP

#include <span>
#include <vector>

#include "sparseclf/dataset.hpp"
#include "sparseclf/losses.hpp"
#include "sparseclf/support.hpp"

namespace sparseclf {

/// Maximizer of the inner dual problem at a fixed support, with the data the
/// outer loop needs: objective c(s), gradient of c, recovered primal (w, b).
struct DualSolution {
  std::vector<double> alpha;  // length n
  double objective = 0.0;     // c(s)
  std::vector<double> grad;   // length p, grad_j = -(gamma/2)(X_j^T alpha)^2
  std::vector<double> w;      // length p, zero off-support
  double b = 0.0;
  double gap = 0.0;           // projected-gradient residual + hyperplane violation
  int iterations = 0;
  bool converged = true;
};

/// Affine global lower bound on c over [0,1]^p: cut(s) = intercept + coeffs^T s.
struct Cut {
  double intercept = 0.0;
  std::vector<double> coeffs;  // length p, each <= 0
  SupportMask origin_support;

  double value(std::span<const std::uint8_t> s) const {
    double v = intercept;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      if (s[j]) v += coeffs[j];
    return v;
  }
};

enum class InnerMethod {
  projected_gradient,  // default, all losses
  pairwise,            // two-coordinate ascent preserving e^T alpha = 0; hinge only
};

struct OracleOptions {
  double tol = 1e-8;
  int max_iter = 100000;
  InnerMethod method = InnerMethod::projected_gradient;
  const std::vector<double>* warm_alpha = nullptr;
};

// Euclidean projection of v onto {alpha : e^T alpha = 0, lo_i <= alpha_i <= hi_i},
// by bisection on the hyperplane multiplier. Throws on an empty feasible set.
std::vector<double> project_box_hyperplane(std::span<const double> v,
                                           std::span<const double> lo,
                                           std::span<const double> hi);

// Solve max_alpha f(alpha, s) for fractional weights s in [0,1]^p.
DualSolution evaluate_support_weights(const Dataset& data, std::span<const double> s_weights,
                                      double gamma, Loss kind, const OracleOptions& opts = {});

// c(s), grad c(s), and the recovered primal classifier at a binary support.
DualSolution evaluate_support(const Dataset& data, const SupportMask& s, double gamma, Loss kind,
                              const OracleOptions& opts = {});

// w restricted to s equals -gamma * X_s^T alpha, zero elsewhere; b is the 1-D
// minimizer of the primal objective given w.
std::pair<std::vector<double>, double> recover_primal(const Dataset& data, const SupportMask& s,
                                                      std::span<const double> alpha, double gamma,
                                                      Loss kind);

// Primal objective sum_i ell(y_i, w^T x_i + b) + (1/2 gamma)||w||^2.
double primal_objective(const Dataset& data, std::span<const double> w, double b, double gamma,
                        Loss kind);

Cut make_cut(const DualSolution& sol, const SupportMask& s);

}  // namespace sparseclf

#endif
