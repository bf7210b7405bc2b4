#ifndef SPARSECLF_LOSSES_HPP
#define SPARSECLF_LOSSES_HPP

#include <limits>
#include <string>

namespace sparseclf {

enum class Loss { logistic, hinge, squared_hinge };

Loss loss_from_string(const std::string& name);  // throws on unknown name
const char* loss_name(Loss kind);

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi] of feasible alpha values; endpoints may be ±inf.
struct AlphaInterval {
  double lo;
  double hi;
  bool contains(double a) const { return a >= lo && a <= hi; }
};

// ell(y, u). Throws std::invalid_argument on non-finite u or y not in {-1,+1}.
double loss_value(Loss kind, int y, double u);

// Fenchel conjugate ell^(y, alpha); +inf outside the feasibility interval.
// The logistic conjugate uses the convention 0*log 0 = 0 at endpoints.
double conjugate_value(Loss kind, int y, double alpha);

// d/dalpha of the conjugate on the interior of its interval. For the logistic
// conjugate the derivative diverges at the endpoints; alpha is nudged inside
// by `edge` before evaluation so projected-gradient steps stay finite.
double conjugate_grad(Loss kind, int y, double alpha, double edge = 1e-12);

AlphaInterval conjugate_interval(Loss kind, int y);

}  // namespace sparseclf

#endif
