#ifndef SPARSECLF_OA_HPP
#define SPARSECLF_OA_HPP

#include <chrono>
#include <functional>

#include "sparseclf/master.hpp"

namespace sparseclf {

struct FitOptions {
  double gamma = 1.0;
  Loss kind = Loss::logistic;
  double epsilon = 1e-6;  // relative OA gap tolerance, scaled by (1 + |c|)
  int max_cuts = 2000;
  double inner_tol = 1e-8;
  int inner_max_iter = 100000;
  MasterOptions master;
  unsigned seed = 0;  // reserved for randomized warm starts; unused by default
};

struct IterRecord {
  int iteration;
  double eta;        // master value (lower bound)
  double c_value;    // oracle value at the visited support
  double best_c;     // incumbent upper bound
  std::size_t support_hash;
};

struct FitResult {
  SupportMask s;
  std::vector<double> w;
  double b = 0.0;
  double objective = 0.0;  // c(s) at the returned support
  int cuts_used = 0;
  int iterations = 0;
  double wall_time_sec = 0.0;
  bool certified = false;
};

// Indices of the k largest |X_j^T y| on standardized columns; lowest index wins ties.
SupportMask warm_start(const Dataset& data, int k);

// Full cutting-plane loop: warm start, alternate oracle and exact master, stop
// when the master value reaches the best oracle value within epsilon.
FitResult fit_sparse(const Dataset& data, int k, const FitOptions& opts,
                     const std::function<void(const IterRecord&)>& log_sink = {});

}  // namespace sparseclf

#endif
