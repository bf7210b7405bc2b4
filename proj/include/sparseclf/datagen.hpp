#ifndef SPARSECLF_DATAGEN_HPP
#define SPARSECLF_DATAGEN_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "sparseclf/dataset.hpp"

namespace sparseclf {

enum class LabelModel { logistic, sign };
enum class TruthModel { pm1, binary };

struct SyntheticConfig {
  static constexpr double kInfSnr = std::numeric_limits<double>::infinity();

  int n = 100;
  int p = 10;
  int k_true = 3;
  double rho = 0.0;        // AR(1) feature correlation
  double snr = kInfSnr;    // (||Xw||/||eps||)^2; infinity means no noise
  LabelModel label_model = LabelModel::logistic;
  TruthModel truth_model = TruthModel::pm1;
  double sigma2 = 0.0;     // noise variance, binary-truth model only
  std::uint64_t seed = 0;
};

struct SyntheticInstance {
  Dataset data;
  std::vector<double> w_true;
  std::vector<double> epsilon;
  double achieved_snr = 0.0;
  bool single_class = false;  // flagged, not an error
};

// Rows i.i.d. N(0, Sigma) with Sigma_ij = rho^|i-j| via the AR(1) recurrence,
// columns standardized to mean 0, variance 1.
std::vector<double> gen_features(int n, int p, double rho, std::uint64_t seed);

// Exactly k_true nonzeros at uniform positions; values on {-1,+1} (pm1) or +1.
std::vector<double> gen_truth(int p, int k_true, TruthModel model, std::uint64_t seed);

SyntheticInstance generate(const SyntheticConfig& cfg);

}  // namespace sparseclf

#endif
