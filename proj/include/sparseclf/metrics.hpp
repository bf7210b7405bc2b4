#ifndef SPARSECLF_METRICS_HPP
#define SPARSECLF_METRICS_HPP

#include <string>
#include <vector>

#include "sparseclf/dataset.hpp"
#include "sparseclf/oa.hpp"

namespace sparseclf {

struct RecoveryReport {
  int accuracy_count = 0;  // A(w): true features selected
  int false_count = 0;     // F(w): false features selected
  int support_size = 0;    // A + F
  bool perfect = false;
};

RecoveryReport recovery(const std::vector<double>& w, const std::vector<double>& w_true);

// Mann-Whitney AUC; ties count one half. Throws on single-class labels.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

double misclass_rate(const std::vector<int>& predictions, const std::vector<int>& labels);

std::vector<int> predict(const Dataset& data, const std::vector<double>& w, double b);
std::vector<double> scores(const Dataset& data, const std::vector<double>& w, double b);

enum class CvMethod { sparse, lasso };

struct CvRow {
  double k_or_lambda = 0.0;
  double gamma = 0.0;  // 0 for the lasso method
  double val_auc = 0.0;
  double val_misclass = 0.0;
  int support_size = 0;
};

struct CvResult {
  double k_star_or_lambda = 0.0;
  double gamma_star = 0.0;
  std::vector<CvRow> table;
};

struct CvConfig {
  CvMethod method = CvMethod::sparse;
  Loss kind = Loss::logistic;
  std::vector<int> k_grid;          // sparse method
  std::vector<double> gamma_grid;   // sparse method
  std::vector<double> lambda_grid;  // lasso method
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  FitOptions fit;  // gamma/kind overridden per grid point
};

// Single random train/validation split; fits every grid point on the training
// side and selects the validation-AUC maximizer (ties: smaller k, then larger
// gamma; for lasso, larger lambda).
CvResult cross_validate(const Dataset& data, const CvConfig& cfg);

}  // namespace sparseclf

#endif
