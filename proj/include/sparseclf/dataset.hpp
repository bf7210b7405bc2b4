#ifndef SPARSECLF_DATASET_HPP
#define SPARSECLF_DATASET_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sparseclf {

/// Dense design matrix (row-major) with ±1 labels.
struct Dataset {
  int n = 0;
  int p = 0;
  std::vector<double> x;  // n*p, row-major
  std::vector<int> y;     // entries in {-1,+1}
  std::vector<std::string> names;  // optional, size p when present

  double at(int i, int j) const { return x[static_cast<std::size_t>(i) * p + j]; }
  double& at(int i, int j) { return x[static_cast<std::size_t>(i) * p + j]; }
  std::span<const double> row(int i) const {
    return {x.data() + static_cast<std::size_t>(i) * p, static_cast<std::size_t>(p)};
  }

  // X_j^T v for a length-n vector v.
  double col_dot(int j, std::span<const double> v) const;

  bool both_classes_present() const;
  void validate() const;  // throws std::invalid_argument on malformed data
};

// Standardize every column to empirical mean 0 and (population) variance 1.
// Constant columns are left centered with unit scale skipped.
void standardize_columns(Dataset& d);

// CSV with a header row; final column must be named "label" with values in
// {-1,+1} or {0,1} (0 mapped to -1). Throws std::runtime_error with row/column
// context on malformed input.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& d, const std::string& path);

}  // namespace sparseclf

#endif
