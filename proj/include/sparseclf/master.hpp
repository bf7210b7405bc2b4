#ifndef SPARSECLF_MASTER_HPP
#define SPARSECLF_MASTER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparseclf/dual_oracle.hpp"
#include "sparseclf/support.hpp"

namespace sparseclf {

struct CutPool {
  int p = 0;
  std::vector<Cut> cuts;

  void add(Cut c);
  // max over cuts of cut(s)
  double value(std::span<const std::uint8_t> s) const;
};

struct BnBNode {
  std::vector<int> fixed_one;
  std::vector<int> fixed_zero;
  double lower_bound = -kInf;
  int depth = 0;
};

struct MasterSolution {
  SupportMask s;
  double eta = 0.0;
  long nodes_explored = 0;
  double proof_gap = 0.0;
  bool optimal = true;  // false when the node limit was hit
};

struct MasterOptions {
  double tol = 1e-9;
  long node_limit = 2'000'000;
  int lagrangian_iters = 50;
  std::string tree_dump_path;  // optional line-delimited B&B trace
};

// Exact min of intercept + coeffs^T s over s in S_k^p with fixings; greedy
// because coeffs <= 0.
double single_cut_min(const Cut& cut, int k, const std::vector<int>& fixed_one,
                      const std::vector<int>& fixed_zero);

// Valid lower bound on min_s max_cut cut(s) within the node: at least the best
// single-cut bound, improved by projected-subgradient ascent on simplex
// multipliers for `budget` iterations.
double node_lower_bound(const CutPool& pool, const BnBNode& node, int k, int budget);

// Minimize max_cut cut(s) over S_k^p by best-first branch and bound.
MasterSolution solve_master(const CutPool& pool, int k,
                            const std::optional<MasterSolution>& incumbent,
                            const MasterOptions& opts = {});

}  // namespace sparseclf

#endif
