#include "sparseclf/master.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <queue>
#include <stdexcept>

namespace sparseclf {

namespace {

struct NodeState {
  std::vector<std::uint8_t> fix;  // 0 free, 1 fixed-one, 2 fixed-zero
  int n_one = 0;
  int depth = 0;
  double bound = -kInf;
  long id = 0;
  std::vector<double> agg_abs;  // branching scores from the bound computation
  std::vector<double> lambda;   // multiplier warm start inherited by children
};

// Greedy minimizer of a single aggregated cut under the node fixings: fixed
// ones first, then the most negative free coefficients up to budget k.
// Returns the chosen support in `s_out` when non-null.
double aggregated_min(double intercept, std::span<const double> g,
                      const std::vector<std::uint8_t>& fix, int n_one, int k,
                      std::vector<std::uint8_t>* s_out) {
  const int p = static_cast<int>(g.size());
  double val = intercept;
  if (s_out) s_out->assign(p, 0);
  std::vector<std::pair<double, int>> free_neg;
  for (int j = 0; j < p; ++j) {
    if (fix[j] == 1) {
      val += g[j];
      if (s_out) (*s_out)[j] = 1;
    } else if (fix[j] == 0 && g[j] < 0.0) {
      free_neg.emplace_back(g[j], j);
    }
  }
  const int budget = k - n_one;
  const int take = std::min<int>(budget, static_cast<int>(free_neg.size()));
  if (take > 0) {
    std::partial_sort(free_neg.begin(), free_neg.begin() + take, free_neg.end());
    for (int m = 0; m < take; ++m) {
      val += free_neg[m].first;
      if (s_out) (*s_out)[free_neg[m].second] = 1;
    }
  }
  return val;
}

void project_simplex(std::vector<double>& v) {
  std::vector<double> u(v);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = static_cast<int>(i + 1);
      theta = t;
    }
  }
  if (rho == 0) {  // numerically degenerate input; fall back to uniform
    std::fill(v.begin(), v.end(), 1.0 / v.size());
    return;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
}

struct BoundResult {
  double bound = -kInf;
  std::vector<std::uint8_t> s_bound;   // greedy support at the best multipliers
  std::vector<double> agg_abs;         // per-coordinate |g| over active cuts at s_bound
  std::vector<double> lambda;          // best multipliers, reusable by children
  bool pruned_early = false;           // bound crossed prune_at before full refinement
};

// Cut value at a sparse support given by its active index list: O(k) not O(p).
double cut_value_at(const Cut& c, const std::vector<int>& active) {
  double v = c.intercept;
  for (int j : active) v += c.coeffs[j];
  return v;
}

// `warm` seeds the Lagrangian multipliers (empty -> uniform). The search stops
// as soon as the bound crosses `prune_at` since the caller will fathom the node
// either way; s_bound/agg_abs are then left empty.
BoundResult compute_bound(const CutPool& pool, const std::vector<std::uint8_t>& fix, int n_one,
                          int k, int lag_iters, const std::vector<double>& warm = {},
                          double prune_at = kInf) {
  const int p = pool.p;
  const std::size_t t = pool.cuts.size();
  BoundResult res;

  double weak = -kInf;
  for (const Cut& c : pool.cuts) {
    const double v = aggregated_min(c.intercept, c.coeffs, fix, n_one, k, nullptr);
    weak = std::max(weak, v);
  }
  res.bound = weak;
  if (weak >= prune_at) {
    res.pruned_early = true;
    return res;
  }

  std::vector<double> lambda = warm.size() == t
                                   ? warm
                                   : std::vector<double>(t, 1.0 / static_cast<double>(t));
  std::vector<double> best_lambda = lambda;
  std::vector<double> g_agg(p), sub(t);
  std::vector<std::uint8_t> s_tmp;
  std::vector<int> active;
  double best_lag = -kInf;
  for (int it = 1; it <= lag_iters; ++it) {
    double a_agg = 0.0;
    std::fill(g_agg.begin(), g_agg.end(), 0.0);
    for (std::size_t i = 0; i < t; ++i) {
      if (lambda[i] == 0.0) continue;
      a_agg += lambda[i] * pool.cuts[i].intercept;
      for (int j = 0; j < p; ++j) g_agg[j] += lambda[i] * pool.cuts[i].coeffs[j];
    }
    const double lag = aggregated_min(a_agg, g_agg, fix, n_one, k, &s_tmp);
    if (lag > best_lag) {
      best_lag = lag;
      best_lambda = lambda;
      if (std::max(weak, best_lag) >= prune_at) {
        res.bound = std::max(weak, best_lag);
        res.pruned_early = true;
        return res;
      }
    }
    active.clear();
    for (int j = 0; j < p; ++j)
      if (s_tmp[j]) active.push_back(j);
    double norm = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      sub[i] = cut_value_at(pool.cuts[i], active);
      norm += sub[i] * sub[i];
    }
    norm = std::sqrt(norm);
    const double step = 1.0 / (std::sqrt(static_cast<double>(it)) * (norm + 1e-12));
    for (std::size_t i = 0; i < t; ++i) lambda[i] += step * sub[i];
    project_simplex(lambda);
  }
  res.bound = std::max(res.bound, best_lag);

  // bound support and active-cut aggregation at the best multipliers
  double a_agg = 0.0;
  std::fill(g_agg.begin(), g_agg.end(), 0.0);
  for (std::size_t i = 0; i < t; ++i) {
    a_agg += best_lambda[i] * pool.cuts[i].intercept;
    for (int j = 0; j < p; ++j) g_agg[j] += best_lambda[i] * pool.cuts[i].coeffs[j];
  }
  aggregated_min(a_agg, g_agg, fix, n_one, k, &res.s_bound);
  active.clear();
  for (int j = 0; j < p; ++j)
    if (res.s_bound[j]) active.push_back(j);
  double vmax = -kInf;
  for (const Cut& c : pool.cuts) vmax = std::max(vmax, cut_value_at(c, active));
  res.agg_abs.assign(p, 0.0);
  for (const Cut& c : pool.cuts) {
    if (cut_value_at(c, active) < vmax - 1e-9) continue;
    for (int j = 0; j < p; ++j) res.agg_abs[j] += std::abs(c.coeffs[j]);
  }
  res.lambda = std::move(best_lambda);
  return res;
}

}  // namespace

void CutPool::add(Cut c) {
  if (p == 0) p = static_cast<int>(c.coeffs.size());
  if (static_cast<int>(c.coeffs.size()) != p)
    throw std::invalid_argument("cut dimension mismatch");
  cuts.push_back(std::move(c));
}

double CutPool::value(std::span<const std::uint8_t> s) const {
  double v = -kInf;
  for (const Cut& c : cuts) v = std::max(v, c.value(s));
  return v;
}

double single_cut_min(const Cut& cut, int k, const std::vector<int>& fixed_one,
                      const std::vector<int>& fixed_zero) {
  const int p = static_cast<int>(cut.coeffs.size());
  if (static_cast<int>(fixed_one.size()) > k)
    throw std::invalid_argument("more fixed ones than the budget");
  std::vector<std::uint8_t> fix(p, 0);
  for (int j : fixed_one) fix[j] = 1;
  for (int j : fixed_zero) {
    if (fix[j] == 1) throw std::invalid_argument("coordinate fixed both ways");
    fix[j] = 2;
  }
  return aggregated_min(cut.intercept, cut.coeffs, fix, static_cast<int>(fixed_one.size()), k,
                        nullptr);
}

double node_lower_bound(const CutPool& pool, const BnBNode& node, int k, int budget) {
  if (pool.cuts.empty()) throw std::invalid_argument("empty cut pool");
  std::vector<std::uint8_t> fix(pool.p, 0);
  for (int j : node.fixed_one) fix[j] = 1;
  for (int j : node.fixed_zero) fix[j] = 2;
  return compute_bound(pool, fix, static_cast<int>(node.fixed_one.size()), k, budget).bound;
}

MasterSolution solve_master(const CutPool& pool, int k,
                            const std::optional<MasterSolution>& incumbent,
                            const MasterOptions& opts) {
  if (pool.cuts.empty()) throw std::invalid_argument("empty cut pool");
  if (k < 1 || k > pool.p) throw std::invalid_argument("cardinality budget out of range");
  const int p = pool.p;

  std::ofstream dump;
  if (!opts.tree_dump_path.empty()) dump.open(opts.tree_dump_path);

  MasterSolution best;
  best.s = SupportMask(p, k);
  best.eta = kInf;
  if (incumbent && incumbent->s.p() == p) {
    best.s = incumbent->s;
    best.s.k = k;
    best.eta = pool.value(best.s.bits);  // re-priced against the current pool
  }

  auto try_incumbent = [&](const std::vector<std::uint8_t>& s) {
    const double v = pool.value(s);
    if (v < best.eta) {
      best.eta = v;
      best.s.bits = s;
    }
  };

  struct QEntry {
    double bound;
    int depth;
    long id;
    std::shared_ptr<NodeState> node;
    bool operator>(const QEntry& o) const {
      if (bound != o.bound) return bound > o.bound;
      if (depth != o.depth) return depth < o.depth;  // deeper first
      return id > o.id;
    }
  };
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue;

  long next_id = 0;
  auto push_node = [&](std::shared_ptr<NodeState> node, const std::vector<double>& warm) {
    BoundResult br = compute_bound(pool, node->fix, node->n_one, k, opts.lagrangian_iters,
                                   warm, best.eta - opts.tol);
    node->bound = std::max(node->bound, br.bound);
    node->agg_abs = std::move(br.agg_abs);
    node->lambda = std::move(br.lambda);
    if (!br.pruned_early) try_incumbent(br.s_bound);
    node->id = next_id++;
    if (dump)
      dump << node->id << ' ' << node->n_one << ' ' << node->depth << ' ' << node->bound << ' '
           << best.eta << '\n';
    if (node->bound < best.eta - opts.tol) {
      // stash the branching scores alongside the node
      queue.push(QEntry{node->bound, node->depth, node->id, std::move(node)});
    }
  };

  auto root = std::make_shared<NodeState>();
  root->fix.assign(p, 0);
  push_node(root, {});

  MasterSolution out;
  long explored = 0;
  double global_lb = -kInf;
  while (!queue.empty()) {
    QEntry top = queue.top();
    queue.pop();
    global_lb = top.bound;
    if (top.bound >= best.eta - opts.tol) break;
    if (++explored > opts.node_limit) {
      out = best;
      out.nodes_explored = explored;
      out.proof_gap = std::max(0.0, best.eta - top.bound);
      out.optimal = false;
      return out;
    }
    NodeState& node = *top.node;

    // branch coordinate: free coordinate with largest |g| aggregated over the
    // active cuts at the node's bound solution, lowest index on ties
    int bj = -1;
    double bscore = -1.0;
    for (int j = 0; j < p; ++j)
      if (node.fix[j] == 0 && node.agg_abs[j] > bscore) {
        bscore = node.agg_abs[j];
        bj = j;
      }
    if (bj < 0) continue;  // fully fixed; already priced as its own bound solution

    // down child: s_bj = 0
    auto down = std::make_shared<NodeState>();
    down->fix = node.fix;
    down->fix[bj] = 2;
    down->n_one = node.n_one;
    down->depth = node.depth + 1;
    down->bound = node.bound;
    push_node(down, node.lambda);

    // up child: s_bj = 1 (only when the budget allows)
    if (node.n_one + 1 <= k) {
      auto up = std::make_shared<NodeState>();
      up->fix = node.fix;
      up->fix[bj] = 1;
      up->n_one = node.n_one + 1;
      up->depth = node.depth + 1;
      up->bound = node.bound;
      if (up->n_one == k)
        for (int j = 0; j < p; ++j)
          if (up->fix[j] == 0) up->fix[j] = 2;
      push_node(up, node.lambda);
    }
  }

  out = best;
  out.nodes_explored = explored;
  out.proof_gap = queue.empty() ? 0.0 : std::max(0.0, best.eta - global_lb);
  out.optimal = true;
  return out;
}

}  // namespace sparseclf
