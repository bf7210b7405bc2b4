#include "sparseclf/oa.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sparseclf {

namespace {

std::size_t hash_bits(const std::vector<std::uint8_t>& bits) {
  std::size_t h = 1469598103934665603ull;
  for (std::uint8_t b : bits) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

SupportMask warm_start(const Dataset& data, int k) {
  data.validate();
  if (k < 1 || k > data.p) throw std::invalid_argument("k out of range");
  std::vector<double> yv(data.n);
  for (int i = 0; i < data.n; ++i) yv[i] = data.y[i];
  std::vector<std::pair<double, int>> score(data.p);
  for (int j = 0; j < data.p; ++j) {
    double mean = 0.0, var = 0.0, dot = 0.0;
    for (int i = 0; i < data.n; ++i) mean += data.at(i, j);
    mean /= data.n;
    for (int i = 0; i < data.n; ++i) {
      const double c = data.at(i, j) - mean;
      var += c * c;
      dot += c * yv[i];
    }
    var /= data.n;
    const double corr = var > 0.0 ? std::abs(dot / std::sqrt(var)) : 0.0;
    score[j] = {-corr, j};  // descending correlation, ascending index
  }
  std::sort(score.begin(), score.end());
  SupportMask s(data.p, k);
  for (int m = 0; m < k; ++m) s.bits[score[m].second] = 1;
  return s;
}

FitResult fit_sparse(const Dataset& data, int k, const FitOptions& opts,
                     const std::function<void(const IterRecord&)>& log_sink) {
  const auto t0 = std::chrono::steady_clock::now();
  data.validate();
  if (!data.both_classes_present())
    throw std::invalid_argument("both classes must be present");
  if (k < 1 || k > data.p) throw std::invalid_argument("k out of range");
  if (!(opts.epsilon > 0.0) || opts.max_cuts < 1)
    throw std::invalid_argument("bad fit options");

  CutPool pool;
  pool.p = data.p;
  SupportMask s = warm_start(data, k);

  FitResult result;
  result.s = SupportMask(data.p, k);
  double best_c = kInf;
  DualSolution best_sol;
  SupportMask best_s = s;
  std::map<std::vector<std::uint8_t>, double> visited;
  std::optional<MasterSolution> incumbent;
  std::vector<double> warm_alpha;

  double eta = -kInf;
  int t = 0;
  for (; t < opts.max_cuts; ++t) {
    OracleOptions oopts;
    oopts.tol = opts.inner_tol;
    oopts.max_iter = opts.inner_max_iter;
    if (!warm_alpha.empty()) oopts.warm_alpha = &warm_alpha;
    DualSolution sol = evaluate_support(data, s, opts.gamma, opts.kind, oopts);
    warm_alpha = sol.alpha;
    if (sol.objective < best_c) {
      best_c = sol.objective;
      best_sol = sol;
      best_s = s;
    }
    const bool revisit = visited.count(s.bits) > 0;
    visited[s.bits] = sol.objective;
    pool.add(make_cut(sol, s));

    if (log_sink)
      log_sink(IterRecord{t + 1, eta, sol.objective, best_c, hash_bits(s.bits)});

    // a revisited support carries a tight cut, so the next master solve must
    // close the gap; test before and after the solve
    if (eta >= best_c - opts.epsilon * (1.0 + std::abs(best_c))) {
      result.certified = true;
      ++t;
      break;
    }
    MasterSolution ms = solve_master(pool, k, incumbent, opts.master);
    incumbent = ms;
    eta = ms.eta;
    if (!ms.optimal) break;
    if (eta >= best_c - opts.epsilon * (1.0 + std::abs(best_c))) {
      result.certified = true;
      ++t;
      break;
    }
    if (revisit && ms.s == s) break;  // defensive; cannot recur with an exact master
    s = ms.s;
  }

  result.s = best_s;
  result.w = best_sol.w;
  result.b = best_sol.b;
  result.objective = best_c;
  result.cuts_used = static_cast<int>(pool.cuts.size());
  result.iterations = t;
  result.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace sparseclf
