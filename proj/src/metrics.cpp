#include "sparseclf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sparseclf/lasso.hpp"

namespace sparseclf {

RecoveryReport recovery(const std::vector<double>& w, const std::vector<double>& w_true) {
  if (w.size() != w_true.size()) throw std::invalid_argument("vector length mismatch");
  double wmax = 0.0;
  for (double x : w) wmax = std::max(wmax, std::abs(x));
  const double thr = 1e-8 * wmax;
  RecoveryReport r;
  int k_true = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const bool sel = wmax > 0.0 && std::abs(w[j]) > thr;
    const bool truth = w_true[j] != 0.0;
    if (truth) ++k_true;
    if (sel && truth) ++r.accuracy_count;
    if (sel && !truth) ++r.false_count;
  }
  r.support_size = r.accuracy_count + r.false_count;
  r.perfect = (r.accuracy_count == k_true && r.false_count == 0);
  return r;
}

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("length mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // midranks, then Mann-Whitney from the positive rank sum
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double mid = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t m = i; m <= j; ++m) rank[order[m]] = mid;
    i = j + 1;
  }
  double rank_pos = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t m = 0; m < n; ++m)
    if (labels[m] > 0) {
      rank_pos += rank[m];
      ++n_pos;
    }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("AUC needs both classes");
  const double u = rank_pos - 0.5 * n_pos * (n_pos + 1.0);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double misclass_rate(const std::vector<int>& predictions, const std::vector<int>& labels) {
  if (predictions.size() != labels.size()) throw std::invalid_argument("length mismatch");
  std::size_t bad = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (predictions[i] != labels[i]) ++bad;
  return static_cast<double>(bad) / static_cast<double>(labels.size());
}

std::vector<double> scores(const Dataset& data, const std::vector<double>& w, double b) {
  std::vector<double> s(data.n, b);
  for (int i = 0; i < data.n; ++i) {
    const double* row = data.x.data() + static_cast<std::size_t>(i) * data.p;
    for (int j = 0; j < data.p; ++j) s[i] += w[j] * row[j];
  }
  return s;
}

std::vector<int> predict(const Dataset& data, const std::vector<double>& w, double b) {
  auto s = scores(data, w, b);
  std::vector<int> pred(data.n);
  for (int i = 0; i < data.n; ++i) pred[i] = s[i] > 0.0 ? 1 : -1;
  return pred;
}

namespace {

std::pair<Dataset, Dataset> split_dataset(const Dataset& data, double train_fraction,
                                          std::uint64_t seed) {
  std::vector<int> idx(data.n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  const int n_train = static_cast<int>(std::lround(train_fraction * data.n));
  auto build = [&](int lo, int hi) {
    Dataset d;
    d.p = data.p;
    d.names = data.names;
    for (int m = lo; m < hi; ++m) {
      const int i = idx[m];
      d.x.insert(d.x.end(), data.x.begin() + static_cast<std::size_t>(i) * data.p,
                 data.x.begin() + static_cast<std::size_t>(i + 1) * data.p);
      d.y.push_back(data.y[i]);
      ++d.n;
    }
    return d;
  };
  return {build(0, n_train), build(n_train, data.n)};
}

}  // namespace

CvResult cross_validate(const Dataset& data, const CvConfig& cfg) {
  data.validate();
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
    throw std::invalid_argument("train_fraction must lie in (0,1)");
  auto [train, val] = split_dataset(data, cfg.train_fraction, cfg.seed);
  if (train.n < 2 || val.n < 1 || !train.both_classes_present() || !val.both_classes_present())
    throw std::invalid_argument("degenerate train/validation split");

  CvResult res;
  double best_auc = -1.0;
  if (cfg.method == CvMethod::sparse) {
    if (cfg.k_grid.empty() || cfg.gamma_grid.empty())
      throw std::invalid_argument("empty grid");
    for (int k : cfg.k_grid) {
      for (double gamma : cfg.gamma_grid) {
        FitOptions o = cfg.fit;
        o.gamma = gamma;
        o.kind = cfg.kind;
        FitResult fr = fit_sparse(train, k, o);
        const auto sc = scores(val, fr.w, fr.b);
        CvRow row;
        row.k_or_lambda = k;
        row.gamma = gamma;
        row.val_auc = auc(sc, val.y);
        row.val_misclass = misclass_rate(predict(val, fr.w, fr.b), val.y);
        row.support_size = count_support(fr.w);
        res.table.push_back(row);
        const bool better =
            row.val_auc > best_auc ||
            (row.val_auc == best_auc &&
             (k < res.k_star_or_lambda ||
              (k == res.k_star_or_lambda && gamma > res.gamma_star)));
        if (better) {
          best_auc = row.val_auc;
          res.k_star_or_lambda = k;
          res.gamma_star = gamma;
        }
      }
    }
  } else {
    if (cfg.lambda_grid.empty()) throw std::invalid_argument("empty grid");
    const bool svm = cfg.kind == Loss::hinge;
    for (double lambda : cfg.lambda_grid) {
      LassoFit lf = svm ? fit_lasso_svm(train, lambda) : fit_lasso_logistic(train, lambda);
      const auto sc = scores(val, lf.w, lf.b);
      CvRow row;
      row.k_or_lambda = lambda;
      row.gamma = 0.0;
      row.val_auc = auc(sc, val.y);
      row.val_misclass = misclass_rate(predict(val, lf.w, lf.b), val.y);
      row.support_size = lf.support_size;
      res.table.push_back(row);
      const bool better = row.val_auc > best_auc ||
                          (row.val_auc == best_auc && lambda > res.k_star_or_lambda);
      if (better) {
        best_auc = row.val_auc;
        res.k_star_or_lambda = lambda;
      }
    }
  }
  return res;
}

}  // namespace sparseclf
