#include "sparseclf/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sparseclf {

namespace {

// Smooth part of the objective: logistic loss, or Huber-smoothed hinge when
// mu > 0. Fills per-sample margin derivatives d phi/du into `du` when non-null.
double smooth_loss(const Dataset& data, std::span<const double> w, double b, Loss kind, double mu,
                   std::vector<double>* du) {
  double total = 0.0;
  if (du) du->assign(data.n, 0.0);
  for (int i = 0; i < data.n; ++i) {
    double u = b;
    const double* row = data.x.data() + static_cast<std::size_t>(i) * data.p;
    for (int j = 0; j < data.p; ++j) u += w[j] * row[j];
    const double m = data.y[i] * u;
    if (kind == Loss::logistic) {
      total += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
      if (du) (*du)[i] = -data.y[i] / (1.0 + std::exp(m));
    } else {  // huberized hinge
      const double h = 1.0 - m;
      if (h <= 0.0) {
        // zero loss, zero slope
      } else if (h >= mu) {
        total += h - 0.5 * mu;
        if (du) (*du)[i] = -static_cast<double>(data.y[i]);
      } else {
        total += h * h / (2.0 * mu);
        if (du) (*du)[i] = -data.y[i] * h / mu;
      }
    }
  }
  return total;
}

void full_gradient(const Dataset& data, const std::vector<double>& du, std::vector<double>& gw,
                   double& gb) {
  gw.assign(data.p, 0.0);
  gb = 0.0;
  for (int i = 0; i < data.n; ++i) {
    const double d = du[i];
    if (d == 0.0) continue;
    const double* row = data.x.data() + static_cast<std::size_t>(i) * data.p;
    for (int j = 0; j < data.p; ++j) gw[j] += d * row[j];
    gb += d;
  }
}

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

double stationarity_residual(const std::vector<double>& w, const std::vector<double>& gw,
                             double gb, double lambda) {
  double r = std::abs(gb);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != 0.0)
      r = std::max(r, std::abs(gw[j] + lambda * (w[j] > 0 ? 1.0 : -1.0)));
    else
      r = std::max(r, std::max(0.0, std::abs(gw[j]) - lambda));
  }
  return r;
}

// FISTA with a function-value restart, so accepted objective values are
// nonincreasing. Returns the iterate in (w, b).
LassoFit prox_gradient(const Dataset& data, double lambda, Loss kind, double mu,
                       const LassoOptions& opts, std::vector<double> w0, double b0) {
  const int p = data.p;
  std::vector<double> w = std::move(w0);
  if (static_cast<int>(w.size()) != p) w.assign(p, 0.0);
  double b = b0;

  std::vector<double> yw = w, du, gw, wn(p);
  double yb = b, gb = 0.0, tk = 1.0;
  double fw = smooth_loss(data, w, b, kind, mu, nullptr);
  double obj_prev = fw + lambda * std::accumulate(w.begin(), w.end(), 0.0,
                                                  [](double a, double x) { return a + std::abs(x); });
  double L = 1.0;
  LassoFit fit;
  fit.converged = false;

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    const double fy = smooth_loss(data, yw, yb, kind, mu, &du);
    full_gradient(data, du, gw, gb);

    double bn = 0.0, fn = 0.0;
    for (int bt = 0; bt < 100; ++bt) {
      for (int j = 0; j < p; ++j) wn[j] = soft_threshold(yw[j] - gw[j] / L, lambda / L);
      bn = yb - gb / L;
      fn = smooth_loss(data, wn, bn, kind, mu, nullptr);
      double quad = fy, dist2 = 0.0;
      for (int j = 0; j < p; ++j) {
        const double d = wn[j] - yw[j];
        quad += gw[j] * d;
        dist2 += d * d;
      }
      const double dbv = bn - yb;
      quad += gb * dbv;
      dist2 += dbv * dbv;
      quad += 0.5 * L * dist2;
      if (fn <= quad + 1e-12 * (1.0 + std::abs(fn))) break;
      L *= 2.0;
    }
    double l1 = 0.0;
    for (double x : wn) l1 += std::abs(x);
    const double obj_n = fn + lambda * l1;

    if (obj_n > obj_prev + 1e-12 * (1.0 + std::abs(obj_prev))) {
      // momentum overshoot: restart from the last accepted iterate
      yw = w;
      yb = b;
      tk = 1.0;
      continue;
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    const double beta = (tk - 1.0) / tn;
    for (int j = 0; j < p; ++j) yw[j] = wn[j] + beta * (wn[j] - w[j]);
    yb = bn + beta * (bn - b);
    w.swap(wn);
    b = bn;
    obj_prev = obj_n;
    tk = tn;
    L = std::max(L * 0.9, 1e-8);

    // check optimality at the accepted iterate
    smooth_loss(data, w, b, kind, mu, &du);
    full_gradient(data, du, gw, gb);
    if (stationarity_residual(w, gw, gb, lambda) <= opts.tol) {
      fit.converged = true;
      ++it;
      break;
    }
  }
  fit.w = std::move(w);
  fit.b = b;
  fit.lambda = lambda;
  fit.objective = obj_prev;
  fit.support_size = count_support(fit.w);
  fit.iterations = it;
  fit.smoothing_mu = mu;
  return fit;
}

}  // namespace

int count_support(const std::vector<double>& w, double rel_threshold) {
  double wmax = 0.0;
  for (double x : w) wmax = std::max(wmax, std::abs(x));
  if (wmax == 0.0) return 0;
  int c = 0;
  for (double x : w)
    if (std::abs(x) > rel_threshold * wmax) ++c;
  return c;
}

LassoFit fit_lasso_logistic(const Dataset& data, double lambda, const LassoOptions& opts) {
  data.validate();
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  return prox_gradient(data, lambda, Loss::logistic, 0.0, opts, {}, 0.0);
}

LassoFit fit_lasso_svm(const Dataset& data, double lambda, const LassoOptions& opts) {
  data.validate();
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  std::vector<double> w(data.p, 0.0);
  double b = 0.0;
  LassoFit fit;
  for (double mu : {1.0, 1e-1, 1e-2, 1e-3, 1e-4}) {
    fit = prox_gradient(data, lambda, Loss::hinge, mu, opts, std::move(w), b);
    w = fit.w;
    b = fit.b;
  }
  return fit;
}

double lambda_max(const Dataset& data, Loss kind) {
  data.validate();
  // intercept-only optimum by golden section
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<double> zero(data.p, 0.0);
  const double mu = kind == Loss::logistic ? 0.0 : 1e-4;
  auto f = [&](double b) { return smooth_loss(data, zero, b, kind, mu, nullptr); };
  double a = -30.0, c = 30.0;
  double x1 = c - phi * (c - a), x2 = a + phi * (c - a);
  double f1 = f(x1), f2 = f(x2);
  while (c - a > 1e-10) {
    if (f1 <= f2) {
      c = x2; x2 = x1; f2 = f1; x1 = c - phi * (c - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2; x2 = a + phi * (c - a); f2 = f(x2);
    }
  }
  std::vector<double> du;
  smooth_loss(data, zero, 0.5 * (a + c), kind, mu, &du);
  double lmax = 0.0;
  for (int j = 0; j < data.p; ++j) lmax = std::max(lmax, std::abs(data.col_dot(j, du)));
  return lmax;
}

std::vector<double> lambda_grid(const Dataset& data, int count, Loss kind) {
  if (count < 2) throw std::invalid_argument("grid needs at least 2 points");
  const double lmax = lambda_max(data, kind);
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = lmax * std::pow(1e-4, static_cast<double>(i) / (count - 1));
  return grid;
}

}  // namespace sparseclf
