#include "sparseclf/dual_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparseclf {

namespace {

double clamp_box(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// sum_i clamp(v_i - mu) as a function of the hyperplane multiplier mu.
double shifted_sum(std::span<const double> v, std::span<const double> lo,
                   std::span<const double> hi, double mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += clamp_box(v[i] - mu, lo[i], hi[i]);
  return s;
}

struct InnerProblem {
  const Dataset& data;
  std::span<const double> sw;  // support weights in [0,1]^p
  double gamma;
  Loss kind;
  std::vector<int> active;      // j with sw[j] > 0
  std::vector<double> lo, hi;   // dual box per sample

  InnerProblem(const Dataset& d, std::span<const double> s, double g, Loss k)
      : data(d), sw(s), gamma(g), kind(k) {
    for (int j = 0; j < d.p; ++j)
      if (sw[j] > 0.0) active.push_back(j);
    lo.resize(d.n);
    hi.resize(d.n);
    for (int i = 0; i < d.n; ++i) {
      const auto iv = conjugate_interval(kind, d.y[i]);
      lo[i] = iv.lo;
      hi[i] = iv.hi;
    }
  }

  // v_j = X_j^T alpha for active features only.
  void feature_products(std::span<const double> alpha, std::vector<double>& v) const {
    v.assign(active.size(), 0.0);
    for (int i = 0; i < data.n; ++i) {
      const double a = alpha[i];
      if (a == 0.0) continue;
      const double* row = data.x.data() + static_cast<std::size_t>(i) * data.p;
      for (std::size_t m = 0; m < active.size(); ++m) v[m] += row[active[m]] * a;
    }
  }

  double objective(std::span<const double> alpha, const std::vector<double>& v) const {
    double obj = 0.0;
    for (int i = 0; i < data.n; ++i) obj -= conjugate_value(kind, data.y[i], alpha[i]);
    for (std::size_t m = 0; m < active.size(); ++m)
      obj -= 0.5 * gamma * sw[active[m]] * v[m] * v[m];
    return obj;
  }

  void gradient(std::span<const double> alpha, const std::vector<double>& v,
                std::vector<double>& g) const {
    g.assign(data.n, 0.0);
    for (int i = 0; i < data.n; ++i) g[i] = -conjugate_grad(kind, data.y[i], alpha[i]);
    for (std::size_t m = 0; m < active.size(); ++m) {
      const double c = gamma * sw[active[m]] * v[m];
      if (c == 0.0) continue;
      const int j = active[m];
      for (int i = 0; i < data.n; ++i) g[i] -= c * data.at(i, j);
    }
  }
};

// Residual used for termination: ||P(alpha + grad) - alpha||_2 (the hyperplane
// violation of an accepted iterate is zero by construction).
double kkt_residual(const InnerProblem& pb, std::span<const double> alpha,
                    std::span<const double> grad) {
  std::vector<double> trial(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) trial[i] = alpha[i] + grad[i];
  auto proj = project_box_hyperplane(trial, pb.lo, pb.hi);
  double r2 = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double d = proj[i] - alpha[i];
    r2 += d * d;
  }
  return std::sqrt(r2);
}

void solve_projected_gradient(const InnerProblem& pb, std::vector<double>& alpha,
                              const OracleOptions& opts, double& out_gap, int& out_iters,
                              bool& out_converged) {
  const int n = pb.data.n;
  std::vector<double> v, g, g_prev(n, 0.0), alpha_prev(n, 0.0), trial(n);
  pb.feature_products(alpha, v);
  double f = pb.objective(alpha, v);
  pb.gradient(alpha, v, g);

  double step = 1.0;
  out_converged = false;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    const double res = kkt_residual(pb, alpha, g);
    out_gap = res;
    if (res <= opts.tol) {
      out_converged = true;
      break;
    }
    if (it > 0) {
      // Barzilai-Borwein step, safeguarded
      double ss = 0.0, sy = 0.0;
      for (int i = 0; i < n; ++i) {
        const double ds = alpha[i] - alpha_prev[i];
        ss += ds * ds;
        sy += ds * (g_prev[i] - g[i]);  // curvature of the concave objective
      }
      step = (sy > 1e-300) ? ss / sy : step * 2.0;
      step = std::clamp(step, 1e-12, 1e12);
    }
    alpha_prev = alpha;
    g_prev = g;

    bool accepted = false;
    double t = step;
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < n; ++i) trial[i] = alpha[i] + t * g[i];
      auto cand = project_box_hyperplane(trial, pb.lo, pb.hi);
      double gd = 0.0;
      for (int i = 0; i < n; ++i) gd += g[i] * (cand[i] - alpha[i]);
      std::vector<double> v_cand;
      pb.feature_products(cand, v_cand);
      const double f_cand = pb.objective(cand, v_cand);
      if (f_cand >= f + 1e-4 * gd || gd <= 0.0) {
        alpha.swap(cand);
        v.swap(v_cand);
        f = f_cand;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      out_converged = out_gap <= std::max(opts.tol, 1e-6);
      break;
    }
    pb.gradient(alpha, v, g);
  }
  out_iters = it;
}

// Greedy two-coordinate ascent for the hinge dual (linear conjugate). Picks the
// most-violating pair and takes the exact clipped Newton step along e_i - e_j.
void solve_pairwise_hinge(const InnerProblem& pb, std::vector<double>& alpha,
                          const OracleOptions& opts, double& out_gap, int& out_iters,
                          bool& out_converged) {
  const int n = pb.data.n;
  std::vector<double> v;
  pb.feature_products(alpha, v);
  std::vector<double> g(n);
  out_converged = false;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    pb.gradient(alpha, v, g);
    int bi = -1, bj = -1;
    double gmax = -kInf, gmin = kInf;
    for (int i = 0; i < n; ++i) {
      if (alpha[i] < pb.hi[i] - 1e-14 && g[i] > gmax) { gmax = g[i]; bi = i; }
      if (alpha[i] > pb.lo[i] + 1e-14 && g[i] < gmin) { gmin = g[i]; bj = i; }
    }
    out_gap = (bi >= 0 && bj >= 0) ? gmax - gmin : 0.0;
    if (bi < 0 || bj < 0 || gmax - gmin <= opts.tol) {
      out_converged = true;
      break;
    }
    double curv = 0.0;
    for (std::size_t m = 0; m < pb.active.size(); ++m) {
      const int col = pb.active[m];
      const double d = pb.data.at(bi, col) - pb.data.at(bj, col);
      curv += pb.gamma * pb.sw[col] * d * d;
    }
    double t = (curv > 1e-300) ? (gmax - gmin) / curv : kInf;
    t = std::min(t, pb.hi[bi] - alpha[bi]);
    t = std::min(t, alpha[bj] - pb.lo[bj]);
    if (!(t > 0.0) || !std::isfinite(t)) {
      out_converged = true;
      break;
    }
    alpha[bi] += t;
    alpha[bj] -= t;
    for (std::size_t m = 0; m < pb.active.size(); ++m) {
      const int col = pb.active[m];
      v[m] += t * (pb.data.at(bi, col) - pb.data.at(bj, col));
    }
  }
  out_iters = it;
}

}  // namespace

std::vector<double> project_box_hyperplane(std::span<const double> v, std::span<const double> lo,
                                           std::span<const double> hi) {
  const std::size_t n = v.size();
  double sum_lo = 0.0, sum_hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("empty box");
    sum_lo += lo[i];
    sum_hi += hi[i];
  }
  if (sum_lo > 1e-12 || sum_hi < -1e-12)
    throw std::invalid_argument("projection target set is empty");

  double w = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::isfinite(v[i])) w = std::max(w, std::abs(v[i]));
  double mu_lo = -2.0 * w, mu_hi = 2.0 * w;
  for (int e = 0; e < 200 && shifted_sum(v, lo, hi, mu_lo) < 0.0; ++e) mu_lo *= 2.0;
  for (int e = 0; e < 200 && shifted_sum(v, lo, hi, mu_hi) > 0.0; ++e) mu_hi *= 2.0;
  for (int it = 0; it < 200 && mu_hi - mu_lo > 1e-16 * (1.0 + std::abs(mu_lo)); ++it) {
    const double mid = 0.5 * (mu_lo + mu_hi);
    (shifted_sum(v, lo, hi, mid) >= 0.0 ? mu_lo : mu_hi) = mid;
  }
  const double mu = 0.5 * (mu_lo + mu_hi);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = clamp_box(v[i] - mu, lo[i], hi[i]);
  // exact hyperplane feasibility: absorb the bisection leftover on free coords
  double resid = 0.0;
  for (double a : out) resid += a;
  if (resid != 0.0) {
    for (std::size_t i = 0; i < n && resid != 0.0; ++i) {
      const double adj = clamp_box(out[i] - resid, lo[i], hi[i]) - out[i];
      out[i] += adj;
      resid += adj;
    }
  }
  return out;
}

DualSolution evaluate_support_weights(const Dataset& data, std::span<const double> s_weights,
                                      double gamma, Loss kind, const OracleOptions& opts) {
  data.validate();
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (static_cast<int>(s_weights.size()) != data.p)
    throw std::invalid_argument("support weight length mismatch");

  InnerProblem pb(data, s_weights, gamma, kind);
  std::vector<double> alpha(data.n, 0.0);
  if (opts.warm_alpha && static_cast<int>(opts.warm_alpha->size()) == data.n)
    alpha = project_box_hyperplane(*opts.warm_alpha, pb.lo, pb.hi);

  DualSolution sol;
  if (opts.method == InnerMethod::pairwise) {
    if (kind != Loss::hinge)
      throw std::invalid_argument("pairwise inner method is hinge-only");
    solve_pairwise_hinge(pb, alpha, opts, sol.gap, sol.iterations, sol.converged);
  } else {
    solve_projected_gradient(pb, alpha, opts, sol.gap, sol.iterations, sol.converged);
  }

  std::vector<double> v;
  pb.feature_products(alpha, v);
  sol.alpha = alpha;
  sol.objective = pb.objective(alpha, v);
  sol.grad.assign(data.p, 0.0);
  for (int j = 0; j < data.p; ++j) {
    const double xa = data.col_dot(j, alpha);
    sol.grad[j] = -0.5 * gamma * xa * xa;
  }
  sol.w.assign(data.p, 0.0);
  for (std::size_t m = 0; m < pb.active.size(); ++m) {
    const int j = pb.active[m];
    sol.w[j] = -gamma * s_weights[j] * v[m];
  }
  return sol;
}

DualSolution evaluate_support(const Dataset& data, const SupportMask& s, double gamma, Loss kind,
                              const OracleOptions& opts) {
  if (s.p() != data.p) throw std::invalid_argument("support dimension mismatch");
  std::vector<double> w(s.bits.begin(), s.bits.end());
  DualSolution sol = evaluate_support_weights(data, w, gamma, kind, opts);
  auto [wvec, b] = recover_primal(data, s, sol.alpha, gamma, kind);
  sol.w = std::move(wvec);
  sol.b = b;
  return sol;
}

double primal_objective(const Dataset& data, std::span<const double> w, double b, double gamma,
                        Loss kind) {
  double obj = 0.0;
  for (int i = 0; i < data.n; ++i) {
    double m = b;
    const double* row = data.x.data() + static_cast<std::size_t>(i) * data.p;
    for (int j = 0; j < data.p; ++j) m += w[j] * row[j];
    obj += loss_value(kind, data.y[i], m);
  }
  double wn = 0.0;
  for (double wj : w) wn += wj * wj;
  return obj + wn / (2.0 * gamma);
}

std::pair<std::vector<double>, double> recover_primal(const Dataset& data, const SupportMask& s,
                                                      std::span<const double> alpha, double gamma,
                                                      Loss kind) {
  std::vector<double> w(data.p, 0.0);
  for (int j = 0; j < data.p; ++j)
    if (s.bits[j]) w[j] = -gamma * data.col_dot(j, alpha);

  // margins without intercept
  std::vector<double> m(data.n, 0.0);
  for (int i = 0; i < data.n; ++i) {
    const double* row = data.x.data() + static_cast<std::size_t>(i) * data.p;
    for (int j = 0; j < data.p; ++j) m[i] += w[j] * row[j];
  }
  auto loss_of_b = [&](double b) {
    double v = 0.0;
    for (int i = 0; i < data.n; ++i) v += loss_value(kind, data.y[i], m[i] + b);
    return v;
  };
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < data.n; ++i) {
    lo = std::min(lo, -m[i] - 2.0);
    hi = std::max(hi, -m[i] + 2.0);
  }
  // golden-section; the objective is convex in b
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, c = hi;
  double x1 = c - phi * (c - a), x2 = a + phi * (c - a);
  double f1 = loss_of_b(x1), f2 = loss_of_b(x2);
  while (c - a > 1e-10 * (1.0 + std::abs(a) + std::abs(c))) {
    if (f1 <= f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - phi * (c - a);
      f1 = loss_of_b(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (c - a);
      f2 = loss_of_b(x2);
    }
  }
  return {std::move(w), 0.5 * (a + c)};
}

Cut make_cut(const DualSolution& sol, const SupportMask& s) {
  Cut cut;
  cut.coeffs = sol.grad;
  cut.origin_support = s;
  double gs = 0.0;
  for (int j = 0; j < s.p(); ++j)
    if (s.bits[j]) gs += sol.grad[j];
  cut.intercept = sol.objective - gs;
  return cut;
}

}  // namespace sparseclf
