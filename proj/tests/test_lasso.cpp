#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "sparseclf/datagen.hpp"
#include "sparseclf/lasso.hpp"

using namespace sparseclf;

namespace {

Dataset planted(int n, int p, std::uint64_t seed) {
  SyntheticConfig cfg;
  cfg.n = n;
  cfg.p = p;
  cfg.k_true = std::min(3, p);
  cfg.seed = seed;
  for (int tries = 0; tries < 32; ++tries) {
    auto inst = generate(cfg);
    if (!inst.single_class) return inst.data;
    ++cfg.seed;
  }
  throw std::runtime_error("could not draw a two-class instance");
}

double logistic_l1_objective(const Dataset& d, const std::vector<double>& w, double b,
                             double lambda) {
  double v = 0.0;
  for (int i = 0; i < d.n; ++i) {
    double m = b;
    for (int j = 0; j < d.p; ++j) m += d.at(i, j) * w[j];
    double t = -d.y[i] * m;
    v += t > 30.0 ? t : std::log1p(std::exp(t));
  }
  for (double wj : w) v += lambda * std::fabs(wj);
  return v;
}

double svm_l1_objective(const Dataset& d, const std::vector<double>& w, double b,
                        double lambda) {
  double v = 0.0;
  for (int i = 0; i < d.n; ++i) {
    double m = b;
    for (int j = 0; j < d.p; ++j) m += d.at(i, j) * w[j];
    v += std::max(0.0, 1.0 - d.y[i] * m);
  }
  for (double wj : w) v += lambda * std::fabs(wj);
  return v;
}

}  // namespace

TEST_CASE("lambda above lambda_max gives the all-zero solution") {
  Dataset d = planted(60, 8, 7);
  double lmax = lambda_max(d);
  auto fit = fit_lasso_logistic(d, 1.01 * lmax);
  CHECK(fit.support_size == 0);
  for (double wj : fit.w) CHECK(std::fabs(wj) < 1e-7);
  // just below lambda_max at least one coordinate should activate
  auto fit2 = fit_lasso_logistic(d, 0.90 * lmax);
  CHECK(fit2.support_size >= 1);
}

TEST_CASE("logistic fit beats random coordinate perturbations") {
  Dataset d = planted(80, 10, 11);
  double lambda = 0.1 * lambda_max(d);
  auto fit = fit_lasso_logistic(d, lambda);
  REQUIRE(fit.converged);
  double obj = logistic_l1_objective(d, fit.w, fit.b, lambda);
  CHECK(fit.objective == doctest::Approx(obj).epsilon(1e-8));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    auto w = fit.w;
    double b = fit.b;
    double scale = (t % 2 == 0) ? 1e-3 : 0.1;
    for (double& wj : w) wj += scale * nd(rng);
    b += scale * nd(rng);
    CHECK(logistic_l1_objective(d, w, b, lambda) >= obj - 1e-7 * (1.0 + std::fabs(obj)));
  }
}

TEST_CASE("logistic fit satisfies subgradient stationarity") {
  Dataset d = planted(70, 9, 23);
  double lambda = 0.05 * lambda_max(d);
  auto fit = fit_lasso_logistic(d, lambda, {.tol = 1e-8, .max_iter = 200000});
  // gradient of the smooth part
  std::vector<double> g(d.p, 0.0);
  double gb = 0.0;
  for (int i = 0; i < d.n; ++i) {
    double m = fit.b;
    for (int j = 0; j < d.p; ++j) m += d.at(i, j) * fit.w[j];
    double s = -d.y[i] / (1.0 + std::exp(d.y[i] * m));
    gb += s;
    for (int j = 0; j < d.p; ++j) g[j] += s * d.at(i, j);
  }
  CHECK(std::fabs(gb) < 1e-4);
  for (int j = 0; j < d.p; ++j) {
    if (std::fabs(fit.w[j]) > 1e-8) {
      CHECK(std::fabs(g[j] + lambda * (fit.w[j] > 0 ? 1.0 : -1.0)) < 1e-4);
    } else {
      CHECK(std::fabs(g[j]) <= lambda + 1e-4);
    }
  }
}

TEST_CASE("svm fit beats random coordinate perturbations") {
  Dataset d = planted(60, 8, 31);
  double lambda = 0.05 * lambda_max(d, Loss::hinge);
  auto fit = fit_lasso_svm(d, lambda);
  double obj = svm_l1_objective(d, fit.w, fit.b, lambda);
  // huber smoothing leaves a small bias; allow it in the comparison slack
  CHECK(fit.objective == doctest::Approx(obj).epsilon(5e-3));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    auto w = fit.w;
    double b = fit.b;
    double scale = (t % 2 == 0) ? 1e-2 : 0.2;
    for (double& wj : w) wj += scale * nd(rng);
    b += scale * nd(rng);
    CHECK(svm_l1_objective(d, w, b, lambda) >= obj - 5e-3 * (1.0 + std::fabs(obj)));
  }
}

TEST_CASE("lambda grid is strictly decreasing over four decades") {
  Dataset d = planted(50, 6, 41);
  auto grid = lambda_grid(d, 20);
  REQUIRE(grid.size() == 20);
  CHECK(grid.front() == doctest::Approx(lambda_max(d)));
  CHECK(grid.back() == doctest::Approx(1e-4 * lambda_max(d)).epsilon(1e-9));
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] < grid[i - 1]);
}

TEST_CASE("support size is monotone-ish along the path and hits p at tiny lambda") {
  Dataset d = planted(120, 6, 53);
  auto dense = fit_lasso_logistic(d, 1e-6 * lambda_max(d), {.tol = 1e-7, .max_iter = 100000});
  CHECK(dense.support_size == d.p);
  CHECK(count_support(dense.w) == d.p);
}

TEST_CASE("count_support uses a relative threshold") {
  std::vector<double> w = {1.0, 1e-12, -0.5, 0.0};
  CHECK(count_support(w) == 2);
  std::vector<double> z(4, 0.0);
  CHECK(count_support(z) == 0);
}

TEST_CASE("invalid inputs are rejected") {
  Dataset d = planted(30, 4, 61);
  CHECK_THROWS(fit_lasso_logistic(d, -1.0));
  CHECK_THROWS(fit_lasso_svm(d, -0.5));
  CHECK_THROWS(lambda_grid(d, 1));
}
