#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "sparseclf/master.hpp"

using namespace sparseclf;

namespace {

Cut make_random_cut(int p, std::mt19937_64& rng) {
  Cut c;
  std::uniform_real_distribution<double> ua(-5.0, 5.0);
  std::uniform_real_distribution<double> ug(-3.0, 0.0);
  c.intercept = ua(rng);
  c.coeffs.resize(p);
  for (double& g : c.coeffs) g = ug(rng);
  c.origin_support = SupportMask(p, p);
  return c;
}

// Exhaustive min of max-cut over all supports with |s| <= k.
std::pair<std::vector<std::uint8_t>, double> enumerate_opt(const CutPool& pool, int k) {
  const int p = pool.p;
  std::vector<std::uint8_t> best;
  double best_v = kInf;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    if (std::popcount(mask) > k) continue;
    std::vector<std::uint8_t> s(p, 0);
    for (int j = 0; j < p; ++j)
      if (mask & (1u << j)) s[j] = 1;
    const double v = pool.value(s);
    if (v < best_v) {
      best_v = v;
      best = s;
    }
  }
  return {best, best_v};
}

}  // namespace

TEST_CASE("single_cut_min hand example and trivial cases") {
  Cut c;
  c.intercept = 5.0;
  c.coeffs = {-3.0, -1.0, -2.0, 0.0};
  CHECK(single_cut_min(c, 2, {}, {}) == doctest::Approx(0.0));  // take coords 0 and 2

  Cut zero;
  zero.intercept = 2.5;
  zero.coeffs = {0.0, 0.0, 0.0};
  CHECK(single_cut_min(zero, 2, {}, {}) == doctest::Approx(2.5));

  CHECK(single_cut_min(c, 4, {}, {}) == doctest::Approx(5.0 - 6.0));  // k = p

  // fixings are respected
  CHECK(single_cut_min(c, 2, {3}, {}) == doctest::Approx(5.0 + 0.0 - 3.0));
  CHECK(single_cut_min(c, 2, {}, {0}) == doctest::Approx(5.0 - 2.0 - 1.0));
  CHECK_THROWS(single_cut_min(c, 1, {0, 1}, {}));
  CHECK_THROWS(single_cut_min(c, 2, {0}, {0}));
}

TEST_CASE("single_cut_min agrees with enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Cut c = make_random_cut(6, rng);
    CutPool pool;
    pool.add(c);
    auto [s, v] = enumerate_opt(pool, 3);
    CHECK(single_cut_min(c, 3, {}, {}) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("node_lower_bound degenerate pools") {
  std::mt19937_64 rng(9);
  Cut c = make_random_cut(5, rng);
  CutPool pool;
  pool.add(c);
  BnBNode node;
  CHECK(node_lower_bound(pool, node, 2, 50) == doctest::Approx(single_cut_min(c, 2, {}, {})));
  pool.add(c);  // identical second cut
  CHECK(node_lower_bound(pool, node, 2, 50) == doctest::Approx(single_cut_min(c, 2, {}, {})));
}

TEST_CASE("node_lower_bound never exceeds the enumerated node optimum") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    CutPool pool;
    pool.p = 8;
    const int ncuts = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < ncuts; ++i) pool.add(make_random_cut(8, rng));
    BnBNode node;
    auto [s, v] = enumerate_opt(pool, 3);
    const double lb = node_lower_bound(pool, node, 3, 50);
    CHECK(lb <= v + 1e-9);
  }
}

TEST_CASE("solve_master matches enumeration on random pools") {
  std::mt19937_64 rng(33);
  for (int seed = 0; seed < 100; ++seed) {
    CutPool pool;
    pool.p = 10;
    const int ncuts = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < ncuts; ++i) pool.add(make_random_cut(10, rng));
    auto [s_opt, v_opt] = enumerate_opt(pool, 3);
    auto ms = solve_master(pool, 3, std::nullopt);
    CHECK(ms.optimal);
    CHECK(ms.eta == doctest::Approx(v_opt).epsilon(1e-9));
    CHECK(pool.value(ms.s.bits) == doctest::Approx(v_opt).epsilon(1e-9));
    CHECK(ms.s.count() <= 3);
  }
}

TEST_CASE("single-cut pool returns the greedy selection") {
  std::mt19937_64 rng(41);
  Cut c = make_random_cut(7, rng);
  CutPool pool;
  pool.add(c);
  auto ms = solve_master(pool, 3, std::nullopt);
  CHECK(ms.eta == doctest::Approx(single_cut_min(c, 3, {}, {})).epsilon(1e-12));
}

TEST_CASE("dominated cuts leave the optimum unchanged") {
  std::mt19937_64 rng(47);
  CutPool pool;
  pool.p = 8;
  for (int i = 0; i < 5; ++i) pool.add(make_random_cut(8, rng));
  auto before = solve_master(pool, 3, std::nullopt);
  Cut dom = pool.cuts[0];
  dom.intercept -= 1.0;  // pointwise below an existing cut
  pool.add(dom);
  auto after = solve_master(pool, 3, std::nullopt);
  CHECK(after.eta == doctest::Approx(before.eta).epsilon(1e-12));
}

TEST_CASE("determinism: identical pools give identical solutions") {
  std::mt19937_64 rng(53);
  CutPool pool;
  pool.p = 12;
  for (int i = 0; i < 10; ++i) pool.add(make_random_cut(12, rng));
  auto a = solve_master(pool, 4, std::nullopt);
  auto b = solve_master(pool, 4, std::nullopt);
  CHECK(a.s.bits == b.s.bits);
  CHECK(a.eta == b.eta);
  CHECK(a.nodes_explored == b.nodes_explored);
}

TEST_CASE("warm incumbent does not change the optimum") {
  std::mt19937_64 rng(59);
  CutPool pool;
  pool.p = 10;
  for (int i = 0; i < 8; ++i) pool.add(make_random_cut(10, rng));
  auto cold = solve_master(pool, 3, std::nullopt);
  auto warm = solve_master(pool, 3, cold);
  CHECK(warm.eta == doctest::Approx(cold.eta).epsilon(1e-12));
}

TEST_CASE("node limit produces a flagged incumbent") {
  std::mt19937_64 rng(61);
  CutPool pool;
  pool.p = 14;
  for (int i = 0; i < 15; ++i) pool.add(make_random_cut(14, rng));
  MasterOptions opts;
  opts.node_limit = 1;
  auto ms = solve_master(pool, 5, std::nullopt, opts);
  if (!ms.optimal) {
    CHECK(ms.proof_gap >= 0.0);
    CHECK(ms.s.count() <= 5);
  }
}
