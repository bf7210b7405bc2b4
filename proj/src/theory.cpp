#include "sparseclf/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sparseclf {

using std::numbers::pi;

void TheoryParams::check() const {
  if (k < 1 || k > p) throw std::invalid_argument("need 1 <= k <= p");
  if (ell < 0 || ell > k) throw std::invalid_argument("need 0 <= ell <= k");
  if (sigma2 < 0.0) throw std::invalid_argument("sigma2 must be nonnegative");
}

double orthant2(double rho) {
  if (std::abs(rho) > 1.0) throw std::invalid_argument("|rho| must be <= 1");
  return (pi / 2.0 + std::asin(rho)) / (2.0 * pi);
}

double orthant3(double rho12, double rho13, double rho23) {
  for (double r : {rho12, rho13, rho23})
    if (std::abs(r) > 1.0) throw std::invalid_argument("|rho| must be <= 1");
  // PSD of the 3x3 correlation matrix via its determinant (2x2 minors are
  // covered by |rho| <= 1)
  const double det = 1.0 + 2.0 * rho12 * rho13 * rho23 - rho12 * rho12 - rho13 * rho13 -
                     rho23 * rho23;
  if (det < -1e-12) throw std::invalid_argument("correlation matrix is not PSD");
  return (pi / 2.0 + std::asin(rho12) + std::asin(rho13) + std::asin(rho23)) / (4.0 * pi);
}

double disagreement_prob(const std::vector<double>& w, const std::vector<double>& w_prime,
                         double sigma) {
  if (w.size() != w_prime.size()) throw std::invalid_argument("length mismatch");
  double nw = 0.0, nwp = 0.0, dot = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    nw += w[j] * w[j];
    nwp += w_prime[j] * w_prime[j];
    dot += w[j] * w_prime[j];
  }
  if (nw == 0.0) throw std::invalid_argument("w must be nonzero");
  const double c = dot / (std::sqrt(nw) * std::sqrt(nwp + sigma * sigma));
  return std::acos(std::clamp(c, -1.0, 1.0)) / pi;
}

double q_of_ell(const TheoryParams& params) {
  params.check();
  const double k = params.k;
  const double arg = params.ell / std::sqrt(k * (k + params.sigma2));
  return std::acos(std::clamp(arg, -1.0, 1.0)) / pi;
}

double exact_mean_z(const TheoryParams& params) {
  params.check();
  const double k = params.k;
  const double d = std::sqrt(k * (k + params.sigma2));
  return (std::acos(std::clamp(params.ell / d, -1.0, 1.0)) -
          std::acos(std::clamp(k / d, -1.0, 1.0))) /
         pi;
}

double mean_z_lower_bound(const TheoryParams& params) {
  params.check();
  if (params.ell >= params.k) throw std::invalid_argument("bound requires ell < k");
  const double k = params.k;
  const double ell = params.ell;
  return (k - ell) / (pi * std::sqrt(k * (k + params.sigma2) - ell * ell));
}

double large_dev_bound(long n, const TheoryParams& params) {
  params.check();
  if (params.ell >= params.k) throw std::invalid_argument("bound requires ell < k");
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  const double k = params.k;
  const double ell = params.ell;
  const double num = (k - ell) * (k - ell);
  const double den = 2.0 * pi * pi * (k * (k + params.sigma2) - ell * ell);
  return std::exp(-static_cast<double>(n) * num / den);
}

long n0_threshold(int k, int p, double sigma2) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (p < 2 * k) throw std::invalid_argument("threshold requires p >= 2k");
  if (sigma2 < 0.0) throw std::invalid_argument("sigma2 must be nonnegative");
  const double v = 6.0 * pi * pi * (2.0 + sigma2) * k * std::log(static_cast<double>(p - k));
  return static_cast<long>(std::ceil(v));
}

double failure_tail(long n, int k, int p, double sigma2) {
  const long n0 = n0_threshold(k, p, sigma2);
  if (n < n0) throw std::invalid_argument("tail bound requires n >= n0");
  const double m = static_cast<double>(n - n0);
  return std::exp(-m / (2.0 * pi * pi * k * (sigma2 + 2.0)));
}

namespace {

int sign_pm1(double v) { return v > 0.0 ? 1 : -1; }

long errors_of_support(const Dataset& data, const std::vector<int>& idx) {
  long bad = 0;
  for (int i = 0; i < data.n; ++i) {
    double m = 0.0;
    const double* row = data.x.data() + static_cast<std::size_t>(i) * data.p;
    for (int j : idx) m += row[j];
    if (sign_pm1(m) != data.y[i]) ++bad;
  }
  return bad;
}

}  // namespace

SupportMask brute_force_min(const Dataset& data, int k) {
  data.validate();
  if (k < 1 || k > data.p) throw std::invalid_argument("k out of range");
  double combos = 1.0;
  for (int m = 1; m <= k; ++m) combos *= static_cast<double>(data.p - m + 1) / m;
  if (combos > 1e6) throw std::invalid_argument("enumeration guard exceeded (C(p,k) > 1e6)");

  std::vector<int> idx(k);
  for (int m = 0; m < k; ++m) idx[m] = m;
  std::vector<int> best_idx = idx;
  long best_err = errors_of_support(data, idx);
  // lexicographic enumeration; first minimizer wins ties
  while (true) {
    int m = k - 1;
    while (m >= 0 && idx[m] == data.p - k + m) --m;
    if (m < 0) break;
    ++idx[m];
    for (int t = m + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    const long err = errors_of_support(data, idx);
    if (err < best_err) {
      best_err = err;
      best_idx = idx;
    }
  }
  SupportMask s(data.p, k);
  for (int j : best_idx) s.bits[j] = 1;
  return s;
}

DeltaStat delta_stat(const Dataset& data, const std::vector<std::uint8_t>& w1,
                     const std::vector<std::uint8_t>& w2) {
  if (static_cast<int>(w1.size()) != data.p || static_cast<int>(w2.size()) != data.p)
    throw std::invalid_argument("length mismatch");
  DeltaStat st;
  for (int i = 0; i < data.n; ++i) {
    double m1 = 0.0, m2 = 0.0;
    const double* row = data.x.data() + static_cast<std::size_t>(i) * data.p;
    for (int j = 0; j < data.p; ++j) {
      if (w1[j]) m1 += row[j];
      if (w2[j]) m2 += row[j];
    }
    const int bad1 = sign_pm1(m1) != data.y[i];
    const int bad2 = sign_pm1(m2) != data.y[i];
    const int z = bad1 - bad2;
    if (z > 0) ++st.z_plus;
    else if (z < 0) ++st.z_minus;
    else ++st.z_zero;
  }
  st.value = static_cast<double>(st.z_plus - st.z_minus) / data.n;
  return st;
}

namespace {

McEstimate binomial_estimate(long hits, long samples) {
  McEstimate e;
  e.samples = samples;
  e.estimate = static_cast<double>(hits) / samples;
  e.stderr_ = std::sqrt(std::max(e.estimate * (1.0 - e.estimate), 1e-300) / samples);
  return e;
}

}  // namespace

McEstimate mc_orthant2(double rho, long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double c = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    const double z1 = normal(rng), z2 = normal(rng);
    if (z1 >= 0.0 && rho * z1 + c * z2 >= 0.0) ++hits;
  }
  return binomial_estimate(hits, samples);
}

McEstimate mc_orthant3(double rho12, double rho13, double rho23, long samples,
                       std::uint64_t seed) {
  // Cholesky factor of the correlation matrix
  const double l21 = rho12;
  const double l22 = std::sqrt(std::max(0.0, 1.0 - rho12 * rho12));
  const double l31 = rho13;
  const double l32 = l22 > 0.0 ? (rho23 - rho12 * rho13) / l22 : 0.0;
  const double l33 = std::sqrt(std::max(0.0, 1.0 - l31 * l31 - l32 * l32));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    const double z1 = normal(rng), z2 = normal(rng), z3 = normal(rng);
    const double n1 = z1;
    const double n2 = l21 * z1 + l22 * z2;
    const double n3 = l31 * z1 + l32 * z2 + l33 * z3;
    if (n1 >= 0.0 && n2 >= 0.0 && n3 >= 0.0) ++hits;
  }
  return binomial_estimate(hits, samples);
}

McEstimate mc_disagreement(const std::vector<double>& w, const std::vector<double>& w_prime,
                           double sigma, long samples, std::uint64_t seed) {
  if (w.size() != w_prime.size()) throw std::invalid_argument("length mismatch");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double x = normal(rng);
      m1 += x * w[j];
      m2 += x * w_prime[j];
    }
    m2 += sigma * normal(rng);
    if (sign_pm1(m1) != sign_pm1(m2)) ++hits;
  }
  return binomial_estimate(hits, samples);
}

McEstimate mc_mean_z(const TheoryParams& params, long samples, std::uint64_t seed) {
  params.check();
  // w and w_star share ell coordinates; remaining k - ell each are disjoint
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double sd = std::sqrt(params.sigma2);
  const int k = params.k, ell = params.ell;
  long sum = 0;
  double sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    double shared = 0.0, only_w = 0.0, only_star = 0.0;
    for (int j = 0; j < ell; ++j) shared += normal(rng);
    for (int j = 0; j < k - ell; ++j) only_w += normal(rng);
    for (int j = 0; j < k - ell; ++j) only_star += normal(rng);
    const double mw = shared + only_w;
    const double mstar = shared + only_star;
    const int y = sign_pm1(mstar + sd * normal(rng));
    const int z = (sign_pm1(mw) != y) - (sign_pm1(mstar) != y);
    sum += z;
    sq += static_cast<double>(z) * z;
  }
  McEstimate e;
  e.samples = samples;
  e.estimate = static_cast<double>(sum) / samples;
  const double var = sq / samples - e.estimate * e.estimate;
  e.stderr_ = std::sqrt(std::max(var, 1e-300) / samples);
  return e;
}

}  // namespace sparseclf
