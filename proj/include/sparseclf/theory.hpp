#ifndef SPARSECLF_THEORY_HPP
#define SPARSECLF_THEORY_HPP

#include <cstdint>
#include <vector>

#include "sparseclf/dataset.hpp"
#include "sparseclf/support.hpp"

namespace sparseclf {

struct TheoryParams {
  int k = 1;
  int p = 1;
  double sigma2 = 0.0;
  int ell = 0;  // accuracy level, 0..k

  void check() const;
};

struct DeltaStat {
  double value = 0.0;   // (count(+1) - count(-1)) / n
  long z_plus = 0;
  long z_minus = 0;
  long z_zero = 0;
};

// P(n1 >= 0, n2 >= 0) for standard bivariate normal with correlation rho.
double orthant2(double rho);

// Trivariate positive-orthant probability; rejects non-PSD correlations.
double orthant3(double rho12, double rho13, double rho23);

// P(sign(x^T w) != sign(x^T w' + eps)) for x ~ N(0, I), eps ~ N(0, sigma^2).
double disagreement_prob(const std::vector<double>& w, const std::vector<double>& w_prime,
                         double sigma);

// Disagreement probability of a k-sparse binary classifier with ell correct
// features against the noisy truth.
double q_of_ell(const TheoryParams& params);

double mean_z_lower_bound(const TheoryParams& params);  // requires ell < k
double exact_mean_z(const TheoryParams& params);
double large_dev_bound(long n, const TheoryParams& params);  // requires ell < k

// Sample-size threshold ceil(6 pi^2 (2 + sigma^2) k log(p - k)); requires p >= 2k.
long n0_threshold(int k, int p, double sigma2);

// exp(-(n - n0) / (2 pi^2 k (sigma^2 + 2))); requires n >= n0.
double failure_tail(long n, int k, int p, double sigma2);

// Enumerate all binary supports of size exactly k and return the minimizer of
// the empirical misclassification rate of sign(x^T w); lexicographic ties.
// Rejects instances with C(p,k) > 1e6.
SupportMask brute_force_min(const Dataset& data, int k);

DeltaStat delta_stat(const Dataset& data, const std::vector<std::uint8_t>& w1,
                     const std::vector<std::uint8_t>& w2);

// --- Monte Carlo validators ---------------------------------------------

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
};

McEstimate mc_orthant2(double rho, long samples, std::uint64_t seed);
McEstimate mc_orthant3(double rho12, double rho13, double rho23, long samples, std::uint64_t seed);
McEstimate mc_disagreement(const std::vector<double>& w, const std::vector<double>& w_prime,
                           double sigma, long samples, std::uint64_t seed);
// E[Z] where Z compares the errors of a classifier with ell correct features
// against the truth on fresh sign-model data.
McEstimate mc_mean_z(const TheoryParams& params, long samples, std::uint64_t seed);

}  // namespace sparseclf

#endif
