#include "sparseclf/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sparseclf {

namespace {

// Distinct streams per purpose so that e.g. changing n does not shift the truth.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
  std::seed_seq seq{seed, purpose};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kFeatures = 0xfea7;
constexpr std::uint64_t kTruth = 0x7207;
constexpr std::uint64_t kNoise = 0x401e;

}  // namespace

std::vector<double> gen_features(int n, int p, double rho, std::uint64_t seed) {
  if (rho < 0.0 || rho >= 1.0) throw std::invalid_argument("rho must be in [0,1)");
  auto rng = stream(seed, kFeatures);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n) * p);
  const double scale = std::sqrt(1.0 - rho * rho);
  for (int i = 0; i < n; ++i) {
    double prev = 0.0;
    for (int j = 0; j < p; ++j) {
      const double z = normal(rng);
      prev = (j == 0) ? z : rho * prev + scale * z;
      x[static_cast<std::size_t>(i) * p + j] = prev;
    }
  }
  // standardize columns: mean 0, population variance 1
  for (int j = 0; j < p; ++j) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += x[static_cast<std::size_t>(i) * p + j];
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
      double& v = x[static_cast<std::size_t>(i) * p + j];
      v -= mean;
      var += v * v;
    }
    var /= n;
    if (var > 0.0) {
      const double inv = 1.0 / std::sqrt(var);
      for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i) * p + j] *= inv;
    }
  }
  return x;
}

std::vector<double> gen_truth(int p, int k_true, TruthModel model, std::uint64_t seed) {
  if (k_true > p || k_true < 0) throw std::invalid_argument("k_true must be in [0,p]");
  auto rng = stream(seed, kTruth);
  std::vector<int> idx(p);
  for (int j = 0; j < p; ++j) idx[j] = j;
  // Fisher-Yates prefix of length k_true
  for (int m = 0; m < k_true; ++m) {
    std::uniform_int_distribution<int> pick(m, p - 1);
    std::swap(idx[m], idx[pick(rng)]);
  }
  std::vector<double> w(p, 0.0);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int m = 0; m < k_true; ++m)
    w[idx[m]] = (model == TruthModel::binary) ? 1.0 : (coin(rng) ? 1.0 : -1.0);
  return w;
}

SyntheticInstance generate(const SyntheticConfig& cfg) {
  if (cfg.n < 2 || cfg.p < 1) throw std::invalid_argument("need n >= 2 and p >= 1");
  SyntheticInstance inst;
  inst.data.n = cfg.n;
  inst.data.p = cfg.p;

  if (cfg.truth_model == TruthModel::binary) {
    // raw standard normals, no AR structure, no standardization
    auto rng = stream(cfg.seed, kFeatures);
    std::normal_distribution<double> normal(0.0, 1.0);
    inst.data.x.resize(static_cast<std::size_t>(cfg.n) * cfg.p);
    for (double& v : inst.data.x) v = normal(rng);
  } else {
    inst.data.x = gen_features(cfg.n, cfg.p, cfg.rho, cfg.seed);
  }
  inst.w_true = gen_truth(cfg.p, cfg.k_true, cfg.truth_model, cfg.seed);

  std::vector<double> margin(cfg.n, 0.0);
  for (int i = 0; i < cfg.n; ++i)
    for (int j = 0; j < cfg.p; ++j) margin[i] += inst.data.at(i, j) * inst.w_true[j];

  auto rng = stream(cfg.seed, kNoise);
  std::normal_distribution<double> normal(0.0, 1.0);
  inst.epsilon.assign(cfg.n, 0.0);
  if (cfg.truth_model == TruthModel::binary) {
    const double sd = std::sqrt(cfg.sigma2);
    for (double& e : inst.epsilon) e = sd * normal(rng);
    inst.achieved_snr = SyntheticConfig::kInfSnr;
  } else if (std::isinf(cfg.snr)) {
    inst.achieved_snr = SyntheticConfig::kInfSnr;
  } else {
    if (!(cfg.snr > 0.0)) throw std::invalid_argument("snr must be positive");
    for (double& e : inst.epsilon) e = normal(rng);
    double nx = 0.0, ne = 0.0;
    for (int i = 0; i < cfg.n; ++i) {
      nx += margin[i] * margin[i];
      ne += inst.epsilon[i] * inst.epsilon[i];
    }
    // rescale so the realized norm ratio hits sqrt(snr) exactly
    const double factor = (ne > 0.0) ? std::sqrt(nx / (cfg.snr * ne)) : 0.0;
    for (double& e : inst.epsilon) e *= factor;
    inst.achieved_snr = ne > 0.0 ? cfg.snr : SyntheticConfig::kInfSnr;
  }

  inst.data.y.resize(cfg.n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < cfg.n; ++i) {
    const double z = margin[i] + inst.epsilon[i];
    if (cfg.label_model == LabelModel::logistic && cfg.truth_model != TruthModel::binary) {
      const double prob_pos = 1.0 / (1.0 + std::exp(-z));
      inst.data.y[i] = unif(rng) < prob_pos ? 1 : -1;
    } else {
      inst.data.y[i] = z > 0.0 ? 1 : -1;  // sign(0) := -1
    }
  }
  inst.single_class = !inst.data.both_classes_present();
  for (int j = 0; j < cfg.p; ++j) inst.data.names.push_back("x" + std::to_string(j + 1));
  return inst;
}

}  // namespace sparseclf
