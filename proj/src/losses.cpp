#include "sparseclf/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparseclf {

Loss loss_from_string(const std::string& name) {
  if (name == "logistic") return Loss::logistic;
  if (name == "hinge") return Loss::hinge;
  if (name == "squared_hinge" || name == "squared-hinge") return Loss::squared_hinge;
  throw std::invalid_argument("unknown loss: " + name);
}

const char* loss_name(Loss kind) {
  switch (kind) {
    case Loss::logistic: return "logistic";
    case Loss::hinge: return "hinge";
    case Loss::squared_hinge: return "squared_hinge";
  }
  return "?";
}

static void check_label(int y) {
  if (y != 1 && y != -1) throw std::invalid_argument("label must be +1 or -1");
}

double loss_value(Loss kind, int y, double u) {
  check_label(y);
  if (!std::isfinite(u)) throw std::invalid_argument("non-finite margin score");
  const double m = y * u;
  switch (kind) {
    case Loss::logistic:
      // log(1+e^{-m}) computed stably for large |m|
      return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    case Loss::hinge:
      return std::max(0.0, 1.0 - m);
    case Loss::squared_hinge: {
      const double h = std::max(0.0, 1.0 - m);
      return 0.5 * h * h;
    }
  }
  return 0.0;
}

double conjugate_value(Loss kind, int y, double alpha) {
  check_label(y);
  const double t = y * alpha;
  switch (kind) {
    case Loss::logistic: {
      if (t < -1.0 || t > 0.0) return kInf;
      // (1+t)log(1+t) - t log(-t), with 0 log 0 = 0
      const double a = (1.0 + t > 0.0) ? (1.0 + t) * std::log(1.0 + t) : 0.0;
      const double b = (t < 0.0) ? -t * std::log(-t) : 0.0;
      return a + b;
    }
    case Loss::hinge:
      if (t < -1.0 || t > 0.0) return kInf;
      return t;
    case Loss::squared_hinge:
      if (t > 0.0) return kInf;
      return 0.5 * alpha * alpha + t;
  }
  return kInf;
}

double conjugate_grad(Loss kind, int y, double alpha, double edge) {
  check_label(y);
  switch (kind) {
    case Loss::logistic: {
      double t = y * alpha;
      t = std::clamp(t, -1.0 + edge, -edge);
      // d/dt [(1+t)log(1+t) - t log(-t)] = log(1+t) - log(-t)
      return y * (std::log1p(t) - std::log(-t));
    }
    case Loss::hinge:
      return static_cast<double>(y);
    case Loss::squared_hinge:
      return alpha + y;
  }
  return 0.0;
}

AlphaInterval conjugate_interval(Loss kind, int y) {
  check_label(y);
  switch (kind) {
    case Loss::logistic:
    case Loss::hinge:
      return y > 0 ? AlphaInterval{-1.0, 0.0} : AlphaInterval{0.0, 1.0};
    case Loss::squared_hinge:
      return y > 0 ? AlphaInterval{-kInf, 0.0} : AlphaInterval{0.0, kInf};
  }
  return {0.0, 0.0};
}

}  // namespace sparseclf
