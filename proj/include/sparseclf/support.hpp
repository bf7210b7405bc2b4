#ifndef SPARSECLF_SUPPORT_HPP
#define SPARSECLF_SUPPORT_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sparseclf {

/// Binary selection vector s in {0,1}^p with at most k ones.
struct SupportMask {
  std::vector<std::uint8_t> bits;
  int k = 0;

  SupportMask() = default;
  SupportMask(int p, int k_) : bits(p, 0), k(k_) {}

  int p() const { return static_cast<int>(bits.size()); }
  int count() const { return std::accumulate(bits.begin(), bits.end(), 0); }

  std::vector<int> active() const {
    std::vector<int> idx;
    for (int j = 0; j < p(); ++j)
      if (bits[j]) idx.push_back(j);
    return idx;
  }

  void check() const {
    if (k < 1 || k > p()) throw std::invalid_argument("cardinality budget out of range");
    if (count() > k) throw std::invalid_argument("support exceeds cardinality budget");
  }

  bool operator==(const SupportMask& o) const { return bits == o.bits; }
};

}  // namespace sparseclf

#endif
