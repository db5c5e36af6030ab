// Separable polynomial weights w(z) = prod_i <z_i>^{s_i}, <z> = (1 + |z|^2)^{1/2}.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfa {

class SeparableWeight {
 public:
  // Trivial weight on an ambient space of dimension dim.
  static SeparableWeight trivial(std::size_t dim) { return SeparableWeight({dim}, {0.0}); }

  // Single-block weight <z>^s.
  static SeparableWeight bracket(std::size_t dim, double s) { return SeparableWeight({dim}, {s}); }

  SeparableWeight() : SeparableWeight({1}, {0.0}) {}

  SeparableWeight(std::vector<std::size_t> blocks, std::vector<double> s) : blocks_(std::move(blocks)), s_(std::move(s)) {
    if (blocks_.empty()) throw std::invalid_argument("weight needs at least one block");
    if (blocks_.size() != s_.size()) throw std::invalid_argument("weight needs one exponent per block");
    for (auto b : blocks_)
      if (b == 0) throw std::invalid_argument("weight block dimension must be positive");
    for (double v : s_)
      if (!std::isfinite(v)) throw std::invalid_argument("weight exponent must be finite");
  }

  const std::vector<std::size_t>& blocks() const { return blocks_; }
  const std::vector<double>& exponents() const { return s_; }
  std::size_t dim() const { return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0}); }

  bool is_trivial() const {
    for (double v : s_)
      if (v != 0.0) return false;
    return true;
  }

  template <class Vec>
  double operator()(const Vec& z) const {
    if (z.size() != dim())
      throw std::invalid_argument("weight expects a point of dimension " + std::to_string(dim()) + ", got " +
                                  std::to_string(z.size()));
    double w = 1.0;
    std::size_t off = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (s_[b] != 0.0) {
        double r2 = 0;
        for (std::size_t i = 0; i < blocks_[b]; ++i) {
          double v = static_cast<double>(z[off + i]);
          r2 += v * v;
        }
        w *= std::pow(1.0 + r2, 0.5 * s_[b]);
      }
      off += blocks_[b];
    }
    return w;
  }

  SeparableWeight inverse() const {
    std::vector<double> s(s_);
    for (auto& v : s) v = -v;
    return SeparableWeight(blocks_, s);
  }

  // Submultiplicative companion v(z) = <z>^{sum |s_i|} on the whole space.
  SeparableWeight moderating() const {
    double t = 0;
    for (double v : s_) t += std::abs(v);
    return bracket(dim(), t);
  }

 private:
  std::vector<std::size_t> blocks_;
  std::vector<double> s_;
};

template <class Vec>
double weight_eval(const SeparableWeight& w, const Vec& z) {
  return w(z);
}

}  // namespace tfa
