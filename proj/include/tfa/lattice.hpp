// Periodic lattice signals on (Z/NZ)^d with grid spacing alpha.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfa {

using cplx = std::complex<double>;
using Point = std::vector<std::int64_t>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// k mod N in [0, N).
inline std::int64_t wrap(std::int64_t k, std::int64_t N) {
  std::int64_t r = k % N;
  return r < 0 ? r + N : r;
}

// Representative of k mod N in [-N/2, N/2).
inline std::int64_t centered(std::int64_t k, std::int64_t N) {
  std::int64_t r = wrap(k, N);
  return r >= (N + 1) / 2 ? r - N : r;
}

inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

// e^{2 pi i k / N}, with k reduced first so large products stay accurate.
inline cplx unit_phase(std::int64_t k, std::int64_t N) {
  double t = kTwoPi * static_cast<double>(wrap(k, N)) / static_cast<double>(N);
  return {std::cos(t), std::sin(t)};
}

// Row-major flattening of a multi-index over an extent-N box, periodic in each axis.
inline std::size_t flat_index(const Point& k, std::int64_t N) {
  std::size_t idx = 0;
  for (auto v : k) idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(wrap(v, N));
  return idx;
}

inline Point multi_index(std::size_t flat, std::size_t dims, std::int64_t N) {
  Point k(dims);
  for (std::size_t i = dims; i-- > 0;) {
    k[i] = static_cast<std::int64_t>(flat % static_cast<std::size_t>(N));
    flat /= static_cast<std::size_t>(N);
  }
  return k;
}

struct Grid {
  int d = 1;
  std::int64_t N = 1;
  double alpha = 1.0;

  Grid() = default;
  Grid(int d_, std::int64_t N_, double alpha_ = 1.0) : d(d_), N(N_), alpha(alpha_) {
    if (d < 1) throw std::invalid_argument("grid dimension must be positive");
    if (N < 1) throw std::invalid_argument("grid period must be positive");
    if (!(alpha > 0) || !std::isfinite(alpha)) throw std::invalid_argument("grid spacing must be positive");
  }

  // alpha = N^{-1/2}, so that index phases k n / N equal physical phases x xi.
  static Grid balanced(int d, std::int64_t N) { return Grid(d, N, 1.0 / std::sqrt(static_cast<double>(N))); }

  std::size_t size() const { return ipow(static_cast<std::size_t>(N), static_cast<std::size_t>(d)); }
  double cell_volume() const { return std::pow(alpha, d); }
  // Spacing of the frequency grid dual to this one.
  double dual_alpha() const { return 1.0 / (alpha * static_cast<double>(N)); }
  Grid dual() const { return Grid(d, N, dual_alpha()); }

  bool same_as(const Grid& o, double rel = 1e-12) const {
    return d == o.d && N == o.N && std::abs(alpha - o.alpha) <= rel * std::max(alpha, o.alpha);
  }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!a.same_as(b)) throw std::invalid_argument(std::string("grid mismatch in ") + what);
}

class LatticeSignal {
 public:
  LatticeSignal() = default;

  explicit LatticeSignal(Grid grid) : grid_(grid), values_(grid.size(), cplx{}) {}

  LatticeSignal(Grid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
      throw std::invalid_argument("signal has " + std::to_string(values_.size()) + " values, grid needs " +
                                  std::to_string(grid_.size()));
    for (const auto& v : values_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("signal values must be finite");
  }

  // Samples fn at the physical point alpha * centered(k).
  template <class Fn>
  static LatticeSignal sample(Grid grid, Fn&& fn) {
    std::vector<cplx> v(grid.size());
    std::vector<double> x(grid.d);
    for (std::size_t i = 0; i < v.size(); ++i) {
      Point k = multi_index(i, grid.d, grid.N);
      for (int a = 0; a < grid.d; ++a) x[a] = grid.alpha * static_cast<double>(centered(k[a], grid.N));
      v[i] = cplx(fn(x));
    }
    return LatticeSignal(grid, std::move(v));
  }

  static LatticeSignal delta(Grid grid, const Point& at) {
    LatticeSignal s(grid);
    s.values_[flat_index(at, grid.N)] = 1.0;
    return s;
  }

  static LatticeSignal constant(Grid grid, cplx c) { return LatticeSignal(grid, std::vector<cplx>(grid.size(), c)); }

  const Grid& grid() const { return grid_; }
  int d() const { return grid_.d; }
  std::int64_t N() const { return grid_.N; }
  double alpha() const { return grid_.alpha; }
  std::size_t size() const { return values_.size(); }
  const std::vector<cplx>& values() const { return values_; }

  const cplx& operator[](std::size_t flat) const { return values_[flat]; }
  // Periodic access by multi-index.
  const cplx& at(const Point& k) const {
    if (static_cast<int>(k.size()) != grid_.d) throw std::invalid_argument("index dimension mismatch");
    return values_[flat_index(k, grid_.N)];
  }

  // Discrete L^2 norm with the alpha^d Riemann factor.
  double l2_norm() const {
    double s = 0;
    for (const auto& v : values_) s += std::norm(v);
    return std::sqrt(s * grid_.cell_volume());
  }

  // Plain l^2 norm of the sample vector.
  double sample_l2() const {
    double s = 0;
    for (const auto& v : values_) s += std::norm(v);
    return std::sqrt(s);
  }

  bool is_zero() const {
    for (const auto& v : values_)
      if (v != cplx{}) return false;
    return true;
  }

  LatticeSignal scaled(cplx c) const {
    std::vector<cplx> v(values_);
    for (auto& x : v) x *= c;
    return LatticeSignal(grid_, std::move(v));
  }

  friend LatticeSignal operator+(const LatticeSignal& a, const LatticeSignal& b) {
    require_same_grid(a.grid_, b.grid_, "signal addition");
    std::vector<cplx> v(a.values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values_[i];
    return LatticeSignal(a.grid_, std::move(v));
  }

  friend LatticeSignal operator-(const LatticeSignal& a, const LatticeSignal& b) { return a + b.scaled(-1.0); }

 private:
  Grid grid_{};
  std::vector<cplx> values_;
};

// Riemann inner product alpha^d sum f conj(g).
inline cplx inner(const LatticeSignal& f, const LatticeSignal& g) {
  require_same_grid(f.grid(), g.grid(), "inner product");
  cplx s{};
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
  return s * f.grid().cell_volume();
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch in residual");
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const LatticeSignal& a, const LatticeSignal& b) {
  return max_abs_diff(a.values(), b.values());
}

}  // namespace tfa
