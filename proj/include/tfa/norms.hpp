// Mixed-norm, modulation, Fourier-modulation and Wiener amalgam quasi-norms.
//
// Sums carry Riemann factors so that lattice norms approximate the continuum
// ones: an L^p sum over a grid of spacing h is (h^d sum |a|^p)^{1/p}.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tfa/exponent.hpp"
#include "tfa/fourier.hpp"
#include "tfa/lattice.hpp"
#include "tfa/stft.hpp"
#include "tfa/weight.hpp"

namespace tfa {

// Accumulates (sum c |a|^p)^{1/p}, or max |a| for p = inf.
class LpAccumulator {
 public:
  explicit LpAccumulator(const ExtendedExponent& p) : inf_(p.is_infinite()), p_(inf_ ? 0.0 : p.value()) {}

  void add(double magnitude, double cell = 1.0) {
    if (!std::isfinite(magnitude)) throw std::invalid_argument("non-finite entry in norm");
    if (inf_)
      acc_ = std::max(acc_, magnitude);
    else if (magnitude != 0.0)
      acc_ += std::pow(magnitude, p_) * cell;
  }

  double result() const {
    if (inf_ || acc_ == 0.0) return acc_;
    return std::pow(acc_, 1.0 / p_);
  }

 private:
  bool inf_;
  double p_;
  double acc_ = 0.0;
};

// ( sum_o ( sum_i |a(o,i)|^p c_in )^{q/p} c_out )^{1/q}; entry(o, i) returns
// the weighted magnitude |a| w.
template <class Entry>
double mixed_lpq(Entry&& entry, std::size_t n_outer, std::size_t n_inner, const ExtendedExponent& p,
                 const ExtendedExponent& q, double inner_cell = 1.0, double outer_cell = 1.0) {
  LpAccumulator outer(q);
  for (std::size_t o = 0; o < n_outer; ++o) {
    LpAccumulator inner(p);
    for (std::size_t i = 0; i < n_inner; ++i) inner.add(entry(o, i), inner_cell);
    outer.add(inner.result(), outer_cell);
  }
  return outer.result();
}

struct MixedNormSpec {
  ExtendedExponent p, q;
  SeparableWeight weight;
  int inner_dims = 1;
  int outer_dims = 1;
};

// Dense array on the box origin + [0, extents), row-major with the inner axes
// first and the outer axes last.
struct MixedArray {
  std::vector<std::int64_t> extents;
  std::vector<std::int64_t> origin;
  std::vector<cplx> values;
};

inline double mixed_norm(const MixedArray& a, const MixedNormSpec& spec) {
  const auto dims = static_cast<int>(a.extents.size());
  if (dims != spec.inner_dims + spec.outer_dims)
    throw std::invalid_argument("array rank does not match inner_dims + outer_dims");
  if (!a.origin.empty() && a.origin.size() != a.extents.size())
    throw std::invalid_argument("origin rank mismatch");
  if (spec.weight.dim() != static_cast<std::size_t>(dims)) throw std::invalid_argument("weight dimension mismatch");
  std::size_t n_inner = 1, n_outer = 1;
  for (int i = 0; i < spec.inner_dims; ++i) n_inner *= static_cast<std::size_t>(a.extents[i]);
  for (int i = spec.inner_dims; i < dims; ++i) n_outer *= static_cast<std::size_t>(a.extents[i]);
  if (a.values.size() != n_inner * n_outer) throw std::invalid_argument("array size does not match extents");
  const bool trivial = spec.weight.is_trivial();
  std::vector<double> z(static_cast<std::size_t>(dims));
  auto entry = [&](std::size_t o, std::size_t i) {
    const std::size_t flat = i * n_outer + o;
    double mag = std::abs(a.values[flat]);
    if (trivial || mag == 0.0) return mag;
    std::size_t t = flat;
    for (int ax = dims; ax-- > 0;) {
      auto e = static_cast<std::size_t>(a.extents[ax]);
      z[ax] = static_cast<double>(static_cast<std::int64_t>(t % e) + (a.origin.empty() ? 0 : a.origin[ax]));
      t /= e;
    }
    return mag * spec.weight(z);
  };
  return mixed_lpq(entry, n_outer, n_inner, spec.p, spec.q);
}

// Riemann L^p norm of a lattice signal.
inline double lp_norm(const LatticeSignal& f, const ExtendedExponent& p) {
  LpAccumulator acc(p);
  const double cell = f.grid().cell_volume();
  for (const auto& v : f.values()) acc.add(std::abs(v), cell);
  return acc.result();
}

// e^{-pi |x|^2} sampled at centered physical coordinates.
inline LatticeSignal gaussian_window(const Grid& g) {
  return LatticeSignal::sample(g, [](const std::vector<double>& x) {
    double r2 = 0;
    for (double v : x) r2 += v * v;
    return std::exp(-std::numbers::pi * r2);
  });
}

// Centered physical coordinate of every lattice index of a grid, per axis.
inline std::vector<double> physical_coords(const Grid& g, const Point& k) {
  std::vector<double> x(k.size());
  for (std::size_t a = 0; a < k.size(); ++a) x[a] = g.alpha * static_cast<double>(centered(k[a], g.N));
  return x;
}

// Mixed norm of an STFT array, x inner (L^p) and xi outer (L^q), weight at
// physical coordinates (x, xi).
inline double stft_mixed_norm(const StftArray& V, const ExtendedExponent& p, const ExtendedExponent& q,
                              const SeparableWeight& w, double x_spacing, double xi_spacing) {
  const std::size_t side = V.side();
  const bool trivial = w.is_trivial();
  if (!trivial && w.dim() != static_cast<std::size_t>(2 * V.dims))
    throw std::invalid_argument("weight dimension must be twice the signal dimension");
  std::vector<double> z(static_cast<std::size_t>(2 * V.dims));
  auto entry = [&](std::size_t o, std::size_t i) {
    double mag = std::abs(V.at(i, o));
    if (trivial || mag == 0.0) return mag;
    Point x = multi_index(i, V.dims, V.N), xi = multi_index(o, V.dims, V.N);
    for (int a = 0; a < V.dims; ++a) {
      z[a] = x_spacing * static_cast<double>(centered(x[a], V.N));
      z[V.dims + a] = xi_spacing * static_cast<double>(centered(xi[a], V.N));
    }
    return mag * w(z);
  };
  return mixed_lpq(entry, side, side, p, q, V.x_cell, V.xi_cell);
}

inline void require_nonzero_window(const LatticeSignal& w) {
  if (w.is_zero()) throw std::invalid_argument("window is identically zero");
}

// || V_window f ||_{L^{p,q}_w}
inline double modulation_norm(const LatticeSignal& f, const LatticeSignal& window, const ExtendedExponent& p,
                              const ExtendedExponent& q, const SeparableWeight& w) {
  require_nonzero_window(window);
  StftArray V = stft(f, window);
  return stft_mixed_norm(V, p, q, w, f.alpha(), f.grid().dual_alpha());
}

inline double modulation_norm(const LatticeSignal& f, const LatticeSignal& window, const ExtendedExponent& p,
                              const ExtendedExponent& q) {
  return modulation_norm(f, window, p, q, SeparableWeight::trivial(static_cast<std::size_t>(2 * f.d())));
}

// Mixed norm of (x, xi) -> V_window f(xi, -x); equals the modulation norm of
// idft(f) with window idft(window).
inline double fourier_modulation_norm(const LatticeSignal& f, const LatticeSignal& window, const ExtendedExponent& p,
                                      const ExtendedExponent& q, const SeparableWeight& w) {
  require_nonzero_window(window);
  StftArray V = stft(f, window);
  const int d = f.d();
  const std::size_t side = V.side();
  // G(x, xi) = V(xi, -x): x runs over negated frequencies, xi over time.
  StftArray G;
  G.dims = d;
  G.N = V.N;
  G.x_cell = V.xi_cell;
  G.xi_cell = V.x_cell;
  G.values.resize(V.values.size());
  Point mn(d);
  for (std::size_t nf = 0; nf < side; ++nf) {
    Point n = multi_index(nf, d, V.N);
    for (int a = 0; a < d; ++a) mn[a] = -n[a];
    const std::size_t row = flat_index(mn, V.N) * side;
    for (std::size_t xf = 0; xf < side; ++xf) G.values[row + xf] = V.at(xf, nf);
  }
  return stft_mixed_norm(G, p, q, w, f.grid().dual_alpha(), f.alpha());
}

inline double fourier_modulation_norm(const LatticeSignal& f, const LatticeSignal& window, const ExtendedExponent& p,
                                      const ExtendedExponent& q) {
  return fourier_modulation_norm(f, window, p, q, SeparableWeight::trivial(static_cast<std::size_t>(2 * f.d())));
}

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
inline double smooth_step(double u) {
  if (u <= 0) return 0.0;
  if (u >= 1) return 1.0;
  auto psi = [](double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; };
  double a = psi(u), b = psi(1.0 - u);
  return a / (a + b);
}

// Profile equal to 1 on |y| <= 1/2 and 0 for |y| >= 3/4, in cell units.
inline double partition_profile(double y) { return 1.0 - smooth_step((std::abs(y) - 0.5) * 4.0); }

// Smooth periodic partition of unity sigma_l = rho_l / sum rho over cells of
// `step` samples.
class PartitionOfUnity {
 public:
  PartitionOfUnity(const Grid& grid, std::int64_t step) : grid_(grid), step_(step) {
    if (step < 1 || grid.N % step != 0) throw std::invalid_argument("partition step must divide N");
    cells_ = grid.N / step;
    // Per-axis weights: sigma(k) is a product over axes of the 1-D partition.
    axis_.assign(static_cast<std::size_t>(cells_ * grid.N), 0.0);
    std::vector<double> total(static_cast<std::size_t>(grid.N), 0.0);
    for (std::int64_t l = 0; l < cells_; ++l)
      for (std::int64_t k = 0; k < grid.N; ++k) {
        double y = static_cast<double>(centered(k - l * step, grid.N)) / static_cast<double>(step);
        double v = partition_profile(y);
        axis_[static_cast<std::size_t>(l * grid.N + k)] = v;
        total[static_cast<std::size_t>(k)] += v;
      }
    for (std::int64_t l = 0; l < cells_; ++l)
      for (std::int64_t k = 0; k < grid.N; ++k) axis_[static_cast<std::size_t>(l * grid.N + k)] /= total[k];
  }

  // One physical unit per cell where 1/alpha divides N; else the nearest
  // power-of-two divisor of N.
  static std::int64_t default_step(const Grid& g) {
    double ideal = 1.0 / g.alpha;
    auto r = static_cast<std::int64_t>(std::llround(ideal));
    if (r >= 1 && std::abs(ideal - static_cast<double>(r)) < 1e-9 && g.N % r == 0) return r;
    std::int64_t best = 1;
    for (std::int64_t s = 1; s <= g.N; s *= 2)
      if (g.N % s == 0 && std::abs(std::log(static_cast<double>(s) / ideal)) <
                              std::abs(std::log(static_cast<double>(best) / ideal)))
        best = s;
    return best;
  }

  static PartitionOfUnity for_grid(const Grid& g) { return PartitionOfUnity(g, default_step(g)); }

  const Grid& grid() const { return grid_; }
  std::int64_t step() const { return step_; }
  std::int64_t cells_per_axis() const { return cells_; }
  std::size_t cell_count() const { return ipow(static_cast<std::size_t>(cells_), static_cast<std::size_t>(grid_.d)); }

  // sigma_l(k) for multi-indices l (cell) and k (sample).
  double operator()(const Point& l, const Point& k) const {
    double v = 1.0;
    for (std::size_t a = 0; a < l.size(); ++a)
      v *= axis_[static_cast<std::size_t>(wrap(l[a], cells_) * grid_.N + wrap(k[a], grid_.N))];
    return v;
  }

 private:
  Grid grid_;
  std::int64_t step_;
  std::int64_t cells_ = 1;
  std::vector<double> axis_;
};

// ( sum_l ||sigma_l f||_p^q mu(l)^q )^{1/q}; mu is evaluated at the centered cell index.
inline double wiener_amalgam_norm(const LatticeSignal& f, const PartitionOfUnity& part, const ExtendedExponent& p,
                                  const ExtendedExponent& q, const SeparableWeight& mu) {
  require_same_grid(f.grid(), part.grid(), "wiener amalgam norm");
  const Grid& g = f.grid();
  const bool trivial = mu.is_trivial();
  if (!trivial && mu.dim() != static_cast<std::size_t>(g.d)) throw std::invalid_argument("weight dimension mismatch");
  LpAccumulator outer(q);
  std::vector<double> lc(g.d);
  for (std::size_t lf = 0; lf < part.cell_count(); ++lf) {
    Point l = multi_index(lf, g.d, part.cells_per_axis());
    LpAccumulator inner(p);
    for (std::size_t kf = 0; kf < g.size(); ++kf) {
      const cplx v = f[kf];
      if (v == cplx{}) continue;
      double s = part(l, multi_index(kf, g.d, g.N));
      if (s != 0.0) inner.add(std::abs(v) * s, g.cell_volume());
    }
    double w = 1.0;
    if (!trivial) {
      for (int a = 0; a < g.d; ++a) lc[a] = static_cast<double>(centered(l[a], part.cells_per_axis()));
      w = mu(lc);
    }
    outer.add(inner.result() * w);
  }
  return outer.result();
}

inline double wiener_amalgam_norm(const LatticeSignal& f, const PartitionOfUnity& part, const ExtendedExponent& p,
                                  const ExtendedExponent& q) {
  return wiener_amalgam_norm(f, part, p, q, SeparableWeight::trivial(static_cast<std::size_t>(f.d())));
}

}  // namespace tfa
