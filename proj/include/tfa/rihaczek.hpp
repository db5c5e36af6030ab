// Multilinear Rihaczek distribution and Kohn-Nirenberg operators.
//
// R_m(g, f)(x, xi_1..xi_m) = g(x) conj(prod_j f^_j(xi_j)) e^{-2 pi i x.(sum xi_j)/N}
//
// Phase space is Z_N^{(m+1)d}: x carries the time spacing alpha, each xi_j the
// frequency spacing 1/(alpha N).

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "tfa/fourier.hpp"
#include "tfa/lattice.hpp"
#include "tfa/norms.hpp"
#include "tfa/stft.hpp"
#include "tfa/verdict.hpp"
#include "tfa/weight.hpp"

namespace tfa {

class PhaseSpaceSignal {
 public:
  PhaseSpaceSignal(int m, Grid grid, std::vector<cplx> values) : m_(m), grid_(grid), values_(std::move(values)) {
    if (m < 1) throw std::invalid_argument("phase space needs m >= 1");
    if (values_.size() != total_size())
      throw std::invalid_argument("phase-space signal needs N^{(m+1)d} = " + std::to_string(total_size()) + " values");
    for (const auto& v : values_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("phase-space values must be finite");
  }

  PhaseSpaceSignal(int m, Grid grid) : PhaseSpaceSignal(m, grid, std::vector<cplx>(size_for(m, grid))) {}

  // Samples fn(x_index, xi_indices) at every lattice point.
  template <class Fn>
  static PhaseSpaceSignal generate(int m, Grid grid, Fn&& fn) {
    std::vector<cplx> v(size_for(m, grid));
    const int dims = (m + 1) * grid.d;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(multi_index(i, static_cast<std::size_t>(dims), grid.N));
    return PhaseSpaceSignal(m, grid, std::move(v));
  }

  static std::size_t size_for(int m, const Grid& g) {
    return ipow(static_cast<std::size_t>(g.N), static_cast<std::size_t>((m + 1) * g.d));
  }

  int m() const { return m_; }
  const Grid& grid() const { return grid_; }
  int dims() const { return (m_ + 1) * grid_.d; }
  std::size_t total_size() const { return size_for(m_, grid_); }
  const std::vector<cplx>& values() const { return values_; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  const cplx& at(const Point& k) const { return values_[flat_index(k, grid_.N)]; }

  // Riemann measure of one phase-space sample: alpha^d (1/(alpha N))^{md}.
  double cell_volume() const { return grid_.cell_volume() * std::pow(grid_.dual().cell_volume(), m_); }

 private:
  int m_;
  Grid grid_;
  std::vector<cplx> values_;
};

inline void require_common_grid(const LatticeSignal& g, const std::vector<LatticeSignal>& fs, const char* what) {
  if (fs.empty()) throw std::invalid_argument(std::string(what) + " needs at least one f_j");
  for (const auto& f : fs) require_same_grid(g.grid(), f.grid(), what);
}

inline PhaseSpaceSignal rihaczek(const LatticeSignal& g, const std::vector<LatticeSignal>& fs) {
  require_common_grid(g, fs, "rihaczek");
  const Grid& gr = g.grid();
  const int m = static_cast<int>(fs.size());
  const int d = gr.d;
  std::vector<LatticeSignal> fh;
  for (const auto& f : fs) fh.push_back(dft(f));
  const std::size_t side = gr.size();
  std::vector<cplx> v(PhaseSpaceSignal::size_for(m, gr));
  std::vector<std::size_t> xi_flat(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t t = i;
    for (int j = m; j-- > 0;) {
      xi_flat[j] = t % side;
      t /= side;
    }
    const std::size_t xf = t;
    const cplx gx = g[xf];
    if (gx == cplx{}) continue;
    cplx prod = 1.0;
    for (int j = 0; j < m; ++j) prod *= fh[j][xi_flat[j]];
    Point x = multi_index(xf, d, gr.N);
    std::int64_t dot = 0;
    for (int j = 0; j < m; ++j) {
      Point xi = multi_index(xi_flat[j], d, gr.N);
      for (int a = 0; a < d; ++a) dot += wrap(x[a] * xi[a], gr.N);
    }
    v[i] = gx * std::conj(prod) * unit_phase(-dot, gr.N);
  }
  return PhaseSpaceSignal(m, gr, std::move(v));
}

// Direct STFT of a phase-space signal on Z_N^{2(m+1)d}. Memory grows like
// N^{2(m+1)d}; intended for small identity checks.
inline StftArray phase_space_stft(const PhaseSpaceSignal& F, const PhaseSpaceSignal& window) {
  if (F.m() != window.m() || !F.grid().same_as(window.grid()))
    throw std::invalid_argument("grid mismatch in phase-space stft");
  const Grid& g = F.grid();
  StftArray a;
  a.dims = F.dims();
  a.N = g.N;
  a.x_cell = F.cell_volume();
  a.xi_cell = g.dual().cell_volume() * std::pow(g.cell_volume(), F.m());
  a.values = stft_values(F.values(), window.values(), a.dims, g.N, F.cell_volume());
  return a;
}

// Evaluates V_Phi R(g, f) from the factor STFTs without forming the
// phase-space STFT directly; Phi = R(phi_0, .., phi_m).
class RihaczekStft {
 public:
  RihaczekStft(const LatticeSignal& g, const std::vector<LatticeSignal>& fs, const std::vector<LatticeSignal>& windows)
      : grid_(g.grid()), m_(static_cast<int>(fs.size())) {
    require_common_grid(g, fs, "rihaczek stft");
    if (windows.size() != fs.size() + 1) throw std::invalid_argument("need m+1 windows");
    for (const auto& w : windows) require_same_grid(g.grid(), w.grid(), "rihaczek stft");
    factors_.push_back(stft(g, windows[0]));
    for (int j = 0; j < m_; ++j) factors_.push_back(stft(fs[j], windows[j + 1]));
  }

  int m() const { return m_; }
  const Grid& grid() const { return grid_; }
  const StftArray& factor(int j) const { return factors_[static_cast<std::size_t>(j)]; }
  std::size_t side() const { return grid_.size(); }

  // Value at flat block indices z = (z0, z1..zm), zeta = (zeta0, zeta1..zetam).
  cplx value(const std::vector<std::size_t>& z, const std::vector<std::size_t>& zeta) const {
    const int d = grid_.d;
    const auto N = grid_.N;
    Point z0 = multi_index(z[0], d, N), zeta0 = multi_index(zeta[0], d, N);
    Point u(zeta0), w(d);
    std::int64_t dot = 0;
    cplx prod = 1.0;
    for (int j = 1; j <= m_; ++j) {
      Point zj = multi_index(z[j], d, N), zetaj = multi_index(zeta[j], d, N);
      for (int a = 0; a < d; ++a) {
        u[a] += zj[a];
        w[a] = z0[a] + zetaj[a];
        dot += wrap(zj[a] * zetaj[a], N);
      }
      prod *= std::conj(factors_[j].at(flat_index(w, N), z[j]));
    }
    return unit_phase(-dot, N) * factors_[0].at(z[0], flat_index(u, N)) * prod;
  }

  // Full array in the layout of phase_space_stft.
  StftArray materialize() const {
    const std::size_t side = this->side();
    const std::size_t blocks = static_cast<std::size_t>(m_ + 1);
    const std::size_t half = ipow(side, blocks);
    StftArray a;
    a.dims = (m_ + 1) * grid_.d;
    a.N = grid_.N;
    a.x_cell = grid_.cell_volume() * std::pow(grid_.dual().cell_volume(), m_);
    a.xi_cell = grid_.dual().cell_volume() * std::pow(grid_.cell_volume(), m_);
    a.values.resize(half * half);
    std::vector<std::size_t> z(blocks), zeta(blocks);
    for (std::size_t zf = 0; zf < half; ++zf) {
      split(zf, z);
      for (std::size_t cf = 0; cf < half; ++cf) {
        split(cf, zeta);
        a.values[zf * half + cf] = value(z, zeta);
      }
    }
    return a;
  }

  void split(std::size_t flat, std::vector<std::size_t>& blocks) const {
    const std::size_t side = this->side();
    for (std::size_t j = blocks.size(); j-- > 0;) {
      blocks[j] = flat % side;
      flat /= side;
    }
  }

 private:
  Grid grid_;
  int m_;
  std::vector<StftArray> factors_;
};

inline StftArray rihaczek_stft_closed_form(const LatticeSignal& g, const std::vector<LatticeSignal>& fs,
                                           const std::vector<LatticeSignal>& windows) {
  return RihaczekStft(g, fs, windows).materialize();
}

enum class PhaseSpaceTarget { modulation, fourier_modulation };

namespace detail {

// Physical coordinate of a flat block index on a grid of the given spacing.
inline void block_coords(std::size_t flat, const Grid& g, double spacing, double* out) {
  Point k = multi_index(flat, g.d, g.N);
  for (int a = 0; a < g.d; ++a) out[a] = spacing * static_cast<double>(centered(k[a], g.N));
}

}  // namespace detail

// Mixed norm of V_Phi R(g, f) with Phi = R(windows). For the modulation
// target z = (z0, z_j) is inner and zeta outer; the Fourier-modulation target
// reads V_Phi R(xi, -x), which swaps the roles. Weight coordinates are
// (x, xi) in the target's order, 2(m+1)d in total.
inline double rihaczek_phase_space_norm(const RihaczekStft& V, PhaseSpaceTarget target, const ExtendedExponent& p,
                                        const ExtendedExponent& q, const SeparableWeight& w) {
  const Grid& g = V.grid();
  const int m = V.m();
  const int d = g.d;
  const std::size_t blocks = static_cast<std::size_t>(m + 1);
  const bool trivial = w.is_trivial();
  if (!trivial && w.dim() != 2 * blocks * static_cast<std::size_t>(d))
    throw std::invalid_argument("phase-space weight must have dimension 2(m+1)d");
  const double a_cell = g.cell_volume(), b_cell = g.dual().cell_volume();

  // p = q with trivial weight factorizes exactly into the factor norms.
  if (trivial && p == q) {
    double total = 1.0;
    for (int j = 0; j <= m; ++j) {
      const StftArray& F = V.factor(j);
      total *= stft_mixed_norm(F, p, p, SeparableWeight::trivial(2 * static_cast<std::size_t>(d)), g.alpha,
                               g.dual_alpha());
    }
    return total;
  }

  const double z_cell = a_cell * std::pow(b_cell, m);
  const double zeta_cell = b_cell * std::pow(a_cell, m);
  const std::size_t half = ipow(V.side(), blocks);
  const bool mod = target == PhaseSpaceTarget::modulation;
  std::vector<std::size_t> z(blocks), zeta(blocks), mzeta(blocks);
  std::vector<double> coords(2 * blocks * static_cast<std::size_t>(d));
  LpAccumulator outer(q);
  for (std::size_t o = 0; o < half; ++o) {
    LpAccumulator inner(p);
    for (std::size_t i = 0; i < half; ++i) {
      // modulation: z = i, zeta = o. Fourier-modulation: x = i plays -zeta, xi = o plays z.
      if (mod) {
        V.split(i, z);
        V.split(o, zeta);
      } else {
        V.split(o, z);
        V.split(i, mzeta);
        for (std::size_t j = 0; j < blocks; ++j) {
          Point k = multi_index(mzeta[j], d, g.N);
          for (auto& c : k) c = -c;
          zeta[j] = flat_index(k, g.N);
        }
      }
      double mag = std::abs(V.value(z, zeta));
      if (!trivial && mag != 0.0) {
        // Spacings: z0 alpha, z_j 1/(alpha N); zeta0 1/(alpha N), zeta_j alpha.
        const std::vector<std::size_t>& xb = mod ? z : mzeta;
        const std::vector<std::size_t>& fb = mod ? zeta : z;
        const bool x_is_time = mod;
        for (std::size_t j = 0; j < blocks; ++j) {
          bool time_spacing = (j == 0) == x_is_time;
          detail::block_coords(xb[j], g, time_spacing ? g.alpha : g.dual_alpha(), &coords[j * d]);
        }
        for (std::size_t j = 0; j < blocks; ++j) {
          bool time_spacing = (j == 0) != x_is_time;
          detail::block_coords(fb[j], g, time_spacing ? g.alpha : g.dual_alpha(), &coords[(blocks + j) * d]);
        }
        mag *= w(coords);
      }
      inner.add(mag, mod ? z_cell : zeta_cell);
    }
    outer.add(inner.result(), mod ? zeta_cell : z_cell);
  }
  return outer.result();
}

// K_sigma(f)(x) = (1/(alpha N))^{md} sum_xi sigma(x, xi) prod f^_j(xi_j) e^{2 pi i x.(sum xi_j)/N}
inline LatticeSignal kohn_nirenberg_apply(const PhaseSpaceSignal& sigma, const std::vector<LatticeSignal>& fs) {
  if (fs.size() != static_cast<std::size_t>(sigma.m()))
    throw std::invalid_argument("symbol order m does not match the number of inputs");
  for (const auto& f : fs) require_same_grid(sigma.grid(), f.grid(), "kohn-nirenberg");
  const Grid& gr = sigma.grid();
  const int m = sigma.m(), d = gr.d;
  std::vector<LatticeSignal> fh;
  for (const auto& f : fs) fh.push_back(dft(f));
  const std::size_t side = gr.size();
  const std::size_t xi_count = ipow(side, static_cast<std::size_t>(m));
  const double scale = std::pow(gr.dual().cell_volume(), m);
  std::vector<cplx> out(side);
  std::vector<std::size_t> xi_flat(static_cast<std::size_t>(m));
  for (std::size_t xf = 0; xf < side; ++xf) {
    Point x = multi_index(xf, d, gr.N);
    cplx acc{};
    for (std::size_t r = 0; r < xi_count; ++r) {
      std::size_t t = r;
      for (int j = m; j-- > 0;) {
        xi_flat[j] = t % side;
        t /= side;
      }
      const cplx s = sigma[xf * xi_count + r];
      if (s == cplx{}) continue;
      cplx prod = 1.0;
      std::int64_t dot = 0;
      for (int j = 0; j < m; ++j) {
        prod *= fh[j][xi_flat[j]];
        Point xi = multi_index(xi_flat[j], d, gr.N);
        for (int a = 0; a < d; ++a) dot += wrap(x[a] * xi[a], gr.N);
      }
      acc += s * prod * unit_phase(dot, gr.N);
    }
    out[xf] = acc * scale;
  }
  return LatticeSignal(gr, std::move(out));
}

// <F, G> with the phase-space Riemann measure.
inline cplx inner(const PhaseSpaceSignal& F, const PhaseSpaceSignal& G) {
  if (F.m() != G.m() || !F.grid().same_as(G.grid())) throw std::invalid_argument("grid mismatch in inner product");
  cplx s{};
  for (std::size_t i = 0; i < F.total_size(); ++i) s += F[i] * std::conj(G[i]);
  return s * F.cell_volume();
}

// | <K_sigma f, g> - <sigma, R_m(g, f)> |
inline double duality_residual(const PhaseSpaceSignal& sigma, const std::vector<LatticeSignal>& fs,
                               const LatticeSignal& g) {
  cplx lhs = inner(kohn_nirenberg_apply(sigma, fs), g);
  cplx rhs = inner(sigma, rihaczek(g, fs));
  return std::abs(lhs - rhs);
}

// Windows, weights and partition for boundedness_ratio; unset fields fall
// back to Gaussian windows, trivial weights and the default partition.
struct RatioOptions {
  std::vector<LatticeSignal> windows;  // m + 1
  std::optional<SeparableWeight> omega;
  std::vector<SeparableWeight> mu;  // m + 1
  std::optional<PartitionOfUnity> partition;
};

// Target norm of R_m(g, f) over prod_j ||arg_j||_{W(L^{p_j}, L^{q_j}_{mu_j})}, arg_0 = g.
inline double boundedness_ratio(const LatticeSignal& g, const std::vector<LatticeSignal>& fs, const ExponentTuple& t,
                                PhaseSpaceTarget target, const RatioOptions& opt = {}) {
  t.validate();
  if (fs.size() != static_cast<std::size_t>(t.m)) throw std::invalid_argument("tuple order m does not match inputs");
  require_common_grid(g, fs, "boundedness ratio");
  const Grid& gr = g.grid();
  std::vector<LatticeSignal> windows = opt.windows;
  if (windows.empty()) windows.assign(fs.size() + 1, gaussian_window(gr));
  PartitionOfUnity part = opt.partition ? *opt.partition : PartitionOfUnity::for_grid(gr);

  double denom = 1.0;
  for (int j = 0; j <= t.m; ++j) {
    const LatticeSignal& arg = j == 0 ? g : fs[j - 1];
    SeparableWeight mu = opt.mu.empty() ? SeparableWeight::trivial(static_cast<std::size_t>(gr.d)) : opt.mu[j];
    denom *= wiener_amalgam_norm(arg, part, t.pj[j], t.qj[j], mu);
  }
  if (denom == 0.0) throw std::domain_error("boundedness ratio undefined: some input has zero norm");

  RihaczekStft V(g, fs, windows);
  SeparableWeight omega =
      opt.omega ? *opt.omega : SeparableWeight::trivial(2 * static_cast<std::size_t>((t.m + 1) * gr.d));
  return rihaczek_phase_space_norm(V, target, t.p, t.q, omega) / denom;
}

}  // namespace tfa
