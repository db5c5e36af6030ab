// Short-time Fourier transform on the lattice.
//
// V_g f(x, xi) = alpha^d sum_t f(t) conj(g(t - x)) e^{-2 pi i t.xi/N}
// for all (x, xi) in (Z_N^d)^2.

#pragma once

#include <complex>
#include <set>
#include <vector>

#include "tfa/fourier.hpp"
#include "tfa/lattice.hpp"

namespace tfa {

// Array over (x, xi), x-major: flat = flat(x) * N^dims + flat(xi).
struct StftArray {
  int dims = 1;
  std::int64_t N = 1;
  double x_cell = 1.0;   // Riemann measure of one x sample
  double xi_cell = 1.0;  // Riemann measure of one xi sample
  std::vector<cplx> values;

  std::size_t side() const { return ipow(static_cast<std::size_t>(N), static_cast<std::size_t>(dims)); }

  const cplx& at(const Point& x, const Point& xi) const {
    return values[flat_index(x, N) * side() + flat_index(xi, N)];
  }
  const cplx& at(std::size_t x_flat, std::size_t xi_flat) const { return values[x_flat * side() + xi_flat]; }
};

// STFT of raw row-major arrays over (Z_N^dims); `measure` is the Riemann
// factor of one sample. Rows over x are independent and written in order.
inline std::vector<cplx> stft_values(const std::vector<cplx>& f, const std::vector<cplx>& g, int dims,
                                     std::int64_t N, double measure) {
  const std::size_t side = ipow(static_cast<std::size_t>(N), static_cast<std::size_t>(dims));
  if (f.size() != side || g.size() != side) throw std::invalid_argument("stft input size mismatch");
  std::vector<cplx> out(side * side);
  std::vector<cplx> h(side);
  Point t(dims);
  for (std::size_t xf = 0; xf < side; ++xf) {
    Point x = multi_index(xf, dims, N);
    for (std::size_t tf = 0; tf < side; ++tf) {
      Point k = multi_index(tf, dims, N);
      for (int a = 0; a < dims; ++a) t[a] = k[a] - x[a];
      h[tf] = f[tf] * std::conj(g[flat_index(t, N)]);
    }
    detail::dft_axes(h, dims, static_cast<std::size_t>(N), -1, DftMethod::fast);
    for (std::size_t n = 0; n < side; ++n) out[xf * side + n] = h[n] * measure;
  }
  return out;
}

inline StftArray stft(const LatticeSignal& f, const LatticeSignal& g) {
  require_same_grid(f.grid(), g.grid(), "stft");
  const Grid& gr = f.grid();
  StftArray a;
  a.dims = gr.d;
  a.N = gr.N;
  a.x_cell = gr.cell_volume();
  a.xi_cell = gr.dual().cell_volume();
  a.values = stft_values(f.values(), g.values(), gr.d, gr.N, gr.cell_volume());
  return a;
}

// Set of x (flat indices) whose STFT column is not identically zero.
inline std::set<std::size_t> stft_support_box(const LatticeSignal& f, const LatticeSignal& g, double tol = 0.0) {
  StftArray a = stft(f, g);
  std::set<std::size_t> out;
  const std::size_t side = a.side();
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t n = 0; n < side; ++n)
      if (std::abs(a.at(x, n)) > tol) {
        out.insert(x);
        break;
      }
  return out;
}

// max |V_g(T_{x0} f)(x, xi) - e^{-2 pi i x0.xi/N} V_g f(x - x0, xi)|
inline double stft_translation_covariance_residual(const LatticeSignal& f, const LatticeSignal& g, const Point& x0) {
  const Grid& gr = f.grid();
  StftArray lhs = stft(translate(f, x0), g);
  StftArray rhs = stft(f, g);
  const std::size_t side = lhs.side();
  double res = 0;
  Point xs(gr.d);
  for (std::size_t xf = 0; xf < side; ++xf) {
    Point x = multi_index(xf, gr.d, gr.N);
    for (int a = 0; a < gr.d; ++a) xs[a] = x[a] - x0[a];
    const std::size_t xsf = flat_index(xs, gr.N);
    for (std::size_t nf = 0; nf < side; ++nf) {
      Point xi = multi_index(nf, gr.d, gr.N);
      std::int64_t dot = 0;
      for (int a = 0; a < gr.d; ++a) dot += wrap(x0[a] * xi[a], gr.N);
      cplx expected = unit_phase(-dot, gr.N) * rhs.at(xsf, nf);
      res = std::max(res, std::abs(lhs.at(xf, nf) - expected));
    }
  }
  return res;
}

// max |V_g f(x, xi) - e^{-2 pi i x.xi/N} V_{g^} f^(xi, -x)|
inline double stft_fundamental_identity_residual(const LatticeSignal& f, const LatticeSignal& g) {
  const Grid& gr = f.grid();
  StftArray lhs = stft(f, g);
  StftArray rhs = stft(dft(f), dft(g));
  const std::size_t side = lhs.side();
  double res = 0;
  Point mx(gr.d);
  for (std::size_t xf = 0; xf < side; ++xf) {
    Point x = multi_index(xf, gr.d, gr.N);
    for (int a = 0; a < gr.d; ++a) mx[a] = -x[a];
    const std::size_t mxf = flat_index(mx, gr.N);
    for (std::size_t nf = 0; nf < side; ++nf) {
      Point xi = multi_index(nf, gr.d, gr.N);
      std::int64_t dot = 0;
      for (int a = 0; a < gr.d; ++a) dot += wrap(x[a] * xi[a], gr.N);
      cplx expected = unit_phase(-dot, gr.N) * rhs.at(nf, mxf);
      res = std::max(res, std::abs(lhs.at(xf, nf) - expected));
    }
  }
  return res;
}

}  // namespace tfa
