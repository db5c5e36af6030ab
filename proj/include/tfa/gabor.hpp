// Gabor systems {T_{a k} M_{b n} g} on the lattice.

#pragma once

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tfa/lattice.hpp"
#include "tfa/stft.hpp"

namespace tfa {

struct GaborSystem {
  LatticeSignal window;
  std::int64_t a_step = 1;
  std::int64_t b_step = 1;

  GaborSystem(LatticeSignal g, std::int64_t a, std::int64_t b) : window(std::move(g)), a_step(a), b_step(b) {
    const auto N = window.N();
    if (a < 1 || N % a != 0) throw std::invalid_argument("time step a must divide N");
    if (b < 1 || N % b != 0) throw std::invalid_argument("frequency step b must divide N");
  }

  std::int64_t time_count() const { return window.N() / a_step; }
  std::int64_t freq_count() const { return window.N() / b_step; }
};

// c(k, n) over k in Z_{N/a}^d, n in Z_{N/b}^d, k-major.
struct GaborCoefficients {
  int dims = 1;
  std::int64_t K = 1;  // time positions per axis
  std::int64_t M = 1;  // frequency positions per axis
  std::vector<cplx> values;

  std::size_t k_count() const { return ipow(static_cast<std::size_t>(K), static_cast<std::size_t>(dims)); }
  std::size_t n_count() const { return ipow(static_cast<std::size_t>(M), static_cast<std::size_t>(dims)); }
};

// c(k, n) = <f, T_{a k} M_{b n} g> = e^{2 pi i (ak).(bn)/N} V_g f(a k, b n).
inline GaborCoefficients gabor_analysis(const LatticeSignal& f, const GaborSystem& sys) {
  require_same_grid(f.grid(), sys.window.grid(), "gabor analysis");
  const Grid& g = f.grid();
  StftArray V = stft(f, sys.window);
  GaborCoefficients c;
  c.dims = g.d;
  c.K = sys.time_count();
  c.M = sys.freq_count();
  c.values.resize(c.k_count() * c.n_count());
  Point x(g.d), xi(g.d);
  for (std::size_t kf = 0; kf < c.k_count(); ++kf) {
    Point k = multi_index(kf, g.d, c.K);
    for (int a = 0; a < g.d; ++a) x[a] = k[a] * sys.a_step;
    for (std::size_t nf = 0; nf < c.n_count(); ++nf) {
      Point n = multi_index(nf, g.d, c.M);
      std::int64_t dot = 0;
      for (int a = 0; a < g.d; ++a) {
        xi[a] = n[a] * sys.b_step;
        dot += wrap(x[a] * xi[a], g.N);
      }
      c.values[kf * c.n_count() + nf] = unit_phase(dot, g.N) * V.at(x, xi);
    }
  }
  return c;
}

// sum_{k,n} c(k, n) T_{a k} M_{b n} gamma
inline LatticeSignal gabor_synthesis(const GaborCoefficients& c, const GaborSystem& sys, const LatticeSignal& gamma) {
  require_same_grid(gamma.grid(), sys.window.grid(), "gabor synthesis");
  const Grid& g = gamma.grid();
  if (c.dims != g.d || c.K != sys.time_count() || c.M != sys.freq_count())
    throw std::invalid_argument("coefficient array does not match the Gabor system");
  std::vector<cplx> out(g.size());
  Point s(g.d);
  for (std::size_t kf = 0; kf < c.k_count(); ++kf) {
    Point k = multi_index(kf, g.d, c.K);
    for (std::size_t tf = 0; tf < g.size(); ++tf) {
      Point t = multi_index(tf, g.d, g.N);
      for (int a = 0; a < g.d; ++a) s[a] = t[a] - k[a] * sys.a_step;
      const cplx gv = gamma.at(s);
      if (gv == cplx{}) continue;
      cplx acc{};
      for (std::size_t nf = 0; nf < c.n_count(); ++nf) {
        const cplx cv = c.values[kf * c.n_count() + nf];
        if (cv == cplx{}) continue;
        Point n = multi_index(nf, g.d, c.M);
        std::int64_t dot = 0;
        for (int a = 0; a < g.d; ++a) dot += wrap(s[a] * n[a] * sys.b_step, g.N);
        acc += cv * unit_phase(dot, g.N);
      }
      out[tf] += acc * gv;
    }
  }
  return LatticeSignal(g, std::move(out));
}

inline LatticeSignal gabor_synthesis(const GaborCoefficients& c, const GaborSystem& sys) {
  return gabor_synthesis(c, sys, sys.window);
}

inline LatticeSignal gabor_frame_operator(const LatticeSignal& f, const GaborSystem& sys) {
  return gabor_synthesis(gabor_analysis(f, sys), sys);
}

// Explicit matrix of the frame operator in the sample basis.
inline Eigen::MatrixXcd gabor_frame_matrix(const GaborSystem& sys) {
  const Grid& g = sys.window.grid();
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXcd S(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    LatticeSignal e = LatticeSignal::delta(g, multi_index(static_cast<std::size_t>(j), g.d, g.N));
    LatticeSignal col = gabor_frame_operator(e, sys);
    for (Eigen::Index i = 0; i < n; ++i) S(i, j) = col[static_cast<std::size_t>(i)];
  }
  return S;
}

// gamma = S^{-1} g
inline LatticeSignal canonical_dual_window(const GaborSystem& sys) {
  const Grid& g = sys.window.grid();
  Eigen::MatrixXcd S = gabor_frame_matrix(sys);
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = sys.window[i];
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(S);
  if (!lu.isInvertible()) throw std::domain_error("Gabor system is not a frame: frame operator is singular");
  Eigen::VectorXcd gamma = lu.solve(rhs);
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = gamma(static_cast<Eigen::Index>(i));
  return LatticeSignal(g, std::move(v));
}

struct FrameBounds {
  double A = 0;
  double B = 0;
};

// min and max over x of sum_k |g(x - a k)|^2; A > 0 certifies the frame property
// for all sufficiently fine frequency steps.
inline FrameBounds walnut_frame_bounds(const LatticeSignal& g, std::int64_t a_step) {
  const Grid& gr = g.grid();
  if (a_step < 1 || gr.N % a_step != 0) throw std::invalid_argument("time step a must divide N");
  const std::int64_t K = gr.N / a_step;
  const std::size_t kc = ipow(static_cast<std::size_t>(K), static_cast<std::size_t>(gr.d));
  FrameBounds fb{std::numeric_limits<double>::infinity(), 0.0};
  Point s(gr.d);
  for (std::size_t xf = 0; xf < gr.size(); ++xf) {
    Point x = multi_index(xf, gr.d, gr.N);
    double sum = 0;
    for (std::size_t kf = 0; kf < kc; ++kf) {
      Point k = multi_index(kf, gr.d, K);
      for (int a = 0; a < gr.d; ++a) s[a] = x[a] - a_step * k[a];
      sum += std::norm(g.at(s));
    }
    fb.A = std::min(fb.A, sum);
    fb.B = std::max(fb.B, sum);
  }
  return fb;
}

}  // namespace tfa
