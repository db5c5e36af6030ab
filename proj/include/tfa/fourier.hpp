// Lattice Fourier transform, translation and modulation.
//
// Forward: F(n) = alpha^d sum_k f(k) e^{-2 pi i k.n/N}, returned on the dual
// grid of spacing 1/(alpha N). Inverse uses the input spacing and the +
// sign, so inverse(forward(f)) = f.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "tfa/lattice.hpp"

namespace tfa {

enum class DftMethod { naive, fast };

namespace detail {

// Unnormalized 1-D DFT, reference O(N^2) path.
inline void dft1_naive(std::vector<cplx>& x, int sign) {
  const auto N = static_cast<std::int64_t>(x.size());
  std::vector<cplx> out(x.size());
  for (std::int64_t n = 0; n < N; ++n) {
    cplx s{};
    for (std::int64_t k = 0; k < N; ++k) s += x[k] * unit_phase(sign * k * n, N);
    out[n] = s;
  }
  x.swap(out);
}

// Unnormalized 1-D radix-2 DFT; requires a power-of-two length.
inline void dft1_radix2(std::vector<cplx>& x, int sign) {
  const std::size_t N = x.size();
  for (std::size_t i = 1, j = 0; i < N; ++i) {
    std::size_t bit = N >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  std::vector<cplx> tw(N / 2);
  for (std::size_t k = 0; k < N / 2; ++k)
    tw[k] = unit_phase(sign * static_cast<std::int64_t>(k), static_cast<std::int64_t>(N));
  for (std::size_t len = 2; len <= N; len <<= 1) {
    const std::size_t half = len / 2, stride = N / len;
    for (std::size_t i = 0; i < N; i += len)
      for (std::size_t k = 0; k < half; ++k) {
        cplx u = x[i + k];
        cplx v = x[i + k + half] * tw[k * stride];
        x[i + k] = u + v;
        x[i + k + half] = u - v;
      }
  }
}

inline void dft1(std::vector<cplx>& x, int sign, DftMethod method) {
  if (method == DftMethod::fast && std::has_single_bit(x.size()))
    dft1_radix2(x, sign);
  else
    dft1_naive(x, sign);
}

// Applies the unnormalized 1-D transform along every axis of a row-major N^d block.
inline void dft_axes(std::vector<cplx>& v, int dims, std::size_t N, int sign, DftMethod method) {
  std::vector<cplx> line(N);
  for (int axis = 0; axis < dims; ++axis) {
    const std::size_t stride = ipow(N, static_cast<std::size_t>(dims - 1 - axis));
    const std::size_t block = stride * N;
    for (std::size_t base = 0; base < v.size(); base += block)
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t i = 0; i < N; ++i) line[i] = v[base + off + i * stride];
        dft1(line, sign, method);
        for (std::size_t i = 0; i < N; ++i) v[base + off + i * stride] = line[i];
      }
  }
}

}  // namespace detail

inline LatticeSignal dft(const LatticeSignal& f, bool inverse = false, DftMethod method = DftMethod::fast) {
  const Grid& g = f.grid();
  std::vector<cplx> v(f.values());
  detail::dft_axes(v, g.d, static_cast<std::size_t>(g.N), inverse ? +1 : -1, method);
  const double scale = g.cell_volume();
  for (auto& x : v) x *= scale;
  return LatticeSignal(g.dual(), std::move(v));
}

inline LatticeSignal idft(const LatticeSignal& F, DftMethod method = DftMethod::fast) { return dft(F, true, method); }

// (T_x f)(t) = f(t - x), periodic.
inline LatticeSignal translate(const LatticeSignal& f, const Point& x) {
  const Grid& g = f.grid();
  if (static_cast<int>(x.size()) != g.d) throw std::invalid_argument("translation dimension mismatch");
  std::vector<cplx> v(f.size());
  Point t(g.d);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point k = multi_index(i, g.d, g.N);
    for (int a = 0; a < g.d; ++a) t[a] = k[a] - x[a];
    v[i] = f.at(t);
  }
  return LatticeSignal(g, std::move(v));
}

// (M_xi f)(t) = e^{2 pi i t.xi/N} f(t).
inline LatticeSignal modulate(const LatticeSignal& f, const Point& xi) {
  const Grid& g = f.grid();
  if (static_cast<int>(xi.size()) != g.d) throw std::invalid_argument("modulation dimension mismatch");
  std::vector<cplx> v(f.values());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point k = multi_index(i, g.d, g.N);
    std::int64_t dot = 0;
    for (int a = 0; a < g.d; ++a) dot += wrap(k[a] * xi[a], g.N);
    v[i] *= unit_phase(dot, g.N);
  }
  return LatticeSignal(g, std::move(v));
}

// f(-t)
inline LatticeSignal reflect(const LatticeSignal& f) {
  const Grid& g = f.grid();
  std::vector<cplx> v(f.size());
  Point t(g.d);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point k = multi_index(i, g.d, g.N);
    for (int a = 0; a < g.d; ++a) t[a] = -k[a];
    v[i] = f.at(t);
  }
  return LatticeSignal(g, std::move(v));
}

inline LatticeSignal conjugated(const LatticeSignal& f) {
  std::vector<cplx> v(f.values());
  for (auto& x : v) x = std::conj(x);
  return LatticeSignal(f.grid(), std::move(v));
}

}  // namespace tfa
