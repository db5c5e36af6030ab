// Sampling probe for the structural weight conditions M0-M2 and W0-W2 on the
// Rihaczek phase space R^{2(m+1)d}.
//
// Coordinates are laid out as ((z0, z1..zm), (zeta0, zeta1..zetam)), each
// entry a d-vector. Every condition reads LHS <~ RHS; the probe reports the
// largest LHS/RHS over all integer points of the free variables in [-R, R].

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfa/weight.hpp"

namespace tfa {

enum class ModerateCondition { M0, M1, M2, W0, W1, W2 };

inline ModerateCondition parse_moderate_condition(const std::string& s) {
  if (s == "M0") return ModerateCondition::M0;
  if (s == "M1") return ModerateCondition::M1;
  if (s == "M2") return ModerateCondition::M2;
  if (s == "W0") return ModerateCondition::W0;
  if (s == "W1") return ModerateCondition::W1;
  if (s == "W2") return ModerateCondition::W2;
  throw std::invalid_argument("unknown weight condition '" + s + "'");
}

struct ProbeReport {
  double max_ratio = 0;
  std::vector<double> witness;  // free variables at the maximizer
  std::size_t samples = 0;
};

namespace detail {

// Phase-space point builder with named d-blocks.
struct PhasePoint {
  int m, d;
  std::vector<double> v;
  PhasePoint(int m_, int d_) : m(m_), d(d_), v(static_cast<std::size_t>(2 * (m_ + 1) * d_), 0.0) {}
  // slot 0..m is z_j, slot m+1..2m+1 is zeta_j.
  double* z(int j) { return v.data() + static_cast<std::size_t>(j * d); }
  double* zeta(int j) { return v.data() + static_cast<std::size_t>((m + 1 + j) * d); }
};

inline void add_to(double* dst, const double* src, int d, double sign = 1.0) {
  for (int a = 0; a < d; ++a) dst[a] += sign * src[a];
}

}  // namespace detail

// Evaluates the chosen condition for every integer point of its free
// variables in the box of the given radius.
inline ProbeReport moderate_condition_probe(const SeparableWeight& w, ModerateCondition cond, int radius, int m,
                                            int d) {
  using detail::PhasePoint;
  using detail::add_to;
  if (m < 1 || d < 1) throw std::invalid_argument("probe needs m >= 1 and d >= 1");
  if (radius < 0) throw std::invalid_argument("probe radius must be nonnegative");
  if (w.dim() != static_cast<std::size_t>(2 * (m + 1) * d))
    throw std::invalid_argument("weight dimension must be 2(m+1)d = " + std::to_string(2 * (m + 1) * d));

  const std::size_t D = static_cast<std::size_t>(d);
  // Number of free d-blocks and a function computing (lhs, rhs) from them.
  std::size_t free_blocks = 0;
  std::function<std::pair<double, double>(const std::vector<double>&)> eval;

  auto blk = [D](const std::vector<double>& f, std::size_t i) { return f.data() + i * D; };

  switch (cond) {
    case ModerateCondition::M0:
      // free: z0, z_1..m, zeta0, zeta_1..m
      free_blocks = static_cast<std::size_t>(2 * (m + 1));
      eval = [&, m, d](const std::vector<double>& f) {
        PhasePoint full(m, d), a(m, d), b(m, d);
        full.v = f;
        add_to(a.z(0), blk(f, 0), d);
        for (int j = 1; j <= m; ++j) add_to(a.zeta(j), blk(f, static_cast<std::size_t>(m + 1 + j)), d);
        for (int j = 1; j <= m; ++j) add_to(b.z(j), blk(f, static_cast<std::size_t>(j)), d);
        add_to(b.zeta(0), blk(f, static_cast<std::size_t>(m + 1)), d);
        return std::pair{w(full.v), w(a.v) * w(b.v)};
      };
      break;
    case ModerateCondition::M1:
      // free: z0, zeta_1..m
      free_blocks = static_cast<std::size_t>(m + 1);
      eval = [&, m, d](const std::vector<double>& f) {
        PhasePoint lhs(m, d), first(m, d);
        add_to(lhs.z(0), blk(f, 0), d);
        add_to(first.z(0), blk(f, 0), d);
        for (int j = 1; j <= m; ++j) {
          add_to(lhs.zeta(j), blk(f, static_cast<std::size_t>(j)), d);
          add_to(first.zeta(j), blk(f, 0), d, -1.0);
        }
        double rhs = w(first.v);
        for (int j = 1; j <= m; ++j) {
          PhasePoint t(m, d);
          add_to(t.zeta(j), blk(f, static_cast<std::size_t>(j)), d);
          add_to(t.zeta(j), blk(f, 0), d);
          rhs *= w(t.v);
        }
        return std::pair{w(lhs.v), rhs};
      };
      break;
    case ModerateCondition::M2:
      // free: z_1..m, zeta0
      free_blocks = static_cast<std::size_t>(m + 1);
      eval = [&, m, d](const std::vector<double>& f) {
        PhasePoint lhs(m, d), first(m, d);
        for (int j = 1; j <= m; ++j) add_to(lhs.z(j), blk(f, static_cast<std::size_t>(j - 1)), d);
        add_to(lhs.zeta(0), blk(f, static_cast<std::size_t>(m)), d);
        add_to(first.zeta(0), blk(f, static_cast<std::size_t>(m)), d);
        for (int j = 1; j <= m; ++j) add_to(first.zeta(0), blk(f, static_cast<std::size_t>(j - 1)), d);
        double rhs = w(first.v);
        for (int j = 1; j <= m; ++j) {
          PhasePoint t(m, d);
          add_to(t.z(j), blk(f, static_cast<std::size_t>(j - 1)), d);
          add_to(t.zeta(0), blk(f, static_cast<std::size_t>(j - 1)), d, -1.0);
          rhs *= w(t.v);
        }
        return std::pair{w(lhs.v), rhs};
      };
      break;
    case ModerateCondition::W0:
      // free: z0, z_1..m, zeta0, zeta_1..m
      free_blocks = static_cast<std::size_t>(2 * (m + 1));
      eval = [&, m, d](const std::vector<double>& f) {
        const double* z0 = blk(f, 0);
        const double* zeta0 = blk(f, static_cast<std::size_t>(m + 1));
        PhasePoint lhs(m, d), first(m, d);
        add_to(lhs.z(0), z0, d);
        for (int j = 1; j <= m; ++j) add_to(lhs.z(0), blk(f, static_cast<std::size_t>(m + 1 + j)), d);
        for (int j = 1; j <= m; ++j) {
          add_to(lhs.z(j), blk(f, static_cast<std::size_t>(j)), d);
          add_to(lhs.z(j), zeta0, d);
        }
        add_to(lhs.zeta(0), zeta0, d);
        for (int j = 1; j <= m; ++j) add_to(lhs.zeta(j), blk(f, static_cast<std::size_t>(m + 1 + j)), d);

        add_to(first.z(0), z0, d);
        for (int j = 1; j <= m; ++j) add_to(first.z(j), zeta0, d);
        add_to(first.zeta(0), zeta0, d);
        double rhs = w(first.v);
        for (int j = 1; j <= m; ++j) {
          PhasePoint t(m, d);
          const double* zetaj = blk(f, static_cast<std::size_t>(m + 1 + j));
          add_to(t.z(0), zetaj, d);
          add_to(t.z(j), blk(f, static_cast<std::size_t>(j)), d);
          add_to(t.zeta(j), zetaj, d);
          rhs *= w(t.v);
        }
        return std::pair{w(lhs.v), rhs};
      };
      break;
    case ModerateCondition::W1:
      // free: x, xi for Omega_0(x, xi) = Omega((x, (xi..xi)), (xi, 0))
      free_blocks = 2;
      eval = [&, m, d](const std::vector<double>& f) {
        auto omega0 = [&](const double* x, const double* xi) {
          PhasePoint t(m, d);
          if (x) add_to(t.z(0), x, d);
          if (xi) {
            for (int j = 1; j <= m; ++j) add_to(t.z(j), xi, d);
            add_to(t.zeta(0), xi, d);
          }
          return w(t.v);
        };
        const double* x = blk(f, 0);
        const double* xi = blk(f, 1);
        return std::pair{omega0(x, xi), omega0(x, nullptr) * omega0(nullptr, xi)};
      };
      break;
    case ModerateCondition::W2:
      // free: x, xi; maximized over i = 1..m inside
      free_blocks = 2;
      eval = [&, m, d](const std::vector<double>& f) {
        auto omega_i = [&](int i, const double* x, const double* xi) {
          PhasePoint t(m, d);
          if (xi) {
            add_to(t.z(0), xi, d);
            add_to(t.zeta(i), xi, d);
          }
          if (x) add_to(t.z(i), x, d, -1.0);
          return w(t.v);
        };
        const double* x = blk(f, 0);
        const double* xi = blk(f, 1);
        std::pair<double, double> worst{0.0, 1.0};
        for (int i = 1; i <= m; ++i) {
          double l = omega_i(i, x, xi);
          double r = omega_i(i, x, nullptr) * omega_i(i, nullptr, xi);
          if (l * worst.second > worst.first * r) worst = {l, r};
        }
        return worst;
      };
      break;
  }

  const std::size_t nvars = free_blocks * D;
  const std::int64_t side = 2 * static_cast<std::int64_t>(radius) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (total > (std::size_t{1} << 34) / static_cast<std::size_t>(side))
      throw std::invalid_argument("probe box too large; reduce the radius");
    total *= static_cast<std::size_t>(side);
  }

  ProbeReport rep;
  rep.samples = total;
  std::vector<double> f(nvars, 0.0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t t = n;
    for (std::size_t i = 0; i < nvars; ++i) {
      f[i] = static_cast<double>(static_cast<std::int64_t>(t % static_cast<std::size_t>(side)) - radius);
      t /= static_cast<std::size_t>(side);
    }
    auto [lhs, rhs] = eval(f);
    double r = lhs / rhs;
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.witness = f;
    }
  }
  return rep;
}

}  // namespace tfa
