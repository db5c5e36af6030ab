#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "tfa/tfa.hpp"

using namespace tfa;
using Catch::Approx;

namespace {

ExtendedExponent E(std::int64_t p) { return ExtendedExponent::from_value(p); }
ExtendedExponent R(std::int64_t num, std::int64_t den) { return ExtendedExponent::from_reciprocal(Rational(num, den)); }
const ExtendedExponent kInf = ExtendedExponent::infinity();

MixedArray random_array(std::mt19937_64& rng, std::int64_t n_in, std::int64_t n_out) {
  std::normal_distribution<double> nd;
  MixedArray a{{n_in, n_out}, {}, std::vector<cplx>(static_cast<std::size_t>(n_in * n_out))};
  for (auto& v : a.values) {
    double re = nd(rng);
    double im = nd(rng);
    v = {re, im};
  }
  return a;
}

// Wiener norm with sharp indicator cells [l step - step/2, l step + step/2).
double sharp_wiener(const LatticeSignal& f, std::int64_t step, const ExtendedExponent& p, const ExtendedExponent& q) {
  const auto N = f.N();
  LpAccumulator outer(q);
  for (std::int64_t l = 0; l < N / step; ++l) {
    LpAccumulator inner(p);
    for (std::int64_t k = 0; k < N; ++k) {
      std::int64_t off = centered(k - l * step, N);
      if (2 * off >= -step && 2 * off < step) inner.add(std::abs(f.at({k})), f.alpha());
    }
    outer.add(inner.result());
  }
  return outer.result();
}

}  // namespace

TEST_CASE("mixed norm quasi-triangle inequality", "[norms][property]") {
  std::mt19937_64 rng(1);
  for (auto [p, q] : {std::pair{E(1), E(1)}, {E(2), E(3)}, {R(2, 1), E(1)}, {R(3, 1), R(2, 1)}, {kInf, R(3, 2)}}) {
    MixedNormSpec s{p, q, SeparableWeight::trivial(2), 1, 1};
    const double C = std::pow(2.0, 1.0 / std::min({p.value(), q.value(), 1.0}));
    for (int t = 0; t < 100; ++t) {
      MixedArray a = random_array(rng, 5, 4), b = random_array(rng, 5, 4), sum = a;
      for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += b.values[i];
      CHECK(mixed_norm(sum, s) <= C * (mixed_norm(a, s) + mixed_norm(b, s)) * (1 + 1e-12));
    }
  }
}

TEST_CASE("l^p norms decrease in p", "[norms][property]") {
  std::mt19937_64 rng(2);
  const std::vector<ExtendedExponent> ps{R(2, 1), E(1), R(2, 3), E(2), E(4), kInf};
  for (int t = 0; t < 50; ++t) {
    MixedArray a = random_array(rng, 6, 5);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
      MixedNormSpec lo{ps[i], ps[i], SeparableWeight::trivial(2), 1, 1};
      MixedNormSpec hi{ps[i + 1], ps[i + 1], SeparableWeight::trivial(2), 1, 1};
      CHECK(mixed_norm(a, lo) >= mixed_norm(a, hi) * (1 - 1e-12));
    }
  }
}

TEST_CASE("every norm is absolutely homogeneous", "[norms][property]") {
  std::mt19937_64 rng(3);
  Grid g(1, 16, 0.25);
  LatticeSignal f = oracle::random_signal(g, rng), w = gaussian_window(g);
  const cplx c(-1.5, 2.0);
  const double ac = std::abs(c);
  PartitionOfUnity part(g, 4);
  SeparableWeight v({1, 1}, {1.0, -0.5});
  for (auto [p, q] : {std::pair{E(1), E(2)}, {R(2, 1), kInf}, {E(3), R(3, 2)}}) {
    CHECK(modulation_norm(f.scaled(c), w, p, q, v) == Approx(ac * modulation_norm(f, w, p, q, v)).epsilon(1e-12));
    CHECK(fourier_modulation_norm(f.scaled(c), w, p, q) ==
          Approx(ac * fourier_modulation_norm(f, w, p, q)).epsilon(1e-12));
    CHECK(wiener_amalgam_norm(f.scaled(c), part, p, q) == Approx(ac * wiener_amalgam_norm(f, part, p, q)).epsilon(1e-12));
    CHECK(lp_norm(f.scaled(c), p) == Approx(ac * lp_norm(f, p)).epsilon(1e-12));
  }
}

TEST_CASE("modulation norm at p = q = 2", "[norms][modulation]") {
  std::mt19937_64 rng(4);
  for (auto [N, alpha] : {std::pair{8, 1.0}, {8, 0.5}, {16, 0.25}}) {
    Grid g(1, N, alpha);
    LatticeSignal f = oracle::random_signal(g, rng), w = oracle::random_signal(g, rng);
    // Riemann measures on both axes: ||V_w f|| = ||f|| ||w||.
    CHECK(modulation_norm(f, w, E(2), E(2)) == Approx(f.l2_norm() * w.l2_norm()).epsilon(1e-12));
    // Plain double sum of the oracle STFT: alpha^d N^{d/2} times the plain sample norms.
    auto V = oracle::stft(f.values(), w.values(), 1, N, alpha);
    double s = 0;
    for (auto v : V) s += std::norm(v);
    CHECK(std::sqrt(s) == Approx(alpha * std::sqrt(double(N)) * f.sample_l2() * w.sample_l2()).epsilon(1e-12));
  }
  Grid g(1, 8);
  CHECK(modulation_norm(LatticeSignal(g), gaussian_window(g), E(1), E(1)) == 0.0);
  CHECK_THROWS(modulation_norm(gaussian_window(g), LatticeSignal(g), E(1), E(1)));
}

TEST_CASE("modulation norm with weight matches the direct oracle", "[norms][modulation]") {
  std::mt19937_64 rng(5);
  Grid g(1, 8, 0.5);
  LatticeSignal f = oracle::random_signal(g, rng), w = gaussian_window(g);
  SeparableWeight v({1, 1}, {1.0, 2.0});
  auto V = oracle::stft(f.values(), w.values(), 1, 8, 0.5);
  const double beta = g.dual_alpha();
  // p = 3 inner over x, q = 1 outer over xi.
  double outer = 0;
  for (std::int64_t xi = 0; xi < 8; ++xi) {
    double inner = 0;
    for (std::int64_t x = 0; x < 8; ++x) {
      double wx = v(std::vector<double>{0.5 * centered(x, 8), beta * centered(xi, 8)});
      inner += std::pow(std::abs(V[x * 8 + xi]) * wx, 3) * 0.5;
    }
    outer += std::cbrt(inner) * beta;
  }
  CHECK(modulation_norm(f, w, E(3), E(1), v) == Approx(outer).epsilon(1e-12));
}

TEST_CASE("Fourier modulation norm", "[norms][fourier-modulation]") {
  std::mt19937_64 rng(6);
  Grid g(1, 16, 0.25);
  LatticeSignal f = oracle::random_signal(g, rng), w = gaussian_window(g);
  CHECK(fourier_modulation_norm(f, w, E(2), E(2)) == Approx(f.l2_norm() * w.l2_norm()).epsilon(1e-12));
  CHECK(fourier_modulation_norm(LatticeSignal(g), w, E(1), E(1)) == 0.0);

  // Reading V(xi, -x) equals the modulation norm of the inverse transforms.
  SeparableWeight v({1, 1}, {0.5, -1.0});
  for (auto [p, q] : {std::pair{E(1), E(3)}, {kInf, E(1)}, {R(3, 2), E(2)}}) {
    CHECK(fourier_modulation_norm(f, w, p, q, v) ==
          Approx(modulation_norm(idft(f), idft(w), p, q, v)).epsilon(1e-10));
  }
  // idft(delta_0) is the constant beta^d.
  LatticeSignal d0 = LatticeSignal::delta(g, {0});
  LatticeSignal one = LatticeSignal::constant(g.dual(), 1.0);
  CHECK(fourier_modulation_norm(d0, w, E(1), E(2)) ==
        Approx(modulation_norm(one, idft(w), E(1), E(2)) * g.dual_alpha()).epsilon(1e-10));
}

TEST_CASE("modulation norms are window independent up to constants", "[norms][modulation]") {
  std::mt19937_64 rng(7);
  Grid g = Grid::balanced(1, 16);
  LatticeSignal w1 = dilated_bump(1.0, g, 1.0), w2 = gaussian_window(g);
  for (auto [p, q] : {std::pair{E(1), E(1)}, {E(1), kInf}, {kInf, E(1)}}) {
    double lo = 1e300, hi = 0;
    for (int t = 0; t < 50; ++t) {
      LatticeSignal f = oracle::random_signal(g, rng);
      double r = modulation_norm(f, w1, p, q) / modulation_norm(f, w2, p, q);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(hi / lo < 10.0);
  }
}

TEST_CASE("partition of unity", "[norms][wiener]") {
  for (auto [d, N, step] : {std::tuple{1, 32, 4}, {2, 16, 4}, {1, 16, 16}, {1, 16, 8}, {1, 12, 3}}) {
    Grid g(d, N);
    PartitionOfUnity part(g, step);
    for (std::size_t kf = 0; kf < g.size(); ++kf) {
      Point k = multi_index(kf, d, N);
      double s = 0;
      for (std::size_t lf = 0; lf < part.cell_count(); ++lf) {
        double v = part(multi_index(lf, d, part.cells_per_axis()), k);
        CHECK(v >= 0.0);
        s += v;
      }
      CHECK(std::abs(s - 1.0) < 1e-12);
    }
    // sigma_0 lives in a box of side at most 3 step / 2.
    if (part.cells_per_axis() >= 3) {
      Point zero(static_cast<std::size_t>(d), 0);
      for (std::size_t kf = 0; kf < g.size(); ++kf) {
        Point k = multi_index(kf, d, N);
        if (part(zero, k) == 0.0) continue;
        for (auto v : k) CHECK(4 * std::abs(centered(v, N)) < 3 * step);
      }
    }
  }
  CHECK_THROWS(PartitionOfUnity(Grid(1, 16), 5));
  CHECK(PartitionOfUnity::default_step(Grid(1, 64, 1.0 / 8)) == 8);
  CHECK(PartitionOfUnity::default_step(Grid::balanced(1, 16)) == 4);
  CHECK(PartitionOfUnity::default_step(Grid(1, 64, 0.3)) == 4);
}

TEST_CASE("Wiener amalgam norm", "[norms][wiener]") {
  std::mt19937_64 rng(8);
  Grid g(1, 32);
  PartitionOfUnity part(g, 4);
  CHECK(wiener_amalgam_norm(LatticeSignal(g), part, E(2), E(1)) == 0.0);

  for (auto p : {E(1), E(2), E(4)}) {
    double lo = 1e300, hi = 0, lo_sharp = 1e300, hi_sharp = 0;
    for (int t = 0; t < 50; ++t) {
      LatticeSignal f = oracle::random_signal(g, rng);
      double r = wiener_amalgam_norm(f, part, p, p) / lp_norm(f, p);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      double rs = wiener_amalgam_norm(f, part, p, E(1)) / sharp_wiener(f, 4, p, E(1));
      lo_sharp = std::min(lo_sharp, rs);
      hi_sharp = std::max(hi_sharp, rs);
    }
    CHECK(hi / lo < 4.0);
    CHECK(hi_sharp / lo_sharp < 4.0);
  }

  // Indicator of cell 5 (samples 18..21): only the cell and its two neighbours see it.
  std::vector<cplx> iv(32);
  for (int k = 18; k <= 21; ++k) iv[k] = 1.0;
  LatticeSignal ind(g, iv);
  SeparableWeight mu = SeparableWeight::bracket(1, 1.0);
  auto cell_norm = [&](std::int64_t l) {
    LpAccumulator acc(E(2));
    for (std::int64_t k = 0; k < 32; ++k) acc.add(std::abs(ind.at({k})) * part({l}, {k}));
    return acc.result() * mu(std::vector<double>{double(centered(l, 8))});
  };
  int touched = 0;
  for (std::int64_t l = 0; l < 8; ++l)
    if (cell_norm(l) > 0) ++touched;
  CHECK(touched <= 3);
  const double own = cell_norm(5);
  const double leak = 2.0 * 2.0 * mu(std::vector<double>{4.0});  // ||ind||_2 = 2 per neighbour
  const double full = wiener_amalgam_norm(ind, part, E(2), E(1), mu);
  CHECK(full >= own);
  CHECK(full <= own + leak);
  CHECK(full == Approx(cell_norm(4) + own + cell_norm(6)).epsilon(1e-12));
}
