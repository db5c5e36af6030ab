#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "tfa/tfa.hpp"

using namespace tfa;
using Catch::Approx;

namespace {

ExtendedExponent E(std::int64_t p) { return ExtendedExponent::from_value(p); }
ExtendedExponent Rc(const Rational& r) { return ExtendedExponent::from_reciprocal(r); }
const ExtendedExponent kInf = ExtendedExponent::infinity();

ScalingReport bump_series(const Grid& grid, double delta, int levels, int first, const ExtendedExponent& p,
                          const std::vector<ExtendedExponent>& ps) {
  LatticeSignal w = gaussian_window(grid);
  return scaling_ratio_series(
      dyadic_inverse_lambdas(levels, first),
      [&](double inv) { return local_rihaczek_bump_ratio(1.0 / inv, grid, p, p, ps, delta, w); },
      predicted_bump_exponent(p, p, ps, 1), 0.2);
}

std::vector<double> dyadic_ns(std::int64_t lo, std::int64_t hi) {
  std::vector<double> ns;
  for (std::int64_t n = lo; n <= hi; n *= 2) ns.push_back(static_cast<double>(n));
  return ns;
}

}  // namespace

TEST_CASE("log-log slope fitting", "[experiments][fit]") {
  std::vector<double> xs{1, 2, 4, 8, 16};
  SlopeFit lin = fit_log_slope(xs, xs);
  CHECK(lin.slope == Approx(1.0));
  CHECK(lin.r2 == Approx(1.0));
  std::vector<double> sq;
  for (double x : xs) sq.push_back(3 * x * x);
  SlopeFit quad = fit_log_slope(xs, sq);
  CHECK(quad.slope == Approx(2.0));
  CHECK(std::exp(quad.intercept) == Approx(3.0));
  CHECK(quad.max_residual < 1e-12);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> noise(0.9, 1.1);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x8, y8;
    for (int i = 0; i < 8; ++i) {
      double x = std::ldexp(1.0, i);
      x8.push_back(x);
      y8.push_back(std::pow(x, -0.75) * noise(rng));
    }
    CHECK(std::abs(fit_log_slope(x8, y8).slope + 0.75) < 0.1);
  }

  CHECK_THROWS(fit_log_slope({1, 2}, {1, 2}));
  CHECK_THROWS(fit_log_slope({1, 2, 3}, {1, 0, 3}));
  CHECK_THROWS(fit_log_slope({1, 2, 3}, {1, 2}));
  CHECK_THROWS(fit_log_slope({2, 2, 2}, {1, 2, 3}));
}

TEST_CASE("scaling series validation", "[experiments]") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS(scaling_ratio_series({1, 2, 4}, one, 0, 0.1));
  CHECK_THROWS(scaling_ratio_series({1, 2, 2, 4}, one, 0, 0.1));
  CHECK_THROWS_AS(scaling_ratio_series({1, 2, 4, 8}, [](double) { return 0.0; }, 0, 0.1), std::domain_error);
  ScalingReport r = scaling_ratio_series({1, 2, 4, 8}, [](double x) { return x * std::sqrt(x); }, 1.5, 0.01);
  CHECK(r.pass());
  CHECK(r.fit.slope == Approx(1.5));
}

TEST_CASE("dilated bumps", "[experiments][bump]") {
  const Grid grid = Grid::balanced(1, 1024);
  SECTION("lambda = 1 is the bump itself") {
    LatticeSignal h = dilated_bump(1.0, grid, 4.0);
    const double c = 2.0 / (bump_profile_integral(1) * 4.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double x = static_cast<double>(centered(static_cast<std::int64_t>(i), grid.N)) * grid.alpha;
      CHECK(std::abs(h[i] - c * bump_profile((x / 4) * (x / 4))) < 1e-14);
    }
    // Mass 2 in Riemann measure.
    cplx mass = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) mass += h[i] * grid.alpha;
    CHECK(mass.real() == Approx(2.0).epsilon(1e-6));
  }
  SECTION("the bump profile integral matches quadrature") {
    // Independent midpoint rule over [-1, 1].
    const int n = 400000;
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double y = -1.0 + (i + 0.5) * 2.0 / n;
      s += bump_profile(y * y) * 2.0 / n;
    }
    CHECK(bump_profile_integral(1) == Approx(s).epsilon(1e-6));
  }
  SECTION("L^2 norms scale like lambda^(1/p - 1)") {
    std::vector<double> inv{1, 2, 4, 8}, norms;
    for (double x : inv) norms.push_back(lp_norm(dilated_bump(1.0 / x, grid, 4.0), E(2)));
    CHECK(std::abs(fit_log_slope(inv, norms).slope - 0.5) < 0.05);
  }
  SECTION("the Fourier transform stays above 1 on a box growing like 1/lambda") {
    // Fine frequency spacing: period 128, so beta = 1/128.
    const Grid fine(1, 4096, 1.0 / 32);
    std::vector<double> inv{1, 2, 4, 8}, radius;
    for (double x : inv) {
      LatticeSignal h = dilated_bump(1.0 / x, fine, 4.0);
      LatticeSignal H = dft(h);
      cplx riemann = 0;
      for (std::size_t i = 0; i < fine.size(); ++i) riemann += h[i] * fine.alpha;
      CHECK(std::abs(H[0] - riemann) < 1e-12);
      // 1/lambda = 8 leaves 16 samples across the bump.
      CHECK(H[0].real() == Approx(2.0).epsilon(1e-4));
      std::int64_t n = 0;
      while (n + 1 < fine.N / 2 && H[static_cast<std::size_t>(n + 1)].real() >= 1.0) ++n;
      radius.push_back(static_cast<double>(n) * fine.dual_alpha());
    }
    CHECK(std::abs(fit_log_slope(inv, radius).slope - 1.0) < 0.1);
  }
  CHECK_THROWS(dilated_bump(0.0, grid));
  CHECK_THROWS(dilated_bump(1.5, grid));
  CHECK_THROWS(dilated_bump(1.0, grid, 20.0));
  CHECK(dyadic_inverse_lambdas(5) == std::vector<double>{1, 2, 4, 8, 16});
  CHECK(dyadic_inverse_lambdas(4, 1) == std::vector<double>{2, 4, 8, 16});
}

TEST_CASE("predicted growth exponents", "[experiments]") {
  CHECK(predicted_bump_exponent(E(1), E(1), {E(2), E(2)}, 1) == Approx(1.0));
  CHECK(predicted_bump_exponent(E(2), E(2), {E(2), E(2)}, 1) == Approx(0.0));
  CHECK(predicted_bump_exponent(E(1), E(1), {E(2), E(2)}, 2) == Approx(2.0));
  CHECK(star_growth_exponent(1, E(2), {E(2), E(2)}) == Approx(0.5));
  CHECK(star_growth_exponent(1, E(1), {E(1), E(1)}) == Approx(0.0));
  CHECK(tau_growth_exponent(1, E(1), E(1), {E(2), E(2)}) == Approx(1.0));
}

TEST_CASE("local Rihaczek scaling matches its verdicts", "[experiments][scaling][slow]") {
  const Grid grid(1, 2048, 1.0 / 512);
  ScalingReport unb = bump_series(grid, 0.25, 4, 1, E(1), {E(2), E(2)});
  CHECK_FALSE(local_brwm_verdict(E(1), E(1), {E(2), E(2)}).bounded);
  CHECK(std::abs(unb.fit.slope - 1.0) < 0.2);
  CHECK(unb.fit.slope > 0);

  ScalingReport b = bump_series(grid, 0.25, 4, 1, E(2), {E(2), E(2)});
  CHECK(local_brwm_verdict(E(2), E(2), {E(2), E(2)}).bounded);
  CHECK(std::abs(b.fit.slope) < 0.1);

  SECTION("halving the sample spacing moves the slope by less than 0.1") {
    ScalingReport coarse = bump_series(Grid(1, 1024, 1.0 / 256), 0.25, 4, 1, E(1), {E(2), E(2)});
    CHECK(std::abs(coarse.fit.slope - unb.fit.slope) < 0.1);
  }
}

TEST_CASE("refinement stability on balanced grids", "[experiments][scaling]") {
  for (const auto& p : {E(1), E(2)}) {
    double s512 = bump_series(Grid::balanced(1, 512), 4.0, 5, 0, p, {E(2), E(2)}).fit.slope;
    double s1024 = bump_series(Grid::balanced(1, 1024), 4.0, 5, 0, p, {E(2), E(2)}).fit.slope;
    CHECK(std::abs(s512 - s1024) < 0.1);
  }
}

TEST_CASE("scaling reports are deterministic", "[experiments][property]") {
  const Grid grid = Grid::balanced(1, 256);
  ScalingReport a = bump_series(grid, 2.0, 4, 0, E(1), {E(2), E(2)});
  ScalingReport b = bump_series(grid, 2.0, 4, 0, E(1), {E(2), E(2)});
  CHECK(a.ratios == b.ratios);
  CHECK(a.fit.slope == b.fit.slope);
  KhinchinResult k1 = khinchin_empirical(std::vector<cplx>(30, 1.0), E(3), 100, 5);
  KhinchinResult k2 = khinchin_empirical(std::vector<cplx>(30, 1.0), E(3), 100, 5);
  CHECK(k1.mean_p_norm == k2.mean_p_norm);
  CHECK(k1.seed == 5);
}

TEST_CASE("truncated-ones growth laws", "[experiments][discrete]") {
  SECTION("star convolution") {
    auto slope = [](ExtendedExponent q, std::vector<ExtendedExponent> qs) {
      return scaling_ratio_series(
                 dyadic_ns(8, 128), [&](double n) { return star_growth_ratio(static_cast<std::int64_t>(n), 1, q, qs); },
                 star_growth_exponent(1, q, qs), 0.1)
          .fit.slope;
    };
    CHECK(std::abs(slope(E(2), {E(2), E(2)}) - 0.5) < 0.1);
    CHECK(std::abs(slope(E(1), {E(1), E(1)})) < 0.1);
    // Sign agreement with the verdict wherever the predicted exponent is clear of zero.
    const std::vector<Rational> r{0, Rational(1, 2), 1};
    for (const auto& rq : r)
      for (const auto& r0 : r)
        for (const auto& r1 : r) {
          ExtendedExponent q = Rc(rq);
          std::vector<ExtendedExponent> qs{Rc(r0), Rc(r1)};
          double predicted = star_growth_exponent(1, q, qs);
          if (std::abs(predicted) < 0.25) continue;
          CHECK((slope(q, qs) > 0) == !star_conv_verdict(q, qs).bounded);
        }
  }
  SECTION("tau_m embedding") {
    for (auto [p, q, q0, q1] : {std::tuple{E(1), E(1), E(2), E(2)}, {E(1), E(1), E(1), E(1)}, {E(2), E(2), E(1), E(1)},
                                {kInf, E(2), E(2), E(2)}, {E(1), kInf, kInf, kInf}}) {
      std::vector<ExtendedExponent> qs{q0, q1};
      ScalingReport rep = scaling_ratio_series(
          dyadic_ns(8, 128), [&](double n) { return tau_growth_ratio(static_cast<std::int64_t>(n), 1, p, q, qs); },
          tau_growth_exponent(1, p, q, qs), 0.1);
      CHECK(rep.pass());
      if (std::abs(rep.predicted) >= 0.25) CHECK((rep.fit.slope > 0) == !tau_embed_verdict(p, q, qs).bounded);
    }
  }
}

TEST_CASE("Khinchin experiment", "[experiments][khinchin]") {
  KhinchinResult single = khinchin_empirical({cplx(3, 4)}, E(3), 60, 0);
  CHECK(single.ratio == Approx(1.0));
  CHECK(single.mean_p_norm == Approx(125.0));

  const std::vector<cplx> ones(64, 1.0);
  KhinchinResult two = khinchin_empirical(ones, E(2), 200, 0);
  CHECK(two.ratio >= 0.8);
  CHECK(two.ratio <= 1.25);
  KhinchinResult four = khinchin_empirical(ones, E(4), 200, 0);
  CHECK(four.ratio >= 1.0);
  CHECK(four.ratio <= 3.0);

  // E|sum of n signs|^4 = 3n^2 - 2n.
  const std::vector<cplx> ten(10, 1.0);
  CHECK(khinchin_exhaustive(ten, E(4)).mean_p_norm == Approx(280.0));
  CHECK(khinchin_exhaustive(ten, E(2)).ratio == Approx(1.0));
  CHECK(khinchin_exhaustive(ten, E(2)).trials == 1024);

  CHECK(khinchin_empirical(ones, E(2), 200, 1).mean_p_norm != two.mean_p_norm);
  CHECK_THROWS(khinchin_empirical(ones, kInf, 100, 0));
  CHECK_THROWS(khinchin_empirical(ones, E(2), 0, 0));
  CHECK_THROWS(khinchin_exhaustive(std::vector<cplx>(25, 1.0), E(2)));
}

TEST_CASE("modulated lattice sums", "[experiments][lattice-sum]") {
  // Eight unit cells of eight samples each.
  const Grid g(1, 64, 1.0 / 8);
  const LatticeSignal bump = cell_bump(g);
  const std::int64_t s = 8, fscale = 8;

  SECTION("a single coefficient at the origin gives the bump") {
    TruncatedSequence b = TruncatedSequence::delta({0, 0});
    CHECK(max_abs_diff(modulated_lattice_sum(b, bump), bump) < 1e-15);
  }
  SECTION("explicit synthesis") {
    std::mt19937_64 rng(12);
    TruncatedSequence b = oracle::random_sequence(2, -2, 2, 0.5, rng);
    LatticeSignal gsum = modulated_lattice_sum(b, bump);
    for (std::int64_t t = 0; t < g.N; ++t) {
      cplx want = 0;
      const double x = static_cast<double>(centered(t, g.N)) * g.alpha;
      for (const auto& [kn, c] : b.entries()) {
        const std::int64_t local = centered(t - kn[0] * s, g.N);
        want += c * std::exp(cplx(0, 2 * std::numbers::pi * static_cast<double>(kn[1]) * x)) *
                bump.at({local});
      }
      CHECK(std::abs(gsum.at({t}) - want) < 1e-12);
    }
  }
  SECTION("STFT samples recover the local Fourier coefficients") {
    std::mt19937_64 rng(13);
    const LatticeSignal cutoff = half_cell_cutoff(g);
    for (int trial = 0; trial < 5; ++trial) {
      TruncatedSequence b = oracle::random_sequence(2, -3, 3, 0.4, rng);
      StftArray V = stft(modulated_lattice_sum(b, bump), cutoff);
      double res = 0;
      for (std::int64_t k0 = -3; k0 <= 3; ++k0) {
        LatticeSignal local = dft(modulated_local_piece(b, {k0}, bump));
        for (std::int64_t n0 = -3; n0 <= 3; ++n0)
          res = std::max(res, std::abs(V.at(Point{wrap(k0 * s, g.N)}, Point{wrap(n0 * fscale, g.N)}) -
                                       local.at({n0 * fscale})));
      }
      CHECK(res < 1e-9);
    }
  }
  SECTION("Wiener L^2 norm is comparable to the coefficient l^2 norm") {
    std::mt19937_64 rng(14);
    PartitionOfUnity part(g, PartitionOfUnity::default_step(g));
    double lo = 1e300, hi = 0;
    for (int trial = 0; trial < 20; ++trial) {
      TruncatedSequence b = oracle::random_sequence(2, -3, 3, 0.3, rng);
      if (b.empty()) continue;
      double ratio = wiener_amalgam_norm(modulated_lattice_sum(b, bump), part, E(2), E(2)) / sequence_norm(b, E(2));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 4.0);
  }
  CHECK_THROWS(modulated_lattice_sum(TruncatedSequence::delta({0, 0}), cell_bump(g, 0.6)));
  CHECK_THROWS(modulated_lattice_sum(TruncatedSequence::delta({0, 0}), cell_bump(Grid(1, 64, 0.3))));
  CHECK_THROWS(modulated_lattice_sum(TruncatedSequence::delta({0}), bump));
}
