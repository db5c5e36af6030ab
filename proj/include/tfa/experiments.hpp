// Extremal families and log-log slope estimation.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfa/exponent.hpp"
#include "tfa/lattice.hpp"
#include "tfa/norms.hpp"
#include "tfa/regions.hpp"
#include "tfa/rihaczek.hpp"
#include "tfa/sequences.hpp"

namespace tfa {

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  double max_residual = 0;  // largest |log y - fit| over the points
};

// Least-squares line through (log x, log y).
inline SlopeFit fit_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit needs equally many x and y values");
  if (xs.size() < 3) throw std::invalid_argument("fit needs at least 3 points");
  const auto n = static_cast<double>(xs.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0) || !std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw std::invalid_argument("fit needs positive finite data");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit needs at least two distinct x values");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double e = ly[i] - (f.intercept + f.slope * lx[i]);
    ss_res += e * e;
    f.max_residual = std::max(f.max_residual, std::abs(e));
  }
  f.r2 = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

struct ScalingReport {
  std::string label;
  std::vector<double> params;  // the fitted x values (1/lambda or N)
  std::vector<double> ratios;
  SlopeFit fit;
  double predicted = 0;
  double tolerance = 0;
  std::uint64_t seed = 0;

  bool pass() const { return std::abs(fit.slope - predicted) <= tolerance; }
};

// Evaluates ratio(x) for every parameter and fits the log-log slope.
inline ScalingReport scaling_ratio_series(const std::vector<double>& params, const std::function<double(double)>& ratio,
                                          double predicted, double tolerance, std::string label = {}) {
  if (params.size() < 4) throw std::invalid_argument("scaling series needs at least 4 parameter values");
  for (std::size_t i = 1; i < params.size(); ++i)
    if (!(params[i] > params[i - 1])) throw std::invalid_argument("scaling parameters must be strictly increasing");
  ScalingReport r;
  r.label = std::move(label);
  r.params = params;
  for (double x : params) {
    double v = ratio(x);
    if (!(v > 0)) throw std::domain_error("scaling ratio must be positive");
    r.ratios.push_back(v);
  }
  r.fit = fit_log_slope(r.params, r.ratios);
  r.predicted = predicted;
  r.tolerance = tolerance;
  return r;
}

// Unnormalized profile exp(-1/(1 - |y|^2)) on the unit ball.
inline double bump_profile(double r2) { return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0; }

// Integral of bump_profile(|y|^2) over R^d.
inline double bump_profile_integral(int d) {
  const int n = 200000;
  double s = 0;
  for (int i = 0; i < n; ++i) {
    double r = (i + 0.5) / n;
    s += std::pow(r, d - 1) * bump_profile(r * r);
  }
  s /= n;
  const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
  return s * sphere;
}

// h(x) = c exp(-1/(1 - |x/delta|^2)) with integral `mass`, and
// h_lambda(x) = lambda^{-d} h(x/lambda), sampled at centered coordinates.
inline LatticeSignal dilated_bump(double lambda, const Grid& grid, double delta = 0.25, double mass = 2.0) {
  if (!(lambda > 0) || lambda > 1) throw std::invalid_argument("dilation lambda must lie in (0, 1]");
  if (!(delta > 0)) throw std::invalid_argument("bump radius must be positive");
  const double radius = lambda * delta;
  if (radius >= 0.5 * grid.alpha * static_cast<double>(grid.N))
    throw std::invalid_argument("bump support overflows the lattice period");
  const double c = mass / (bump_profile_integral(grid.d) * std::pow(delta, grid.d));
  const double scale = c * std::pow(lambda, -grid.d);
  return LatticeSignal::sample(grid, [&](const std::vector<double>& x) {
    double r2 = 0;
    for (double v : x) r2 += (v / radius) * (v / radius);
    return scale * bump_profile(r2);
  });
}

// Dyadic lambdas 1, 1/2, .., 2^{-levels+1}, returned as increasing 1/lambda.
inline std::vector<double> dyadic_inverse_lambdas(int levels, int first = 0) {
  std::vector<double> xs;
  for (int i = first; i < first + levels; ++i) xs.push_back(std::ldexp(1.0, i));
  return xs;
}

// Growth exponent in 1/lambda of the local Rihaczek ratio for dilated bumps:
// d[(|L|-1)/p + 1/q - sum_{j in L} (1 - 1/(p_j ^ 2))] when L is nonempty.
inline double predicted_bump_exponent(const ExtendedExponent& p, const ExtendedExponent& q,
                                      const std::vector<ExtendedExponent>& ps, int d) {
  ExponentTuple t;
  t.m = static_cast<int>(ps.size()) - 1;
  t.p = p;
  t.q = q;
  t.pj = ps;
  t.qj.assign(ps.size(), ExtendedExponent::infinity());
  auto lam = lambda_set(t);
  if (lam.empty()) {
    double best = -1e300;
    for (const auto& pj : ps) best = std::max(best, q.reciprocal_value() - 1 + meet2(pj).reciprocal_value());
    return d * best;
  }
  double s = (static_cast<double>(lam.size()) - 1) * p.reciprocal_value() + q.reciprocal_value();
  for (int j : lam) s -= 1 - meet2(ps[static_cast<std::size_t>(j)]).reciprocal_value();
  return d * s;
}

// ||R(h_l, .., h_l)||_{M^{p,q}} / prod_j ||h_l||_{L^{p_j ^ 2}} for one lambda.
inline double local_rihaczek_bump_ratio(double lambda, const Grid& grid, const ExtendedExponent& p,
                                        const ExtendedExponent& q, const std::vector<ExtendedExponent>& ps,
                                        double delta, const LatticeSignal& window) {
  LatticeSignal h = dilated_bump(lambda, grid, delta);
  std::vector<LatticeSignal> fs(ps.size() - 1, h);
  std::vector<LatticeSignal> windows(ps.size(), window);
  RihaczekStft V(h, fs, windows);
  double num = rihaczek_phase_space_norm(V, PhaseSpaceTarget::modulation, p, q,
                                         SeparableWeight::trivial(2 * ps.size() * static_cast<std::size_t>(grid.d)));
  double den = 1.0;
  for (const auto& pj : ps) den *= lp_norm(h, meet2(pj));
  return num / den;
}

// Ratio ||a star (b..b)||_{l^q} / (||a||_{q_0} prod ||b||_{q_j}) for a = b = 1 on [-2N, 2N]^d.
inline double star_growth_ratio(std::int64_t N, int d, const ExtendedExponent& q,
                                const std::vector<ExtendedExponent>& qs) {
  TruncatedSequence ones = TruncatedSequence::box(d, -2 * N, 2 * N);
  std::vector<TruncatedSequence> bs(qs.size() - 1, ones);
  double den = sequence_norm(ones, qs[0]);
  for (std::size_t j = 1; j < qs.size(); ++j) den *= sequence_norm(ones, qs[j]);
  return sequence_norm(star_convolve(ones, bs), q) / den;
}

inline double star_growth_exponent(int d, const ExtendedExponent& q, const std::vector<ExtendedExponent>& qs) {
  double s = 1.0 + static_cast<double>(qs.size() - 1) * q.reciprocal_value();
  for (const auto& qj : qs) s -= qj.reciprocal_value();
  return d * s;
}

// Ratio ||tau_m(1, .., 1)||_{l^{p,q}} / prod ||1||_{q_j}, ones on [-N, N]^d;
// the first d coordinates are summed in l^p.
inline double tau_growth_ratio(std::int64_t N, int d, const ExtendedExponent& p, const ExtendedExponent& q,
                               const std::vector<ExtendedExponent>& qs) {
  TruncatedSequence ones = TruncatedSequence::box(d, -N, N);
  std::vector<TruncatedSequence> bs(qs.size() - 1, ones);
  double den = 1.0;
  for (const auto& qj : qs) den *= sequence_norm(ones, qj);
  return sequence_mixed_norm(tau_m(ones, bs), d, p, q) / den;
}

inline double tau_growth_exponent(int d, const ExtendedExponent& p, const ExtendedExponent& q,
                                  const std::vector<ExtendedExponent>& qs) {
  double s = p.reciprocal_value() + static_cast<double>(qs.size() - 1) * q.reciprocal_value();
  for (const auto& qj : qs) s -= qj.reciprocal_value();
  return d * s;
}

struct KhinchinResult {
  double mean_p_norm = 0;   // empirical mean of |sum a_k w_k|^p
  double l2_reference = 0;  // (sum |a_k|^2)^{p/2}
  double ratio = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
};

// Independent +-1 signs, one bit of a mt19937_64 word per coefficient.
class SignStream {
 public:
  explicit SignStream(std::uint64_t seed) : rng_(seed) {}

  void draw(std::vector<int>& signs) {
    for (std::size_t k = 0; k < signs.size(); ++k) {
      if (k % 64 == 0) word_ = rng_();
      signs[k] = ((word_ >> (k % 64)) & 1U) ? 1 : -1;
    }
  }

 private:
  std::mt19937_64 rng_;
  std::uint64_t word_ = 0;
};

inline KhinchinResult khinchin_empirical(const std::vector<cplx>& a, const ExtendedExponent& p, std::size_t trials,
                                         std::uint64_t seed = 0) {
  if (p.is_infinite()) throw std::invalid_argument("Khinchin experiment needs finite p");
  if (trials < 1) throw std::invalid_argument("Khinchin experiment needs at least one trial");
  const double pv = p.value();
  SignStream stream(seed);
  std::vector<int> signs(a.size());
  double acc = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    stream.draw(signs);
    cplx s{};
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * static_cast<double>(signs[k]);
    acc += std::pow(std::abs(s), pv);
  }
  KhinchinResult r;
  double l2 = 0;
  for (const auto& v : a) l2 += std::norm(v);
  r.mean_p_norm = acc / static_cast<double>(trials);
  r.l2_reference = std::pow(l2, 0.5 * pv);
  r.ratio = r.l2_reference == 0 ? 0.0 : r.mean_p_norm / r.l2_reference;
  r.seed = seed;
  r.trials = trials;
  return r;
}

// Exact expectation over all 2^n sign vectors.
inline KhinchinResult khinchin_exhaustive(const std::vector<cplx>& a, const ExtendedExponent& p) {
  if (p.is_infinite()) throw std::invalid_argument("Khinchin experiment needs finite p");
  if (a.size() > 24) throw std::invalid_argument("exhaustive enumeration limited to 24 coefficients");
  const double pv = p.value();
  const std::uint64_t count = std::uint64_t{1} << a.size();
  double acc = 0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    cplx s{};
    for (std::size_t k = 0; k < a.size(); ++k) s += ((mask >> k) & 1U) ? a[k] : -a[k];
    acc += std::pow(std::abs(s), pv);
  }
  KhinchinResult r;
  double l2 = 0;
  for (const auto& v : a) l2 += std::norm(v);
  r.mean_p_norm = acc / static_cast<double>(count);
  r.l2_reference = std::pow(l2, 0.5 * pv);
  r.ratio = r.l2_reference == 0 ? 0.0 : r.mean_p_norm / r.l2_reference;
  r.trials = count;
  return r;
}

// Cutoff equal to 1 on |x| <= 1/4 and vanishing for |x| >= 1/2 (per axis).
inline LatticeSignal half_cell_cutoff(const Grid& g) {
  return LatticeSignal::sample(g, [](const std::vector<double>& x) {
    double v = 1.0;
    for (double t : x) v *= 1.0 - smooth_step((std::abs(t) - 0.25) * 4.0);
    return v;
  });
}

// Smooth bump supported in |x| < radius (per axis), peak 1.
inline LatticeSignal cell_bump(const Grid& g, double radius = 0.2) {
  return LatticeSignal::sample(g, [radius](const std::vector<double>& x) {
    double v = 1.0;
    for (double t : x) v *= bump_profile((t / radius) * (t / radius)) * std::exp(1.0);
    return v;
  });
}

namespace detail {

inline std::int64_t samples_per_unit(const Grid& g) {
  const double inv = 1.0 / g.alpha;
  const auto s = static_cast<std::int64_t>(std::llround(inv));
  if (s < 1 || std::abs(inv - static_cast<double>(s)) > 1e-9 || g.N % s != 0)
    throw std::invalid_argument("modulated lattice sums need 1/alpha to be an integer dividing N");
  return s;
}

}  // namespace detail

// g(x) = sum_{(k0, n0)} b(k0, n0) e^{2 pi i n0.x} bump(x - k0), with x in
// physical units; b lives on Z^d x Z^d and the bump must sit inside one cell.
inline LatticeSignal modulated_lattice_sum(const TruncatedSequence& b, const LatticeSignal& bump) {
  const Grid& g = bump.grid();
  const int d = g.d;
  if (b.d() != 2 * d) throw std::invalid_argument("coefficients must live on Z^d x Z^d");
  const std::int64_t s = detail::samples_per_unit(g);
  const std::int64_t freq_scale = g.N / s;  // index of one physical frequency unit
  // Support check: the bump must vanish outside |x| < 1/2.
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (bump[i] == cplx{}) continue;
    Point k = multi_index(i, d, g.N);
    for (int a = 0; a < d; ++a)
      if (2 * std::abs(centered(k[a], g.N)) >= s) throw std::invalid_argument("bump support overflows its cell");
  }
  std::vector<cplx> out(g.size());
  Point t(d), shift(d), freq(d);
  for (const auto& [kn, coef] : b.entries()) {
    for (int a = 0; a < d; ++a) {
      shift[a] = kn[a] * s;
      freq[a] = kn[d + a] * freq_scale;
    }
    LatticeSignal piece = modulate(translate(bump, shift), freq);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] += coef * piece[i];
  }
  return LatticeSignal(g, std::move(out));
}

// Local piece g_{k0}(x) = sum_n b(k0, n) e^{2 pi i n.x} bump(x), centered at the origin.
inline LatticeSignal modulated_local_piece(const TruncatedSequence& b, const Point& k0, const LatticeSignal& bump) {
  const int d = bump.d();
  TruncatedSequence row(2 * d);
  Point z(2 * d);
  for (const auto& [kn, coef] : b.entries()) {
    if (!std::equal(k0.begin(), k0.end(), kn.begin())) continue;
    for (int a = 0; a < d; ++a) z[d + a] = kn[d + a];
    row.set(z, coef);
  }
  return modulated_lattice_sum(row, bump);
}

}  // namespace tfa
