// Command-line front end: check, scan, norm, rihaczek, experiment, generate.
//
// Every command writes to the supplied streams so it can be driven from
// tests. Exit codes: 0 success, 1 input or runtime error, 2 usage error.

#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfa/tfa.hpp"

namespace tfa::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw string values of the options of one subcommand.
struct Args {
  std::map<std::string, std::string> single;
  std::map<std::string, std::vector<std::string>> multi;
  std::map<std::string, bool> flags;

  bool has(const std::string& k) const { return single.count(k) > 0; }

  const std::string& need(const std::string& k) const {
    auto it = single.find(k);
    if (it == single.end()) throw UsageError("missing required flag --" + k);
    return it->second;
  }

  std::string get(const std::string& k, const std::string& fallback) const {
    auto it = single.find(k);
    return it == single.end() ? fallback : it->second;
  }

  bool flag(const std::string& k) const {
    auto it = flags.find(k);
    return it != flags.end() && it->second;
  }
};

inline ExtendedExponent exponent_arg(const Args& a, const std::string& k) {
  const std::string& v = a.need(k);
  try {
    return ExtendedExponent::parse(v);
  } catch (const std::exception& e) {
    throw std::invalid_argument("--" + k + ": " + e.what());
  }
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<ExtendedExponent> exponent_list(const Args& a, const std::string& k) {
  std::vector<ExtendedExponent> out;
  for (const auto& item : split_list(a.need(k))) {
    try {
      out.push_back(ExtendedExponent::parse(item));
    } catch (const std::exception& e) {
      throw std::invalid_argument("--" + k + ": " + e.what());
    }
  }
  if (out.empty()) throw std::invalid_argument("--" + k + ": empty list");
  return out;
}

template <class T>
T number_arg(const Args& a, const std::string& k) {
  const std::string& v = a.need(k);
  try {
    std::size_t pos = 0;
    T out{};
    if constexpr (std::is_same_v<T, double>)
      out = std::stod(v, &pos);
    else if constexpr (std::is_same_v<T, std::uint64_t>)
      out = std::stoull(v, &pos);
    else
      out = static_cast<T>(std::stoll(v, &pos));
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("--" + k + ": malformed number '" + v + "'");
  }
}

template <class T>
T number_arg(const Args& a, const std::string& k, T fallback) {
  return a.has(k) ? number_arg<T>(a, k) : fallback;
}

inline Rational rational_arg(const Args& a, const std::string& k) {
  try {
    return parse_rational(a.need(k));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument("--" + k + ": " + e.what());
  }
}

inline std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- check / scan

struct RegionInputs {
  RegionKind kind;
  std::map<std::string, ExtendedExponent> scalars;  // p, q, p1, ...
  std::vector<ExtendedExponent> pj, qj;
  Rational s{0};
  int d = 1;
  int m = 0;
};

inline RegionInputs region_inputs(const Args& a) {
  RegionInputs in{parse_region_kind(a.need("kind")), {}, {}, {}, Rational(0), 1, 0};
  auto need_exp = [&](const char* k) { in.scalars.emplace(k, exponent_arg(a, k)); };
  switch (in.kind) {
    case RegionKind::BRWM:
    case RegionKind::BRWF:
      need_exp("p");
      need_exp("q");
      in.pj = exponent_list(a, "pj");
      in.qj = exponent_list(a, "qj");
      break;
    case RegionKind::CONV:
    case RegionKind::STAR_CONV:
      need_exp("q");
      in.qj = exponent_list(a, "qj");
      break;
    case RegionKind::TAU_EMBED:
      need_exp("p");
      need_exp("q");
      in.qj = exponent_list(a, "qj");
      break;
    case RegionKind::LOCAL_BRWM:
      need_exp("p");
      need_exp("q");
      in.pj = exponent_list(a, "pj");
      break;
    case RegionKind::BPWM_LINEAR:
    case RegionKind::BPWF_LINEAR:
      for (const char* k : {"p", "q", "p1", "q1", "p2", "q2"}) need_exp(k);
      break;
    case RegionKind::BESSEL_BPWM:
      for (const char* k : {"p1", "q1", "p2", "q2"}) need_exp(k);
      in.s = rational_arg(a, "s");
      in.d = number_arg<int>(a, "d", 1);
      break;
  }
  std::size_t list = std::max(in.pj.size(), in.qj.size());
  if (!in.pj.empty() && !in.qj.empty() && in.pj.size() != in.qj.size())
    throw std::invalid_argument("--pj and --qj must have the same length");
  if (a.has("m")) {
    in.m = number_arg<int>(a, "m");
    if (list > 0 && list != static_cast<std::size_t>(in.m + 1))
      throw std::invalid_argument("--m " + std::to_string(in.m) + " needs m+1 = " + std::to_string(in.m + 1) +
                                  " list entries, got " + std::to_string(list));
  } else if (list > 0) {
    in.m = static_cast<int>(list) - 1;
  }
  return in;
}

inline Verdict evaluate_region(const RegionInputs& in) {
  const auto& s = in.scalars;
  auto x = [&](const char* k) { return s.at(k); };
  switch (in.kind) {
    case RegionKind::BRWM:
    case RegionKind::BRWF: {
      ExponentTuple t{in.m, x("p"), x("q"), in.pj, in.qj};
      return in.kind == RegionKind::BRWM ? brwm_verdict(t) : brwf_verdict(t);
    }
    case RegionKind::CONV:
      return conv_sharp_verdict(x("q"), in.qj);
    case RegionKind::STAR_CONV:
      return star_conv_verdict(x("q"), in.qj);
    case RegionKind::TAU_EMBED:
      return tau_embed_verdict(x("p"), x("q"), in.qj);
    case RegionKind::LOCAL_BRWM:
      return local_brwm_verdict(x("p"), x("q"), in.pj);
    case RegionKind::BPWM_LINEAR:
      return bpwm_verdict(x("p"), x("q"), x("p1"), x("q1"), x("p2"), x("q2"));
    case RegionKind::BPWF_LINEAR:
      return bpwf_verdict(x("p"), x("q"), x("p1"), x("q1"), x("p2"), x("q2"));
    case RegionKind::BESSEL_BPWM:
      return bessel_bpwm_verdict(in.s, in.d, x("p1"), x("q1"), x("p2"), x("q2"));
  }
  throw std::logic_error("unhandled region kind");
}

inline int cmd_check(const Args& a, std::ostream& out) {
  RegionInputs in = region_inputs(a);
  Verdict v = evaluate_region(in);
  json j = to_json(v);
  j["kind"] = a.need("kind");
  out << json_text(j);
  return 0;
}

struct Sweep {
  std::string name;
  std::vector<Rational> values;
};

// name=lo:hi:step, values in reciprocal units (the value itself for s).
inline Sweep parse_sweep(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("--sweep expects name=lo:hi:step, got '" + spec + "'");
  Sweep sw{spec.substr(0, eq), {}};
  std::vector<std::string> parts;
  std::istringstream in(spec.substr(eq + 1));
  std::string cur;
  while (std::getline(in, cur, ':')) parts.push_back(cur);
  if (parts.size() != 2 && parts.size() != 3)
    throw std::invalid_argument("--sweep " + sw.name + ": expected lo:hi or lo:hi:step");
  Rational lo = parse_rational(parts[0]), hi = parse_rational(parts[1]);
  Rational step = parts.size() == 3 ? parse_rational(parts[2]) : Rational(1);
  if (hi < lo) throw std::invalid_argument("--sweep " + sw.name + ": empty range (hi < lo)");
  if (step <= 0) throw std::invalid_argument("--sweep " + sw.name + ": step must be positive");
  for (Rational v = lo; v <= hi; v += step) sw.values.push_back(v);
  return sw;
}

inline std::string rational_text(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Applies one swept value to the inputs. Names: s, p, q, p1..q2, pjK, qjK.
inline void apply_sweep_value(RegionInputs& in, const std::string& name, const Rational& v) {
  if (name == "s") {
    in.s = v;
    return;
  }
  if (v < 0) throw std::invalid_argument("--sweep " + name + ": reciprocal values must be nonnegative");
  ExtendedExponent e = ExtendedExponent::from_reciprocal(v);
  for (const char* list : {"pj", "qj"}) {
    if (name.rfind(list, 0) == 0 && name.size() > 2) {
      std::size_t idx = std::stoul(name.substr(2));
      auto& vec = std::string(list) == "pj" ? in.pj : in.qj;
      if (idx >= vec.size()) throw std::invalid_argument("--sweep " + name + ": index beyond the list");
      vec[idx] = e;
      return;
    }
  }
  auto it = in.scalars.find(name);
  if (it == in.scalars.end()) throw std::invalid_argument("--sweep: '" + name + "' is not an exponent of this kind");
  it->second = e;
}

inline std::string join(const std::vector<std::string>& xs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? std::string(1, sep) : "") + xs[i];
  return s;
}

inline int cmd_scan(const Args& a, std::ostream& out) {
  auto it = a.multi.find("sweep");
  if (it == a.multi.end() || it->second.empty()) throw UsageError("missing required flag --sweep");
  if (it->second.size() > 2) throw std::invalid_argument("scan supports one or two --sweep options");
  std::vector<Sweep> sweeps;
  for (const auto& s : it->second) sweeps.push_back(parse_sweep(s));

  // Placeholders keep the required-flag check satisfied for swept names.
  Args filled = a;
  for (const auto& s : sweeps) {
    if (s.name == "s" || s.name.rfind("pj", 0) == 0 || s.name.rfind("qj", 0) == 0) {
      if (s.name == "s" && !filled.has("s")) filled.single["s"] = "0";
      continue;
    }
    if (!filled.has(s.name)) filled.single[s.name] = "inf";
  }
  RegionInputs base = region_inputs(filled);

  std::ostringstream csv;
  for (const auto& s : sweeps) csv << (s.name == "s" ? "s" : "1/" + s.name) << ',';
  csv << "bounded,failed,boundary\n";
  const std::size_t outer = sweeps[0].values.size();
  const std::size_t inner = sweeps.size() > 1 ? sweeps[1].values.size() : 1;
  for (std::size_t i = 0; i < outer; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      RegionInputs in = base;
      apply_sweep_value(in, sweeps[0].name, sweeps[0].values[i]);
      csv << rational_text(sweeps[0].values[i]) << ',';
      if (sweeps.size() > 1) {
        apply_sweep_value(in, sweeps[1].name, sweeps[1].values[k]);
        csv << rational_text(sweeps[1].values[k]) << ',';
      }
      Verdict v = evaluate_region(in);
      csv << (v.bounded ? "true" : "false") << ',' << join(v.failed_conditions, ';') << ','
          << (v.boundary ? "true" : "false") << '\n';
    }
  if (a.has("output"))
    write_text_file(a.need("output"), csv.str());
  else
    out << csv.str();
  return 0;
}

// ---------------------------------------------------------------- signals

inline LatticeSignal random_signal(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<cplx> v(g.size());
  for (auto& x : v) {
    double re = nd(rng);
    double im = nd(rng);
    x = {re, im};
  }
  return LatticeSignal(g, std::move(v));
}

inline Grid grid_arg(const Args& a) {
  int d = number_arg<int>(a, "d", 1);
  auto N = number_arg<std::int64_t>(a, "N", 16);
  if (a.flag("balanced")) return Grid::balanced(d, N);
  return Grid(d, N, number_arg<double>(a, "alpha", 1.0));
}

inline int cmd_generate(const Args& a, std::ostream& out) {
  Grid g = grid_arg(a);
  std::string kind = a.need("kind");
  std::mt19937_64 rng(number_arg<std::uint64_t>(a, "seed", 0));
  LatticeSignal f;
  if (kind == "delta")
    f = LatticeSignal::delta(g, Point(static_cast<std::size_t>(g.d), 0));
  else if (kind == "gaussian")
    f = gaussian_window(g);
  else if (kind == "bump")
    f = dilated_bump(number_arg<double>(a, "lambda", 1.0), g, number_arg<double>(a, "delta", 0.25));
  else if (kind == "random")
    f = random_signal(g, rng);
  else
    throw std::invalid_argument("--kind: unknown signal kind '" + kind + "'");
  std::string text = json_text(to_json(f));
  if (a.has("output"))
    write_text_file(a.need("output"), text);
  else
    out << text;
  return 0;
}

inline LatticeSignal load_signal(const std::string& path) {
  try {
    return signal_from_json(read_json_file(path));
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
}

inline int cmd_norm(const Args& a, std::ostream& out) {
  LatticeSignal f = load_signal(a.need("input"));
  const std::string space = a.need("space");
  ExtendedExponent p = exponent_arg(a, "p");
  ExtendedExponent q = a.has("q") ? exponent_arg(a, "q") : p;
  LatticeSignal window = a.has("window") ? load_signal(a.need("window")) : gaussian_window(f.grid());
  std::optional<SeparableWeight> w;
  if (a.has("weight")) w = weight_from_json(read_json_file(a.need("weight")));
  double value = 0;
  if (space == "modulation") {
    value = modulation_norm(f, window, p, q, w ? *w : SeparableWeight::trivial(2 * f.d()));
  } else if (space == "fourier-modulation" || space == "fourier_modulation") {
    value = fourier_modulation_norm(f, window, p, q, w ? *w : SeparableWeight::trivial(2 * f.d()));
  } else if (space == "wiener") {
    std::int64_t step = number_arg<std::int64_t>(a, "step", PartitionOfUnity::default_step(f.grid()));
    value = wiener_amalgam_norm(f, PartitionOfUnity(f.grid(), step), p, q,
                                w ? *w : SeparableWeight::trivial(static_cast<std::size_t>(f.d())));
  } else if (space == "lp") {
    value = lp_norm(f, p);
  } else {
    throw std::invalid_argument("--space: unknown space '" + space + "'");
  }
  json j{{"space", space}, {"p", p.to_string()}, {"q", q.to_string()}, {"value", value}};
  out << json_text(j);
  return 0;
}

// ---------------------------------------------------------------- rihaczek

inline int cmd_rihaczek(const Args& a, std::ostream& out) {
  const double tol = number_arg<double>(a, "tolerance", 1e-9);
  if (a.flag("check-identity")) {
    LatticeSignal g;
    std::vector<LatticeSignal> fs, windows;
    json j;
    if (a.has("g")) {
      g = load_signal(a.need("g"));
      auto it = a.multi.find("f");
      if (it == a.multi.end() || it->second.empty()) throw UsageError("missing required flag --f");
      for (const auto& path : it->second) fs.push_back(load_signal(path));
      windows.assign(fs.size() + 1, gaussian_window(g.grid()));
    } else {
      const int m = number_arg<int>(a, "m", 1);
      const auto N = number_arg<std::int64_t>(a, "N", 8);
      const auto seed = number_arg<std::uint64_t>(a, "seed", 0);
      if (m < 1) throw std::invalid_argument("--m must be >= 1");
      Grid grid(number_arg<int>(a, "d", 1), N, number_arg<double>(a, "alpha", 1.0));
      std::mt19937_64 rng(seed);
      g = random_signal(grid, rng);
      for (int i = 0; i < m; ++i) fs.push_back(random_signal(grid, rng));
      for (int i = 0; i <= m; ++i) windows.push_back(random_signal(grid, rng));
      j["seed"] = seed;
    }
    const int m = static_cast<int>(fs.size());
    StftArray closed = rihaczek_stft_closed_form(g, fs, windows);
    std::vector<LatticeSignal> tail(windows.begin() + 1, windows.end());
    StftArray direct = phase_space_stft(rihaczek(g, fs), rihaczek(windows[0], tail));
    double res = max_abs_diff(closed.values, direct.values);
    j["m"] = m;
    j["N"] = g.N();
    j["max_residual"] = res;
    j["tolerance"] = tol;
    j["pass"] = res < tol;
    out << json_text(j);
    return 0;
  }
  LatticeSignal g = load_signal(a.need("g"));
  auto it = a.multi.find("f");
  if (it == a.multi.end() || it->second.empty()) throw UsageError("missing required flag --f");
  std::vector<LatticeSignal> fs;
  for (const auto& path : it->second) fs.push_back(load_signal(path));
  std::string text = json_text(to_json(rihaczek(g, fs)));
  if (a.has("output"))
    write_text_file(a.need("output"), text);
  else
    out << text;
  return 0;
}

// ---------------------------------------------------------------- experiment

inline json report_json(const std::string& kind, const ScalingReport& r) {
  return json{{"kind", kind},
              {"label", r.label},
              {"params", r.params},
              {"ratios", r.ratios},
              {"slope", r.fit.slope},
              {"intercept", r.fit.intercept},
              {"r2", r.fit.r2},
              {"max_residual", r.fit.max_residual},
              {"predicted", r.predicted},
              {"tolerance", r.tolerance},
              {"seed", r.seed},
              {"pass", r.pass()}};
}

inline std::string report_csv(const ScalingReport& r, const std::string& param_name) {
  std::ostringstream csv;
  csv << std::setprecision(17) << param_name << ",ratio\n";
  for (std::size_t i = 0; i < r.params.size(); ++i) csv << r.params[i] << ',' << r.ratios[i] << '\n';
  return csv.str();
}

// Scaling demo grid: 2048 samples at spacing 1/512, bump radius 1/4.
struct ScalingSetup {
  std::int64_t N = 2048;
  double alpha = 1.0 / 512;
  double delta = 0.25;
  int levels = 4;  // lambda = 1/2 .. 1/16
  int first = 1;
};

inline ScalingReport run_bump_scaling(const ExtendedExponent& p, const ExtendedExponent& q,
                                      const std::vector<ExtendedExponent>& ps, double tolerance,
                                      const ScalingSetup& setup = {}) {
  Grid grid(1, setup.N, setup.alpha);
  LatticeSignal window = gaussian_window(grid);
  double predicted = predicted_bump_exponent(p, q, ps, 1);
  return scaling_ratio_series(
      dyadic_inverse_lambdas(setup.levels, setup.first),
      [&](double inv) { return local_rihaczek_bump_ratio(1.0 / inv, grid, p, q, ps, setup.delta, window); },
      predicted, tolerance, "local Rihaczek ratio vs 1/lambda");
}

inline int cmd_experiment(const Args& a, std::ostream& out) {
  const std::string kind = a.need("kind");
  json report;
  std::string csv;
  if (kind == "scaling") {
    const std::string tuple = a.get("tuple", "unbounded-demo");
    ExtendedExponent p, q;
    std::vector<ExtendedExponent> ps;
    double tol = 0;
    if (tuple == "unbounded-demo") {
      p = q = ExtendedExponent::from_value(1);
      ps = {ExtendedExponent::from_value(2), ExtendedExponent::from_value(2)};
      tol = 0.2;
    } else if (tuple == "bounded-demo") {
      p = q = ExtendedExponent::from_value(2);
      ps = {ExtendedExponent::from_value(2), ExtendedExponent::from_value(2)};
      tol = 0.1;
    } else if (tuple == "custom") {
      p = exponent_arg(a, "p");
      q = exponent_arg(a, "q");
      ps = exponent_list(a, "pj");
      tol = 0.2;
    } else {
      throw std::invalid_argument("--tuple: expected unbounded-demo, bounded-demo or custom");
    }
    tol = number_arg<double>(a, "tolerance", tol);
    ScalingSetup setup;
    setup.N = number_arg<std::int64_t>(a, "N", setup.N);
    setup.alpha = number_arg<double>(a, "alpha", setup.alpha);
    ScalingReport r = run_bump_scaling(p, q, ps, tol, setup);
    report = report_json(kind, r);
    report["tuple"] = tuple;
    report["verdict_bounded"] = local_brwm_verdict(p, q, ps).bounded;
    csv = report_csv(r, "inv_lambda");
  } else if (kind == "star-growth" || kind == "tau-growth") {
    ExtendedExponent q = a.has("q") ? exponent_arg(a, "q") : ExtendedExponent::from_value(2);
    std::vector<ExtendedExponent> qs = a.has("qj") ? exponent_list(a, "qj") : std::vector<ExtendedExponent>(2, q);
    const int d = number_arg<int>(a, "d", 1);
    std::vector<double> Ns;
    for (std::int64_t n = 8; n <= number_arg<std::int64_t>(a, "Nmax", 128); n *= 2) Ns.push_back(static_cast<double>(n));
    ScalingReport r;
    if (kind == "star-growth") {
      r = scaling_ratio_series(
          Ns, [&](double n) { return star_growth_ratio(static_cast<std::int64_t>(n), d, q, qs); },
          star_growth_exponent(d, q, qs), number_arg<double>(a, "tolerance", 0.1), "star convolution of truncated ones");
      report = report_json(kind, r);
      report["verdict_bounded"] = star_conv_verdict(q, qs).bounded;
    } else {
      ExtendedExponent p = a.has("p") ? exponent_arg(a, "p") : ExtendedExponent::from_value(2);
      r = scaling_ratio_series(
          Ns, [&](double n) { return tau_growth_ratio(static_cast<std::int64_t>(n), d, p, q, qs); },
          tau_growth_exponent(d, p, q, qs), number_arg<double>(a, "tolerance", 0.1), "tau_m of truncated ones");
      report = report_json(kind, r);
      report["verdict_bounded"] = tau_embed_verdict(p, q, qs).bounded;
    }
    csv = report_csv(r, "N");
  } else if (kind == "bump-norm") {
    ExtendedExponent p = a.has("p") ? exponent_arg(a, "p") : ExtendedExponent::from_value(2);
    const auto N = number_arg<std::int64_t>(a, "N", 1024);
    Grid grid = Grid::balanced(1, N);
    const double delta = number_arg<double>(a, "delta", 4.0);
    ScalingReport r = scaling_ratio_series(
        dyadic_inverse_lambdas(5), [&](double inv) { return lp_norm(dilated_bump(1.0 / inv, grid, delta), p); },
        -(p.reciprocal_value() - 1.0), number_arg<double>(a, "tolerance", 0.05), "L^p norm of h_lambda vs 1/lambda");
    report = report_json(kind, r);
    csv = report_csv(r, "inv_lambda");
  } else if (kind == "khinchin") {
    const auto n = number_arg<std::size_t>(a, "entries", 64);
    const auto trials = number_arg<std::size_t>(a, "trials", 200);
    const auto seed = number_arg<std::uint64_t>(a, "seed", 0);
    ExtendedExponent p = a.has("p") ? exponent_arg(a, "p") : ExtendedExponent::from_value(2);
    std::vector<cplx> coeffs(n, 1.0);
    KhinchinResult r = khinchin_empirical(coeffs, p, trials, seed);
    const double lo = number_arg<double>(a, "band-lo", 0.8), hi = number_arg<double>(a, "band-hi", 1.25);
    report = json{{"kind", kind},     {"entries", n},           {"trials", trials},        {"seed", seed},
                  {"p", p.to_string()}, {"mean_p_norm", r.mean_p_norm}, {"l2_reference", r.l2_reference},
                  {"ratio", r.ratio}, {"band", {lo, hi}},       {"pass", r.ratio >= lo && r.ratio <= hi}};
    csv = "entries,trials,ratio\n" + std::to_string(n) + "," + std::to_string(trials) + "," +
          [&] {
            std::ostringstream s;
            s << std::setprecision(17) << r.ratio;
            return s.str();
          }() +
          "\n";
  } else {
    throw std::invalid_argument("--kind: expected scaling, khinchin, star-growth, tau-growth or bump-norm");
  }
  if (a.has("csv")) write_text_file(a.need("csv"), csv);
  std::string text = json_text(report);
  if (a.has("output")) write_text_file(a.need("output"), text);
  out << text;
  return 0;
}

// ---------------------------------------------------------------- wiring

struct Command {
  std::string name;
  std::string help;
  std::vector<std::pair<std::string, std::string>> single;  // name, help
  std::vector<std::pair<std::string, std::string>> multi;
  std::vector<std::pair<std::string, std::string>> flags;
  int (*run)(const Args&, std::ostream&);
};

inline std::vector<Command> commands() {
  const std::vector<std::pair<std::string, std::string>> exps = {
      {"kind", "region kind: brwm, brwf, conv, star_conv, tau_embed, local_brwm, bpwm, bpwf, bessel"},
      {"m", "multilinearity order"},
      {"p", "exponent p (inf, decimals, a/b)"},
      {"q", "exponent q"},
      {"pj", "comma-separated p_0..p_m"},
      {"qj", "comma-separated q_0..q_m"},
      {"p1", "exponent p1"},
      {"q1", "exponent q1"},
      {"p2", "exponent p2"},
      {"q2", "exponent q2"},
      {"s", "smoothness s (exact decimal or fraction)"},
      {"d", "dimension"}};
  auto scan_opts = exps;
  scan_opts.push_back({"output", "CSV output path (default stdout)"});
  return {
      {"check", "Decide a boundedness region for one exponent tuple", exps, {}, {}, cmd_check},
      {"scan",
       "Sweep one or two exponents (reciprocal units) and emit CSV",
       scan_opts,
       {{"sweep", "name=lo:hi:step over reciprocals; repeat for a second axis"}},
       {},
       cmd_scan},
      {"norm",
       "Norm of a stored signal",
       {{"input", "signal JSON"},
        {"space", "modulation, fourier-modulation, wiener or lp"},
        {"p", "inner exponent"},
        {"q", "outer exponent (default p)"},
        {"window", "window signal JSON (default Gaussian)"},
        {"weight", "weight JSON"},
        {"step", "partition step in samples (wiener)"}},
       {},
       {},
       cmd_norm},
      {"rihaczek",
       "Rihaczek distribution of stored signals, or the closed-form STFT identity check",
       {{"g", "signal JSON for g"},
        {"output", "phase-space JSON output path"},
        {"m", "order for random identity check"},
        {"N", "period for random identity check"},
        {"d", "dimension for random identity check"},
        {"alpha", "grid spacing for random identity check"},
        {"seed", "RNG seed (default 0)"},
        {"tolerance", "residual tolerance (default 1e-9)"}},
       {{"f", "signal JSON for f_j; repeat per factor"}},
       {{"check-identity", "compare the closed-form STFT with direct summation"}},
       cmd_rihaczek},
      {"experiment",
       "Scaling and randomization experiments",
       {{"kind", "scaling, khinchin, star-growth, tau-growth or bump-norm"},
        {"tuple", "unbounded-demo, bounded-demo or custom (scaling)"},
        {"p", "exponent p"},
        {"q", "exponent q"},
        {"pj", "comma-separated p_j (custom scaling)"},
        {"qj", "comma-separated q_j (growth kinds)"},
        {"d", "dimension"},
        {"N", "lattice period"},
        {"Nmax", "largest N for growth kinds"},
        {"alpha", "grid spacing"},
        {"delta", "bump radius"},
        {"entries", "Khinchin coefficient count"},
        {"trials", "Khinchin trial count"},
        {"seed", "RNG seed (default 0)"},
        {"tolerance", "slope tolerance"},
        {"band-lo", "Khinchin band lower edge"},
        {"band-hi", "Khinchin band upper edge"},
        {"csv", "CSV output path"},
        {"output", "JSON report path"}},
       {},
       {},
       cmd_experiment},
      {"generate",
       "Write a test signal as JSON",
       {{"kind", "delta, gaussian, bump or random"},
        {"d", "dimension"},
        {"N", "period"},
        {"alpha", "grid spacing"},
        {"lambda", "bump dilation"},
        {"delta", "bump radius"},
        {"seed", "RNG seed (default 0)"},
        {"output", "output path"}},
       {},
       {{"balanced", "use alpha = N^{-1/2}"}},
       cmd_generate},
  };
}

// Appends flags from a JSON config for keys not already given on the command line.
inline std::vector<std::string> merge_config(const Command& cmd, std::vector<std::string> argv,
                                             const std::string& path) {
  json cfg = read_json_file(path);
  if (!cfg.is_object()) throw std::invalid_argument("config '" + path + "' must be a JSON object");
  auto given = [&](const std::string& key) {
    for (const auto& s : argv)
      if (s == "--" + key || s.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  auto scalar_text = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
      return s;
    }
    return v.dump();
  };
  for (const auto& [key, value] : cfg.items()) {
    bool is_single = false, is_multi = false, is_flag = false;
    for (const auto& o : cmd.single) is_single = is_single || o.first == key;
    for (const auto& o : cmd.multi) is_multi = is_multi || o.first == key;
    for (const auto& o : cmd.flags) is_flag = is_flag || o.first == key;
    if (!is_single && !is_multi && !is_flag)
      throw UsageError("config '" + path + "': unknown key '" + key + "' for command " + cmd.name);
    if (given(key)) continue;
    if (is_flag) {
      if (!value.is_boolean()) throw std::invalid_argument("config key '" + key + "' must be a boolean");
      if (value.get<bool>()) argv.push_back("--" + key);
    } else if (is_multi && value.is_array()) {
      for (const auto& v : value) {
        argv.push_back("--" + key);
        argv.push_back(scalar_text(v));
      }
    } else {
      argv.push_back("--" + key);
      argv.push_back(scalar_text(value));
    }
  }
  return argv;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  const auto cmds = commands();
  auto usage = [&](std::ostream& os) {
    os << "usage: tfa <command> [options]\n\ncommands:\n";
    for (const auto& c : cmds) os << "  " << std::left << std::setw(11) << c.name << c.help << '\n';
    os << "\nRun 'tfa <command> --help' for the options of a command.\n";
  };
  if (args.empty()) {
    usage(err);
    return 2;
  }
  if (args[0] == "--help" || args[0] == "-h") {
    usage(out);
    return 0;
  }
  const Command* cmd = nullptr;
  for (const auto& c : cmds)
    if (c.name == args[0]) cmd = &c;
  if (!cmd) {
    err << "unknown command '" << args[0] << "'\n";
    usage(err);
    return 2;
  }

  CLI::App app{cmd->help, "tfa " + cmd->name};
  std::map<std::string, std::string> single;
  std::map<std::string, std::vector<std::string>> multi;
  std::map<std::string, bool> flags;
  std::string config;
  for (const auto& [name, help] : cmd->single) app.add_option("--" + name, single[name], help);
  for (const auto& [name, help] : cmd->multi) app.add_option("--" + name, multi[name], help);
  for (const auto& [name, help] : cmd->flags) app.add_flag("--" + name, flags[name], help);
  app.add_option("--config", config, "JSON file mirroring the flags; flags override it");

  std::vector<std::string> rest(args.begin() + 1, args.end());
  try {
    for (std::size_t i = 0; i + 1 < rest.size(); ++i)
      if (rest[i] == "--config") rest = merge_config(*cmd, rest, rest[i + 1]);
    for (const auto& s : std::vector<std::string>(rest))
      if (s.rfind("--config=", 0) == 0) rest = merge_config(*cmd, rest, s.substr(9));
    std::vector<std::string> reversed(rest.rbegin(), rest.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  Args a;
  for (const auto& [name, help] : cmd->single)
    if (app.get_option("--" + name)->count() > 0) a.single[name] = single[name];
  for (const auto& [name, help] : cmd->multi)
    if (app.get_option("--" + name)->count() > 0) a.multi[name] = multi[name];
  a.flags = flags;
  try {
    return cmd->run(a, out);
  } catch (const UsageError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace tfa::cli
