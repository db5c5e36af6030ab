// JSON and CSV formats for signals, weights, sequences, phase-space signals,
// STFT arrays and verdicts.

#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfa/lattice.hpp"
#include "tfa/rihaczek.hpp"
#include "tfa/sequences.hpp"
#include "tfa/stft.hpp"
#include "tfa/verdict.hpp"
#include "tfa/weight.hpp"

namespace tfa {

using json = nlohmann::json;

namespace detail {

inline void require_keys(const json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
  for (const char* k : keys)
    if (!j.contains(k)) throw std::invalid_argument(std::string(what) + " is missing field '" + k + "'");
}

inline void split_complex(const std::vector<cplx>& v, json& j) {
  std::vector<double> re, im;
  re.reserve(v.size());
  im.reserve(v.size());
  for (const auto& x : v) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  j["re"] = re;
  j["im"] = im;
}

inline std::vector<cplx> join_complex(const json& j, const char* what) {
  auto re = j.at("re").get<std::vector<double>>();
  std::vector<double> im = j.contains("im") ? j.at("im").get<std::vector<double>>() : std::vector<double>(re.size());
  if (re.size() != im.size()) throw std::invalid_argument(std::string(what) + ": 're' and 'im' differ in length");
  std::vector<cplx> v(re.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = {re[i], im[i]};
  return v;
}

}  // namespace detail

inline json to_json(const LatticeSignal& f) {
  json j{{"d", f.d()}, {"N", f.N()}, {"alpha", f.alpha()}};
  detail::split_complex(f.values(), j);
  return j;
}

inline LatticeSignal signal_from_json(const json& j) {
  detail::require_keys(j, {"d", "N", "re"}, "signal");
  Grid g(j.at("d").get<int>(), j.at("N").get<std::int64_t>(), j.value("alpha", 1.0));
  return LatticeSignal(g, detail::join_complex(j, "signal"));
}

inline json to_json(const SeparableWeight& w) { return json{{"blocks", w.blocks()}, {"s", w.exponents()}}; }

inline SeparableWeight weight_from_json(const json& j) {
  detail::require_keys(j, {"blocks", "s"}, "weight");
  return SeparableWeight(j.at("blocks").get<std::vector<std::size_t>>(), j.at("s").get<std::vector<double>>());
}

inline json to_json(const TruncatedSequence& s) {
  json pts = json::array();
  for (const auto& [k, v] : s.entries()) pts.push_back(json::array({k, v.real(), v.imag()}));
  return json{{"d", s.d()}, {"points", pts}};
}

inline TruncatedSequence sequence_from_json(const json& j) {
  detail::require_keys(j, {"d", "points"}, "sequence");
  TruncatedSequence s(j.at("d").get<int>());
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() < 2) throw std::invalid_argument("sequence point must be [[coords], re, im]");
    double im = p.size() > 2 ? p[2].get<double>() : 0.0;
    s.add(p[0].get<Point>(), cplx(p[1].get<double>(), im));
  }
  return s;
}

inline json to_json(const PhaseSpaceSignal& F) {
  json j{{"m", F.m()}, {"d", F.grid().d}, {"N", F.grid().N}, {"alpha", F.grid().alpha}};
  detail::split_complex(F.values(), j);
  return j;
}

inline PhaseSpaceSignal phase_space_from_json(const json& j) {
  detail::require_keys(j, {"m", "d", "N", "re"}, "phase-space signal");
  Grid g(j.at("d").get<int>(), j.at("N").get<std::int64_t>(), j.value("alpha", 1.0));
  return PhaseSpaceSignal(j.at("m").get<int>(), g, detail::join_complex(j, "phase-space signal"));
}

inline json to_json(const Verdict& v) {
  json conds = json::array();
  for (const auto& c : v.trace) {
    std::ostringstream lhs, rhs;
    lhs << c.lhs.numerator() << (c.lhs.denominator() == 1 ? "" : "/" + std::to_string(c.lhs.denominator()));
    rhs << c.rhs.numerator() << (c.rhs.denominator() == 1 ? "" : "/" + std::to_string(c.rhs.denominator()));
    conds.push_back({{"id", c.id},
                     {"lhs", lhs.str()},
                     {"rhs", rhs.str()},
                     {"strict", c.strict},
                     {"satisfied", c.satisfied()}});
  }
  return json{{"bounded", v.bounded},
              {"failed", v.failed_families()},
              {"failed_conditions", v.failed_conditions},
              {"boundary", v.boundary},
              {"conditions", conds}};
}

// CSV with header x0..,xi0..,re,im; coordinates are lattice indices.
inline void write_stft_csv(std::ostream& os, const StftArray& a) {
  for (int i = 0; i < a.dims; ++i) os << "x" << i << ',';
  for (int i = 0; i < a.dims; ++i) os << "xi" << i << ',';
  os << "re,im\n";
  os << std::setprecision(17);
  const std::size_t side = a.side();
  for (std::size_t xf = 0; xf < side; ++xf) {
    Point x = multi_index(xf, a.dims, a.N);
    for (std::size_t nf = 0; nf < side; ++nf) {
      Point xi = multi_index(nf, a.dims, a.N);
      for (auto v : x) os << v << ',';
      for (auto v : xi) os << v << ',';
      const cplx& c = a.at(xf, nf);
      os << c.real() << ',' << c.imag() << '\n';
    }
  }
}

inline json to_json(const StftArray& a) {
  json j{{"dims", a.dims}, {"N", a.N}, {"x_cell", a.x_cell}, {"xi_cell", a.xi_cell}};
  detail::split_complex(a.values, j);
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace tfa
