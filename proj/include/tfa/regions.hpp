// Exact decision procedures for the sharp boundedness regions.
//
// All conditions are evaluated on reciprocals 1/p in exact rational
// arithmetic. Condition ids are "cdK" optionally followed by an index
// bracket, e.g. "cd3[i=1]" or "cd1[q2]".

#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tfa/exponent.hpp"
#include "tfa/verdict.hpp"

namespace tfa {

enum class RegionKind { BRWM, BRWF, CONV, STAR_CONV, TAU_EMBED, LOCAL_BRWM, BPWM_LINEAR, BPWF_LINEAR, BESSEL_BPWM };

inline RegionKind parse_region_kind(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::replace(s.begin(), s.end(), '-', '_');
  if (s == "brwm") return RegionKind::BRWM;
  if (s == "brwf") return RegionKind::BRWF;
  if (s == "conv") return RegionKind::CONV;
  if (s == "star_conv" || s == "star") return RegionKind::STAR_CONV;
  if (s == "tau_embed" || s == "tau") return RegionKind::TAU_EMBED;
  if (s == "local_brwm" || s == "local") return RegionKind::LOCAL_BRWM;
  if (s == "bpwm" || s == "bpwm_linear") return RegionKind::BPWM_LINEAR;
  if (s == "bpwf" || s == "bpwf_linear") return RegionKind::BPWF_LINEAR;
  if (s == "bessel" || s == "bessel_bpwm") return RegionKind::BESSEL_BPWM;
  throw std::invalid_argument("unknown region kind '" + s + "'");
}

namespace detail {

inline Rational r(const ExtendedExponent& p) { return p.reciprocal(); }
// 1/(p ^ 2) = max(1/p, 1/2)
inline Rational r_meet2(const ExtendedExponent& p) { return meet2(p).reciprocal(); }
// 1/(p v 2) = min(1/p, 1/2)
inline Rational r_join2(const ExtendedExponent& p) { return join2(p).reciprocal(); }

inline std::string idx(const char* fam, int i) { return std::string(fam) + "[i=" + std::to_string(i) + "]"; }

inline void require_at_least_one(const ExtendedExponent& p, const char* name) {
  if (!p.has_conjugate())
    throw std::domain_error(std::string("exponent ") + name + " = " + p.to_string() + " must lie in [1, inf]");
}

// The Lambda-set condition shared by the global and local modulation regions.
inline void lambda_condition(VerdictBuilder& b, const ExtendedExponent& p, const ExtendedExponent& q,
                             const std::vector<ExtendedExponent>& ps, const char* id) {
  std::int64_t count = 0;
  Rational sum = 0;
  for (const auto& pj : ps) {
    if (r(p) >= 1 - r_meet2(pj)) {
      ++count;
      sum += r_meet2(pj);
    }
  }
  if (count >= 1) b.require(id, Rational(count - 1) * r(p) + r(q), Rational(count) - sum);
}

}  // namespace detail

// Indices j with 1/p >= 1 - 1/(p_j ^ 2).
inline std::set<int> lambda_set(const ExponentTuple& t) {
  t.validate();
  std::set<int> out;
  for (int j = 0; j <= t.m; ++j)
    if (t.p.reciprocal() >= 1 - detail::r_meet2(t.pj[j])) out.insert(j);
  return out;
}

// R_m : W(L^{p_j}, L^{q_j}) x ... -> M^{p,q}.
inline Verdict brwm_verdict(const ExponentTuple& t, double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  t.validate();
  VerdictBuilder b(eps);
  for (int i = 0; i <= t.m; ++i) b.require(idx("cd1", i), r(t.q), 1 - r_meet2(t.pj[i]));
  lambda_condition(b, t.p, t.q, t.pj, "cd2");
  for (int i = 0; i <= t.m; ++i) b.require(idx("cd3", i), r(t.q), r(t.qj[i]));
  Rational sum_q = 0;
  for (const auto& qj : t.qj) sum_q += r(qj);
  b.require("cd4", r(t.p) + Rational(t.m) * r(t.q), sum_q);
  return b.build();
}

// R_m : W(L^{p_j}, L^{q_j}) x ... -> FM^{p,q}.
inline Verdict brwf_verdict(const ExponentTuple& t, double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  t.validate();
  VerdictBuilder b(eps);
  b.require("cd1[p]", r(t.p), 1 - r_meet2(t.pj[0]));
  b.require("cd1[q]", r(t.q), r(t.qj[0]));
  for (int i = 1; i <= t.m; ++i) {
    std::string s = std::to_string(i);
    b.require("cd2[i=" + s + ",p]", r(t.q), 1 - r_meet2(t.pj[i]));
    b.require("cd2[i=" + s + ",pq]", r(t.p), r(t.qj[i]));
    b.require("cd2[i=" + s + ",qq]", r(t.q), r(t.qj[i]));
  }
  return b.build();
}

// Sharp range of the (m+1)-fold convolution l^{q_0} * ... * l^{q_m} -> l^q.
inline Verdict conv_sharp_verdict(const ExtendedExponent& q, const std::vector<ExtendedExponent>& qs,
                                  double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  if (qs.size() < 2) throw std::invalid_argument("convolution needs at least two exponents");
  VerdictBuilder b(eps);
  for (std::size_t j = 0; j < qs.size(); ++j) b.require(idx("cd1", static_cast<int>(j)), r(q), r(qs[j]));
  std::int64_t count = 0;
  Rational sum = 0;
  for (const auto& qj : qs)
    if (r(qj) <= 1) {
      ++count;
      sum += r(qj);
    }
  if (count >= 1) b.require("cd2", Rational(count - 1) + r(q), sum);
  return b.build();
}

// Sharp range of the star convolution l^{q_0} star (l^{q_1} x ... x l^{q_m}) -> l^q.
inline Verdict star_conv_verdict(const ExtendedExponent& q, const std::vector<ExtendedExponent>& qs,
                                 double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  if (qs.size() < 2) throw std::invalid_argument("star convolution needs m+1 >= 2 exponents");
  const auto m = static_cast<std::int64_t>(qs.size()) - 1;
  VerdictBuilder b(eps);
  Rational sum = 0;
  for (std::size_t j = 0; j < qs.size(); ++j) {
    b.require(idx("cd1", static_cast<int>(j)), r(q), r(qs[j]));
    sum += r(qs[j]);
  }
  b.require("cd2", 1 + Rational(m) * r(q), sum);
  return b.build();
}

// tau_m maps l^{q_0} x ... x l^{q_m} into l^{p,q}.
inline Verdict tau_embed_verdict(const ExtendedExponent& p, const ExtendedExponent& q,
                                 const std::vector<ExtendedExponent>& qs, double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  if (qs.size() < 2) throw std::invalid_argument("tau embedding needs m+1 >= 2 exponents");
  const auto m = static_cast<std::int64_t>(qs.size()) - 1;
  VerdictBuilder b(eps);
  Rational sum = 0;
  for (const auto& qj : qs) sum += r(qj);
  b.require("cd1", r(p) + Rational(m) * r(q), sum);
  for (std::size_t j = 0; j < qs.size(); ++j) b.require(idx("cd2", static_cast<int>(j)), r(q), r(qs[j]));
  return b.build();
}

// Local version: R_m on L^{p_j ^ 2} functions supported in a fixed ball.
inline Verdict local_brwm_verdict(const ExtendedExponent& p, const ExtendedExponent& q,
                                  const std::vector<ExtendedExponent>& ps, double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  if (ps.size() < 2) throw std::invalid_argument("local verdict needs m+1 >= 2 exponents");
  VerdictBuilder b(eps);
  for (std::size_t j = 0; j < ps.size(); ++j) b.require(idx("cd1", static_cast<int>(j)), r(q), 1 - r_meet2(ps[j]));
  lambda_condition(b, p, q, ps, "cd2");
  return b.build();
}

// K_sigma : W(L^{p1}, L^{q1}) -> W(L^{p2}, L^{q2}) for every sigma in M^{p,q}.
inline Verdict bpwm_verdict(const ExtendedExponent& p, const ExtendedExponent& q, const ExtendedExponent& p1,
                            const ExtendedExponent& q1, const ExtendedExponent& p2, const ExtendedExponent& q2,
                            double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  require_at_least_one(p, "p");
  require_at_least_one(q, "q");
  require_at_least_one(p1, "p1");
  require_at_least_one(q1, "q1");
  require_at_least_one(p2, "p2");
  require_at_least_one(q2, "q2");
  VerdictBuilder b(eps);
  b.require_ge("cd1[p1]", r(q), r_meet2(p1));
  b.require_ge("cd1[p2']", r(q), r_meet2(conjugate(p2)));
  b.require_ge("cd1[q1']", r(q), 1 - r(q1));
  b.require_ge("cd1[q2]", r(q), r(q2));
  Rational local = r_meet2(p1) - r_join2(p2);
  Rational global = r(q2) - r(q1);
  b.require_ge("cd2", r(p), (1 - r(q)) + std::max(local, global));
  return b.build();
}

// K_sigma : W(L^{p1}, L^{q1}) -> W(L^{p2}, L^{q2}) for every sigma in FM^{p,q}.
inline Verdict bpwf_verdict(const ExtendedExponent& p, const ExtendedExponent& q, const ExtendedExponent& p1,
                            const ExtendedExponent& q1, const ExtendedExponent& p2, const ExtendedExponent& q2,
                            double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  require_at_least_one(p, "p");
  require_at_least_one(q, "q");
  require_at_least_one(p1, "p1");
  require_at_least_one(q1, "q1");
  require_at_least_one(p2, "p2");
  require_at_least_one(q2, "q2");
  VerdictBuilder b(eps);
  b.require_ge("cd1[p1]", r(q), r_meet2(p1));
  b.require_ge("cd1[q1']", r(q), 1 - r(q1));
  b.require_ge("cd1[q2]", r(q), r(q2));
  b.require_ge("cd2[p2']", r(p), r_meet2(conjugate(p2)));
  b.require_ge("cd2[q1']", r(p), 1 - r(q1));
  return b.build();
}

// Threshold d (1/(p1 ^ 2) - 1/(p2 v 2)) for the Bessel-potential symbol problem.
inline Rational bessel_threshold(int d, const ExtendedExponent& p1, const ExtendedExponent& p2) {
  return Rational(d) * (detail::r_meet2(p1) - detail::r_join2(p2));
}

// K_sigma : J_s W(L^{p1}, L^{q1}) -> W(L^{p2}, L^{q2}) for every sigma in M^{inf,1}.
inline Verdict bessel_bpwm_verdict(const Rational& s, int d, const ExtendedExponent& p1, const ExtendedExponent& q1,
                                   const ExtendedExponent& p2, const ExtendedExponent& q2,
                                   double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  if (d < 1) throw std::invalid_argument("dimension d must be positive");
  require_at_least_one(p1, "p1");
  require_at_least_one(q1, "q1");
  require_at_least_one(p2, "p2");
  require_at_least_one(q2, "q2");
  VerdictBuilder b(eps);
  bool strict = r(p1) == 1 || p2.is_infinite();
  b.require_ge("cd1", s, bessel_threshold(d, p1, p2), strict);
  b.require("cd2", r(q2), r(q1));
  return b.build();
}

// Local condition s <= d (1 - 1/(p1 ^ 2) - 1/(p2 ^ 2)), strict when p1 = 1 or p2 = 1.
inline Verdict local_sobolev_verdict(const Rational& s, int d, const ExtendedExponent& p1, const ExtendedExponent& p2,
                                     double eps = kDefaultBoundaryEpsilon) {
  using namespace detail;
  require_at_least_one(p1, "p1");
  require_at_least_one(p2, "p2");
  VerdictBuilder b(eps);
  bool strict = r(p1) == 1 || r(p2) == 1;
  b.require("cd1", s, Rational(d) * (1 - r_meet2(p1) - r_meet2(p2)), strict);
  return b.build();
}

// Conjugates (p0, q0; p, q) to (p0', q0'; p', q'), the exponent map that
// converts a symbol-class question into a Rihaczek mapping question.
struct DualPair {
  ExtendedExponent p0, q0, p, q;
  friend bool operator==(const DualPair&, const DualPair&) = default;
};

inline DualPair dual_exponents(const DualPair& t) {
  detail::require_at_least_one(t.p0, "p0");
  detail::require_at_least_one(t.q0, "q0");
  detail::require_at_least_one(t.p, "p");
  detail::require_at_least_one(t.q, "q");
  return {conjugate(t.p0), conjugate(t.q0), conjugate(t.p), conjugate(t.q)};
}

// Builds the m = 1 Rihaczek tuple equivalent to the linear symbol problem
// with symbols in M^{p,q} acting W(L^{p1},L^{q1}) -> W(L^{p2},L^{q2}).
inline ExponentTuple bpwm_as_brwm(const ExtendedExponent& p, const ExtendedExponent& q, const ExtendedExponent& p1,
                                  const ExtendedExponent& q1, const ExtendedExponent& p2,
                                  const ExtendedExponent& q2) {
  DualPair d = dual_exponents({p2, q2, p, q});
  ExponentTuple t;
  t.m = 1;
  t.p = d.p;
  t.q = d.q;
  t.pj = {d.p0, p1};
  t.qj = {d.q0, q1};
  return t;
}

}  // namespace tfa
