// Verdicts with per-condition traces, and the exponent tuple they are computed from.

#pragma once

#include <string>
#include <vector>

#include "tfa/exponent.hpp"

namespace tfa {

struct ExponentTuple {
  int m = 1;
  ExtendedExponent p, q;
  std::vector<ExtendedExponent> pj, qj;  // m + 1 entries each

  void validate() const {
    if (m < 1) throw std::invalid_argument("multilinearity order m must be >= 1");
    if (pj.size() != static_cast<std::size_t>(m + 1))
      throw std::invalid_argument("pj must have m+1 = " + std::to_string(m + 1) + " entries");
    if (qj.size() != static_cast<std::size_t>(m + 1))
      throw std::invalid_argument("qj must have m+1 = " + std::to_string(m + 1) + " entries");
  }
};

// One inequality lhs <= rhs (or lhs < rhs when strict), in reciprocal units.
struct Condition {
  std::string id;
  Rational lhs;
  Rational rhs;
  bool strict = false;

  bool satisfied() const { return strict ? lhs < rhs : lhs <= rhs; }
  Rational slack() const { return rhs - lhs; }
  // Condition family: the id up to its index bracket.
  std::string family() const { return id.substr(0, id.find('[')); }
};

struct Verdict {
  bool bounded = true;
  std::vector<std::string> failed_conditions;
  bool boundary = false;
  std::vector<Condition> trace;

  // Distinct failed families in order of first appearance.
  std::vector<std::string> failed_families() const {
    std::vector<std::string> out;
    for (const auto& id : failed_conditions) {
      std::string f = id.substr(0, id.find('['));
      bool seen = false;
      for (const auto& o : out) seen = seen || o == f;
      if (!seen) out.push_back(f);
    }
    return out;
  }
};

inline constexpr double kDefaultBoundaryEpsilon = 1e-9;

class VerdictBuilder {
 public:
  explicit VerdictBuilder(double boundary_eps = kDefaultBoundaryEpsilon) : eps_(boundary_eps) {}

  VerdictBuilder& require(std::string id, Rational lhs, Rational rhs, bool strict = false) {
    conditions_.push_back({std::move(id), lhs, rhs, strict});
    return *this;
  }

  // lhs >= rhs, stored as rhs <= lhs.
  VerdictBuilder& require_ge(std::string id, Rational lhs, Rational rhs, bool strict = false) {
    return require(std::move(id), rhs, lhs, strict);
  }

  Verdict build() const {
    Verdict v;
    v.trace = conditions_;
    for (const auto& c : conditions_) {
      if (!c.satisfied()) {
        v.bounded = false;
        v.failed_conditions.push_back(c.id);
      } else if (!c.strict && to_double(c.slack()) <= eps_) {
        v.boundary = true;
      }
    }
    return v;
  }

 private:
  double eps_;
  std::vector<Condition> conditions_;
};

}  // namespace tfa
