// Finitely supported sequences on Z^d and the discrete operators built on
// them: tau_m, star convolution, T_{p,Omega}, S_{p,Omega} and the
// second-variable convolution.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfa/exponent.hpp"
#include "tfa/lattice.hpp"
#include "tfa/norms.hpp"
#include "tfa/weight.hpp"

namespace tfa {

class TruncatedSequence {
 public:
  using Map = std::map<Point, cplx>;

  explicit TruncatedSequence(int d = 1) : d_(d) {
    if (d < 1) throw std::invalid_argument("sequence dimension must be positive");
  }

  static TruncatedSequence delta(const Point& at, cplx value = 1.0) {
    TruncatedSequence s(static_cast<int>(at.size()));
    s.set(at, value);
    return s;
  }

  // Constant value on the box [lo, hi]^d.
  static TruncatedSequence box(int d, std::int64_t lo, std::int64_t hi, cplx value = 1.0) {
    TruncatedSequence s(d);
    if (hi < lo) return s;
    const auto side = static_cast<std::size_t>(hi - lo + 1);
    const std::size_t count = ipow(side, static_cast<std::size_t>(d));
    Point k(d);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t t = i;
      for (int a = d; a-- > 0;) {
        k[a] = lo + static_cast<std::int64_t>(t % side);
        t /= side;
      }
      s.set(k, value);
    }
    return s;
  }

  int d() const { return d_; }
  std::size_t support_size() const { return values_.size(); }
  const Map& entries() const { return values_; }
  bool empty() const { return values_.empty(); }

  // Zero values are dropped so the support stays exact.
  void set(const Point& k, cplx v) {
    check(k);
    if (v == cplx{})
      values_.erase(k);
    else
      values_[k] = v;
  }

  void add(const Point& k, cplx v) {
    check(k);
    auto [it, inserted] = values_.emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (it->second == cplx{}) values_.erase(it);
    }
  }

  cplx operator()(const Point& k) const {
    auto it = values_.find(k);
    return it == values_.end() ? cplx{} : it->second;
  }

 private:
  void check(const Point& k) const {
    if (static_cast<int>(k.size()) != d_)
      throw std::invalid_argument("point of dimension " + std::to_string(k.size()) + " in a sequence of dimension " +
                                  std::to_string(d_));
  }

  int d_;
  Map values_;
};

namespace detail {

inline int common_dimension(const TruncatedSequence& a, const std::vector<TruncatedSequence>& bs, const char* what) {
  if (bs.empty()) throw std::invalid_argument(std::string(what) + " needs m >= 1 sequences");
  for (const auto& b : bs)
    if (b.d() != a.d()) throw std::invalid_argument(std::string("dimension mismatch in ") + what);
  return a.d();
}

// Calls fn(iterators) for every tuple of support points, one per sequence.
template <class Fn>
void for_each_tuple(const std::vector<const TruncatedSequence*>& seqs, Fn&& fn) {
  std::vector<TruncatedSequence::Map::const_iterator> it(seqs.size());
  for (std::size_t j = 0; j < seqs.size(); ++j) {
    if (seqs[j]->empty()) return;
    it[j] = seqs[j]->entries().begin();
  }
  while (true) {
    fn(it);
    std::size_t j = seqs.size();
    while (j-- > 0) {
      if (++it[j] != seqs[j]->entries().end()) break;
      it[j] = seqs[j]->entries().begin();
      if (j == 0) return;
    }
  }
}

inline double powp(double x, const ExtendedExponent& p) { return std::pow(x, p.value()); }

}  // namespace detail

// tau_m(b0 x b1 x .. x bm)(k0, k1..km) = b0(k0) prod_j b_j(k_j + k0)
inline TruncatedSequence tau_m(const TruncatedSequence& b0, const std::vector<TruncatedSequence>& bs) {
  const int d = detail::common_dimension(b0, bs, "tau_m");
  const int m = static_cast<int>(bs.size());
  TruncatedSequence out((m + 1) * d);
  std::vector<const TruncatedSequence*> seqs{&b0};
  for (const auto& b : bs) seqs.push_back(&b);
  Point k(static_cast<std::size_t>((m + 1) * d));
  detail::for_each_tuple(seqs, [&](const auto& it) {
    const Point& k0 = it[0]->first;
    cplx v = it[0]->second;
    for (int a = 0; a < d; ++a) k[a] = k0[a];
    for (int j = 1; j <= m; ++j) {
      const Point& u = it[j]->first;
      for (int a = 0; a < d; ++a) k[j * d + a] = u[a] - k0[a];
      v *= it[j]->second;
    }
    out.set(k, v);
  });
  return out;
}

// (a star (b1 x .. x bm))(k1..km) = sum_{k0} a(k0) prod_j b_j(k_j - k0)
inline TruncatedSequence star_convolve(const TruncatedSequence& a, const std::vector<TruncatedSequence>& bs) {
  const int d = detail::common_dimension(a, bs, "star convolution");
  const int m = static_cast<int>(bs.size());
  TruncatedSequence out(m * d);
  std::vector<const TruncatedSequence*> seqs{&a};
  for (const auto& b : bs) seqs.push_back(&b);
  Point k(static_cast<std::size_t>(m * d));
  detail::for_each_tuple(seqs, [&](const auto& it) {
    const Point& k0 = it[0]->first;
    cplx v = it[0]->second;
    for (int j = 1; j <= m; ++j) {
      const Point& u = it[j]->first;
      for (int a = 0; a < d; ++a) k[(j - 1) * d + a] = u[a] + k0[a];
      v *= it[j]->second;
    }
    out.add(k, v);
  });
  return out;
}

// Ordinary convolution (a * b)(k) = sum_l a(l) b(k - l).
inline TruncatedSequence convolve(const TruncatedSequence& a, const TruncatedSequence& b) {
  if (a.d() != b.d()) throw std::invalid_argument("dimension mismatch in convolution");
  TruncatedSequence out(a.d());
  Point k(static_cast<std::size_t>(a.d()));
  for (const auto& [l, av] : a.entries())
    for (const auto& [u, bv] : b.entries()) {
      for (int i = 0; i < a.d(); ++i) k[i] = l[i] + u[i];
      out.add(k, av * bv);
    }
  return out;
}

// (rho *_2 c)(k0, n0) = sum_l rho(l) c(k0, n0 - l); c lives on Z^d x Z^d.
inline TruncatedSequence conv_star_2(const TruncatedSequence& rho, const TruncatedSequence& c) {
  const int d = rho.d();
  if (c.d() != 2 * d) throw std::invalid_argument("second-variable convolution needs c on Z^d x Z^d");
  TruncatedSequence out(2 * d);
  Point k(static_cast<std::size_t>(2 * d));
  for (const auto& [l, rv] : rho.entries())
    for (const auto& [u, cv] : c.entries()) {
      for (int a = 0; a < d; ++a) {
        k[a] = u[a];
        k[d + a] = u[d + a] + l[a];
      }
      out.add(k, rv * cv);
    }
  return out;
}

namespace detail {

// Shared accumulation for T_{p,Omega} and S_{p,Omega}: each support tuple
// contributes |value| * Omega((k0, k), (n0, n)) to the output point (n0, n).
class PowerSumAccumulator {
 public:
  PowerSumAccumulator(int dims, const ExtendedExponent& p) : out_(dims), p_(p) {}

  void add(const Point& n, double magnitude) {
    if (magnitude == 0.0) return;
    auto& slot = acc_[n];
    if (p_.is_infinite())
      slot = std::max(slot, magnitude);
    else
      slot += powp(magnitude, p_);
  }

  TruncatedSequence finish() {
    for (const auto& [n, v] : acc_) out_.set(n, p_.is_infinite() ? v : std::pow(v, 1.0 / p_.value()));
    return out_;
  }

 private:
  TruncatedSequence out_;
  ExtendedExponent p_;
  std::map<Point, double> acc_;
};

inline void check_pair_sequences(const TruncatedSequence& a, const std::vector<TruncatedSequence>& bs,
                                 const SeparableWeight& omega, const char* what) {
  if (bs.empty()) throw std::invalid_argument(std::string(what) + " needs m >= 1 sequences");
  if (a.d() % 2 != 0) throw std::invalid_argument(std::string(what) + " expects sequences on Z^d x Z^d");
  for (const auto& b : bs)
    if (b.d() != a.d()) throw std::invalid_argument(std::string("dimension mismatch in ") + what);
  const std::size_t need = static_cast<std::size_t>((bs.size() + 1) * static_cast<std::size_t>(a.d()));
  if (!omega.is_trivial() && omega.dim() != need)
    throw std::invalid_argument(std::string(what) + " weight must have dimension 2(m+1)d");
}

}  // namespace detail

// T(n0, n) = ( sum_{k0, k} |a(k0, n0 + sum k_j) prod_j b_j(n_j + k0, k_j)|^p
//              Omega((k0, k), (n0, n))^p )^{1/p}
inline TruncatedSequence t_p_omega(const TruncatedSequence& a, const std::vector<TruncatedSequence>& bs,
                                   const ExtendedExponent& p, const SeparableWeight& omega) {
  detail::check_pair_sequences(a, bs, omega, "T_{p,Omega}");
  const int d = a.d() / 2;
  const int m = static_cast<int>(bs.size());
  const bool trivial = omega.is_trivial();
  detail::PowerSumAccumulator acc((m + 1) * d, p);
  std::vector<const TruncatedSequence*> seqs{&a};
  for (const auto& b : bs) seqs.push_back(&b);
  Point n(static_cast<std::size_t>((m + 1) * d));
  std::vector<double> z(static_cast<std::size_t>(2 * (m + 1) * d));
  detail::for_each_tuple(seqs, [&](const auto& it) {
    const Point& ak = it[0]->first;  // (k0, s)
    double mag = std::abs(it[0]->second);
    for (int a0 = 0; a0 < d; ++a0) n[a0] = ak[d + a0];
    for (int j = 1; j <= m; ++j) {
      const Point& bk = it[j]->first;  // (u_j, k_j)
      mag *= std::abs(it[j]->second);
      for (int c = 0; c < d; ++c) {
        n[j * d + c] = bk[c] - ak[c];
        n[c] -= bk[d + c];
      }
    }
    if (!trivial) {
      for (int c = 0; c < d; ++c) z[c] = static_cast<double>(ak[c]);
      for (int j = 1; j <= m; ++j)
        for (int c = 0; c < d; ++c) z[j * d + c] = static_cast<double>(it[j]->first[d + c]);
      for (std::size_t c = 0; c < n.size(); ++c) z[(m + 1) * d + c] = static_cast<double>(n[c]);
      mag *= omega(z);
    }
    acc.add(n, mag);
  });
  return acc.finish();
}

// S(n0, n) = ( sum_{k0, k} |a(n0, -k0 + sum n_j) prod_j b_j(-k_j + n0, n_j)
//              Omega((k0, k), (n0, n))|^p )^{1/p}
inline TruncatedSequence s_p_omega(const TruncatedSequence& a, const std::vector<TruncatedSequence>& bs,
                                   const ExtendedExponent& p, const SeparableWeight& omega) {
  detail::check_pair_sequences(a, bs, omega, "S_{p,Omega}");
  const int d = a.d() / 2;
  const int m = static_cast<int>(bs.size());
  const bool trivial = omega.is_trivial();
  detail::PowerSumAccumulator acc((m + 1) * d, p);
  std::vector<const TruncatedSequence*> seqs{&a};
  for (const auto& b : bs) seqs.push_back(&b);
  Point n(static_cast<std::size_t>((m + 1) * d));
  std::vector<double> z(static_cast<std::size_t>(2 * (m + 1) * d));
  detail::for_each_tuple(seqs, [&](const auto& it) {
    const Point& an = it[0]->first;  // (n0, t)
    double mag = std::abs(it[0]->second);
    for (int c = 0; c < d; ++c) n[c] = an[c];
    for (int j = 1; j <= m; ++j) {
      const Point& bn = it[j]->first;  // (u_j, n_j)
      mag *= std::abs(it[j]->second);
      for (int c = 0; c < d; ++c) n[j * d + c] = bn[d + c];
    }
    if (!trivial) {
      // k0 = sum n_j - t, k_j = n0 - u_j
      for (int c = 0; c < d; ++c) {
        double k0 = -static_cast<double>(an[d + c]);
        for (int j = 1; j <= m; ++j) k0 += static_cast<double>(n[j * d + c]);
        z[c] = k0;
      }
      for (int j = 1; j <= m; ++j)
        for (int c = 0; c < d; ++c) z[j * d + c] = static_cast<double>(an[c] - it[j]->first[c]);
      for (std::size_t c = 0; c < n.size(); ++c) z[(m + 1) * d + c] = static_cast<double>(n[c]);
      mag *= omega(z);
    }
    acc.add(n, mag);
  });
  return acc.finish();
}

// (sum |a(k)|^p w(k)^p)^{1/p}, max for p = inf.
inline double sequence_norm(const TruncatedSequence& a, const ExtendedExponent& p, const SeparableWeight& w) {
  LpAccumulator acc(p);
  const bool trivial = w.is_trivial();
  for (const auto& [k, v] : a.entries()) acc.add(trivial ? std::abs(v) : std::abs(v) * w(k));
  return acc.result();
}

inline double sequence_norm(const TruncatedSequence& a, const ExtendedExponent& p) {
  LpAccumulator acc(p);
  for (const auto& [k, v] : a.entries()) acc.add(std::abs(v));
  return acc.result();
}

// l^{p,q} norm: the first inner_dims coordinates are summed in l^p, the rest in l^q.
inline double sequence_mixed_norm(const TruncatedSequence& a, int inner_dims, const ExtendedExponent& p,
                                  const ExtendedExponent& q) {
  if (inner_dims < 0 || inner_dims > a.d()) throw std::invalid_argument("inner_dims out of range");
  std::map<Point, LpAccumulator> rows;
  for (const auto& [k, v] : a.entries()) {
    Point outer(k.begin() + inner_dims, k.end());
    rows.try_emplace(outer, p).first->second.add(std::abs(v));
  }
  LpAccumulator acc(q);
  for (const auto& [o, r] : rows) acc.add(r.result());
  return acc.result();
}

}  // namespace tfa
