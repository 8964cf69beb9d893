#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "jetsum/jets.hpp"
#include "jetsum/rootsum.hpp"

namespace jetsum {

// Fractional part of a K_infty element, stored to an explicit precision
// floor: digits d[j-1] hold the coefficient of t^-j for j = 1..depth.
// Constructed values are exact: everything below the floor is zero. Values
// derived by operations that shed depth (products against polynomials) carry
// an unknown tail instead, and any question whose answer would depend on that
// tail fails with InsufficientPrecision rather than guessing.
class FracLaurent {
 public:
  FracLaurent() = default;
  FracLaurent(const FieldSpec& f, int floor) : f_(&f) {
    if (floor > -1) throw std::invalid_argument("fractional part needs floor <= -1");
    d_.assign(std::size_t(-floor), 0);
  }
  static FracLaurent from_digits(const FieldSpec& f, std::vector<u16> digits) {
    if (digits.empty()) throw std::invalid_argument("fractional part needs depth >= 1");
    FracLaurent a;
    a.f_ = &f;
    a.d_ = std::move(digits);
    return a;
  }

  const FieldSpec& field() const { return *f_; }
  int floor() const { return -int(d_.size()); }
  int depth() const { return int(d_.size()); }
  u16 digit(int j) const { return d_[std::size_t(j) - 1]; }  // coefficient of t^-j
  void set_digit(int j, u16 v) {
    if (j < 1 || j > depth()) throw std::out_of_range("digit below floor");
    d_[std::size_t(j) - 1] = v;
  }
  const std::vector<u16>& digits() const { return d_; }

  bool visibly_zero() const {
    for (u16 v : d_)
      if (v) return false;
    return true;
  }

  bool exact_tail() const { return exact_; }
  void mark_inexact_tail() { exact_ = false; }

  // ||.||_0: q^-j for the leading nonzero digit. An all-zero window is norm 0
  // for exact values; for a derived window it depends on the shed tail.
  NormExp lead_norm() const {
    for (int j = 1; j <= depth(); ++j)
      if (digit(j)) return NormExp::pow(-j);
    if (!exact_)
      throw InsufficientPrecision("norm of an all-zero window with an unknown tail");
    return NormExp::zero();
  }

  // exact operands align to the deeper floor (their tails are literal
  // zeros); anything else aligns to the shallower floor and sheds exactness
  friend FracLaurent operator+(const FracLaurent& a, const FracLaurent& b) {
    if (!a.f_->same(*b.f_)) throw FieldMismatch("laurent parts from different fields");
    bool exact = a.exact_ && b.exact_;
    int depth = exact ? std::max(a.depth(), b.depth()) : std::min(a.depth(), b.depth());
    FracLaurent r(*a.f_, -depth);
    for (int j = 1; j <= depth; ++j)
      r.set_digit(j, a.f_->add(j <= a.depth() ? a.digit(j) : 0, j <= b.depth() ? b.digit(j) : 0));
    r.exact_ = exact;
    return r;
  }
  FracLaurent operator-() const {
    FracLaurent r = *this;
    for (auto& v : r.d_) v = f_->neg(v);
    return r;
  }
  FracLaurent scaled(u16 s) const {
    FracLaurent r = *this;
    for (auto& v : r.d_) v = f_->mul(v, s);
    return r;
  }
  friend bool operator==(const FracLaurent& a, const FracLaurent& b) { return a.d_ == b.d_; }

 private:
  const FieldSpec* f_ = nullptr;
  std::vector<u16> d_;
  bool exact_ = true;
};

// Element of T^(m): alpha = alpha_0 + s*alpha_1 + ... + s^m*alpha_m with every
// part a fractional Laurent tail sharing one floor.
class JetLaurent {
 public:
  JetLaurent() = default;
  JetLaurent(const FieldSpec& f, int m, int floor) : f_(&f), m_(m) {
    parts_.assign(std::size_t(m) + 1, FracLaurent(f, floor));
  }
  static JetLaurent from_parts(const FieldSpec& f, std::vector<FracLaurent> parts) {
    if (parts.empty()) throw std::invalid_argument("need m+1 parts");
    for (auto& p : parts)
      if (p.depth() != parts[0].depth()) throw std::invalid_argument("parts must share a floor");
    JetLaurent a;
    a.f_ = &f;
    a.m_ = int(parts.size()) - 1;
    a.parts_ = std::move(parts);
    return a;
  }

  const FieldSpec& field() const { return *f_; }
  int order() const { return m_; }
  int floor() const { return parts_[0].floor(); }
  int depth() const { return parts_[0].depth(); }
  const FracLaurent& part(int i) const { return parts_[std::size_t(i)]; }
  FracLaurent& part(int i) { return parts_[std::size_t(i)]; }
  u16 digit(int i, int j) const { return parts_[std::size_t(i)].digit(j); }
  void set_digit(int i, int j, u16 v) { parts_[std::size_t(i)].set_digit(j, v); }

  bool visibly_zero() const {
    for (auto& p : parts_)
      if (!p.visibly_zero()) return false;
    return true;
  }
  bool exact_tail() const {
    for (auto& p : parts_)
      if (!p.exact_tail()) return false;
    return true;
  }

  friend JetLaurent operator+(const JetLaurent& a, const JetLaurent& b) {
    if (a.m_ != b.m_) throw FieldMismatch("jet laurents of different order");
    std::vector<FracLaurent> parts;
    for (int i = 0; i <= a.m_; ++i) parts.push_back(a.part(i) + b.part(i));
    return from_parts(*a.f_, std::move(parts));
  }
  JetLaurent operator-() const {
    JetLaurent r = *this;
    for (auto& p : r.parts_) p = -p;
    return r;
  }
  JetLaurent scaled(u16 s) const {
    JetLaurent r = *this;
    for (auto& p : r.parts_) p = p.scaled(s);
    return r;
  }
  friend bool operator==(const JetLaurent& a, const JetLaurent& b) {
    return a.parts_ == b.parts_;
  }

 private:
  const FieldSpec* f_ = nullptr;
  int m_ = 0;
  std::vector<FracLaurent> parts_;
};

// pi_l on T^(m).
inline JetLaurent reduce(const JetLaurent& a, int l) {
  if (l > a.order()) throw std::invalid_argument("reduce: l > m");
  std::vector<FracLaurent> parts;
  for (int i = 0; i <= l; ++i) parts.push_back(a.part(i));
  return JetLaurent::from_parts(a.field(), std::move(parts));
}

// ||pi_l(alpha)||_l = max_{i<=l} ||alpha_i||_0. A component's unknown tail
// sits strictly below q^-depth, so any visible digit still determines the
// maximum; only an entirely blank window with shed depth is undecidable.
inline NormExp norm_dist(const JetLaurent& a, int l) {
  if (l > a.order()) throw std::invalid_argument("norm level > m");
  NormExp best = NormExp::zero();
  bool all_exact = true;
  for (int i = 0; i <= l; ++i) {
    const FracLaurent& part = a.part(i);
    for (int j = 1; j <= part.depth(); ++j)
      if (part.digit(j)) {
        best = std::max(best, NormExp::pow(-j));
        break;
      }
    all_exact = all_exact && part.exact_tail();
  }
  if (best.is_zero() && !all_exact)
    throw InsufficientPrecision("norm of an all-zero window with an unknown tail");
  return best;
}
inline NormExp norm_dist(const JetLaurent& a) { return norm_dist(a, a.order()); }

// Decide ||pi_l(alpha)||_l < q^-b. A visible nonzero digit at t^-j, j <= b,
// settles the question as false even with a shallow floor; an all-zero window
// shallower than b cannot settle it and raises InsufficientPrecision.
inline bool dist_lt(const JetLaurent& a, int l, int b) {
  if (l > a.order()) throw std::invalid_argument("norm level > m");
  int depth = a.depth();
  for (int i = 0; i <= l; ++i)
    for (int j = 1; j <= std::min(b, depth); ++j)
      if (a.digit(i, j)) return false;
  if (b <= depth) return true;
  throw InsufficientPrecision("norm comparison needs digits below the stored floor");
}

// psi_m(alpha) = prod_i e_q(coefficient of t^-1 in alpha_i): a single root.
inline RootSum psi_m(const JetLaurent& a) {
  const FieldSpec& f = a.field();
  int e = 0;
  for (int i = 0; i <= a.order(); ++i) e = (e + f.trace(a.digit(i, 1))) % f.p();
  return RootSum::root(f.p(), e);
}

// Fractional part of alpha * x for x in O_m: the s-convolution
// (alpha*x)_k = sum_{i+j=k} alpha_i x_j truncated at s^{m+1}, keeping only
// negative t-exponents. The result is exact down to floor(alpha) + deg_t(x);
// callers needing more must construct alpha with a lower floor first.
inline JetLaurent mul_poly_laurent(const JetLaurent& a, const JetPoly& x) {
  if (!a.field().same(x.field()) || a.order() != x.order())
    throw FieldMismatch("laurent/poly from different rings");
  const FieldSpec& f = a.field();
  int m = a.order();
  if (x.is_zero()) return JetLaurent(f, m, a.floor());
  int deg = x.tdeg();
  int new_floor = a.floor() + deg;
  if (new_floor > -1)
    throw InsufficientPrecision("product floor would rise above t^-1; lower the operand floor");
  JetLaurent r(f, m, new_floor);
  if (deg > 0)
    for (int i = 0; i <= m; ++i) r.part(i).mark_inexact_tail();
  for (int i = 0; i <= m; ++i) {
    if (a.part(i).visibly_zero()) continue;
    for (int j = 0; i + j <= m; ++j) {
      // alpha_i * x_j into component i+j
      for (int w = 1; w <= -new_floor; ++w) {
        u16 acc = 0;
        for (int v = 0; v <= deg; ++v) {
          int u = w + v;  // digit t^-(w+v) of alpha_i
          if (u > a.depth()) break;
          u16 xa = x.coeff(j, v);
          if (!xa) continue;
          acc = f.add(acc, f.mul(a.digit(i, u), xa));
        }
        if (acc) {
          int k = i + j;
          r.set_digit(k, w, f.add(r.digit(k, w), acc));
        }
      }
    }
  }
  return r;
}

// Character pairing digits: for alpha of depth >= P and g in O_m with
// deg_t g < P, the exponent of psi_m(alpha * g) is
//   sum_{i,j} Tr(a_{i,j} * w_{i,j}),  w_{i,j} = sum_{i' <= m-i} g_{i'}[j-1],
// a linear functional of alpha's digit row. Layout matches AlphaRep:
// component-major, entry i*P + (j-1).
inline std::vector<u16> psi_pairing_digits(const JetPoly& g, int P) {
  const FieldSpec& f = g.field();
  int m = g.order();
  if (g.tdeg() >= P)
    throw InsufficientPrecision("pairing depth too small for the polynomial degree");
  std::vector<u16> w(std::size_t(m + 1) * std::size_t(P), 0);
  for (int i = 0; i <= m; ++i)
    for (int j = 1; j <= P; ++j) {
      u16 acc = 0;
      for (int ip = 0; ip + i <= m; ++ip) acc = f.add(acc, g.coeff(ip, j - 1));
      w[std::size_t(i) * std::size_t(P) + std::size_t(j - 1)] = acc;
    }
  return w;
}

}  // namespace jetsum
