#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "jetsum/field.hpp"
#include "jetsum/util.hpp"

namespace jetsum {

// Norm exponent on the q^e scale with a distinguished value for norm 0.
// Comparisons follow the extended-integer order.
class NormExp {
 public:
  static NormExp zero() { return NormExp(kZero); }
  static NormExp pow(int e) { return NormExp(e); }

  bool is_zero() const { return e_ == kZero; }
  int exponent() const {
    if (is_zero()) throw std::domain_error("norm 0 has no exponent");
    return e_;
  }
  // norm < q^t / norm <= q^t
  bool lt_pow(int t) const { return e_ == kZero || e_ < t; }
  bool leq_pow(int t) const { return e_ == kZero || e_ <= t; }

  friend bool operator==(const NormExp&, const NormExp&) = default;
  friend std::strong_ordering operator<=>(const NormExp& a, const NormExp& b) {
    return a.e_ <=> b.e_;
  }

 private:
  explicit NormExp(int e) : e_(e) {}
  static constexpr int kZero = std::numeric_limits<int>::min();
  int e_;
};

// Element of R_m = F_q[s]/(s^{m+1}): m+1 field coefficients, truncated
// arithmetic.
class JetScalar {
 public:
  JetScalar() = default;
  JetScalar(const FieldSpec& f, int m) : f_(&f), c_(std::size_t(m) + 1, 0) {}

  static JetScalar constant(const FieldSpec& f, int m, u16 value) {
    JetScalar x(f, m);
    x.c_[0] = value;
    return x;
  }
  static JetScalar from_components(const FieldSpec& f, std::vector<u16> comps) {
    JetScalar x;
    x.f_ = &f;
    x.c_ = std::move(comps);
    if (x.c_.empty()) throw std::invalid_argument("jet scalar needs m+1 components");
    return x;
  }

  const FieldSpec& field() const { return *f_; }
  int order() const { return int(c_.size()) - 1; }
  u16 comp(int i) const { return c_[std::size_t(i)]; }
  void set_comp(int i, u16 v) { c_[std::size_t(i)] = v; }
  const std::vector<u16>& comps() const { return c_; }

  bool is_zero() const {
    for (u16 v : c_)
      if (v) return false;
    return true;
  }

  // s-adic valuation; m+1 for the zero element.
  int s_valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i]) return int(i);
    return int(c_.size());
  }

  friend JetScalar operator+(const JetScalar& a, const JetScalar& b) {
    a.check(b);
    JetScalar r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.f_->add(r.c_[i], b.c_[i]);
    return r;
  }
  friend JetScalar operator-(const JetScalar& a, const JetScalar& b) {
    a.check(b);
    JetScalar r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.f_->sub(r.c_[i], b.c_[i]);
    return r;
  }
  friend JetScalar operator*(const JetScalar& a, const JetScalar& b) {
    a.check(b);
    JetScalar r(*a.f_, a.order());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; i + j < r.c_.size(); ++j) {
        if (!b.c_[j]) continue;
        auto& slot = r.c_[i + j];
        slot = a.f_->add(slot, a.f_->mul(a.c_[i], b.c_[j]));
      }
    }
    return r;
  }
  JetScalar operator-() const {
    JetScalar r = *this;
    for (auto& v : r.c_) v = f_->neg(v);
    return r;
  }
  JetScalar scaled(u16 s) const {
    JetScalar r = *this;
    for (auto& v : r.c_) v = f_->mul(v, s);
    return r;
  }
  friend bool operator==(const JetScalar& a, const JetScalar& b) { return a.c_ == b.c_; }

 private:
  void check(const JetScalar& o) const {
    if (!f_->same(*o.f_) || c_.size() != o.c_.size())
      throw FieldMismatch("jet scalars from different rings");
  }
  const FieldSpec* f_ = nullptr;
  std::vector<u16> c_;
};

// Element of O_m = R_m[t]. Canonical form trims trailing zero t-coefficients
// so equality is structural and values hash cleanly.
class JetPoly {
 public:
  JetPoly() = default;
  JetPoly(const FieldSpec& f, int m) : f_(&f), m_(m) {}

  static JetPoly from_tcoeffs(const FieldSpec& f, int m, std::vector<JetScalar> tc) {
    JetPoly x(f, m);
    x.tc_ = std::move(tc);
    x.trim();
    return x;
  }
  static JetPoly constant(const FieldSpec& f, int m, u16 value) {
    JetPoly x(f, m);
    if (value) x.tc_.push_back(JetScalar::constant(f, m, value));
    return x;
  }
  // monomial c * s^i * t^j
  static JetPoly monomial(const FieldSpec& f, int m, u16 c, int i, int j) {
    JetPoly x(f, m);
    if (c != 0 && i <= m) {
      x.tc_.assign(std::size_t(j) + 1, JetScalar(f, m));
      x.tc_[std::size_t(j)].set_comp(i, c);
    }
    return x;
  }

  // Component view: the m+1 polynomials x_i in F_q[t]. Projecting and
  // recombining is the identity.
  static JetPoly from_components(const FieldSpec& f, int m,
                                 const std::vector<std::vector<u16>>& comps) {
    if (int(comps.size()) != m + 1) throw std::invalid_argument("need m+1 components");
    std::size_t deg1 = 0;
    for (auto& c : comps) deg1 = std::max(deg1, c.size());
    JetPoly x(f, m);
    x.tc_.assign(deg1, JetScalar(f, m));
    for (int i = 0; i <= m; ++i)
      for (std::size_t j = 0; j < comps[std::size_t(i)].size(); ++j)
        x.tc_[j].set_comp(i, comps[std::size_t(i)][j]);
    x.trim();
    return x;
  }
  std::vector<u16> component(int i) const {
    std::vector<u16> c(tc_.size());
    for (std::size_t j = 0; j < tc_.size(); ++j) c[j] = tc_[j].comp(i);
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
  }

  const FieldSpec& field() const { return *f_; }
  int order() const { return m_; }
  bool is_zero() const { return tc_.empty(); }
  int tdeg() const { return int(tc_.size()) - 1; }  // -1 for zero
  const std::vector<JetScalar>& tcoeffs() const { return tc_; }
  u16 coeff(int i, int j) const {  // coefficient of s^i t^j
    if (j < 0 || j >= int(tc_.size())) return 0;
    return tc_[std::size_t(j)].comp(i);
  }

  friend JetPoly operator+(const JetPoly& a, const JetPoly& b) {
    a.check(b);
    JetPoly r(*a.f_, a.m_);
    r.tc_.resize(std::max(a.tc_.size(), b.tc_.size()), JetScalar(*a.f_, a.m_));
    for (std::size_t j = 0; j < r.tc_.size(); ++j) {
      if (j < a.tc_.size()) r.tc_[j] = r.tc_[j] + a.tc_[j];
      if (j < b.tc_.size()) r.tc_[j] = r.tc_[j] + b.tc_[j];
    }
    r.trim();
    return r;
  }
  friend JetPoly operator-(const JetPoly& a, const JetPoly& b) { return a + (-b); }
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b) {
    a.check(b);
    JetPoly r(*a.f_, a.m_);
    if (a.is_zero() || b.is_zero()) return r;
    r.tc_.assign(a.tc_.size() + b.tc_.size() - 1, JetScalar(*a.f_, a.m_));
    for (std::size_t i = 0; i < a.tc_.size(); ++i)
      for (std::size_t j = 0; j < b.tc_.size(); ++j) r.tc_[i + j] = r.tc_[i + j] + a.tc_[i] * b.tc_[j];
    r.trim();
    return r;
  }
  JetPoly operator-() const {
    JetPoly r = *this;
    for (auto& c : r.tc_) c = -c;
    return r;
  }
  JetPoly scaled(u16 s) const {
    if (s == 0) return JetPoly(*f_, m_);
    JetPoly r = *this;
    for (auto& c : r.tc_) c = c.scaled(s);
    r.trim();
    return r;
  }
  JetPoly pow(int e) const {
    JetPoly r = JetPoly::constant(*f_, m_, 1);
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
  }
  friend bool operator==(const JetPoly& a, const JetPoly& b) { return a.tc_ == b.tc_; }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b9;
    for (auto& c : tc_)
      for (u16 v : c.comps()) h = h * 1099511628211ULL + v + 1;
    return h;
  }

 private:
  void check(const JetPoly& o) const {
    if (!f_->same(*o.f_) || m_ != o.m_) throw FieldMismatch("jet polys from different rings");
  }
  void trim() {
    while (!tc_.empty() && tc_.back().is_zero()) tc_.pop_back();
  }
  const FieldSpec* f_ = nullptr;
  int m_ = 0;
  std::vector<JetScalar> tc_;
};

// |x|_m = max_i |x_i|_0 = q^(max component t-degree); norm 0 for x = 0.
inline NormExp norm_abs(const JetPoly& x) {
  if (x.is_zero()) return NormExp::zero();
  return NormExp::pow(x.tdeg());
}

// pi_l: drop the components s^{l+1}..s^m.
inline JetPoly reduce(const JetPoly& x, int l) {
  if (l > x.order()) throw std::invalid_argument("reduce: l > m");
  std::vector<std::vector<u16>> comps(std::size_t(l) + 1);
  for (int i = 0; i <= l; ++i) comps[std::size_t(i)] = x.component(i);
  return JetPoly::from_components(x.field(), l, comps);
}

inline JetScalar reduce(const JetScalar& x, int l) {
  if (l > x.order()) throw std::invalid_argument("reduce: l > m");
  std::vector<u16> c(x.comps().begin(), x.comps().begin() + l + 1);
  return JetScalar::from_components(x.field(), std::move(c));
}

// ---------------------------------------------------------------------------
// Deterministic enumeration of the box {x in O_m^n : |x|_m <= q^e}: a base-q
// odometer over n*(m+1)*(e+1) field digits. Digit layout is variable-major,
// then s-component, then t-power, with digit 0 the fastest mover; shards are
// contiguous index ranges, so the stream splits deterministically.
class JetBox {
 public:
  JetBox(const FieldSpec& f, int m, int n, int e) : f_(&f), m_(m), n_(n), e_(e) {
    box_.q = f.q();
    box_.ndigits = n * (m + 1) * (e + 1);
  }

  int ndigits() const { return box_.ndigits; }
  u128 total() const { return box_.total(); }
  u64 total_checked(const Budget& budget, const char* what) const {
    budget.require(total(), what);
    return u64(total());
  }

  int digit_index(int var, int comp, int tpow) const {
    return (var * (m_ + 1) + comp) * (e_ + 1) + tpow;
  }

  void decode(u64 idx, u16* digits) const { box_.decode(idx, digits); }
  bool next(u16* digits) const { return box_.next(digits); }

  std::vector<JetPoly> to_polys(const u16* digits) const {
    std::vector<JetPoly> xs;
    xs.reserve(std::size_t(n_));
    for (int v = 0; v < n_; ++v) {
      std::vector<std::vector<u16>> comps(std::size_t(m_) + 1);
      for (int i = 0; i <= m_; ++i) {
        comps[std::size_t(i)].resize(std::size_t(e_) + 1);
        for (int j = 0; j <= e_; ++j)
          comps[std::size_t(i)][std::size_t(j)] = digits[digit_index(v, i, j)];
      }
      xs.push_back(JetPoly::from_components(*f_, m_, comps));
    }
    return xs;
  }

 private:
  const FieldSpec* f_;
  int m_, n_, e_;
  DigitBox box_;
};

}  // namespace jetsum

template <>
struct std::hash<jetsum::JetPoly> {
  std::size_t operator()(const jetsum::JetPoly& x) const { return x.hash(); }
};
