#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jetsum/errors.hpp"
#include "jetsum/rootsum.hpp"
#include "jetsum/util.hpp"

namespace jetsum {

// The finite field F_q, q = p^k, with full lookup tables. Elements are dense
// indices 0..q-1 encoding power-basis coordinates base p (index = sum c_i p^i).
// Desk scale: q <= 1024, so the q x q tables stay small and every operation is
// a single lookup in the hot loops.
//
// Extension fields take a caller-supplied modulus, which is verified
// irreducible by exhaustive root and factor search at construction.
class FieldSpec {
 public:
  static constexpr int kMaxQ = 1024;

  static FieldSpec prime(int p) { return FieldSpec(p, {0, 1}); }

  // modulus coefficients constant-first, length k+1; normalized monic.
  static FieldSpec extension(int p, std::vector<int> modulus) {
    return FieldSpec(p, std::move(modulus));
  }

  // Direct construction; prime fields pass the placeholder modulus {0, 1}.
  FieldSpec(int p, std::vector<int> modulus) : p_(p), mod_(std::move(modulus)) { init(); }

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return mod_; }

  u16 add(u16 a, u16 b) const { return add_[std::size_t(a) * q_ + b]; }
  u16 sub(u16 a, u16 b) const { return add_[std::size_t(a) * q_ + neg_[b]]; }
  u16 mul(u16 a, u16 b) const { return mul_[std::size_t(a) * q_ + b]; }
  u16 neg(u16 a) const { return neg_[a]; }
  u16 inv(u16 a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_[a];
  }
  u16 pow(u16 a, u64 e) const {
    u16 r = 1, base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  // Tr_{F_q/F_p}(a) as a residue mod p.
  int trace(u16 a) const { return tr_[a]; }
  // Tr(a*b); table-backed, the workhorse of every character pairing.
  int trace_mul(u16 a, u16 b) const { return trmul_[std::size_t(a) * q_ + b]; }

  // Scalar c in [0,p) embeds as the constant polynomial, index c.
  u16 from_scalar(int c) const { return u16(((c % p_) + p_) % p_); }

  std::vector<int> coeffs(u16 a) const {
    std::vector<int> c(std::size_t(k_), 0);
    for (int i = 0; i < k_; ++i) {
      c[std::size_t(i)] = int(a % p_);
      a = u16(a / p_);
    }
    return c;
  }
  u16 from_coeffs(std::span<const int> c) const {
    if (int(c.size()) != k_) throw std::invalid_argument("coefficient count != k");
    u64 idx = 0;
    for (int i = k_ - 1; i >= 0; --i) {
      int r = ((c[std::size_t(i)] % p_) + p_) % p_;
      idx = idx * u64(p_) + u64(r);
    }
    return u16(idx);
  }

  bool same(const FieldSpec& o) const { return p_ == o.p_ && mod_ == o.mod_; }

  std::string describe() const {
    if (k_ == 1) return std::to_string(p_);
    std::string s = std::to_string(p_) + "^" + std::to_string(k_) + ":";
    for (int i = 0; i <= k_; ++i) {
      if (i) s += ",";
      s += std::to_string(mod_[std::size_t(i)]);
    }
    return s;
  }

  std::string elem_str(u16 a) const {
    if (k_ == 1) return std::to_string(a);
    std::string s = "[";
    auto c = coeffs(a);
    for (int i = 0; i < k_; ++i) {
      if (i) s += ",";
      s += std::to_string(c[std::size_t(i)]);
    }
    return s + "]";
  }

 private:
  void init() {
    int p = p_;
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("p is not prime: " + std::to_string(p));
    if (mod_.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
    k_ = int(mod_.size()) - 1;
    for (auto& c : mod_) c = ((c % p_) + p_) % p_;
    if (mod_.back() == 0) throw std::invalid_argument("modulus leading coefficient is zero");
    // Monic normalization leaves the quotient ring unchanged.
    if (mod_.back() != 1) {
      int s = inv_mod_p(mod_.back());
      for (auto& c : mod_) c = (c * s) % p_;
    }
    long long qq = 1;
    for (int i = 0; i < k_; ++i) {
      qq *= p_;
      if (qq > kMaxQ) throw std::invalid_argument("q = p^k beyond supported desk scale");
    }
    q_ = int(qq);
    if (k_ > 1 && !irreducible()) throw std::invalid_argument("modulus is reducible over F_p");
    build_tables();
  }

  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  int inv_mod_p(int a) const {
    a = ((a % p_) + p_) % p_;
    for (int x = 1; x < p_; ++x)
      if ((a * x) % p_ == 1) return x;
    throw std::domain_error("no inverse mod p");
  }

  // Exhaustive irreducibility test: no roots, and no monic divisor of degree
  // up to k/2. Feasible since q stays at desk scale.
  bool irreducible() const {
    for (int r = 0; r < p_; ++r)
      if (eval_mod_p(mod_, r) == 0) return false;
    std::vector<int> div;
    for (int deg = 2; 2 * deg <= k_; ++deg) {
      div.assign(std::size_t(deg) + 1, 0);
      div[std::size_t(deg)] = 1;
      // enumerate all monic polynomials of this degree
      u64 count = checked_pow_u64(u64(p_), unsigned(deg));
      for (u64 idx = 0; idx < count; ++idx) {
        u64 t = idx;
        for (int i = 0; i < deg; ++i) {
          div[std::size_t(i)] = int(t % u64(p_));
          t /= u64(p_);
        }
        if (divides(div, mod_)) return false;
      }
    }
    return true;
  }

  int eval_mod_p(const std::vector<int>& poly, int x) const {
    int v = 0;
    for (int i = int(poly.size()) - 1; i >= 0; --i) v = (v * x + poly[std::size_t(i)]) % p_;
    return v;
  }

  bool divides(const std::vector<int>& d, std::vector<int> num) const {
    int dd = int(d.size()) - 1;
    for (int i = int(num.size()) - 1; i >= dd; --i) {
      int c = num[std::size_t(i)];
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j) {
        auto& slot = num[std::size_t(i - dd + j)];
        slot = ((slot - c * d[std::size_t(j)]) % p_ + p_) % p_;
      }
    }
    for (int i = 0; i < dd; ++i)
      if (num[std::size_t(i)] != 0) return false;
    return true;
  }

  void build_tables() {
    std::size_t n = std::size_t(q_);
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    inv_.resize(n);
    tr_.resize(n);
    trmul_.resize(n * n);

    // power-basis coordinates for every index
    std::vector<std::vector<int>> co(n);
    for (u16 a = 0; a < q_; ++a) co[a] = coeffs(a);

    for (u16 a = 0; a < q_; ++a) {
      std::vector<int> nc(std::size_t(k_), 0);
      for (int i = 0; i < k_; ++i) nc[std::size_t(i)] = (p_ - co[a][std::size_t(i)]) % p_;
      neg_[a] = from_coeffs(nc);
      for (u16 b = 0; b < q_; ++b) {
        std::vector<int> s(std::size_t(k_), 0);
        for (int i = 0; i < k_; ++i) s[std::size_t(i)] = (co[a][std::size_t(i)] + co[b][std::size_t(i)]) % p_;
        add_[std::size_t(a) * n + b] = from_coeffs(s);
      }
    }

    // reduction rows: t^(k+j) mod modulus, j = 0..k-2
    std::vector<std::vector<int>> red;
    if (k_ > 1) {
      std::vector<int> cur(mod_.begin(), mod_.end() - 1);
      for (auto& c : cur) c = (p_ - c) % p_;  // t^k = -lower part (monic modulus)
      red.push_back(cur);
      for (int j = 1; j <= k_ - 2; ++j) {
        std::vector<int> nxt(std::size_t(k_), 0);
        int carry = cur[std::size_t(k_ - 1)];
        for (int i = k_ - 1; i >= 1; --i) nxt[std::size_t(i)] = cur[std::size_t(i - 1)];
        nxt[0] = 0;
        for (int i = 0; i < k_; ++i)
          nxt[std::size_t(i)] = (nxt[std::size_t(i)] + carry * red[0][std::size_t(i)]) % p_;
        red.push_back(nxt);
        cur = nxt;
      }
    }

    for (u16 a = 0; a < q_; ++a) {
      for (u16 b = 0; b < q_; ++b) {
        std::vector<int> prod(std::size_t(2 * k_ - 1), 0);
        for (int i = 0; i < k_; ++i) {
          if (co[a][std::size_t(i)] == 0) continue;
          for (int j = 0; j < k_; ++j)
            prod[std::size_t(i + j)] =
                (prod[std::size_t(i + j)] + co[a][std::size_t(i)] * co[b][std::size_t(j)]) % p_;
        }
        // red[i-k] is the fully reduced image of t^i, so it lands at degree 0
        for (int i = 2 * k_ - 2; i >= k_; --i) {
          int c = prod[std::size_t(i)];
          if (c == 0) continue;
          for (int j = 0; j < k_; ++j)
            prod[std::size_t(j)] = (prod[std::size_t(j)] + c * red[std::size_t(i - k_)][std::size_t(j)]) % p_;
        }
        prod.resize(std::size_t(k_));
        mul_[std::size_t(a) * n + b] = from_coeffs(prod);
      }
    }

    for (u16 a = 0; a < q_; ++a) inv_[a] = (a == 0) ? 0 : pow(a, u64(q_) - 2);

    // Tr(x) = x + x^p + ... + x^(p^(k-1)); lands in the prime subfield, whose
    // elements are exactly the indices 0..p-1.
    for (u16 a = 0; a < q_; ++a) {
      u16 acc = a, frob = a;
      for (int i = 1; i < k_; ++i) {
        frob = pow(frob, u64(p_));
        acc = add(acc, frob);
      }
      if (acc >= p_) throw std::logic_error("trace outside prime subfield");
      tr_[a] = int(acc);
    }
    for (u16 a = 0; a < q_; ++a)
      for (u16 b = 0; b < q_; ++b) trmul_[std::size_t(a) * n + b] = tr_[mul(a, b)];
  }

  int p_, k_, q_ = 0;
  std::vector<int> mod_;
  std::vector<u16> add_, mul_, neg_, inv_;
  std::vector<int> tr_;
  std::vector<int> trmul_;
};

// A field element: index plus owning-field pointer. Mismatched fields in any
// binary operation signal a caller bug.
class FieldElem {
 public:
  FieldElem() : f_(nullptr), idx_(0) {}
  FieldElem(const FieldSpec& f, u16 idx) : f_(&f), idx_(idx) {}

  static FieldElem from_coeffs(const FieldSpec& f, std::span<const int> c) {
    return FieldElem(f, f.from_coeffs(c));
  }

  const FieldSpec& field() const { return *f_; }
  u16 index() const { return idx_; }
  std::vector<int> coeffs() const { return f_->coeffs(idx_); }
  bool is_zero() const { return idx_ == 0; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    a.check(b);
    return FieldElem(*a.f_, a.f_->add(a.idx_, b.idx_));
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    a.check(b);
    return FieldElem(*a.f_, a.f_->sub(a.idx_, b.idx_));
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    a.check(b);
    return FieldElem(*a.f_, a.f_->mul(a.idx_, b.idx_));
  }
  FieldElem operator-() const { return FieldElem(*f_, f_->neg(idx_)); }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    a.check(b);
    return a.idx_ == b.idx_;
  }

 private:
  void check(const FieldElem& o) const {
    if (f_ == nullptr || o.f_ == nullptr || !f_->same(*o.f_))
      throw FieldMismatch("field elements from different fields");
  }
  const FieldSpec* f_;
  u16 idx_;
};

inline int ff_trace(const FieldElem& x) { return x.field().trace(x.index()); }

// e_q(x): the additive character value zeta_p^Tr(x), held exactly.
inline RootSum char_eq(const FieldElem& x) {
  return RootSum::root(x.field().p(), ff_trace(x));
}

}  // namespace jetsum
