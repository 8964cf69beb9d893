#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "jetsum/errors.hpp"
#include "jetsum/util.hpp"

namespace jetsum {

// Exact element of the group ring Z[mu_p]: an integer multiplicity per p-th
// root of unity. All character sums accumulate here; the only floating-point
// surface is magnitude(). The zero test is canonical because for prime p the
// single Z-linear relation among the roots is 1 + z + ... + z^{p-1} = 0, so a
// sum vanishes exactly when all multiplicities coincide.
class RootSum {
 public:
  explicit RootSum(int p) : p_(p), c_(std::size_t(p), 0) {}

  static RootSum root(int p, int j, i64 mult = 1) {
    RootSum r(p);
    r.c_[std::size_t(((j % p) + p) % p)] = mult;
    return r;
  }

  int p() const { return p_; }
  const std::vector<i64>& counts() const { return c_; }

  void add_root(int j, i64 mult = 1) {
    auto& slot = c_[std::size_t(((j % p_) + p_) % p_)];
    slot = checked_add(slot, mult);
  }

  RootSum& operator+=(const RootSum& o) {
    require_same(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = checked_add(c_[j], o.c_[j]);
    return *this;
  }
  friend RootSum operator+(RootSum a, const RootSum& b) { return a += b; }

  RootSum operator-() const {
    RootSum r(p_);
    for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] = checked_mul(c_[j], -1);
    return r;
  }
  RootSum& operator-=(const RootSum& o) { return *this += -o; }
  friend RootSum operator-(RootSum a, const RootSum& b) { return a -= b; }

  RootSum& operator*=(i64 k) {
    for (auto& v : c_) v = checked_mul(v, k);
    return *this;
  }

  // Multiplication by zeta^j rotates the multiplicity vector.
  RootSum mul_root(int j) const {
    RootSum r(p_);
    int shift = ((j % p_) + p_) % p_;
    for (int i = 0; i < p_; ++i) r.c_[std::size_t((i + shift) % p_)] = c_[std::size_t(i)];
    return r;
  }

  // Complex conjugate: j -> -j mod p.
  RootSum conj() const {
    RootSum r(p_);
    for (int i = 0; i < p_; ++i) r.c_[std::size_t((p_ - i) % p_)] = c_[std::size_t(i)];
    return r;
  }

  bool is_zero() const {
    for (std::size_t j = 1; j < c_.size(); ++j)
      if (c_[j] != c_[0]) return false;
    return true;
  }

  friend bool operator==(const RootSum& a, const RootSum& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  // Value as a rational integer, when the sum lies in Z: all non-trivial
  // roots must carry the same multiplicity c, giving c_0 - c.
  std::optional<i64> as_integer() const {
    for (std::size_t j = 2; j < c_.size(); ++j)
      if (c_[j] != c_[1]) return std::nullopt;
    if (p_ == 1) return c_[0];
    return checked_add(c_[0], -c_[1]);
  }

  // |sum_j c_j exp(2*pi*i*j/p)| in floating point. Relative error is below
  // 1e-12 as long as every count stays under 2^53.
  long double magnitude() const {
    long double re = 0, im = 0;
    for (int j = 0; j < p_; ++j) {
      long double ang = 2.0L * std::numbers::pi_v<long double> * j / p_;
      re += static_cast<long double>(c_[std::size_t(j)]) * std::cos(ang);
      im += static_cast<long double>(c_[std::size_t(j)]) * std::sin(ang);
    }
    return std::sqrt(re * re + im * im);
  }

 private:
  void require_same(const RootSum& o) const {
    if (p_ != o.p_) throw FieldMismatch("RootSum operands with different p");
  }
  int p_;
  std::vector<i64> c_;
};

}  // namespace jetsum
