#pragma once

#include <cstdint>
#include <vector>

#include "jetsum/field.hpp"
#include "jetsum/util.hpp"

namespace jetsum {

// Degree-j extension of a FieldSpec, used only for smoothness searches over
// F_{q^j}. Elements are length-j digit buffers over the base field; there are
// no element tables, every product is schoolbook plus modulus reduction.
class ExtField {
 public:
  // Deterministic construction: first monic irreducible of the given degree
  // in base-q odometer order.
  static ExtField make(const FieldSpec& base, int degree) {
    ExtField e;
    e.base_ = &base;
    e.deg_ = degree;
    if (degree < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (degree == 1) {
      e.mod_ = {0, 1};
      return e;
    }
    std::vector<u16> low(std::size_t(degree), 0);
    DigitBox box{base.q(), degree};
    while (true) {
      e.mod_.assign(low.begin(), low.end());
      e.mod_.push_back(1);
      if (e.irreducible()) return e;
      if (!box.next(low.data())) break;
    }
    throw std::logic_error("no irreducible polynomial found");  // cannot happen
  }

  const FieldSpec& base() const { return *base_; }
  int degree() const { return deg_; }
  const std::vector<u16>& modulus() const { return mod_; }

  using Elem = std::vector<u16>;

  Elem zero() const { return Elem(std::size_t(deg_), 0); }
  Elem embed(u16 base_value) const {
    Elem e = zero();
    e[0] = base_value;
    return e;
  }
  bool is_zero(const Elem& a) const {
    for (u16 v : a)
      if (v) return false;
    return true;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r(std::size_t(deg_), 0);
    for (int i = 0; i < deg_; ++i) r[std::size_t(i)] = base_->add(a[std::size_t(i)], b[std::size_t(i)]);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<u16> prod(std::size_t(2 * deg_ - 1), 0);
    for (int i = 0; i < deg_; ++i) {
      if (!a[std::size_t(i)]) continue;
      for (int j = 0; j < deg_; ++j) {
        if (!b[std::size_t(j)]) continue;
        auto& slot = prod[std::size_t(i + j)];
        slot = base_->add(slot, base_->mul(a[std::size_t(i)], b[std::size_t(j)]));
      }
    }
    reduce(prod);
    prod.resize(std::size_t(deg_));
    return prod;
  }
  Elem scale(const Elem& a, u16 c) const {
    Elem r = a;
    for (auto& v : r) v = base_->mul(v, c);
    return r;
  }

 private:
  // in-place reduction of a product buffer modulo the monic modulus
  void reduce(std::vector<u16>& poly) const {
    for (int i = int(poly.size()) - 1; i >= deg_; --i) {
      u16 c = poly[std::size_t(i)];
      if (!c) continue;
      poly[std::size_t(i)] = 0;
      for (int j = 0; j < deg_; ++j) {
        auto& slot = poly[std::size_t(i - deg_ + j)];
        slot = base_->sub(slot, base_->mul(c, mod_[std::size_t(j)]));
      }
    }
  }

  bool irreducible() const {
    // no roots in the base field
    for (int x = 0; x < base_->q(); ++x) {
      u16 v = 0;
      for (int i = deg_; i >= 0; --i) v = base_->add(base_->mul(v, u16(x)), mod_[std::size_t(i)]);
      if (v == 0) return false;
    }
    // no monic divisor of degree 2..deg/2
    for (int dd = 2; 2 * dd <= deg_; ++dd) {
      std::vector<u16> low(std::size_t(dd), 0);
      DigitBox box{base_->q(), dd};
      do {
        std::vector<u16> div(low.begin(), low.end());
        div.push_back(1);
        if (divides(div)) return false;
      } while (box.next(low.data()));
    }
    return true;
  }

  bool divides(const std::vector<u16>& d) const {
    std::vector<u16> num(mod_);
    int dd = int(d.size()) - 1;
    for (int i = int(num.size()) - 1; i >= dd; --i) {
      u16 c = num[std::size_t(i)];
      if (!c) continue;
      for (int j = 0; j <= dd; ++j) {
        auto& slot = num[std::size_t(i - dd + j)];
        slot = base_->sub(slot, base_->mul(c, d[std::size_t(j)]));
      }
    }
    for (int i = 0; i < dd; ++i)
      if (num[std::size_t(i)]) return false;
    return true;
  }

  const FieldSpec* base_ = nullptr;
  int deg_ = 1;
  std::vector<u16> mod_;
};

}  // namespace jetsum
