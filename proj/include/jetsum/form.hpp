#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jetsum/extfield.hpp"
#include "jetsum/jets.hpp"
#include "jetsum/util.hpp"

namespace jetsum {

struct DimensionReport {
  int n, d, e;
  i64 mu_bar;  // n(e+1) - de - 5
  i64 mu;      // mu_bar + 3
};

inline DimensionReport dimensions(int n, int d, int e) {
  if (n < 1 || d < 1 || e < 0) throw std::invalid_argument("dimensions: bad parameters");
  DimensionReport r;
  r.n = n;
  r.d = d;
  r.e = e;
  r.mu_bar = i64(n) * (e + 1) - i64(d) * e - 5;
  r.mu = r.mu_bar + 3;
  return r;
}

// Degree-d form in n variables, stored two ways: the monomial list the user
// wrote and the symmetric coefficient tensor obtained by spreading each
// monomial coefficient uniformly over its permutation orbit (valid since the
// orbit sizes only carry prime factors <= d < char). The multilinear system
// and the gradient are precomputed as flat term lists for the hot loops.
//
// Constructors reject char <= d, matching the hypotheses of everything
// downstream; pure counting paths may opt out explicitly and then only the
// monomial evaluation surface is available.
class FormSpec {
 public:
  struct Term {
    u16 coeff;                   // field index
    std::vector<uint8_t> vars;   // 0-based, length d (monomials) or d-1 (psi/gradient)
  };

  static FormSpec diagonal(const FieldSpec& f, int d, std::vector<u16> coeffs,
                           bool allow_small_char = false) {
    FormSpec F(f, int(coeffs.size()), d, allow_small_char);
    for (int i = 0; i < F.n_; ++i) {
      if (!coeffs[std::size_t(i)]) continue;
      std::vector<int> tuple(std::size_t(d), i);
      F.add_monomial(tuple, coeffs[std::size_t(i)]);
    }
    F.finalize();
    F.diag_ = std::move(coeffs);
    return F;
  }

  // monomials as (sorted-or-not 0-based index tuples, field-index coefficient)
  static FormSpec from_monomials(const FieldSpec& f, int n, int d,
                                 const std::vector<std::pair<std::vector<int>, u16>>& monos,
                                 bool allow_small_char = false) {
    FormSpec F(f, n, d, allow_small_char);
    for (auto& [tuple, c] : monos) {
      if (!c) continue;
      F.add_monomial(tuple, c);
    }
    F.finalize();
    return F;
  }

  const FieldSpec& field() const { return *f_; }
  int n() const { return n_; }
  int d() const { return d_; }
  bool small_char_mode() const { return small_char_; }
  bool is_zero_form() const { return mono_.empty(); }
  bool is_diagonal() const { return !diag_.empty(); }
  const std::vector<u16>& diagonal_coeffs() const { return diag_; }
  const std::vector<Term>& monomials() const { return mono_; }

  // Symmetric tensor access: invariant under permutation of the indices.
  u16 tensor_coeff(std::vector<int> tuple) const {
    require_full();
    std::sort(tuple.begin(), tuple.end());
    auto it = sym_.find(tuple);
    return it == sym_.end() ? 0 : it->second;
  }

  const std::vector<Term>& psi_terms(int i) const {
    require_full();
    return psi_[std::size_t(i)];
  }
  const std::vector<Term>& gradient_terms(int i) const { return grad_[std::size_t(i)]; }
  u16 psi_scale() const { require_full(); return dfact_; }  // d! as a field scalar

  // --- evaluation over O_m ------------------------------------------------
  JetPoly eval(std::span<const JetPoly> x) const {
    require_dim(x.size());
    JetPoly acc(*f_, x.empty() ? 0 : x[0].order());
    for (auto& t : mono_) {
      JetPoly prod = x[t.vars[0]].scaled(t.coeff);
      for (std::size_t k = 1; k < t.vars.size(); ++k) prod = prod * x[t.vars[k]];
      acc = acc + prod;
    }
    return acc;
  }

  // psi_i(x^(1),...,x^(d-1)): multilinear, symmetric in the d-1 vector slots.
  JetPoly multilinear_psi(int i, std::span<const std::vector<JetPoly>> args) const {
    require_full();
    if (int(args.size()) != d_ - 1) throw std::invalid_argument("psi_i needs d-1 vector arguments");
    for (auto& a : args) require_dim(a.size());
    int m = args[0][0].order();
    JetPoly acc(*f_, m);
    for (auto& t : psi_[std::size_t(i)]) {
      JetPoly prod = args[0][t.vars[0]].scaled(t.coeff);
      for (std::size_t k = 1; k < t.vars.size(); ++k) prod = prod * args[std::size_t(k)][t.vars[k]];
      acc = acc + prod;
    }
    return acc;
  }

  std::vector<JetPoly> gradient(std::span<const JetPoly> x) const {
    require_dim(x.size());
    int m = x.empty() ? 0 : x[0].order();
    std::vector<JetPoly> g;
    g.reserve(std::size_t(n_));
    for (int i = 0; i < n_; ++i) {
      JetPoly acc(*f_, m);
      for (auto& t : grad_[std::size_t(i)]) {
        JetPoly prod = JetPoly::constant(*f_, m, t.coeff);
        for (uint8_t v : t.vars) prod = prod * x[v];
        acc = acc + prod;
      }
      g.push_back(std::move(acc));
    }
    return g;
  }

  // --- evaluation over R_m (jet-scalar points) ----------------------------
  JetScalar eval_scalar(std::span<const JetScalar> x) const {
    require_dim(x.size());
    JetScalar acc(*f_, x.empty() ? 0 : x[0].order());
    for (auto& t : mono_) {
      JetScalar prod = x[t.vars[0]].scaled(t.coeff);
      for (std::size_t k = 1; k < t.vars.size(); ++k) prod = prod * x[t.vars[k]];
      acc = acc + prod;
    }
    return acc;
  }
  JetScalar multilinear_psi_scalar(int i, std::span<const std::vector<JetScalar>> args) const {
    require_full();
    int m = args[0][0].order();
    JetScalar acc(*f_, m);
    for (auto& t : psi_[std::size_t(i)]) {
      JetScalar prod = args[0][t.vars[0]].scaled(t.coeff);
      for (std::size_t k = 1; k < t.vars.size(); ++k) prod = prod * args[std::size_t(k)][t.vars[k]];
      acc = acc + prod;
    }
    return acc;
  }
  std::vector<JetScalar> gradient_scalar(std::span<const JetScalar> x) const {
    require_dim(x.size());
    int m = x.empty() ? 0 : x[0].order();
    std::vector<JetScalar> g;
    for (int i = 0; i < n_; ++i) {
      JetScalar acc(*f_, m);
      for (auto& t : grad_[std::size_t(i)]) {
        JetScalar prod = JetScalar::constant(*f_, m, t.coeff);
        for (uint8_t v : t.vars) prod = prod * x[v];
        acc = acc + prod;
      }
      g.push_back(std::move(acc));
    }
    return g;
  }

  std::string spec_string() const {
    if (is_diagonal()) {
      std::string s = "diag:";
      for (int i = 0; i < n_; ++i) {
        if (i) s += ",";
        s += std::to_string(diag_[std::size_t(i)]);
      }
      return s;
    }
    std::string s;
    for (auto& t : mono_) {
      if (!s.empty()) s += ";";
      for (uint8_t v : t.vars) s += std::to_string(int(v) + 1);
      s += "=" + std::to_string(t.coeff);
    }
    return s.empty() ? "0" : s;
  }

 private:
  FormSpec(const FieldSpec& f, int n, int d, bool allow_small_char)
      : f_(&f), n_(n), d_(d), small_char_(f.p() <= d) {
    if (n < 1 || n > 255) throw std::invalid_argument("variable count out of range");
    if (d < 1) throw std::invalid_argument("degree must be positive");
    if (small_char_ && !allow_small_char)
      throw std::invalid_argument("char(F_q) must exceed d = " + std::to_string(d));
  }

  void add_monomial(std::vector<int> tuple, u16 coeff) {
    if (int(tuple.size()) != d_) throw std::invalid_argument("index tuple length != d");
    for (int v : tuple)
      if (v < 0 || v >= n_) throw std::invalid_argument("variable index out of range");
    std::sort(tuple.begin(), tuple.end());
    std::vector<uint8_t> vars(tuple.begin(), tuple.end());
    for (auto& t : mono_)
      if (t.vars == vars) {
        t.coeff = f_->add(t.coeff, coeff);
        return;
      }
    mono_.push_back(Term{coeff, std::move(vars)});
  }

  void finalize() {
    std::erase_if(mono_, [](const Term& t) { return t.coeff == 0; });
    std::sort(mono_.begin(), mono_.end(),
              [](const Term& a, const Term& b) { return a.vars < b.vars; });
    grad_.assign(std::size_t(n_), {});
    for (auto& t : mono_)
      for (int i = 0; i < n_; ++i) {
        int mult = int(std::count(t.vars.begin(), t.vars.end(), uint8_t(i)));
        if (!mult) continue;
        u16 c = f_->mul(t.coeff, f_->from_scalar(mult));
        std::vector<uint8_t> rest;
        bool dropped = false;
        for (uint8_t v : t.vars) {
          if (!dropped && v == i) { dropped = true; continue; }
          rest.push_back(v);
        }
        grad_[std::size_t(i)].push_back(Term{c, std::move(rest)});
      }
    if (small_char_) return;

    // symmetric tensor: spread each monomial coefficient over its orbit
    i64 dfac = 1;
    for (int i = 2; i <= d_; ++i) dfac = checked_mul(dfac, i);
    dfact_ = f_->from_scalar(int(dfac % f_->p()));
    for (auto& t : mono_) {
      i64 orbit = dfac;
      int run = 1;
      for (std::size_t k = 1; k <= t.vars.size(); ++k) {
        if (k < t.vars.size() && t.vars[k] == t.vars[k - 1]) {
          ++run;
        } else {
          for (int i = 2; i <= run; ++i) orbit /= i;
          run = 1;
        }
      }
      u16 orbit_f = f_->from_scalar(int(orbit % f_->p()));
      std::vector<int> key(t.vars.begin(), t.vars.end());
      sym_[key] = f_->mul(t.coeff, f_->inv(orbit_f));
    }

    // multilinear system: for every tensor entry containing i, every distinct
    // arrangement of the remaining d-1 indices contributes d! * c_T
    psi_.assign(std::size_t(n_), {});
    for (auto& [key, c] : sym_) {
      u16 scaled = f_->mul(dfact_, c);
      for (int i = 0; i < n_; ++i) {
        if (!std::count(key.begin(), key.end(), i)) continue;
        std::vector<uint8_t> rest;
        bool dropped = false;
        for (int v : key) {
          if (!dropped && v == i) { dropped = true; continue; }
          rest.push_back(uint8_t(v));
        }
        std::sort(rest.begin(), rest.end());
        do {
          bool merged = false;
          for (auto& t : psi_[std::size_t(i)])
            if (t.vars == rest) {
              t.coeff = f_->add(t.coeff, scaled);
              merged = true;
              break;
            }
          if (!merged) psi_[std::size_t(i)].push_back(Term{scaled, rest});
        } while (std::next_permutation(rest.begin(), rest.end()));
      }
    }
  }

  void require_dim(std::size_t got) const {
    if (int(got) != n_) throw std::invalid_argument("argument dimension != n");
  }
  void require_full() const {
    if (small_char_)
      throw std::logic_error("multilinear data unavailable when char <= d");
  }

  const FieldSpec* f_;
  int n_, d_;
  bool small_char_;
  u16 dfact_ = 1;
  std::vector<Term> mono_;
  std::vector<u16> diag_;
  std::map<std::vector<int>, u16> sym_;
  std::vector<std::vector<Term>> psi_;
  std::vector<std::vector<Term>> grad_;
};

// Field-independent form description; instantiated per field for cross-q
// scans. Integer coefficients embed through the prime subfield.
struct FormTemplate {
  int n = 0;
  int d = 0;
  bool diagonal = false;
  std::vector<long long> diag_coeffs;
  std::vector<std::pair<std::vector<int>, long long>> monomials;  // 0-based tuples

  FormSpec instantiate(const FieldSpec& f, bool allow_small_char = false) const {
    if (diagonal) {
      std::vector<u16> c;
      for (long long v : diag_coeffs) c.push_back(f.from_scalar(int(v % f.p())));
      return FormSpec::diagonal(f, d, std::move(c), allow_small_char);
    }
    std::vector<std::pair<std::vector<int>, u16>> monos;
    for (auto& [tuple, v] : monomials) monos.emplace_back(tuple, f.from_scalar(int(v % f.p())));
    return FormSpec::from_monomials(f, n, d, monos, allow_small_char);
  }
};

// ---------------------------------------------------------------------------
// Smoothness search: looks for a nonzero x over F_{q^k}, k <= k_max, with
// vanishing gradient (and F(x) = 0, which Euler's identity forces anyway for
// char > d). Certifies smoothness only up to the checked extension degree.

struct SmoothnessVerdict {
  bool smooth = false;
  int k_checked = 0;
  int witness_k = 0;
  std::vector<ExtField::Elem> witness;  // nonempty iff singular

  explicit operator bool() const { return smooth; }
};

inline SmoothnessVerdict smoothness_check(const FormSpec& F, int k_max, const Budget& budget) {
  const FieldSpec& f = F.field();
  SmoothnessVerdict v;
  if (F.is_zero_form()) {
    // the zero form is degenerate: everything is singular
    v.smooth = false;
    v.k_checked = k_max;
    v.witness_k = 1;
    ExtField ext = ExtField::make(f, 1);
    v.witness.assign(std::size_t(F.n()), ext.zero());
    v.witness[0] = ext.embed(1);
    return v;
  }
  for (int k = 1; k <= k_max; ++k) {
    budget.require(pow_u128_sat(u64(f.q()), unsigned(k * F.n())), "smoothness_check");
    ExtField ext = ExtField::make(f, k);
    DigitBox box{f.q(), k * F.n()};
    std::vector<u16> digits(std::size_t(box.ndigits), 0);
    std::vector<ExtField::Elem> x(std::size_t(F.n()), ext.zero());
    bool more = box.next(digits.data());  // skip the zero point
    while (more) {
      for (int i = 0; i < F.n(); ++i)
        for (int c = 0; c < k; ++c) x[std::size_t(i)][std::size_t(c)] = digits[std::size_t(i * k + c)];
      bool singular = true;
      for (int i = 0; i < F.n() && singular; ++i) {
        ExtField::Elem acc = ext.zero();
        for (auto& t : F.gradient_terms(i)) {
          ExtField::Elem prod = ext.embed(t.coeff);
          for (uint8_t var : t.vars) prod = ext.mul(prod, x[var]);
          acc = ext.add(acc, prod);
        }
        if (!ext.is_zero(acc)) singular = false;
      }
      if (singular) {
        ExtField::Elem fe = ext.zero();
        for (auto& t : F.monomials()) {
          ExtField::Elem prod = ext.embed(t.coeff);
          for (uint8_t var : t.vars) prod = ext.mul(prod, x[var]);
          fe = ext.add(fe, prod);
        }
        if (ext.is_zero(fe)) {
          v.smooth = false;
          v.k_checked = k;
          v.witness_k = k;
          v.witness = x;
          return v;
        }
      }
      more = box.next(digits.data());
    }
  }
  v.smooth = true;
  v.k_checked = k_max;
  return v;
}

}  // namespace jetsum
