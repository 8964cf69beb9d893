#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jetsum/form.hpp"
#include "jetsum/laurent.hpp"
#include "jetsum/util.hpp"

namespace jetsum {

// S(alpha) = sum over x in O_m^n, |x|_m <= q^e, of psi_m(alpha * F(x)).
struct SumJob {
  const FormSpec* form = nullptr;
  int e = 0;
  int m = 0;
  JetLaurent alpha;
  int shards = 1;
  Budget budget;

  void validate() const {
    int de = form->d() * e;
    if (alpha.floor() > -(de + 1))
      throw InsufficientPrecision("S(alpha): alpha floor must be <= -(de+1)");
    if (alpha.order() != m) throw std::invalid_argument("S(alpha): alpha order != m");
  }
};

inline RootSum exp_sum_S(const SumJob& job) {
  job.validate();
  const FormSpec& F = *job.form;
  const FieldSpec& f = F.field();
  JetBox box(f, job.m, F.n(), job.e);
  u64 total = box.total_checked(job.budget, "exp_sum_S");
  auto work = [&](u64 lo, u64 hi) {
    RootSum acc(f.p());
    std::vector<u16> digits(std::size_t(box.ndigits()), 0);
    box.decode(lo, digits.data());
    for (u64 i = lo; i < hi; ++i) {
      auto xs = box.to_polys(digits.data());
      JetPoly fx = F.eval(xs);
      acc += psi_m(mul_poly_laurent(job.alpha, fx));
      box.next(digits.data());
    }
    return acc;
  };
  return sharded_reduce(total, job.shards, RootSum(f.p()), work,
                        [](RootSum a, RootSum b) { return a += b; });
}

// ---------------------------------------------------------------------------
// Flat jet-polynomial scratch used by the differencing counters: comp-major
// coefficient buffers, no allocation in the loop.

namespace detail {

struct FlatPoly {
  int m = 0, cap = 0;      // cap = max t-coefficients
  std::vector<u16> c;      // c[comp*cap + tpow]
  int deg = -1;

  void reset(int m_, int cap_) {
    m = m_;
    cap = cap_;
    c.assign(std::size_t(m + 1) * std::size_t(cap), 0);
    deg = -1;
  }
  void clear() {
    std::fill(c.begin(), c.end(), 0);
    deg = -1;
  }
  u16 get(int comp, int t) const { return c[std::size_t(comp) * cap + t]; }
  void set(int comp, int t, u16 v) {
    c[std::size_t(comp) * cap + t] = v;
    if (v && t > deg) deg = t;
  }
  bool is_zero() const {
    for (u16 v : c)
      if (v) return false;
    return true;
  }
};

// out = x * y (s-truncated); out must not alias the inputs.
inline void flat_mul(const FieldSpec& f, const FlatPoly& x, const FlatPoly& y, FlatPoly& out) {
  out.clear();
  if (x.deg < 0 || y.deg < 0) return;
  for (int i = 0; i <= x.m; ++i)
    for (int j = 0; i + j <= x.m; ++j)
      for (int a = 0; a <= x.deg; ++a) {
        u16 xa = x.get(i, a);
        if (!xa) continue;
        for (int b = 0; b <= y.deg; ++b) {
          u16 yb = y.get(j, b);
          if (!yb) continue;
          int comp = i + j, t = a + b;
          u16 cur = out.get(comp, t);
          out.c[std::size_t(comp) * out.cap + t] = f.add(cur, f.mul(xa, yb));
        }
      }
  out.deg = -1;
  for (int t = out.cap - 1; t >= 0 && out.deg < 0; --t)
    for (int i = 0; i <= out.m; ++i)
      if (out.get(i, t)) {
        out.deg = t;
        break;
      }
}

// acc += scale * x
inline void flat_add_scaled(const FieldSpec& f, FlatPoly& acc, const FlatPoly& x, u16 scale) {
  if (!scale || x.deg < 0) return;
  for (int i = 0; i <= x.m; ++i)
    for (int t = 0; t <= x.deg; ++t) {
      u16 v = x.get(i, t);
      if (!v) continue;
      u16 cur = acc.get(i, t);
      acc.c[std::size_t(i) * acc.cap + t] = f.add(cur, f.mul(v, scale));
      if (t > acc.deg) acc.deg = t;
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// M_m(alpha, r1, r2): tuples (x^(1),...,x^(d-1)) in O_m^{n(d-1)} with every
// |x^(v)|_m < q^{r1-r2} and ||alpha * psi_i(tuple)||_m < q^{-r1-(d-1)r2} for
// every i. Exact cardinality by exhaustive enumeration.

inline i64 weyl_count_M(const FormSpec& F, const JetLaurent& alpha, int m, int r1, int r2,
                        const Budget& budget, int workers = 1) {
  const FieldSpec& f = F.field();
  if (alpha.order() != m) throw std::invalid_argument("weyl_count_M: alpha order != m");
  int d = F.d(), n = F.n();
  int L = std::max(0, r1 - r2);          // box: deg_t <= L-1 (L = 0 keeps only x = 0)
  int bb = r1 + (d - 1) * r2;            // threshold exponent
  int rho_deg_max = (d - 1) * std::max(0, L - 1);
  if (alpha.depth() < bb + rho_deg_max)
    throw InsufficientPrecision("weyl_count_M: alpha floor too shallow for the norm test");

  int nvec = d - 1;
  int ndig = nvec * n * (m + 1) * L;
  DigitBox box{f.q(), ndig};
  budget.require(box.total(), "weyl_count_M");
  u64 total = u64(box.total());

  // digit layout: vector v, variable i, component c, t-power u (u fastest)
  auto dig = [&](int v, int i, int c, int u) { return ((v * n + i) * (m + 1) + c) * L + u; };

  auto work = [&](u64 lo, u64 hi) -> i64 {
    std::vector<u16> digits(std::size_t(std::max(ndig, 1)), 0);
    box.decode(lo, digits.data());
    detail::FlatPoly factor, prod, tmp, rho;
    int cap = std::max(rho_deg_max + 1, 1);
    factor.reset(m, cap);
    prod.reset(m, cap);
    tmp.reset(m, cap);
    rho.reset(m, cap);
    i64 count = 0;
    for (u64 idx = lo; idx < hi; ++idx) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        // rho = psi_i(tuple)
        rho.clear();
        for (auto& term : F.psi_terms(i)) {
          prod.clear();
          for (int c = 0; c <= m; ++c)
            for (int u = 0; u < L; ++u) prod.set(c, u, digits[std::size_t(dig(0, term.vars[0], c, u))]);
          for (int k = 1; k < nvec; ++k) {
            factor.clear();
            for (int c = 0; c <= m; ++c)
              for (int u = 0; u < L; ++u)
                factor.set(c, u, digits[std::size_t(dig(k, term.vars[std::size_t(k)], c, u))]);
            detail::flat_mul(f, prod, factor, tmp);
            std::swap(prod, tmp);
          }
          detail::flat_add_scaled(f, rho, prod, term.coeff);
        }
        // || alpha * rho ||_m < q^-bb: fractional coefficients t^-1..t^-bb of
        // every s-component of the product must vanish
        for (int k = 0; k <= m && ok; ++k)
          for (int w = 1; w <= bb && ok; ++w) {
            u16 acc = 0;
            for (int ip = 0; ip <= k; ++ip) {
              int j = k - ip;
              for (int v = 0; v <= rho.deg; ++v) {
                u16 rv = rho.get(j, v);
                if (!rv) continue;
                acc = f.add(acc, f.mul(alpha.digit(ip, w + v), rv));
              }
            }
            if (acc) ok = false;
          }
      }
      if (ok) ++count;
      if (ndig > 0) box.next(digits.data());
    }
    return count;
  };
  if (ndig == 0) {  // only the zero tuple; psi_i(0) = 0 always passes
    return 1;
  }
  return sharded_reduce(total, workers, i64{0}, work, [](i64 a, i64 b) { return a + b; });
}

// Lemma check: |S(alpha)|^{2^{d-1}} <= q^{(e+1)(m+1)(2^{d-1}-d+1)n} * M_m(alpha, e+1, 0),
// float tolerance on the left side only; the right side is an exact integer.
struct WeylReport {
  RootSum S;
  i64 M = 0;
  long double lhs = 0, rhs = 0;
  bool pass = false;
};

inline WeylReport check_weyl_lemma(const FormSpec& F, const JetLaurent& alpha, int e, int m,
                                   const Budget& budget, int workers = 1) {
  SumJob job{&F, e, m, alpha, workers, budget};
  WeylReport rep{exp_sum_S(job)};
  rep.M = weyl_count_M(F, alpha, m, e + 1, 0, budget, workers);
  int d = F.d();
  unsigned two_pow = 1u << unsigned(d - 1);
  long long expo = (long long)(e + 1) * (m + 1) * ((long long)two_pow - d + 1) * F.n();
  if (expo < 0) throw std::invalid_argument("negative scaling exponent");
  u128 scale = pow_u128_sat(u64(F.field().q()), unsigned(expo));
  u128 rhs = scale * u128(rep.M);
  rep.rhs = static_cast<long double>(rhs);
  rep.lhs = std::pow(rep.S.magnitude(), static_cast<long double>(two_pow));
  rep.pass = rep.lhs <= rep.rhs * (1.0L + 1e-9L);
  return rep;
}

// ---------------------------------------------------------------------------
// K_m(a, b) for a system of n linear forms over K_infty^(m) in n variables:
// x in O_m^n with |x|_m < q^a and ||L_i(x)||_m < q^-b for all i. Exhaustive
// count with incremental condition tracking: each digit change updates the
// watched fractional coefficients through a precomputed contribution table.

struct LinearSystem {
  const FieldSpec* f = nullptr;
  int n = 0, m = 0;
  std::vector<std::vector<JetLaurent>> coeff;  // coeff[i][j]: form i, variable j

  void validate() const {
    if (int(coeff.size()) != n) throw std::invalid_argument("need n forms");
    for (auto& row : coeff) {
      if (int(row.size()) != n) throw std::invalid_argument("each form needs n coefficients");
      for (auto& l : row)
        if (l.order() != m || l.depth() != coeff[0][0].depth())
          throw std::invalid_argument("coefficients must share order and floor");
    }
  }
};

inline i64 shrink_count_K(const LinearSystem& sys, int a, int b, const Budget& budget,
                          int workers = 1) {
  sys.validate();
  if (a < 1 || b < 1) throw std::invalid_argument("shrink_count_K needs a, b >= 1");
  const FieldSpec& f = *sys.f;
  int n = sys.n, m = sys.m;
  if (sys.coeff[0][0].depth() < b + (a - 1))
    throw InsufficientPrecision("shrink_count_K: coefficient floors must reach -b-(a-1)");

  int ndig = n * (m + 1) * a;  // variable j, component c, t-power u (u fastest)
  DigitBox box{f.q(), ndig};
  budget.require(box.total(), "shrink_count_K");
  u64 total = u64(box.total());

  int nwatch = n * (m + 1) * b;  // form i, component k, digit w (w fastest)
  auto watch_idx = [&](int i, int k, int w) { return (i * (m + 1) + k) * b + (w - 1); };

  // contribution of digit slot (j, c, u) to watched (i, k, w): lambda_{ij}
  // component (k - c), digit (w + u)
  struct Contrib {
    int widx;
    u16 mult;
  };
  std::vector<std::vector<Contrib>> slot_contrib{std::size_t(ndig)};
  for (int j = 0; j < n; ++j)
    for (int c = 0; c <= m; ++c)
      for (int u = 0; u < a; ++u) {
        auto& list = slot_contrib[std::size_t((j * (m + 1) + c) * a + u)];
        for (int i = 0; i < n; ++i)
          for (int k = c; k <= m; ++k)
            for (int w = 1; w <= b; ++w) {
              u16 lam = sys.coeff[std::size_t(i)][std::size_t(j)].digit(k - c, w + u);
              if (lam) list.push_back({watch_idx(i, k, w), lam});
            }
      }

  auto work = [&](u64 lo, u64 hi) -> i64 {
    std::vector<u16> digits(std::size_t(ndig), 0);
    box.decode(lo, digits.data());
    std::vector<u16> acc(std::size_t(nwatch), 0);
    int nz = 0;
    for (int s = 0; s < ndig; ++s) {
      u16 g = digits[std::size_t(s)];
      if (!g) continue;
      for (auto& ct : slot_contrib[std::size_t(s)]) {
        u16 old = acc[std::size_t(ct.widx)];
        u16 now = f.add(old, f.mul(g, ct.mult));
        nz += (now != 0) - (old != 0);
        acc[std::size_t(ct.widx)] = now;
      }
    }
    i64 count = 0;
    for (u64 idx = lo; idx < hi; ++idx) {
      if (nz == 0) ++count;
      if (idx + 1 == hi) break;
      // odometer step with incremental updates
      for (int s = 0; s < ndig; ++s) {
        u16 old = digits[std::size_t(s)];
        u16 now = u16(old + 1 == f.q() ? 0 : old + 1);
        digits[std::size_t(s)] = now;
        u16 delta = f.sub(now, old);
        for (auto& ct : slot_contrib[std::size_t(s)]) {
          u16 o = acc[std::size_t(ct.widx)];
          u16 v = f.add(o, f.mul(delta, ct.mult));
          nz += (v != 0) - (o != 0);
          acc[std::size_t(ct.widx)] = v;
        }
        if (now != 0) break;  // no carry
      }
    }
    return count;
  };
  return sharded_reduce(total, workers, i64{0}, work, [](i64 a_, i64 b_) { return a_ + b_; });
}

// K_m(a, b) <= q^{(m+1)nr} K_m(a-r, b+r) for 0 <= r < a <= b. The shifted
// count on the right is evaluated at order m (the order the reduction to the
// F_q[t] case preserves); reports carry that reading explicitly.
struct ShrinkReport {
  i64 K_ab = 0;
  i64 K_shifted = 0;
  i64 factor = 0;  // q^{(m+1)nr}
  bool pass = false;
  static constexpr const char* reading = "K_m(a-r,b+r)";
};

inline ShrinkReport check_shrinking(const LinearSystem& sys, int a, int b, int r,
                                    const Budget& budget, int workers = 1) {
  if (!(0 <= r && r < a && a <= b)) throw std::invalid_argument("need 0 <= r < a <= b");
  ShrinkReport rep;
  rep.K_ab = shrink_count_K(sys, a, b, budget, workers);
  rep.K_shifted = shrink_count_K(sys, a - r, b + r, budget, workers);
  rep.factor = checked_pow_i64(sys.f->q(), unsigned((sys.m + 1) * sys.n * r));
  rep.pass = rep.K_ab <= checked_mul(rep.factor, rep.K_shifted);
  return rep;
}

}  // namespace jetsum
