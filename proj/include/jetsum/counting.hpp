#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jetsum/arcs.hpp"
#include "jetsum/expsum.hpp"
#include "jetsum/form.hpp"
#include "jetsum/util.hpp"

namespace jetsum {

struct CountReport {
  int q = 0, n = 0, d = 0, e = 0, m = 0;
  std::string form;
  std::string method;  // "direct" or "characters"
  i64 value = 0;
  double runtime_ms = 0;
  bool small_char_warning = false;
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline CountReport report_stub(const FormSpec& F, int e, int m, const char* method) {
  CountReport r;
  r.q = F.field().q();
  r.n = F.n();
  r.d = F.d();
  r.e = e;
  r.m = m;
  r.form = F.spec_string();
  r.method = method;
  r.small_char_warning = F.small_char_mode();
  return r;
}

}  // namespace detail

// N_m(e) = #{x in O_m^n : F(x) = 0 mod s^{m+1}, deg_t x <= e} by exhaustive
// enumeration. Needs no smoothness or characteristic hypothesis; degenerate
// inputs are accepted and flagged.
inline CountReport count_direct_Nm(const FormSpec& F, int e, int m, const Budget& budget,
                                   int workers = 1) {
  auto t0 = std::chrono::steady_clock::now();
  CountReport rep = detail::report_stub(F, e, m, "direct");
  const FieldSpec& f = F.field();
  JetBox box(f, m, F.n(), e);
  u64 total = box.total_checked(budget, "count_direct_Nm");
  auto work = [&](u64 lo, u64 hi) -> i64 {
    std::vector<u16> digits(std::size_t(box.ndigits()), 0);
    box.decode(lo, digits.data());
    i64 count = 0;
    for (u64 i = lo; i < hi; ++i) {
      auto xs = box.to_polys(digits.data());
      if (F.eval(xs).is_zero()) ++count;
      box.next(digits.data());
    }
    return count;
  };
  rep.value = sharded_reduce(total, workers, i64{0}, work, [](i64 a, i64 b) { return a + b; });
  rep.runtime_ms = detail::ms_since(t0);
  return rep;
}

// The same count through harmonic analysis: the discretized circle integral
// over every class. Must agree with the direct count exactly.
inline CountReport count_via_characters(const FormSpec& F, int e, int m, const Budget& budget,
                                        int workers = 1) {
  auto t0 = std::chrono::steady_clock::now();
  CountReport rep = detail::report_stub(F, e, m, "characters");
  CircleIntegral ci = circle_integral(F, e, m, ArcSubset::all, 0, budget, workers);
  rep.value = ci.integer_value;
  rep.runtime_ms = detail::ms_since(t0);
  return rep;
}

// Exact N_m(e) for diagonal forms through per-variable value tallies: the
// value space of F_j(x_j) in R_m[t]_{<= de} is a finite group, and the box
// splits as a product over variables. Used by scans whose boxes are beyond
// point-by-point enumeration; agrees with count_direct_Nm wherever both run.
inline i64 diagonal_count_Nm(const FormSpec& F, int e, int m, const Budget& budget) {
  if (!F.is_diagonal()) throw std::invalid_argument("diagonal counter needs a diagonal form");
  const FieldSpec& f = F.field();
  int n = F.n(), d = F.d();
  int vdig = (m + 1) * (d * e + 1);  // value-space digits
  JetBox var_box(f, m, 1, e);
  u64 per_var = u64(var_box.total());
  budget.require(var_box.total(), "diagonal_count_Nm variable box");

  // value vector of a_j x^d for every point of the single-variable box
  auto var_values = [&](int j) {
    std::vector<std::vector<u16>> vals;
    vals.reserve(per_var);
    std::vector<u16> digits(std::size_t(var_box.ndigits()), 0);
    var_box.decode(0, digits.data());
    for (u64 i = 0; i < per_var; ++i) {
      auto xs = var_box.to_polys(digits.data());
      JetPoly v = xs[0].pow(d).scaled(F.diagonal_coeffs()[std::size_t(j)]);
      std::vector<u16> dv(std::size_t(vdig), 0);
      for (int c = 0; c <= m; ++c)
        for (int t = 0; t <= d * e; ++t) dv[std::size_t(c * (d * e + 1) + t)] = v.coeff(c, t);
      vals.push_back(std::move(dv));
      var_box.next(digits.data());
    }
    return vals;
  };

  int n_left = (n + 1) / 2, n_right = n - n_left;
  budget.require(pow_u128_sat(per_var, unsigned(std::max(n_left, n_right))),
                 "diagonal_count_Nm half box");

  auto pack = [&](const std::vector<u16>& v) {
    u64 key = 0;
    for (int i = vdig - 1; i >= 0; --i) key = key * u64(f.q()) + v[std::size_t(i)];
    return key;
  };

  // tally of value sums over a block of variables
  auto tally = [&](int first, int count) {
    std::unordered_map<u64, i64> t;
    if (count == 0) {
      t[0] = 1;
      return t;
    }
    std::vector<std::vector<std::vector<u16>>> tables;
    for (int j = 0; j < count; ++j) tables.push_back(var_values(first + j));
    std::vector<u64> idx(std::size_t(count), 0);
    std::vector<u16> sum(std::size_t(vdig), 0);
    auto recompute = [&] {
      std::fill(sum.begin(), sum.end(), 0);
      for (int j = 0; j < count; ++j)
        for (int g = 0; g < vdig; ++g)
          sum[std::size_t(g)] = f.add(sum[std::size_t(g)], tables[std::size_t(j)][idx[std::size_t(j)]][std::size_t(g)]);
    };
    recompute();
    while (true) {
      t[pack(sum)] += 1;
      int j = 0;
      while (j < count && ++idx[std::size_t(j)] == per_var) {
        idx[std::size_t(j)] = 0;
        ++j;
      }
      if (j == count) break;
      recompute();
    }
    return t;
  };

  auto right = tally(n_left, n_right);
  auto left = tally(0, n_left);
  i64 total = 0;
  std::vector<u16> negv(std::size_t(vdig), 0);
  for (auto& [key, cnt] : left) {
    // negate the left sum digitwise and look it up on the right
    u64 k = key;
    for (int i = 0; i < vdig; ++i) {
      negv[std::size_t(i)] = f.neg(u16(k % u64(f.q())));
      k /= u64(f.q());
    }
    u64 nk = 0;
    for (int i = vdig - 1; i >= 0; --i) nk = nk * u64(f.q()) + negv[std::size_t(i)];
    auto it = right.find(nk);
    if (it != right.end()) total = checked_add(total, checked_mul(cnt, it->second));
  }
  return total;
}

// ---------------------------------------------------------------------------
// F_q-points of the jet scheme V_m of the multilinear variety
// psi_1 = ... = psi_n = 0: tuples of (d-1) vectors of jet scalars with every
// psi_i vanishing mod s^{m+1}.

inline i64 count_jet_variety(const FormSpec& F, int m, const Budget& budget, int workers = 1) {
  const FieldSpec& f = F.field();
  int n = F.n(), d = F.d();
  int nvec = d - 1;
  int ndig = nvec * n * (m + 1);  // vector-major, variable, component (fastest)
  DigitBox box{f.q(), ndig};
  budget.require(box.total(), "count_jet_variety");
  u64 total = u64(box.total());
  auto dig = [&](int v, int i, int c) { return (v * n + i) * (m + 1) + c; };

  auto work = [&](u64 lo, u64 hi) -> i64 {
    std::vector<u16> digits(std::size_t(ndig), 0);
    box.decode(lo, digits.data());
    std::vector<u16> prod(std::size_t(m) + 1), tmp(std::size_t(m) + 1), acc(std::size_t(m) + 1);
    i64 count = 0;
    for (u64 idx = lo; idx < hi; ++idx) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (auto& term : F.psi_terms(i)) {
          for (int c = 0; c <= m; ++c) prod[std::size_t(c)] = digits[std::size_t(dig(0, term.vars[0], c))];
          for (int k = 1; k < nvec; ++k) {
            std::fill(tmp.begin(), tmp.end(), 0);
            for (int a = 0; a <= m; ++a) {
              u16 pa = prod[std::size_t(a)];
              if (!pa) continue;
              for (int b = 0; a + b <= m; ++b) {
                u16 xb = digits[std::size_t(dig(k, term.vars[std::size_t(k)], b))];
                if (!xb) continue;
                tmp[std::size_t(a + b)] = f.add(tmp[std::size_t(a + b)], f.mul(pa, xb));
              }
            }
            std::swap(prod, tmp);
          }
          for (int c = 0; c <= m; ++c)
            acc[std::size_t(c)] = f.add(acc[std::size_t(c)], f.mul(prod[std::size_t(c)], term.coeff));
        }
        for (int c = 0; c <= m; ++c)
          if (acc[std::size_t(c)]) {
            ok = false;
            break;
          }
      }
      if (ok) ++count;
      box.next(digits.data());
    }
    return count;
  };
  return sharded_reduce(total, workers, i64{0}, work, [](i64 a, i64 b) { return a + b; });
}

inline int m_zero(int m, int d) { return (m + 1 + d - 2) / (d - 1); }  // ceil((m+1)/(d-1))

// Largest certification depth k <= k_max whose search box q^{kn} fits the
// precondition slice of the budget (extension-field points cost far more
// than plain enumeration, so the slice is much smaller than the budget);
// preconditions certify to this depth and reports carry it.
inline int feasible_smooth_depth(const FieldSpec& f, int n, int k_max, const Budget& budget) {
  u64 cap = std::min<u64>(budget.max_points, 10'000'000ULL);
  int k = 0;
  while (k < k_max && pow_u128_sat(u64(f.q()), unsigned((k + 1) * n)) <= u128(cap)) ++k;
  if (k == 0)
    throw BudgetExceeded("smoothness precondition: even degree 1 exceeds the budget", UINT64_MAX,
                         budget.max_points);
  return k;
}

// Cross-q stability check for the dimension bound on V_m: counts should track
// q^B with B = (m+1)n(d-1) - n*m0, with a bounded constant. The constant is
// not pinned by theory here, so acceptance is ratio stability across q plus a
// configurable ceiling kappa (default 2^{n(d-1)(m+1)}).
struct JetDimRow {
  int q = 0;
  i64 count = 0;
  long double ratio = 0;
  int smooth_k = 0;  // certification depth actually used
};

struct JetDimReport {
  int m = 0, m0 = 0;
  i64 B = 0;
  long double kappa = 0;
  std::vector<JetDimRow> rows;
  long double spread = 0;
  bool pass = false;
};

inline JetDimReport check_jet_dimension_bound(const FormTemplate& tmpl, int m,
                                              const std::vector<const FieldSpec*>& fields,
                                              const Budget& budget, int workers = 1,
                                              std::optional<long double> kappa = std::nullopt,
                                              int smooth_kmax = 2) {
  JetDimReport rep;
  rep.m = m;
  rep.m0 = m_zero(m, tmpl.d);
  rep.B = i64(m + 1) * tmpl.n * (tmpl.d - 1) - i64(tmpl.n) * rep.m0;
  rep.kappa = kappa.value_or(std::pow(2.0L, (long double)(tmpl.n * (tmpl.d - 1) * (m + 1))));
  for (const FieldSpec* f : fields) {
    FormSpec F = tmpl.instantiate(*f);
    int k_eff = feasible_smooth_depth(*f, tmpl.n, smooth_kmax, budget);
    if (F.is_zero_form() || !smoothness_check(F, k_eff, budget).smooth)
      throw std::invalid_argument("jet dimension bound requires a smooth form");
    JetDimRow row;
    row.q = f->q();
    row.smooth_k = k_eff;
    row.count = count_jet_variety(F, m, budget, workers);
    row.ratio = (long double)(row.count) / std::pow((long double)(f->q()), (long double)rep.B);
    rep.rows.push_back(row);
  }
  long double lo = rep.rows[0].ratio, hi = rep.rows[0].ratio;
  for (auto& r : rep.rows) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  rep.spread = lo > 0 ? hi / lo : std::numeric_limits<long double>::infinity();
  rep.pass = rep.spread <= 4.0L;
  for (auto& r : rep.rows) rep.pass = rep.pass && r.ratio <= rep.kappa;
  return rep;
}

// Gradient-kill cascade: every nonzero jet-scalar point x with grad F(x) = 0
// mod s^{m+1} factors as s^l x' with x' nonzero mod s, and smoothness forces
// l(d-1) >= m+1. Checked exhaustively when the box fits the budget, else on a
// seeded sample.
struct DiagImplReport {
  u64 points_checked = 0;
  i64 gradient_kills = 0;
  bool exhaustive = true;
  bool pass = false;
  std::vector<std::vector<u16>> violations;  // flattened digit rows
};

inline DiagImplReport check_diagonal_implication(const FormSpec& F, int m, const Budget& budget,
                                                 u64 seed = 0, int smooth_kmax = 2) {
  const FieldSpec& f = F.field();
  if (F.is_zero_form() || !smoothness_check(F, smooth_kmax, budget).smooth)
    throw std::invalid_argument("diagonal implication requires a smooth form");
  int n = F.n(), d = F.d();
  int ndig = n * (m + 1);  // variable-major, component fastest
  DigitBox box{f.q(), ndig};
  DiagImplReport rep;
  std::vector<JetScalar> x(std::size_t(n), JetScalar(f, m));

  auto visit = [&](const std::vector<u16>& digits) {
    bool zero = true;
    for (u16 v : digits)
      if (v) {
        zero = false;
        break;
      }
    if (zero) return;
    for (int i = 0; i < n; ++i)
      for (int c = 0; c <= m; ++c) x[std::size_t(i)].set_comp(c, digits[std::size_t(i * (m + 1) + c)]);
    auto g = F.gradient_scalar(x);
    for (auto& gi : g)
      if (!gi.is_zero()) return;
    ++rep.gradient_kills;
    int l = m + 1;
    for (auto& xi : x) l = std::min(l, xi.s_valuation());
    if (i64(l) * (d - 1) < m + 1) rep.violations.push_back(digits);
  };

  std::vector<u16> digits(std::size_t(ndig), 0);
  if (box.total() <= u128(budget.max_points)) {
    rep.exhaustive = true;
    bool more = true;
    while (more) {
      visit(digits);
      ++rep.points_checked;
      more = box.next(digits.data());
    }
  } else {
    rep.exhaustive = false;
    u64 state = derive_seed(seed, "diagonal-implication");
    for (u64 i = 0; i < budget.max_points; ++i) {
      for (auto& g : digits) g = u16(splitmix64(state) % u64(f.q()));
      visit(digits);
      ++rep.points_checked;
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

// Solutions with x nonzero mod s, and the free unit-group quotient
// raw / ((q-1) q^m). Exact divisibility is an invariant, not a rounding.
struct ProjectiveJets {
  i64 raw = 0;
  i64 quotient = 0;
  i64 unit_group = 0;
  i64 N_m = 0;
  bool bound_ok = false;  // quotient * (q-1) q^m <= N_m(e)
};

inline ProjectiveJets count_projective_jets(const FormSpec& F, int e, int m, const Budget& budget,
                                            int workers = 1) {
  const FieldSpec& f = F.field();
  JetBox box(f, m, F.n(), e);
  u64 total = box.total_checked(budget, "count_projective_jets");
  auto work = [&](u64 lo, u64 hi) -> i64 {
    std::vector<u16> digits(std::size_t(box.ndigits()), 0);
    box.decode(lo, digits.data());
    i64 raw = 0;
    for (u64 i = lo; i < hi; ++i) {
      bool unit_seen = false;
      for (int v = 0; v < F.n() && !unit_seen; ++v)
        for (int t = 0; t <= e && !unit_seen; ++t)
          if (digits[std::size_t(box.digit_index(v, 0, t))]) unit_seen = true;
      if (unit_seen) {
        auto xs = box.to_polys(digits.data());
        if (F.eval(xs).is_zero()) ++raw;
      }
      box.next(digits.data());
    }
    return raw;
  };
  ProjectiveJets rep;
  rep.raw = sharded_reduce(total, workers, i64{0}, work, [](i64 a, i64 b) { return a + b; });
  rep.unit_group = checked_mul(i64(f.q()) - 1, checked_pow_i64(f.q(), unsigned(m)));
  if (rep.raw % rep.unit_group != 0)
    throw NonIntegralQuotient("projective jet count is not divisible by the unit-group order");
  rep.quotient = rep.raw / rep.unit_group;
  rep.N_m = count_direct_Nm(F, e, m, budget, workers).value;
  rep.bound_ok = checked_mul(rep.quotient, rep.unit_group) <= rep.N_m;
  return rep;
}

// ---------------------------------------------------------------------------
// Minor-arc exponent bookkeeping: E = m(de+1) + 2d - 2 - n*m0/2^{d-1} in
// exact rational arithmetic, with the thresholds on n that force E < 0.

struct ExponentReport {
  int n = 0, d = 0, e = 0, m = 0;
  int m0 = 0, M = 0;
  Rat64 E;
  i64 threshold_n = 0;
  bool verdict = false;  // E < 0
};

inline i64 exponent_threshold_n(int d, int e) {
  i64 two = i64(1) << (d - 1);
  if (e == 1) return checked_mul(i64(d) * d + d - 4, two);
  return checked_mul(checked_mul(i64(d) * e + 1, i64(d) - 1), two);
}

inline ExponentReport exponent_analysis(int n, int d, int e, int m) {
  if (d < 3 || e < 1 || m < 0) throw std::invalid_argument("need d >= 3, e >= 1, m >= 0");
  ExponentReport rep;
  rep.n = n;
  rep.d = d;
  rep.e = e;
  rep.m = m;
  rep.m0 = m_zero(m, d);
  rep.M = (d * e + 2) / 2;
  i64 two = i64(1) << (d - 1);
  rep.E = Rat64(i64(m) * (d * e + 1) + 2 * d - 2) - Rat64(i64(n) * rep.m0, two);
  rep.threshold_n = exponent_threshold_n(d, e);
  rep.verdict = rep.E.negative();
  return rep;
}

// Grid sweep at n = threshold + 1: E < 0 everywhere, both intermediate case
// bounds hold in exact arithmetic, the e = 1 threshold dominates the generic
// one, and the coefficient of m is negative.
struct ExponentGridRow {
  int d = 0, e = 0, m = 0;
  i64 n = 0;
  Rat64 E;
  bool ok = false;
};

struct ExponentGridReport {
  std::vector<ExponentGridRow> rows;
  bool all_pass = true;
};

inline ExponentGridReport exponent_grid_check(const std::vector<int>& d_range,
                                              const std::vector<int>& e_range, int m_max) {
  ExponentGridReport rep;
  for (int d : d_range) {
    // d^2 + d - 4 >= (d+1)(d-1), so the e = 1 threshold implies the generic one
    bool remark = i64(d) * d + d - 4 >= i64(d + 1) * (d - 1);
    for (int e : e_range) {
      i64 n = exponent_threshold_n(d, e) + 1;
      i64 two = i64(1) << (d - 1);
      // coefficient of m in the second case bound
      Rat64 coeff_m = Rat64(i64(d) * e + 1) - Rat64(n, checked_mul(i64(d) - 1, two));
      bool coeff_neg = coeff_m.negative();
      for (int m = 0; m <= m_max; ++m) {
        ExponentGridRow row;
        row.d = d;
        row.e = e;
        row.m = m;
        row.n = n;
        ExponentReport a = exponent_analysis(int(n), d, e, m);
        row.E = a.E;
        bool ok = a.verdict && remark && coeff_neg;
        if (m + 1 <= d - 1) {
          Rat64 bound = Rat64(i64(d - 2) * (d * e + 1) + 2 * (d - 1)) - Rat64(n, two);
          ok = ok && (a.E <= bound);
        } else {
          Rat64 unit = Rat64(n, checked_mul(i64(d) - 1, two));
          Rat64 bound = Rat64(m) * (Rat64(i64(d) * e + 1) - unit) + Rat64(2 * (d - 1)) - unit;
          ok = ok && (a.E <= bound);
        }
        row.ok = ok;
        rep.all_pass = rep.all_pass && ok;
        rep.rows.push_back(row);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Informational scan of N_m(e) / q^{(m+1)(mu+1)}. The variable counts where
// the ratio provably tends to 1 are far beyond enumeration, so the only
// assertion is a loose window [q^-2, q^2] at desk-scale parameters.

struct ScanRow {
  int q = 0, m = 0;
  i64 count = 0;
  i64 expected_exp = 0;  // (m+1)(mu+1)
  long double ratio = 0;
  bool in_window = false;
  std::string strategy;
  int smooth_k = 0;
};

inline std::vector<ScanRow> asymptotic_scan(const FormTemplate& tmpl, int e,
                                            const std::vector<int>& m_list,
                                            const std::vector<const FieldSpec*>& fields,
                                            const Budget& budget, int workers = 1,
                                            int smooth_kmax = 2) {
  std::vector<ScanRow> rows;
  for (const FieldSpec* f : fields) {
    FormSpec F = tmpl.instantiate(*f);
    int k_eff = feasible_smooth_depth(*f, tmpl.n, smooth_kmax, budget);
    if (F.is_zero_form() || !smoothness_check(F, k_eff, budget).smooth)
      throw std::invalid_argument("asymptotic scan requires a smooth form");
    for (int m : m_list) {
      ScanRow row;
      row.q = f->q();
      row.m = m;
      row.smooth_k = k_eff;
      i64 mu_plus_1 = i64(tmpl.n) * (e + 1) - i64(tmpl.d) * e - 1;
      row.expected_exp = i64(m + 1) * mu_plus_1;
      JetBox box(*f, m, tmpl.n, e);
      if (F.is_diagonal() && box.total() > u128(1'000'000)) {
        row.count = diagonal_count_Nm(F, e, m, budget);
        row.strategy = "diagonal-split";
      } else {
        row.count = count_direct_Nm(F, e, m, budget, workers).value;
        row.strategy = "direct";
      }
      long double expected = std::pow((long double)f->q(), (long double)row.expected_exp);
      row.ratio = (long double)row.count / expected;
      long double q2 = (long double)f->q() * f->q();
      row.in_window = row.ratio >= 1.0L / q2 && row.ratio <= q2;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace jetsum
