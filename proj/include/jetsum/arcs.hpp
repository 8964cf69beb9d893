#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jetsum/expsum.hpp"
#include "jetsum/form.hpp"
#include "jetsum/laurent.hpp"
#include "jetsum/util.hpp"

namespace jetsum {

// Major-arc geometry for degree d, height bound e: levels J run from -1
// (empty) to M = ceil((de+1)/2), and level J admits monic denominators r with
// deg r <= J at approximation quality ||alpha_0 r||_0 < q^{J-de-1}.
struct ArcParams {
  int d = 0, e = 0;
  int de() const { return d * e; }
  int M() const { return (de() + 2) / 2; }
  // number of fractional digits of alpha_0*r that must vanish at level J
  int vanish_digits(int J) const { return de() + 1 - J; }
};

// Discretization class of T^(m) at depth P: digits a_{i,j} = coefficient of
// s^i t^-j for 1 <= j <= P, component-major. Classes are in bijection with
// base-q indices (digit (0,1) fastest), so enumeration shards contiguously.
class AlphaRep {
 public:
  AlphaRep(const FieldSpec& f, int m, int P)
      : f_(&f), m_(m), P_(P), dig_(std::size_t(m + 1) * std::size_t(P), 0) {
    if (P < 1) throw std::invalid_argument("depth must be >= 1");
  }

  static u128 total_classes(const FieldSpec& f, int m, int P) {
    return pow_u128_sat(u64(f.q()), unsigned((m + 1) * P));
  }
  static AlphaRep from_index(const FieldSpec& f, int m, int P, u64 idx) {
    AlphaRep a(f, m, P);
    DigitBox box{f.q(), (m + 1) * P};
    box.decode(idx, a.dig_.data());
    return a;
  }

  const FieldSpec& field() const { return *f_; }
  int order() const { return m_; }
  int depth() const { return P_; }
  u16 digit(int i, int j) const { return dig_[std::size_t(i) * P_ + (j - 1)]; }
  void set_digit(int i, int j, u16 v) { dig_[std::size_t(i) * P_ + (j - 1)] = v; }
  const std::vector<u16>& digits() const { return dig_; }

  u64 index() const {
    u64 idx = 0;
    for (int i = int(dig_.size()) - 1; i >= 0; --i) idx = idx * u64(f_->q()) + dig_[std::size_t(i)];
    return idx;
  }

  JetLaurent to_laurent() const {
    JetLaurent a(*f_, m_, -P_);
    for (int i = 0; i <= m_; ++i)
      for (int j = 1; j <= P_; ++j) a.set_digit(i, j, digit(i, j));
    return a;
  }

 private:
  const FieldSpec* f_;
  int m_, P_;
  std::vector<u16> dig_;
};

// ---------------------------------------------------------------------------
// Membership: alpha lies in M(J) when some monic r of degree <= J drives the
// leading vanish_digits(J) fractional coefficients of alpha_0 * r to zero.
// Only the reduction alpha_0 enters. Denominators are searched by increasing
// degree, odometer order within a degree, and the witness is returned.

inline std::optional<std::vector<u16>> arc_witness_alpha0(std::span<const u16> a0, int J,
                                                          const ArcParams& params,
                                                          const FieldSpec& f) {
  if (J < 0) return std::nullopt;  // M(-1) is empty
  int need = params.de() + 1;
  if (int(a0.size()) < need)
    throw InsufficientPrecision("arc membership needs alpha_0 digits to depth de+1");
  int vd = params.vanish_digits(J);
  for (int deg = 0; deg <= J; ++deg) {
    std::vector<u16> low(std::size_t(std::max(deg, 1)), 0);
    DigitBox box{f.q(), deg};
    bool more = true;
    while (more) {
      // r = low coefficients + monic leading term
      bool ok = true;
      for (int w = 1; w <= vd && ok; ++w) {
        u16 acc = a0[std::size_t(w + deg - 1)];  // leading coefficient is 1
        for (int v = 0; v < deg; ++v) {
          u16 rv = low[std::size_t(v)];
          if (rv) acc = f.add(acc, f.mul(rv, a0[std::size_t(w + v - 1)]));
        }
        if (acc) ok = false;
      }
      if (ok) {
        std::vector<u16> witness(low.begin(), low.begin() + deg);
        witness.push_back(1);
        return witness;
      }
      more = deg > 0 && box.next(low.data());
    }
  }
  return std::nullopt;
}

inline bool arc_member(const AlphaRep& alpha, int J, const ArcParams& params) {
  std::span<const u16> a0(alpha.digits().data(), std::size_t(alpha.depth()));
  return arc_witness_alpha0(a0, J, params, alpha.field()).has_value();
}

inline bool arc_member(const JetLaurent& alpha, int J, const ArcParams& params) {
  const auto& part0 = alpha.part(0);
  return arc_witness_alpha0(part0.digits(), J, params, alpha.field()).has_value();
}

// Minimal J in [0, M] with alpha in M(J). Every class is covered by level M;
// running past it is reported, never clamped.
template <typename Alpha>
inline int dirichlet_layer(const Alpha& alpha, const ArcParams& params) {
  for (int J = 0; J <= params.M(); ++J)
    if (arc_member(alpha, J, params)) return J;
  throw CoverageViolation("alpha lies in no M(J) up to J = M = " + std::to_string(params.M()));
}

// ---------------------------------------------------------------------------
// Discretized measure of M(J) at depth P: membership depends only on the
// alpha_0 row, counted exhaustively; the higher components range freely and
// cancel against the normalization q^{-(m+1)P}.

struct ArcMeasure {
  int J = 0, m = 0, P = 0;
  i64 alpha0_classes = 0;   // member alpha_0 rows at depth P
  bool bound_ok = false;    // count * q^-P <= q^{2J - de - 1}
};

inline ArcMeasure arc_measure_count(int J, const ArcParams& params, int m, int P,
                                    const FieldSpec& f, const Budget& budget) {
  if (P < params.de() + 1) throw InsufficientPrecision("measure scan needs P >= de+1");
  ArcMeasure out;
  out.J = J;
  out.m = m;
  out.P = P;
  if (J < 0) {
    out.alpha0_classes = 0;
    out.bound_ok = true;
    return out;
  }
  DigitBox box{f.q(), P};
  budget.require(box.total(), "arc_measure_count");
  std::vector<u16> row(std::size_t(P), 0);
  i64 count = 0;
  bool more = true;
  while (more) {
    if (arc_witness_alpha0(row, J, params, f)) ++count;
    more = box.next(row.data());
  }
  out.alpha0_classes = count;
  int bound_exp = P + 2 * J - params.de() - 1;
  out.bound_ok = bound_exp < 0 ? (count == 0)
                               : (count <= checked_pow_i64(f.q(), unsigned(bound_exp)));
  return out;
}

// ---------------------------------------------------------------------------
// The exact discretized circle integral at depth P = de+1:
//   q^{-(m+1)P} * sum over classes alpha in the subset of S(alpha),
// an exact rational; the full-circle value is the solution count N_m(e) and
// the division must come out exact.
//
// Evaluation never tests divisibility of F(x): every (alpha, x) pair
// contributes its character value, and only root-of-unity cancellation in the
// final tally produces the count. The "split" strategy tallies the free
// higher-component digits in two literally-enumerated halves and convolves
// the tallies, which reproduces the naive per-pair tally bit for bit; "naive"
// walks every class and is kept as the cross-check path.

enum class ArcSubset { all, major, layer };

enum class IntegralMethod { automatic, naive, split };

struct CircleIntegral {
  int P = 0, m = 0;
  ArcSubset subset = ArcSubset::all;
  int J = 0;
  u128 alpha_classes = 0;
  RootSum sum{2};
  int denom_exp = 0;  // (m+1) * P
  Rat64 value;        // exact
  bool is_integral = false;
  i64 integer_value = 0;
};

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<u16>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (u16 x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

// Tally of sum_j Tr(g_j * v_j) over all assignments g of the given pairing
// digits, by literal odometer enumeration with a running phase.
inline void phase_tally(const FieldSpec& f, std::span<const u16> v, std::vector<i64>& dist) {
  int p = f.p();
  dist.assign(std::size_t(p), 0);
  int nd = int(v.size());
  if (nd == 0) {
    dist[0] = 1;
    return;
  }
  std::vector<u16> g(std::size_t(nd), 0);
  std::vector<int> contrib(std::size_t(nd), 0);
  int phase = 0;
  bool more = true;
  while (more) {
    ++dist[std::size_t(phase)];
    more = false;
    for (int s = 0; s < nd; ++s) {
      u16 old = g[std::size_t(s)];
      u16 now = u16(old + 1 == f.q() ? 0 : old + 1);
      g[std::size_t(s)] = now;
      int nc = f.trace_mul(now, v[std::size_t(s)]);
      phase = (phase - contrib[std::size_t(s)] + nc + p) % p;
      contrib[std::size_t(s)] = nc;
      if (now != 0) {
        more = true;
        break;
      }
    }
  }
}

}  // namespace detail

inline CircleIntegral circle_integral(const FormSpec& F, int e, int m, ArcSubset subset, int J,
                                      const Budget& budget, int workers = 1,
                                      IntegralMethod method = IntegralMethod::automatic) {
  const FieldSpec& f = F.field();
  int p = f.p();
  int P = F.d() * e + 1;
  ArcParams params{F.d(), e};
  CircleIntegral out;
  out.P = P;
  out.m = m;
  out.subset = subset;
  out.J = J;
  out.denom_exp = (m + 1) * P;
  out.sum = RootSum(p);

  budget.require(AlphaRep::total_classes(f, m, P), "circle_integral alpha classes");

  // pairing table of the x box, deduplicated by pairing digits
  JetBox box(f, m, F.n(), e);
  u64 xtotal = box.total_checked(budget, "circle_integral x box");
  using Table = std::unordered_map<std::vector<u16>, i64, detail::VecHash>;
  auto build = [&](u64 lo, u64 hi) {
    Table t;
    std::vector<u16> digits(std::size_t(box.ndigits()), 0);
    box.decode(lo, digits.data());
    for (u64 i = lo; i < hi; ++i) {
      auto xs = box.to_polys(digits.data());
      JetPoly fx = F.eval(xs);
      t[psi_pairing_digits(fx, P)] += 1;
      box.next(digits.data());
    }
    return t;
  };
  Table xtable = sharded_reduce(xtotal, workers, Table{}, build, [](Table a, Table b) {
    for (auto& [k, v] : b) a[k] += v;
    return a;
  });

  // alpha_0 rows in the subset
  DigitBox a0box{f.q(), P};
  std::vector<std::vector<u16>> a0rows;
  {
    std::vector<u16> row(std::size_t(P), 0);
    bool more = true;
    while (more) {
      bool in = false;
      switch (subset) {
        case ArcSubset::all:
          in = true;
          break;
        case ArcSubset::major:
          in = arc_witness_alpha0(row, J, params, f).has_value();
          break;
        case ArcSubset::layer:
          in = arc_witness_alpha0(row, J + 1, params, f).has_value() &&
               !arc_witness_alpha0(row, J, params, f).has_value();
          break;
      }
      if (in) a0rows.push_back(row);
      more = a0box.next(row.data());
    }
  }
  out.alpha_classes = u128(a0rows.size()) * pow_u128_sat(u64(f.q()), unsigned(m * P));

  int hdig = m * P;  // free higher-component digits per class
  bool use_split = method == IntegralMethod::split ||
                   (method == IntegralMethod::automatic && hdig > 0);
  std::vector<i64> counts(std::size_t(p), 0);

  if (!use_split) {
    // literal walk over every class of the subset
    std::vector<u16> hg(std::size_t(std::max(hdig, 1)), 0);
    for (auto& [v, mult] : xtable) {
      for (auto& row : a0rows) {
        int phase0 = 0;
        for (int j = 0; j < P; ++j)
          phase0 = (phase0 + f.trace_mul(row[std::size_t(j)], v[std::size_t(j)])) % p;
        if (hdig == 0) {
          counts[std::size_t(phase0)] = checked_add(counts[std::size_t(phase0)], mult);
          continue;
        }
        std::fill(hg.begin(), hg.end(), 0);
        DigitBox hbox{f.q(), hdig};
        bool more = true;
        while (more) {
          int phase = phase0;
          for (int j = 0; j < hdig; ++j)
            phase = (phase + f.trace_mul(hg[std::size_t(j)], v[std::size_t(P + j)])) % p;
          counts[std::size_t(phase)] = checked_add(counts[std::size_t(phase)], mult);
          more = hbox.next(hg.data());
        }
      }
    }
  } else {
    // tally the higher digits in two halves, convolve, then sweep alpha_0
    int s1 = hdig / 2;
    std::vector<i64> dist1, dist2, dist(std::size_t(p), 0);
    for (auto& [v, mult] : xtable) {
      std::span<const u16> vh(v.data() + P, std::size_t(hdig));
      detail::phase_tally(f, vh.subspan(0, std::size_t(s1)), dist1);
      detail::phase_tally(f, vh.subspan(std::size_t(s1)), dist2);
      std::fill(dist.begin(), dist.end(), 0);
      for (int r1 = 0; r1 < p; ++r1) {
        if (!dist1[std::size_t(r1)]) continue;
        for (int r2 = 0; r2 < p; ++r2)
          dist[std::size_t((r1 + r2) % p)] = checked_add(
              dist[std::size_t((r1 + r2) % p)], checked_mul(dist1[std::size_t(r1)], dist2[std::size_t(r2)]));
      }
      for (auto& row : a0rows) {
        int phase0 = 0;
        for (int j = 0; j < P; ++j)
          phase0 = (phase0 + f.trace_mul(row[std::size_t(j)], v[std::size_t(j)])) % p;
        for (int r = 0; r < p; ++r) {
          if (!dist[std::size_t(r)]) continue;
          auto& slot = counts[std::size_t((phase0 + r) % p)];
          slot = checked_add(slot, checked_mul(mult, dist[std::size_t(r)]));
        }
      }
    }
  }
  for (int j = 0; j < p; ++j) out.sum.add_root(j, counts[std::size_t(j)]);

  auto as_int = out.sum.as_integer();
  if (!as_int)
    throw NonIntegralResult("circle integral: class sum is not a rational integer");
  i64 denom = checked_pow_i64(f.q(), unsigned(out.denom_exp));
  out.value = Rat64(*as_int, denom);
  if (subset == ArcSubset::all) {
    if (*as_int % denom != 0)
      throw NonIntegralResult("circle integral over the full circle must be integral");
    out.is_integral = true;
    out.integer_value = *as_int / denom;
  } else {
    out.is_integral = out.value.is_integer();
    out.integer_value = out.is_integral ? out.value.num() : 0;
  }
  return out;
}

// Layer rows for reports: classes grouped by minimal level, so row 0 is the
// innermost major arc and the rows partition the circle.
struct LayerRow {
  int J = 0;                 // minimal level of the classes in this row
  i64 class_count = 0;       // alpha_0 rows with this minimal level
  double measure_log_q = 0;  // log_q of the row's measure
  Rat64 contribution;        // exact integral contribution of the row
};

inline std::vector<LayerRow> layer_report(const FormSpec& F, int e, int m, const Budget& budget,
                                          int workers = 1) {
  ArcParams params{F.d(), e};
  std::vector<LayerRow> rows;
  for (int J = 0; J <= params.M(); ++J) {
    CircleIntegral ci = circle_integral(F, e, m, ArcSubset::layer, J - 1, budget, workers);
    LayerRow row;
    row.J = J;
    u128 hfree = pow_u128_sat(u64(F.field().q()), unsigned(m * ci.P));
    row.class_count = hfree == 0 ? 0 : i64(ci.alpha_classes / hfree);
    row.measure_log_q =
        row.class_count == 0
            ? -std::numeric_limits<double>::infinity()
            : std::log(double(row.class_count)) / std::log(double(F.field().q())) - ci.P;
    row.contribution = ci.value;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jetsum
