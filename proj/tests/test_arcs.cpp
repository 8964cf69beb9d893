#include <doctest.h>

#include "jetsum/arcs.hpp"
#include "jetsum/parse.hpp"

using namespace jetsum;

namespace {
const FieldSpec& f5() {
  static FieldSpec f = FieldSpec::prime(5);
  return f;
}
FormSpec cube1() { return FormSpec::diagonal(f5(), 3, {1}); }
Budget budget() { return Budget{500'000'000}; }
const ArcParams p31{3, 1};  // d = 3, e = 1: M = 2, threshold q^{J-4}
}  // namespace

TEST_CASE("arc membership basics") {
  AlphaRep zero(f5(), 0, 4);
  CHECK(!arc_member(zero, -1, p31));  // M(-1) is empty
  CHECK(arc_member(zero, 0, p31));    // r = 1 approximates 0 perfectly
  CHECK(dirichlet_layer(zero, p31) == 0);

  // alpha_0 = t^-1: J = 0 fails (||t^-1|| = q^-1 >= q^-4), J = 1 succeeds via r = t
  AlphaRep a(f5(), 0, 4);
  a.set_digit(0, 1, 1);
  CHECK(!arc_member(a, 0, p31));
  CHECK(arc_member(a, 1, p31));
  CHECK(dirichlet_layer(a, p31) == 1);
  auto w = arc_witness_alpha0(a.digits(), 1, p31, f5());
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<u16>{0, 1});  // the monic witness t
}

TEST_CASE("membership needs depth de+1 and ignores higher components") {
  JetLaurent shallow(f5(), 0, -3);
  CHECK_THROWS_AS(arc_member(shallow, 0, p31), InsufficientPrecision);

  u64 state = derive_seed(59, "alpha0-only");
  for (int trial = 0; trial < 50; ++trial) {
    JetLaurent a(f5(), 2, -4);
    for (int j = 1; j <= 4; ++j) a.set_digit(0, j, u16(splitmix64(state) % 5));
    bool base = arc_member(a, 1, p31);
    for (int variant = 0; variant < 4; ++variant) {
      JetLaurent b = a;
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 4; ++j) b.set_digit(i, j, u16(splitmix64(state) % 5));
      CHECK(arc_member(b, 1, p31) == base);
    }
  }
}

TEST_CASE("exhaustive depth-4 scan: coverage, monotonicity, layer histogram") {
  DigitBox box{5, 4};
  std::vector<u16> row(4, 0);
  i64 hist[3] = {0, 0, 0};
  auto rep = [&](const std::vector<u16>& r) {
    AlphaRep a(f5(), 0, 4);
    for (int j = 1; j <= 4; ++j) a.set_digit(0, j, r[std::size_t(j - 1)]);
    return a;
  };
  bool more = true;
  while (more) {
    int minJ = dirichlet_layer(rep(row), p31);
    REQUIRE(minJ <= 2);
    ++hist[minJ];
    for (int J = minJ; J <= 2; ++J) CHECK(arc_witness_alpha0(row, J, p31, f5()).has_value());
    for (int J = 0; J < minJ; ++J) CHECK(!arc_witness_alpha0(row, J, p31, f5()).has_value());
    more = box.next(row.data());
  }
  // M(0) is the zero class; M(1) has 25 classes: r = 1 and each monic linear
  // denominator contribute a line of classes through 0
  CHECK(hist[0] == 1);
  CHECK(hist[1] == 24);
  CHECK(hist[2] == 625 - 25);
}

TEST_CASE("measure bounds at depth 4") {
  CHECK(arc_measure_count(-1, p31, 0, 4, f5(), budget()).alpha0_classes == 0);
  ArcMeasure m0 = arc_measure_count(0, p31, 0, 4, f5(), budget());
  CHECK(m0.alpha0_classes == 1);
  CHECK(m0.bound_ok);
  ArcMeasure m1 = arc_measure_count(1, p31, 0, 4, f5(), budget());
  CHECK(m1.alpha0_classes == 25);
  CHECK(m1.bound_ok);
  ArcMeasure m2 = arc_measure_count(2, p31, 0, 4, f5(), budget());
  CHECK(m2.alpha0_classes == 625);
  CHECK(m2.bound_ok);
}

TEST_CASE("circle integral: N_0(0) for the cubing form") {
  FormSpec F = cube1();
  CircleIntegral ci = circle_integral(F, 0, 0, ArcSubset::all, 0, budget());
  CHECK(ci.P == 1);
  CHECK(ci.is_integral);
  CHECK(ci.integer_value == 1);
}

TEST_CASE("circle integral: full circle at m = 1 equals 25, split == naive") {
  FormSpec F = cube1();
  CircleIntegral split =
      circle_integral(F, 1, 1, ArcSubset::all, 0, budget(), 1, IntegralMethod::split);
  CircleIntegral naive =
      circle_integral(F, 1, 1, ArcSubset::all, 0, budget(), 1, IntegralMethod::naive);
  CHECK(split.integer_value == 25);
  CHECK(naive.integer_value == 25);
  CHECK(split.sum == naive.sum);  // bit-identical tallies
  CHECK(split.alpha_classes == u128(checked_pow_u64(5, 8)));
}

TEST_CASE("innermost arc reproduces the scaled lower-order count") {
  FormSpec F = cube1();
  CircleIntegral major = circle_integral(F, 1, 1, ArcSubset::major, 0, budget());
  // q^{n(e+1)-de-1} N_0(1) = 5^-2 * 1
  CHECK(major.value == Rat64(1, 25));
  CircleIntegral naive =
      circle_integral(F, 1, 1, ArcSubset::major, 0, budget(), 1, IntegralMethod::naive);
  CHECK(major.sum == naive.sum);
}

TEST_CASE("layers partition the circle exactly") {
  FormSpec F = cube1();
  CircleIntegral all = circle_integral(F, 1, 1, ArcSubset::all, 0, budget());
  RootSum assembled(5);
  Rat64 total(0);
  // row J = classes with minimal level J: major(0) plus the layers
  CircleIntegral inner = circle_integral(F, 1, 1, ArcSubset::major, 0, budget());
  assembled += inner.sum;
  total = total + inner.value;
  for (int J = 0; J < p31.M(); ++J) {
    CircleIntegral layer = circle_integral(F, 1, 1, ArcSubset::layer, J, budget());
    assembled += layer.sum;
    total = total + layer.value;
  }
  CHECK(assembled == all.sum);
  CHECK(total == all.value);

  auto rows = layer_report(F, 1, 1, budget());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].class_count == 1);
  CHECK(rows[1].class_count == 24);
  CHECK(rows[2].class_count == 600);
  Rat64 rtotal(0);
  for (auto& r : rows) rtotal = rtotal + r.contribution;
  CHECK(rtotal == all.value);
}

TEST_CASE("alpha representative round-trip") {
  for (u64 idx : {u64(0), u64(1), u64(17), u64(624), u64(390624)}) {
    AlphaRep a = AlphaRep::from_index(f5(), 1, 4, idx);
    CHECK(a.index() == idx);
    JetLaurent l = a.to_laurent();
    CHECK(l.floor() == -4);
    for (int i = 0; i <= 1; ++i)
      for (int j = 1; j <= 4; ++j) CHECK(l.digit(i, j) == a.digit(i, j));
  }
}
