#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "jetsum/field.hpp"
#include "jetsum/rootsum.hpp"

using namespace jetsum;

namespace {

const FieldSpec& f5() {
  static FieldSpec f = FieldSpec::prime(5);
  return f;
}
// t^2 + t + 1 has no root mod 5, so this is F_25.
const FieldSpec& f25() {
  static FieldSpec f = FieldSpec::extension(5, {1, 1, 1});
  return f;
}

// independent complex-embedding oracle for magnitudes
long double complex_magnitude(const RootSum& r) {
  std::complex<long double> z = 0;
  for (int j = 0; j < r.p(); ++j) {
    long double ang = 2.0L * std::numbers::pi_v<long double> * j / r.p();
    z += std::complex<long double>(std::cos(ang), std::sin(ang)) *
         static_cast<long double>(r.counts()[std::size_t(j)]);
  }
  return std::abs(z);
}

}  // namespace

TEST_CASE("field construction validates input") {
  CHECK_THROWS_AS(FieldSpec::prime(4), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(1), std::invalid_argument);
  // t^2 - 1 = (t-1)(t+1) is reducible
  CHECK_THROWS_AS(FieldSpec::extension(5, {4, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::extension(5, {1, 1, 0}), std::invalid_argument);
  CHECK(f25().q() == 25);
  CHECK(f25().k() == 2);
}

TEST_CASE("field tables are a field") {
  for (const FieldSpec* f : {&f5(), &f25()}) {
    int q = f->q();
    for (int a = 0; a < q; ++a) {
      CHECK(f->add(u16(a), 0) == a);
      CHECK(f->mul(u16(a), 1) == a);
      CHECK(f->add(u16(a), f->neg(u16(a))) == 0);
      if (a) CHECK(f->mul(u16(a), f->inv(u16(a))) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f->add(u16(a), u16(b)) == f->add(u16(b), u16(a)));
        CHECK(f->mul(u16(a), u16(b)) == f->mul(u16(b), u16(a)));
        for (int c = 0; c < std::min(q, 7); ++c)
          CHECK(f->mul(u16(a), f->add(u16(b), u16(c))) ==
                f->add(f->mul(u16(a), u16(b)), f->mul(u16(a), u16(c))));
      }
    }
  }
}

TEST_CASE("trace on the prime field is the identity") {
  for (int x = 0; x < 5; ++x) CHECK(f5().trace(u16(x)) == x);
  CHECK(ff_trace(FieldElem(f5(), 0)) == 0);
}

TEST_CASE("trace over F_25: additivity, linearity, balance, Frobenius sum") {
  const FieldSpec& f = f25();
  // exhaustive additivity table
  for (int a = 0; a < 25; ++a)
    for (int b = 0; b < 25; ++b)
      CHECK(f.trace(f.add(u16(a), u16(b))) == (f.trace(u16(a)) + f.trace(u16(b))) % 5);
  // F_p-linearity
  for (int lam = 0; lam < 5; ++lam)
    for (int a = 0; a < 25; ++a)
      CHECK(f.trace(f.mul(f.from_scalar(lam), u16(a))) == (lam * f.trace(u16(a))) % 5);
  // Tr(1) = k mod p
  CHECK(f.trace(1) == 2);
  // each residue is hit exactly q/p times
  int hist[5] = {0, 0, 0, 0, 0};
  for (int a = 0; a < 25; ++a) ++hist[f.trace(u16(a))];
  for (int r = 0; r < 5; ++r) CHECK(hist[r] == 5);
  // independent Frobenius power sum g + g^5 by repeated squaring
  u16 g = u16(5);  // the power-basis generator image: coeffs (0,1)
  u16 frob = f.pow(g, 5);
  u16 sum = f.add(g, frob);
  CHECK(int(sum) == f.trace(g));
  CHECK(sum < 5);  // lands in the prime subfield
}

TEST_CASE("char_eq basics and additivity") {
  CHECK(char_eq(FieldElem(f5(), 0)) == RootSum::root(5, 0));
  CHECK(char_eq(FieldElem(f5(), 2)) == RootSum::root(5, 2));
  // e_q(x+y) = e_q(x) e_q(y), exhaustively over F_25
  const FieldSpec& f = f25();
  for (int a = 0; a < 25; ++a)
    for (int b = 0; b < 25; ++b) {
      RootSum lhs = char_eq(FieldElem(f, u16(f.add(u16(a), u16(b)))));
      RootSum rhs = char_eq(FieldElem(f, u16(a))).mul_root(f.trace(u16(b)));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("character sums vanish except at c = 0") {
  for (const FieldSpec* f : {&f5(), &f25()}) {
    for (int c = 0; c < f->q(); ++c) {
      RootSum sum(f->p());
      for (int x = 0; x < f->q(); ++x) sum += char_eq(FieldElem(*f, f->mul(u16(c), u16(x))));
      if (c == 0) {
        CHECK(sum == RootSum::root(f->p(), 0, f->q()));
      } else {
        CHECK(sum.is_zero());
        CHECK(sum.magnitude() < 1e-9L);
      }
    }
  }
}

TEST_CASE("rootsum zero test, rotation, conjugation, integers") {
  RootSum flat(5);
  for (int j = 0; j < 5; ++j) flat.add_root(j, 7);
  CHECK(flat.is_zero());
  CHECK(flat.as_integer() == 0);

  RootSum r = RootSum::root(5, 1, 3);
  CHECK(r.mul_root(2) == RootSum::root(5, 3, 3));
  CHECK(r.conj() == RootSum::root(5, 4, 3));
  CHECK(!r.as_integer());

  RootSum n = RootSum::root(5, 0, 42);
  CHECK(n.as_integer() == 42);
  CHECK(n.magnitude() == doctest::Approx(42.0));
}

TEST_CASE("rootsum magnitude matches the complex embedding") {
  RootSum r(5);
  r.add_root(0);
  r.add_root(1);
  // |1 + zeta_5| = 2 cos(pi/5)
  CHECK(double(r.magnitude()) == doctest::Approx(1.6180339887498949).epsilon(1e-12));
  CHECK(double(r.magnitude()) == doctest::Approx(double(complex_magnitude(r))).epsilon(1e-14));

  RootSum big = RootSum::root(7, 0, 1'000'000'007LL);
  CHECK(double(big.magnitude()) == doctest::Approx(1.000000007e9).epsilon(1e-12));
}

TEST_CASE("rootsum zero test agrees with small magnitude on seeded accumulations") {
  u64 state = derive_seed(2024, "rootsum-agreement");
  for (int trial = 0; trial < 1000; ++trial) {
    RootSum r(7);
    int terms = int(splitmix64(state) % 6);
    for (int t = 0; t < terms; ++t) r.add_root(int(splitmix64(state) % 7), i64(splitmix64(state) % 100));
    if (splitmix64(state) & 1) {
      // add a full orbit, which contributes zero
      i64 c = i64(splitmix64(state) % 50);
      for (int j = 0; j < 7; ++j) r.add_root(j, c);
    }
    bool zero = r.is_zero();
    bool small = r.magnitude() < 1e-6L;
    CHECK(zero == small);
  }
}

TEST_CASE("rootsum overflow is detected, not wrapped") {
  RootSum r = RootSum::root(5, 0, INT64_MAX - 1);
  CHECK_THROWS_AS(r.add_root(0, 2), CountOverflow);
  CHECK_THROWS_AS(r += r, CountOverflow);
}

TEST_CASE("mismatched fields are rejected") {
  CHECK_THROWS_AS(FieldElem(f5(), 1) + FieldElem(f25(), 1), FieldMismatch);
  CHECK_THROWS_AS(RootSum(5) += RootSum(7), FieldMismatch);
}
