#include <doctest.h>

#include <map>

#include "jetsum/laurent.hpp"
#include "jetsum/parse.hpp"

using namespace jetsum;

namespace {
const FieldSpec& f5() {
  static FieldSpec f = FieldSpec::prime(5);
  return f;
}

// Independent oracle: schoolbook multiply over exponent maps at unlimited
// precision, then restrict to the fractional window. Shares nothing with the
// library's convolution path.
std::map<int, u16> wide_mul(const FieldSpec& f, const std::map<int, u16>& a,
                            const std::map<int, u16>& b) {
  std::map<int, u16> out;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      u16& slot = out[ea + eb];
      slot = f.add(slot, f.mul(ca, cb));
    }
  return out;
}

std::map<int, u16> part_to_map(const FracLaurent& p) {
  std::map<int, u16> out;
  for (int j = 1; j <= p.depth(); ++j)
    if (p.digit(j)) out[-j] = p.digit(j);
  return out;
}

std::map<int, u16> poly_comp_to_map(const JetPoly& x, int comp) {
  std::map<int, u16> out;
  auto c = x.component(comp);
  for (std::size_t v = 0; v < c.size(); ++v)
    if (c[v]) out[int(v)] = c[v];
  return out;
}

JetLaurent random_laurent(const FieldSpec& f, int m, int depth, u64& state) {
  JetLaurent a(f, m, -depth);
  for (int i = 0; i <= m; ++i)
    for (int j = 1; j <= depth; ++j) a.set_digit(i, j, u16(splitmix64(state) % u64(f.q())));
  return a;
}
}  // namespace

TEST_CASE("fractional parts validate their floor") {
  CHECK_THROWS_AS(FracLaurent(f5(), 0), std::invalid_argument);
  FracLaurent a(f5(), -3);
  a.set_digit(2, 4);
  CHECK(a.digit(2) == 4);
  CHECK_THROWS_AS(a.set_digit(4, 1), std::out_of_range);
}

TEST_CASE("distance norm: levels and reductions") {
  // alpha = 0
  CHECK(norm_dist(JetLaurent(f5(), 1, -4)).is_zero());
  // m = 1, alpha0 = t^-3, alpha1 = 0, level 1
  JetLaurent a = parse_jetlaurent("t^-3", f5(), 1, -4);
  CHECK(norm_dist(a, 1) == NormExp::pow(-3));
  // alpha0 = 0, alpha1 = t^-1, level 0: the reduction forgets alpha1
  JetLaurent b = parse_jetlaurent("s*t^-1", f5(), 1, -4);
  CHECK(norm_dist(b, 0).is_zero());
  CHECK(norm_dist(b, 1) == NormExp::pow(-1));
  CHECK(norm_dist(reduce(b, 0)).is_zero());
}

TEST_CASE("threshold comparisons respect the floor") {
  JetLaurent a = parse_jetlaurent("t^-2", f5(), 0, -3);
  CHECK(dist_lt(a, 0, 1));        // ||a|| = q^-2 < q^-1
  CHECK(!dist_lt(a, 0, 2));       // not < q^-2
  CHECK(!dist_lt(a, 0, 5));       // visible digit settles it despite depth 3
  JetLaurent z(f5(), 0, -3);
  CHECK(dist_lt(z, 0, 3));
  CHECK_THROWS_AS(dist_lt(z, 0, 4), InsufficientPrecision);  // all-zero window, b > depth
}

TEST_CASE("psi_m reads the t^-1 coefficients") {
  CHECK(psi_m(JetLaurent(f5(), 2, -3)) == RootSum::root(5, 0));
  // m = 0: psi(c t^-1) = zeta^c
  for (int c = 0; c < 5; ++c) {
    JetLaurent a(f5(), 0, -2);
    a.set_digit(0, 1, u16(c));
    CHECK(psi_m(a) == RootSum::root(5, c));
  }
  // m = 1, alpha = t^-2 + s * 3 t^-1: alpha0 contributes trivially
  JetLaurent a = parse_jetlaurent("t^-2 + 3*s*t^-1", f5(), 1, -3);
  CHECK(psi_m(a) == RootSum::root(5, 3));
}

TEST_CASE("psi_m is additive on seeded samples") {
  u64 state = derive_seed(11, "psi-additive");
  for (int trial = 0; trial < 1000; ++trial) {
    int m = int(splitmix64(state) % 3);
    JetLaurent a = random_laurent(f5(), m, 4, state);
    JetLaurent b = random_laurent(f5(), m, 4, state);
    RootSum lhs = psi_m(a + b);
    // product of two single roots
    int ja = 0, jb = 0;
    for (int j = 0; j < 5; ++j) {
      if (psi_m(a).counts()[std::size_t(j)]) ja = j;
      if (psi_m(b).counts()[std::size_t(j)]) jb = j;
    }
    CHECK(lhs == RootSum::root(5, ja + jb));
  }
}

TEST_CASE("mul_poly_laurent: identity, truncation, worked product") {
  JetLaurent a = parse_jetlaurent("t^-2 + s*t^-1", f5(), 1, -4);
  // x = 1 leaves alpha unchanged down to the result floor
  JetPoly one = JetPoly::constant(f5(), 1, 1);
  JetLaurent r = mul_poly_laurent(a, one);
  CHECK(r.floor() == -4);
  CHECK(r == a);

  // m = 1, alpha = s t^-1, x = t: the integer part is discarded
  JetLaurent b = parse_jetlaurent("s*t^-1", f5(), 1, -4);
  CHECK(mul_poly_laurent(b, parse_jetpoly("t", f5(), 1)).visibly_zero());

  // m = 1, alpha = t^-2 + s t^-1, x = t + s -> t^-1 + s t^-2
  JetPoly x = parse_jetpoly("t + s", f5(), 1);
  JetLaurent prod = mul_poly_laurent(a, x);
  CHECK(prod.floor() == -3);
  JetLaurent expect = parse_jetlaurent("t^-1 + s*t^-2", f5(), 1, -3);
  CHECK(prod == expect);
}

TEST_CASE("mul_poly_laurent agrees with the wide-precision oracle") {
  u64 state = derive_seed(13, "wide-mul");
  for (int trial = 0; trial < 300; ++trial) {
    int m = int(splitmix64(state) % 3);
    int depth = 3 + int(splitmix64(state) % 3);
    int deg = int(splitmix64(state) % std::min(depth, 3));
    JetLaurent a = random_laurent(f5(), m, depth, state);
    std::vector<std::vector<u16>> comps(std::size_t(m) + 1);
    for (auto& c : comps) {
      c.resize(std::size_t(deg) + 1);
      for (auto& v : c) v = u16(splitmix64(state) % 5);
    }
    JetPoly x = JetPoly::from_components(f5(), m, comps);
    if (x.is_zero()) continue;
    JetLaurent got = mul_poly_laurent(a, x);
    // oracle: s-convolution of wide products, fractional window only
    for (int k = 0; k <= m; ++k) {
      std::map<int, u16> acc;
      for (int i = 0; i <= k; ++i) {
        auto prod = wide_mul(f5(), part_to_map(a.part(i)), poly_comp_to_map(x, k - i));
        for (auto& [e, c] : prod) {
          u16& slot = acc[e];
          slot = f5().add(slot, c);
        }
      }
      for (int j = 1; j <= got.depth(); ++j) {
        auto it = acc.find(-j);
        CHECK(got.digit(k, j) == (it == acc.end() ? 0 : it->second));
      }
    }
  }
}

TEST_CASE("mul_poly_laurent precision guards") {
  JetLaurent a(f5(), 0, -1);
  JetPoly t = parse_jetpoly("t", f5(), 0);
  CHECK_THROWS_AS(mul_poly_laurent(a, t), InsufficientPrecision);
  // zero polynomial keeps the operand floor
  CHECK(mul_poly_laurent(a, JetPoly(f5(), 0)).floor() == -1);
}

TEST_CASE("triviality direction: |x| < q^N and |alpha| < q^-N give psi = 1") {
  // exhaustive at q = 5, m <= 1, N in {1, 2}: alpha supported on digits
  // below t^-N only, x of degree < N
  for (int m = 0; m <= 1; ++m)
    for (int N = 1; N <= 2; ++N) {
      int depth = N + 2;
      JetBox xbox(f5(), m, 1, N - 1);
      DigitBox abox{5, (m + 1) * (depth - N)};
      std::vector<u16> xd(std::size_t(xbox.ndigits()), 0);
      std::vector<u16> ad(std::size_t(abox.ndigits), 0);
      u64 xt = u64(xbox.total());
      for (u64 xi = 0; xi < xt; ++xi) {
        JetPoly x = xbox.to_polys(xd.data())[0];
        std::fill(ad.begin(), ad.end(), 0);
        bool more = true;
        while (more) {
          JetLaurent alpha(f5(), m, -depth);
          for (int i = 0; i <= m; ++i)
            for (int j = N + 1; j <= depth; ++j)
              alpha.set_digit(i, j, ad[std::size_t(i * (depth - N) + j - N - 1)]);
          CHECK(psi_m(mul_poly_laurent(alpha, x)) == RootSum::root(5, 0));
          more = abox.next(ad.data());
        }
        xbox.next(xd.data());
      }
    }
}

TEST_CASE("pairing digits reproduce psi_m(alpha x) exhaustively at small size") {
  int m = 1, P = 3;
  JetBox xbox(f5(), m, 1, P - 1);
  std::vector<u16> xd(std::size_t(xbox.ndigits()), 0);
  u64 state = derive_seed(17, "pairing");
  for (u64 xi = 0; xi < u64(xbox.total()); ++xi) {
    JetPoly x = xbox.to_polys(xd.data())[0];
    auto w = psi_pairing_digits(x, P);
    for (int trial = 0; trial < 3; ++trial) {
      JetLaurent alpha = random_laurent(f5(), m, P, state);
      int phase = 0;
      for (int i = 0; i <= m; ++i)
        for (int j = 1; j <= P; ++j)
          phase = (phase + f5().trace_mul(alpha.digit(i, j), w[std::size_t(i * P + j - 1)])) % 5;
      CHECK(psi_m(mul_poly_laurent(alpha, x)) == RootSum::root(5, phase));
    }
    xbox.next(xd.data());
  }
  CHECK_THROWS_AS(psi_pairing_digits(parse_jetpoly("t^3", f5(), 1), 3), InsufficientPrecision);
}

TEST_CASE("derived windows refuse to report a norm they cannot know") {
  // alpha = s t^-1 times t sheds its whole window: the product is visibly
  // zero but the tail went with the shed depth
  JetLaurent a = parse_jetlaurent("s*t^-1", f5(), 1, -4);
  JetLaurent prod = mul_poly_laurent(a, parse_jetpoly("t", f5(), 1));
  CHECK(prod.visibly_zero());
  CHECK(!prod.exact_tail());
  CHECK_THROWS_AS(norm_dist(prod), InsufficientPrecision);
  // a constructed zero is exact and has norm 0
  CHECK(norm_dist(JetLaurent(f5(), 1, -4)).is_zero());
  // a visible digit settles the norm either way
  JetLaurent b = parse_jetlaurent("t^-2 + s*t^-1", f5(), 1, -4);
  JetLaurent bp = mul_poly_laurent(b, parse_jetpoly("t", f5(), 1));
  CHECK(!bp.exact_tail());
  CHECK(norm_dist(bp) == NormExp::pow(-1));
}

TEST_CASE("exact sums align to the deeper floor") {
  JetLaurent shallow = parse_jetlaurent("t^-2", f5(), 0, -2);
  JetLaurent deep = parse_jetlaurent("t^-4", f5(), 0, -4);
  JetLaurent sum = shallow + deep;
  CHECK(sum.floor() == -4);
  CHECK(sum.digit(0, 2) == 1);
  CHECK(sum.digit(0, 4) == 1);
  CHECK(sum.exact_tail());
}
