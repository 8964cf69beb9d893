#include <doctest.h>

#include "jetsum/form.hpp"
#include "jetsum/parse.hpp"

using namespace jetsum;

namespace {
const FieldSpec& f5() {
  static FieldSpec f = FieldSpec::prime(5);
  return f;
}
const FieldSpec& f7() {
  static FieldSpec f = FieldSpec::prime(7);
  return f;
}

FormSpec cube1() { return FormSpec::diagonal(f5(), 3, {1}); }
FormSpec cube2() { return FormSpec::diagonal(f5(), 3, {1, 1}); }

std::vector<JetPoly> vec(std::initializer_list<const char*> lits, int m) {
  std::vector<JetPoly> out;
  for (auto* s : lits) out.push_back(parse_jetpoly(s, f5(), m));
  return out;
}
}  // namespace

TEST_CASE("dimension formulas") {
  auto r = dimensions(10, 3, 2);
  CHECK(r.mu_bar == 19);
  CHECK(r.mu == 22);
  CHECK(dimensions(7, 4, 0).mu == 7 - 2);  // e = 0 collapses to n - 2
  CHECK(dimensions(4, 3, 1).mu_bar == 0);
  CHECK(dimensions(4, 3, 1).mu == 3);
  CHECK_THROWS_AS(dimensions(0, 3, 1), std::invalid_argument);
}

TEST_CASE("construction enforces char > d") {
  CHECK_THROWS_AS(FormSpec::diagonal(f5(), 5, {1}), std::invalid_argument);
  CHECK_THROWS_AS(FormSpec::diagonal(f5(), 7, {1, 1}), std::invalid_argument);
  // counting paths may opt in, but lose the multilinear surface
  FormSpec F = FormSpec::diagonal(f5(), 5, {1, 2}, /*allow_small_char=*/true);
  CHECK(F.small_char_mode());
  CHECK_THROWS_AS(F.psi_terms(0), std::logic_error);
  auto x = vec({"1", "1"}, 0);
  CHECK(!F.eval(x).is_zero());  // 1 + 2 = 3 in F_5, using x^5 = x
}

TEST_CASE("symmetric tensor spreads monomials over their orbits") {
  // F = x1^2 x2 over F_7: orbit size 3, c_{112} = 3^{-1} = 5
  FormSpec F = FormSpec::from_monomials(f7(), 2, 3, {{{0, 0, 1}, 1}});
  CHECK(F.tensor_coeff({0, 0, 1}) == f7().mul(1, f7().inv(3)));
  CHECK(F.tensor_coeff({0, 1, 0}) == F.tensor_coeff({1, 0, 0}));
  CHECK(F.tensor_coeff({1, 1, 1}) == 0);
  // diagonal entries have orbit 1
  FormSpec D = FormSpec::diagonal(f7(), 3, {2, 3});
  CHECK(D.tensor_coeff({0, 0, 0}) == 2);
  CHECK(D.tensor_coeff({1, 1, 1}) == 3);
}

TEST_CASE("eval_form worked examples") {
  // x = 0 -> 0
  CHECK(cube2().eval(vec({"0", "0"}, 1)).is_zero());
  // diagonal x^3 at m = 1, x = s t: s^3 t^3 truncates away
  CHECK(cube1().eval(vec({"s*t"}, 1)).is_zero());
  // x1^3 + x2^3 at m = 0, x = (1 + t, 2): 4 + 3t + 3t^2 + t^3
  JetPoly got = cube2().eval(vec({"1 + t", "2"}, 0));
  CHECK(got == parse_jetpoly("4 + 3*t + 3*t^2 + t^3", f5(), 0));
}

TEST_CASE("homogeneity: F(lambda x) = lambda^d F(x)") {
  FormSpec F = FormSpec::from_monomials(f5(), 2, 3, {{{0, 0, 1}, 2}, {{1, 1, 1}, 1}});
  JetBox box(f5(), 1, 2, 1);
  std::vector<u16> d(std::size_t(box.ndigits()), 0);
  for (u64 i = 0; i < 400; ++i) {
    auto xs = box.to_polys(d.data());
    JetPoly fx = F.eval(xs);
    for (u16 lam = 0; lam < 5; ++lam) {
      std::vector<JetPoly> sx;
      for (auto& x : xs) sx.push_back(x.scaled(lam));
      CHECK(F.eval(sx) == fx.scaled(f5().pow(lam, 3)));
    }
    box.next(d.data());
  }
}

TEST_CASE("multilinear system: diagonal closed form and symmetry") {
  // diagonal d = 3: Psi_i(x, y) = 6 a_i x_i y_i
  FormSpec F = FormSpec::diagonal(f5(), 3, {2, 3});
  auto x = vec({"t", "1 + s"}, 1);
  auto y = vec({"s*t", "t"}, 1);
  std::vector<std::vector<JetPoly>> args = {x, y};
  for (int i = 0; i < 2; ++i) {
    JetPoly expect =
        (x[std::size_t(i)] * y[std::size_t(i)]).scaled(f5().mul(f5().from_scalar(6), F.diagonal_coeffs()[std::size_t(i)]));
    CHECK(F.multilinear_psi(i, args) == expect);
  }
  // swapping the vector slots leaves the value unchanged
  std::vector<std::vector<JetPoly>> swapped = {y, x};
  for (int i = 0; i < 2; ++i) CHECK(F.multilinear_psi(i, args) == F.multilinear_psi(i, swapped));
  // any zero argument kills the value
  std::vector<std::vector<JetPoly>> with_zero = {x, vec({"0", "0"}, 1)};
  for (int i = 0; i < 2; ++i) CHECK(F.multilinear_psi(i, with_zero).is_zero());
}

TEST_CASE("multilinearity in the first slot on seeded samples") {
  FormSpec F = FormSpec::from_monomials(f5(), 2, 3, {{{0, 0, 1}, 1}, {{0, 1, 1}, 3}});
  u64 state = derive_seed(23, "psi-multilinear");
  JetBox box(f5(), 1, 2, 1);
  std::vector<u16> d(std::size_t(box.ndigits()), 0);
  auto rand_vec = [&] {
    u64 idx = splitmix64(state) % u64(box.total());
    box.decode(idx, d.data());
    return box.to_polys(d.data());
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto x = rand_vec();
    auto xp = rand_vec();
    auto y = rand_vec();
    std::vector<JetPoly> sum;
    for (int i = 0; i < 2; ++i) sum.push_back(x[std::size_t(i)] + xp[std::size_t(i)]);
    for (int i = 0; i < 2; ++i) {
      std::vector<std::vector<JetPoly>> a1 = {sum, y}, a2 = {x, y}, a3 = {xp, y};
      CHECK(F.multilinear_psi(i, a1) == F.multilinear_psi(i, a2) + F.multilinear_psi(i, a3));
    }
  }
}

TEST_CASE("gradient: calculus examples and the psi identity") {
  // F = x1^3: grad = (3 x1^2)
  FormSpec F = cube1();
  auto x = vec({"2 + t"}, 0);
  auto g = F.gradient(x);
  CHECK(g[0] == (x[0] * x[0]).scaled(3));
  CHECK(F.gradient(vec({"0"}, 1))[0].is_zero());

  // Psi_i(x,...,x) = (d-1)! * dF/dx_i on seeded samples at d = 3 and 4
  u64 state = derive_seed(29, "gradient-psi");
  for (int d = 3; d <= 4; ++d) {
    FormSpec G = d == 3
                     ? FormSpec::from_monomials(f7(), 2, 3, {{{0, 0, 1}, 2}, {{1, 1, 1}, 1}})
                     : FormSpec::from_monomials(f7(), 2, 4, {{{0, 0, 1, 1}, 3}, {{0, 0, 0, 0}, 1}});
    u16 fact = f7().from_scalar(d == 3 ? 2 : 6);  // (d-1)!
    JetBox box(f7(), 1, 2, 1);
    std::vector<u16> dd(std::size_t(box.ndigits()), 0);
    for (int trial = 0; trial < 100; ++trial) {
      box.decode(splitmix64(state) % u64(box.total()), dd.data());
      auto xs = box.to_polys(dd.data());
      auto grad = G.gradient(xs);
      std::vector<std::vector<JetPoly>> rep(std::size_t(d - 1), xs);
      for (int i = 0; i < 2; ++i)
        CHECK(G.multilinear_psi(i, rep) == grad[std::size_t(i)].scaled(fact));
    }
  }
}

TEST_CASE("smoothness search") {
  Budget budget{100'000'000};
  // diagonal cubics are smooth over every extension
  CHECK(smoothness_check(cube2(), 3, budget).smooth);
  CHECK(smoothness_check(cube1(), 4, budget).smooth);
  // x1^2 x2 is singular at (0, 1)
  FormSpec F = FormSpec::from_monomials(f5(), 2, 3, {{{0, 0, 1}, 1}});
  auto v = smoothness_check(F, 2, budget);
  CHECK(!v.smooth);
  CHECK(v.witness_k == 1);
  // the zero form is degenerate
  CHECK(!smoothness_check(FormSpec::diagonal(f5(), 3, {0, 0}), 2, budget).smooth);
  // a smooth non-diagonal cubic: x1^2 x2 + x2^3 (char 5)
  FormSpec G = FormSpec::from_monomials(f5(), 2, 3, {{{0, 0, 1}, 1}, {{1, 1, 1}, 1}});
  CHECK(smoothness_check(G, 3, budget).smooth);
}

TEST_CASE("form templates instantiate across fields") {
  FormTemplate tmpl = parse_form_template("diag:1,1", 3);
  CHECK(tmpl.n == 2);
  CHECK(tmpl.d == 3);
  FormSpec F5 = tmpl.instantiate(f5());
  FormSpec F7 = tmpl.instantiate(f7());
  CHECK(F5.field().q() == 5);
  CHECK(F7.field().q() == 7);
  FormTemplate monos = parse_form_template("112=3;222=1", 0);
  CHECK(monos.d == 3);
  CHECK(monos.n == 2);
  CHECK(!monos.diagonal);
}
