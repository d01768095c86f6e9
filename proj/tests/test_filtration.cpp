#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "curvedef/filtration.hpp"

using namespace curvedef;

namespace {

// Independent oracle: e_i read off the jump list one index at a time.
Int e_i_naive(const LowerFiltration& f, Int i) {
  if (f.shape == FiltrationShape::weak) return i <= 1 ? pow_checked(f.p, f.k) : 1;
  Int drops = 0;
  for (Int j : f.jumps)
    if (j < i) ++drops;
  return pow_checked(f.p, f.k - drops);
}

Int d_P_naive(const LowerFiltration& f) {
  Int acc = 0;
  for (Int i = 0; i <= f.highest_jump(); ++i) acc += 2 * e_i_naive(f, i) - 2;
  return acc;
}

LowerFiltration from_a(Int p, const std::vector<Int>& a) {
  std::vector<Int> jumps;
  Int acc = 0, pw = 1;
  for (Int anu : a) {
    acc += anu * pw;
    jumps.push_back(acc);
    pw *= p;
  }
  return cyclic_filtration(p, jumps);
}

}  // namespace

TEST_CASE("delta is floor division toward -infinity") {
  CHECK(delta(0, 3) == 0);
  CHECK(delta(0, 97) == 0);
  CHECK(delta(-4, 3) == -2);
  CHECK(delta(-4, 5) == -1);
  CHECK(delta(8, 3) == 2);
  CHECK(delta_iter(44, 2, 3) == 4);
  CHECK(delta_iter(-10, 2, 3) == -2);
  CHECK(delta_iter(7, 0, 3) == 7);
}

TEST_CASE("delta_iter equals one floor division by p^n, and shifts") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    Int p = (trial % 2) ? 3 : 5;
    Int n = static_cast<Int>(rng() % 4);
    Int a = static_cast<Int>(rng() % 20001) - 10000;
    Int pn = pow_checked(p, n);
    Int single = a >= 0 ? a / pn : -((-a + pn - 1) / pn);
    CHECK(delta_iter(a, n, p) == single);
    // floor shift law: Delta^n(p^n X + y) = X + Delta^n(y)
    Int X = static_cast<Int>(rng() % 201) - 100;
    CHECK(delta_iter(pn * X + a, n, p) == X + delta_iter(a, n, p));
  }
}

TEST_CASE("delta_iter is digit truncation for non-negative input") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    Int p = 3 + 2 * static_cast<Int>(rng() % 2);
    Int a = static_cast<Int>(rng() % 100000);
    Int n = static_cast<Int>(rng() % 5);
    std::vector<Int> digits;
    for (Int x = a; x > 0; x /= p) digits.push_back(x % p);
    Int expect = 0;
    for (std::size_t i = digits.size(); i-- > static_cast<std::size_t>(n);)
      expect = expect * p + digits[i];
    if (static_cast<Int>(digits.size()) <= n) expect = 0;
    CHECK(delta_iter(a, n, p) == expect);
  }
}

TEST_CASE("herbrand_phi piecewise values") {
  auto f1 = cyclic_filtration(3, {5});
  for (Int u = 0; u <= 5; ++u) CHECK(herbrand_phi(f1, u) == Rat(u));
  auto f2 = cyclic_filtration(3, {1, 4});
  CHECK(herbrand_phi(f2, 0) == Rat(0));
  CHECK(herbrand_phi(f2, 4) == Rat(2));
  CHECK(herbrand_phi(f2, 1) == Rat(1));
  CHECK(herbrand_phi(f2, 2) == Rat(4, 3));
}

TEST_CASE("herbrand_phi is strictly increasing with the right increments") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Int p = (trial % 2) ? 3 : 5;
    Int k = 1 + static_cast<Int>(rng() % 3);
    std::vector<Int> a;
    for (Int nu = 0; nu < k; ++nu) {
      Int anu = 1 + static_cast<Int>(rng() % 5);
      if (nu == 0)
        while (anu % p == 0) anu = 1 + static_cast<Int>(rng() % 5);
      a.push_back(anu);
    }
    auto f = from_a(p, a);
    Rat prev(-1);
    for (Int u = 0; u <= f.highest_jump() + 2; ++u) {
      Rat cur = herbrand_phi(f, u);
      CHECK(cur > prev);
      prev = cur;
    }
    Int prev_jump = 0;
    Rat prev_phi(0);
    for (std::size_t nu = 0; nu < f.jumps.size(); ++nu) {
      Rat cur = herbrand_phi(f, f.jumps[nu]);
      CHECK(cur - prev_phi == Rat(a[nu]));
      prev_phi = cur;
      prev_jump = f.jumps[nu];
    }
    (void)prev_jump;
  }
}

TEST_CASE("upper jumps") {
  auto u = upper_jumps(cyclic_filtration(3, {1, 4}));
  CHECK(u.sigma == std::vector<Int>{1, 2});
  CHECK(u.f() == 2);

  auto u1 = upper_jumps(cyclic_filtration(5, {7}));
  CHECK(u1.sigma == std::vector<Int>{7});
  CHECK(u1.f() == 7);

  LowerFiltration bad{3, 2, {1, 3}, FiltrationShape::cyclic};
  CHECK_THROWS_MATCHES(upper_jumps(bad), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::hasse_arf_violation;
                       }));
}

TEST_CASE("validate_filtration collects issues without aborting") {
  SECTION("valid relaxed, schmid warning under strict") {
    LowerFiltration f{3, 2, {1, 4}, FiltrationShape::cyclic};
    auto relaxed = validate_filtration(f, false);
    CHECK(relaxed.valid());
    CHECK(relaxed.issues.empty());
    auto strict = validate_filtration(f, true);
    CHECK(strict.valid());  // schmid problems warn, never fail
    REQUIRE(strict.issues.size() == 1);
    CHECK(strict.issues[0].code == "schmid");
    CHECK_FALSE(strict.issues[0].hard);
  }
  SECTION("p=5 (1,6) strict: sigma = (1,2) violates the congruences, reported") {
    LowerFiltration f{5, 2, {1, 6}, FiltrationShape::cyclic};
    auto strict = validate_filtration(f, true);
    CHECK(strict.valid());
    REQUIRE(strict.issues.size() == 1);
    CHECK(strict.issues[0].code == "schmid");
  }
  SECTION("hasse-arf failure is hard") {
    LowerFiltration f{3, 2, {1, 3}, FiltrationShape::cyclic};
    auto v = validate_filtration(f);
    CHECK_FALSE(v.valid());
    CHECK(v.issues[0].code == "hasse_arf");
  }
  SECTION("first jump divisible by p is hard") {
    LowerFiltration f{5, 1, {5}, FiltrationShape::cyclic};
    auto v = validate_filtration(f);
    CHECK_FALSE(v.valid());
  }
  SECTION("non-monotone") {
    LowerFiltration f{3, 2, {4, 2}, FiltrationShape::cyclic};
    CHECK_FALSE(validate_filtration(f).valid());
  }
}

TEST_CASE("d_P examples and brute-force agreement") {
  CHECK(d_P(cyclic_filtration(3, {1})) == 8);
  CHECK(d_P(cyclic_filtration(3, {1, 4})) == 44);
  CHECK(d_P(cyclic_filtration(5, {1})) == 16);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Int p = (trial % 2) ? 3 : 5;
    Int k = 1 + static_cast<Int>(rng() % 3);
    std::vector<Int> a;
    for (Int nu = 0; nu < k; ++nu) {
      Int anu = 1 + static_cast<Int>(rng() % 4);
      if (nu == 0)
        while (anu % p == 0) anu = 1 + static_cast<Int>(rng() % 4);
      a.push_back(anu);
    }
    auto f = from_a(p, a);
    CHECK(d_P(f) == d_P_naive(f));
    // closed form of the segment sum
    Int fP = 0;
    for (Int x : a) fP += x;
    CHECK(d_P(f) == 2 * pow_checked(p, k) + 2 * pow_checked(p, k) * fP -
                        2 * f.highest_jump() - 2);
  }
  // weak-shape segments
  auto w = weak_filtration(3, 2);
  CHECK(d_P(w) == 2 * (2 * 9 - 2));
  CHECK(ramification_sum(w) == 16);
}

TEST_CASE("delta_k_dP examples and closed form") {
  CHECK(delta_k_dP(cyclic_filtration(3, {1, 4})) == 4);
  CHECK(delta_k_dP(cyclic_filtration(3, {1})) == 2);
  CHECK(delta_k_dP(cyclic_filtration(5, {1})) == 3);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    Int p = (trial % 2) ? 3 : 5;
    Int k = 1 + static_cast<Int>(rng() % 3);
    std::vector<Int> a;
    for (Int nu = 0; nu < k; ++nu) {
      Int anu = 1 + static_cast<Int>(rng() % 5);
      if (nu == 0)
        while (anu % p == 0) anu = 1 + static_cast<Int>(rng() % 5);
      a.push_back(anu);
    }
    auto f = from_a(p, a);
    Int fP = upper_jumps(f).f();
    CHECK(delta_k_dP(f) ==
          2 + 2 * fP + delta_iter(-2 * f.highest_jump() - 2, f.k, p));
  }
}

TEST_CASE("level_jump") {
  auto f = cyclic_filtration(3, {1, 4});
  CHECK(level_jump(f, 1) == 4);
  CHECK(level_jump(f, 2) == 1);
  CHECK(level_jump(cyclic_filtration(3, {7}), 1) == 7);
  CHECK_THROWS_MATCHES(level_jump(f, 3), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::out_of_range;
                       }));
}
