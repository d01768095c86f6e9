#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "curvedef/cyclic_module.hpp"
#include "curvedef/fq.hpp"
#include "curvedef/linalg.hpp"

using namespace curvedef;

TEST_CASE("field arithmetic axioms, sampled") {
  for (auto [p, t] : {std::pair<Int, Int>{3, 1}, {3, 2}, {5, 2}, {7, 2}, {5, 3}}) {
    FqContext F(p, t, 1);
    REQUIRE(F.q() == pow_checked(p, t));
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
      FqElem a = static_cast<FqElem>(rng() % static_cast<std::uint64_t>(F.q()));
      FqElem b = static_cast<FqElem>(rng() % static_cast<std::uint64_t>(F.q()));
      FqElem c = static_cast<FqElem>(rng() % static_cast<std::uint64_t>(F.q()));
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == F.zero());
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
    }
    // multiplicative group has order q - 1: Fermat
    for (FqElem a = 1; a < F.q(); ++a) {
      FqElem pow = F.one();
      for (Int e = 0; e < F.q() - 1; ++e) pow = F.mul(pow, a);
      CHECK(pow == F.one());
    }
  }
}

TEST_CASE("rank and kernel") {
  FqContext F(3, 1, 1);
  CHECK(rank(F, FqMatrix::identity(F, 3)) == 3);
  CHECK(rank(F, FqMatrix(4, 5)) == 0);
  CHECK(kernel_dim(F, FqMatrix(4, 5)) == 5);

  FqMatrix m(2, 3);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 1;  // independent rows mod 3
  m.at(0, 2) = 1;
  m.at(1, 2) = 1;
  CHECK(rank(F, m) == 2);
  CHECK(kernel_dim(F, m) == 1);
}

TEST_CASE("rank accumulator matches batch rank") {
  std::mt19937_64 rng(4);
  for (auto [p, t] : {std::pair<Int, Int>{3, 1}, {5, 2}}) {
    FqContext F(p, t, 3);
    for (int trial = 0; trial < 50; ++trial) {
      Int rows = 1 + static_cast<Int>(rng() % 6);
      Int cols = 1 + static_cast<Int>(rng() % 10);
      FqMatrix m(rows, cols);
      for (auto& x : m.a) x = static_cast<FqElem>(rng() % static_cast<std::uint64_t>(F.q()));
      RankAccumulator acc(F, rows);
      for (Int c = 0; c < cols; ++c) {
        std::vector<FqElem> col;
        for (Int r = 0; r < rows; ++r) col.push_back(m.at(r, c));
        acc.add_column(col);
      }
      CHECK(acc.rank() == rank(F, m));
    }
  }
}

TEST_CASE("rank outputs do not depend on the modulus choice") {
  // the same integer matrix pattern, reduced into F_9 realized three ways
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Int rows = 3 + static_cast<Int>(rng() % 3), cols = 3 + static_cast<Int>(rng() % 4);
    std::vector<Int> pattern(static_cast<std::size_t>(rows * cols));
    for (auto& x : pattern) x = static_cast<Int>(rng() % 3);  // F_p entries embed everywhere
    std::vector<Int> ranks;
    for (std::uint64_t seed : {1ull, 2ull, 5ull}) {
      FqContext F(3, 2, seed);
      FqMatrix m(rows, cols);
      for (std::size_t i = 0; i < pattern.size(); ++i) m.a[i] = F.from_fp(pattern[i]);
      ranks.push_back(rank(F, m));
    }
    CHECK(ranks[0] == ranks[1]);
    CHECK(ranks[1] == ranks[2]);
  }
}

TEST_CASE("jordan multiplicities") {
  FqContext F(3, 1, 1);
  SECTION("regular module is one full block") {
    auto m = jordan_multiplicities(F, regular_module(F, 3, 2));
    std::vector<Int> want(9, 0);
    want[8] = 1;
    CHECK(m == want);
  }
  SECTION("V1 + V2 over Z/3") {
    auto mod = direct_sum(F, indecomposable_module(F, 3, 1, 1), indecomposable_module(F, 3, 1, 2));
    CHECK(jordan_multiplicities(F, mod) == std::vector<Int>{1, 1, 0});
  }
  SECTION("identity action d = 5") {
    CyclicModule mod{3, 1, FqMatrix::identity(F, 5)};
    CHECK(jordan_multiplicities(F, mod) == std::vector<Int>{5, 0, 0});
  }
  SECTION("non-unipotent generator is rejected") {
    CyclicModule bad{3, 1, FqMatrix(1, 1)};
    bad.sigma.at(0, 0) = 2;
    CHECK_THROWS_MATCHES(jordan_multiplicities(F, bad), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == errc::not_unipotent;
                         }));
  }
}

TEST_CASE("jordan reconstruction is idempotent") {
  FqContext F(3, 1, 1);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    Int p = 3, v = 1 + static_cast<Int>(rng() % 2);
    Int q = pow_checked(p, v);
    std::vector<Int> want(static_cast<std::size_t>(q), 0);
    CyclicModule sum{p, v, FqMatrix(0, 0)};
    bool first = true;
    for (int piece = 0; piece < 4; ++piece) {
      Int j = 1 + static_cast<Int>(rng() % static_cast<std::uint64_t>(q));
      want[static_cast<std::size_t>(j - 1)] += 1;
      auto mod = indecomposable_module(F, p, v, j);
      sum = first ? mod : direct_sum(F, sum, mod);
      first = false;
    }
    CHECK(jordan_multiplicities(F, sum) == want);
    // covariants additive: one per indecomposable summand
    CHECK(covariants_dim(F, sum) == 4);
  }
}

TEST_CASE("covariants") {
  FqContext F(3, 1, 1);
  for (Int j = 1; j <= 9; ++j) CHECK(covariants_dim(F, indecomposable_module(F, 3, 2, j)) == 1);
  CyclicModule five{3, 1, FqMatrix::identity(F, 5)};
  CHECK(covariants_dim(F, five) == 5);
  auto mix = direct_sum(F, regular_module(F, 3, 1), indecomposable_module(F, 3, 1, 2));
  CHECK(covariants_dim(F, mix) == 2);
}

TEST_CASE("induction and Shapiro in degree zero") {
  FqContext F(3, 1, 1);
  SECTION("trivial module from the trivial subgroup induces to the regular module") {
    CyclicModule triv{3, 0, FqMatrix::identity(F, 1)};
    auto ind = induced_module(F, triv, 2);
    CHECK(ind.dim() == 9);
    CHECK(covariants_dim(F, ind) == 1);
    CHECK(jordan_multiplicities(F, ind) == jordan_multiplicities(F, regular_module(F, 3, 2)));
  }
  SECTION("V1 from p^1 to p^2") {
    auto ind = induced_module(F, indecomposable_module(F, 3, 1, 1), 2);
    CHECK(ind.dim() == 3);
    CHECK(covariants_dim(F, ind) == 1);
  }
  SECTION("random small modules") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
      Int s = static_cast<Int>(rng() % 2);
      Int j = 1 + static_cast<Int>(rng() % pow_checked(3, s));
      auto base = indecomposable_module(F, 3, s, j);
      CHECK(shapiro_check(F, base, s + 1 + static_cast<Int>(rng() % 2)));
    }
  }
}
