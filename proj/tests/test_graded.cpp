#include <random>

#include "confspace/graded.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace confspace;

TEST_CASE("GradedDims basics") {
  GradedDims a{{0, 1}, {3, 2}};
  CHECK(a[0] == 1);
  CHECK(a[1] == 0);
  CHECK(a.total() == 3);
  CHECK(a.euler_characteristic() == -1);
  a.set(3, 0);
  CHECK(a == GradedDims{{0, 1}});
  CHECK(a.to_string() == "{0:1}");
}

TEST_CASE("tensor of graded dimensions") {
  GradedDims unit{{0, 1}};
  GradedDims x{{0, 2}, {1, 5}, {4, 1}};
  CHECK(tensor(unit, x) == x);
  GradedDims circle{{0, 1}, {1, 1}};
  CHECK(tensor(circle, circle) == GradedDims{{0, 1}, {1, 2}, {2, 1}});
  GradedDims conf2{{0, 1}, {2, 1}};
  CHECK(tensor(conf2, conf2) == GradedDims{{0, 1}, {2, 2}, {4, 1}});
}

TEST_CASE("tensor is associative and commutative") {
  std::mt19937_64 rng(3);
  auto random_dims = [&] {
    GradedDims d;
    for (int i = 0; i < 4; ++i) d.add(static_cast<int>(rng() % 6) - 1, static_cast<std::int64_t>(rng() % 4));
    return d;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_dims(), b = random_dims(), c = random_dims();
    CHECK(tensor(a, b) == tensor(b, a));
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
  }
}

TEST_CASE("sym_series of single generators") {
  BigradedDims even;
  even.set(0, 1, 1);
  auto s = sym_series(even, std::nullopt, 6);
  for (int w = 0; w <= 6; ++w) CHECK(s.coeff(0, w) == 1);

  BigradedDims odd;
  odd.set(1, 1, 1);
  auto t = sym_series(odd, std::nullopt, 6);
  CHECK(t.coeff(0, 0) == 1);
  CHECK(t.coeff(1, 1) == 1);
  for (int w = 2; w <= 6; ++w) CHECK(t.weight_piece(w).empty());
}

TEST_CASE("Sym of the free shifted Poisson algebra on one generator") {
  // a generator in (degree 0, weight 1) and its bracket in (degree n-1, weight 2), n = 3
  BigradedDims v;
  v.set(0, 1, 1);
  v.set(2, 2, 1);
  auto s = sym_series(v, std::nullopt, 8);
  for (int k = 0; k <= 8; ++k) {
    std::map<int, BigInt> expected;
    for (int j = 0; 2 * j <= k; ++j) expected[2 * j] = 1;
    CHECK(s.weight_piece(k) == expected);
  }
}

TEST_CASE("sym_series sends direct sums to products") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    BigradedDims a, b;
    for (int i = 0; i < 3; ++i) {
      a.add(static_cast<int>(rng() % 5) - 1, 1 + static_cast<int>(rng() % 2), 1);
      b.add(static_cast<int>(rng() % 5) - 1, 1 + static_cast<int>(rng() % 2), 1);
    }
    auto lhs = sym_series(a.direct_sum(b), 12, 5);
    auto rhs = sym_series(a, 12, 5) * sym_series(b, 12, 5);
    CHECK(series_equal(lhs, rhs));
  }
}

TEST_CASE("series equality and truncation") {
  auto a = PoincareSeries::univariate({1, 1}, 5);
  CHECK(series_equal(a, a));
  auto b = PoincareSeries::univariate({1, 1, 1}, 1);
  CHECK(series_equal(a, b));
  auto c = PoincareSeries::univariate({1, 1, 1}, 5);
  CHECK_FALSE(series_equal(a, c));

  auto prod = PoincareSeries::one(6, 0);
  for (int j = 1; j <= 3; ++j) prod = prod * PoincareSeries::univariate({1, j}, 6);
  CHECK(series_equal(prod, PoincareSeries::univariate({1, 6, 11, 6}, 6)));
}

TEST_CASE("t -> -1 collapses degrees") {
  PoincareSeries s(std::nullopt, 2);
  s.add_term(0, 0, 1);
  s.add_term(1, 1, 3);
  s.add_term(2, 1, 1);
  s.add_term(4, 2, 2);
  auto e = s.at_t_minus_one();
  CHECK(e.coeff(0, 0) == 1);
  CHECK(e.coeff(0, 1) == -2);
  CHECK(e.coeff(0, 2) == 2);
}

TEST_CASE("Stirling numbers match the product formula") {
  for (int k = 1; k <= 8; ++k) {
    auto poly = oracle::product_formula(k, 2);
    for (int j = 0; j < k; ++j) CHECK(poly[j] == oracle::stirling1(k, k - j));
  }
  CHECK(oracle::stirling1(5, 3) == 35);
  CHECK(oracle::stirling1(5, 2) == 50);
}
