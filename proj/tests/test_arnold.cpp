#include <random>

#include "confspace/arnold.hpp"
#include "confspace/error.hpp"
#include "confspace/forest.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace confspace;
using namespace confspace::arnold;

namespace {

Monomial random_word(int k, int length, std::mt19937_64& rng) {
  Monomial w;
  std::uniform_int_distribution<int> idx(1, k);
  while (static_cast<int>(w.size()) < length) {
    int a = idx(rng), b = idx(rng);
    if (a != b) w.push_back({a, b});
  }
  return w;
}

// The class is determined by its pairings with all tall forests of its degree.
void check_against_tree_pairing(const Monomial& word, const CohomologyClass& nf, int k, int n) {
  const int degree = static_cast<int>(word.size()) * (n - 1);
  for (const auto& t : forest::tall_basis(k, n, degree)) {
    Integer lhs = oracle::planetary_pairing(t, word, n);
    Integer rhs = 0;
    for (const auto& [m, c] : nf.terms()) rhs += c * oracle::planetary_pairing(t, m, n);
    CHECK(lhs == rhs);
  }
}

CohomologyClass random_class(int k, int n, std::mt19937_64& rng) {
  CohomologyClass x(Context{k, n});
  const int len = static_cast<int>(rng() % static_cast<unsigned>(k));
  auto basis = admissible_basis(k, n, len * (n - 1));
  for (int i = 0; i < 3 && !basis.empty(); ++i)
    x.add_term(basis[rng() % basis.size()], Integer(static_cast<int>(rng() % 5) - 2));
  return x;
}

}  // namespace

TEST_CASE("admissible bases") {
  auto b = admissible_basis(3, 2, 2);
  REQUIRE(b.size() == 2);
  CHECK(monomial_to_string(b[0]) == "a12*a13");
  CHECK(monomial_to_string(b[1]) == "a12*a23");
  auto e = admissible_basis(2, 3, 0);
  REQUIRE(e.size() == 1);
  CHECK(e[0].empty());
  // the top-degree count is (k-1)!, the coefficient of t^4 in prod_{j=1}^{4} (1 + j t)
  CHECK(admissible_basis(5, 2, 4).size() == 24);
  CHECK(admissible_basis(5, 2, 3).size() == 50);
  CHECK(admissible_basis(5, 2, 2).size() == 35);
  CHECK(admissible_basis(4, 2, 1).size() == 6);
  CHECK(admissible_basis(4, 3, 1).empty());
  for (const auto& m : admissible_basis(6, 2, 3)) CHECK(is_admissible(m));
}

TEST_CASE("normal form examples") {
  CHECK(normal_form({{1, 3}, {1, 2}}, 3, 2).to_string() == "-a12*a13");
  CHECK(normal_form({{1, 3}, {1, 2}}, 3, 3).to_string() == "a12*a13");
  auto x = normal_form({{1, 3}, {2, 3}}, 3, 2);
  CohomologyClass expected(Context{3, 2});
  expected.add_term({{1, 2}, {2, 3}}, 1);
  expected.add_term({{1, 2}, {1, 3}}, -1);
  CHECK(x == expected);
  check_against_tree_pairing({{1, 3}, {2, 3}}, x, 3, 2);
  // a_ba = (-1)^n a_ab
  CHECK(normal_form({{2, 1}}, 2, 2).to_string() == "a12");
  CHECK(normal_form({{2, 1}}, 2, 3).to_string() == "-a12");
  CHECK(normal_form({{1, 2}, {1, 2}}, 2, 2).is_zero());
  CHECK_THROWS_AS(normal_form({{1, 4}}, 3, 2), InvalidArgument);
  CHECK_THROWS_AS(normal_form({{2, 2}}, 3, 2), InvalidArgument);
}

TEST_CASE("Arnold relation vanishes for every triple") {
  for (int n : {2, 3, 4})
    for (int k = 3; k <= 5; ++k)
      for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b)
          for (int c = b + 1; c <= k; ++c) {
            std::vector<std::pair<Monomial, Integer>> rel{
                {{{a, b}, {b, c}}, 1}, {{{b, c}, {c, a}}, 1}, {{{c, a}, {a, b}}, 1}};
            CHECK(normal_form(rel, k, n).is_zero());
          }
}

TEST_CASE("normal forms agree with the tree pairing oracle") {
  std::mt19937_64 rng(101);
  for (int n : {2, 3})
    for (int k = 2; k <= 5; ++k)
      for (int trial = 0; trial < 40; ++trial) {
        auto w = random_word(k, 1 + static_cast<int>(rng() % static_cast<unsigned>(k - 1)), rng);
        check_against_tree_pairing(w, normal_form(w, k, n), k, n);
      }
}

TEST_CASE("normal form is idempotent and confluent") {
  std::mt19937_64 rng(103);
  for (int n : {2, 3})
    for (int k = 2; k <= 5; ++k)
      for (int trial = 0; trial < 40; ++trial) {
        auto w = random_word(k, 1 + static_cast<int>(rng() % 4), rng);
        auto canonical = normal_form(w, k, n);
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
          CHECK(normal_form(w, k, n, Strategy::Random, seed * 7919 + trial) == canonical);
        std::vector<std::pair<Monomial, Integer>> again(canonical.terms().begin(), canonical.terms().end());
        CHECK(normal_form(again, k, n) == canonical);
      }
}

TEST_CASE("multiplication") {
  Context c{3, 2};
  auto a12 = CohomologyClass::generator(c, 1, 2);
  auto a13 = CohomologyClass::generator(c, 1, 3);
  auto a23 = CohomologyClass::generator(c, 2, 3);
  CHECK(multiply(CohomologyClass::one(c), a13) == a13);
  CHECK(multiply(a12, a12).is_zero());
  CohomologyClass expected(c);
  expected.add_term({{1, 2}, {2, 3}}, 2);
  expected.add_term({{1, 2}, {1, 3}}, -1);
  CHECK(multiply(a12 + a13, a23) == expected);
  CHECK_THROWS_AS(multiply(a12, CohomologyClass::one(Context{3, 3})), InvalidArgument);
}

TEST_CASE("multiplication is graded commutative") {
  std::mt19937_64 rng(107);
  for (int n : {2, 3})
    for (int k = 2; k <= 5; ++k)
      for (int trial = 0; trial < 20; ++trial) {
        auto x = random_class(k, n, rng), y = random_class(k, n, rng);
        // homogeneous by construction: degree = length * (n-1)
        int dx = x.terms().empty() ? 0 : static_cast<int>(x.terms().begin()->first.size()) * (n - 1);
        int dy = y.terms().empty() ? 0 : static_cast<int>(y.terms().begin()->first.size()) * (n - 1);
        auto xy = multiply(x, y), yx = multiply(y, x);
        CHECK(xy == ((dx * dy) % 2 ? yx.scaled(-1) : yx));
      }
}

TEST_CASE("symmetric group action") {
  Context c{3, 2};
  auto x = normal_form({{1, 2}, {2, 3}}, 3, 2);
  CHECK(sigma_act(identity_permutation(3), x) == x);
  CHECK(sigma_act(transposition(2, 1, 2), CohomologyClass::generator(Context{2, 2}, 1, 2)) ==
        CohomologyClass::generator(Context{2, 2}, 1, 2));
  CHECK(sigma_act(transposition(2, 1, 2), CohomologyClass::generator(Context{2, 3}, 1, 2)) ==
        CohomologyClass::generator(Context{2, 3}, 1, 2).scaled(-1));
  // t_23 sends a12*a23 to a13*a32
  auto y = sigma_act(transposition(3, 2, 3), x);
  check_against_tree_pairing({{1, 3}, {3, 2}}, y, 3, 2);
  CHECK(y == normal_form({{1, 3}, {3, 2}}, 3, 2));
}

TEST_CASE("sigma_act is a group action") {
  std::mt19937_64 rng(109);
  for (int n : {2, 3})
    for (int k = 2; k <= 5; ++k)
      for (int trial = 0; trial < 100; ++trial) {
        auto s = random_permutation(k, rng), t = random_permutation(k, rng);
        auto x = random_class(k, n, rng);
        CHECK(sigma_act(s, sigma_act(t, x)) == sigma_act(compose(s, t), x));
      }
}

TEST_CASE("Poincare polynomials") {
  CHECK(poincare_polynomial(1, 2).to_string() == PoincareSeries::one(std::nullopt, 0).to_string());
  CHECK(series_equal(poincare_polynomial(3, 2), PoincareSeries::univariate({1, 3, 2}, std::nullopt)));
  CHECK(series_equal(poincare_polynomial(4, 3), PoincareSeries::univariate({1, 0, 6, 0, 11, 0, 6}, std::nullopt)));
  for (int n : {2, 3, 4})
    for (int k = 1; k <= 8; ++k) CHECK(series_equal(poincare_polynomial(k, n), poincare_by_census(k, n)));
}

TEST_CASE("reduction mod p and parsing") {
  auto x = normal_form({{1, 3}, {2, 3}}, 3, 2).scaled(3);
  auto r = x.reduce_mod(3);
  CHECK(r.empty());
  CHECK(monomial_to_string(parse_monomial("a12*a23")) == "a12*a23");
  CHECK(parse_monomial("1").empty());
  CHECK(parse_monomial("a(10,11)") == Monomial{{10, 11}});
  CHECK(monomial_to_string({{3, 10}}) == "a(3,10)");
}
