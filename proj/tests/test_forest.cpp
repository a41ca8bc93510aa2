#include <random>

#include "confspace/error.hpp"
#include "confspace/forest.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace confspace;
using namespace confspace::forest;

namespace {

HomologyClass rw(const std::string& text, int n) { return rewrite_to_tall(parse_forest(text), n); }

HomologyClass cls(int k, int n, std::initializer_list<std::pair<const char*, int>> terms) {
  HomologyClass h(Context{k, n});
  for (const auto& [f, c] : terms) h.add_term(parse_forest(f), c);
  return h;
}

// random binary tree on the given leaves
Tree random_tree(std::vector<int> leaves, std::mt19937_64& rng) {
  std::shuffle(leaves.begin(), leaves.end(), rng);
  std::vector<Tree> pool;
  for (int x : leaves) pool.push_back(Tree::leaf(x));
  while (pool.size() > 1) {
    std::size_t i = rng() % (pool.size() - 1);
    auto t = Tree::bracket(pool[i], pool[i + 1]);
    pool.erase(pool.begin() + static_cast<long>(i), pool.begin() + static_cast<long>(i) + 2);
    pool.insert(pool.begin() + static_cast<long>(i), t);
  }
  return pool.front();
}

}  // namespace

TEST_CASE("trees parse and print") {
  auto t = Tree::parse("((12)3)");
  CHECK(t.to_string() == "((12)3)");
  CHECK(t.leaf_count() == 3);
  CHECK(t.min_leaf() == 1);
  CHECK(t.is_tall());
  CHECK(t.is_left_normed());
  CHECK_FALSE(Tree::parse("((21)3)").is_tall());
  CHECK_FALSE(Tree::parse("(1(23))").is_left_normed());
  CHECK(Tree::parse("(1{10})").leaves() == std::vector<int>{1, 10});
  CHECK(Tree::parse("(1{10})").to_string() == "(1{10})");
  CHECK_THROWS_AS(Tree::parse("((12)"), InvalidArgument);
  CHECK_THROWS_AS(check_forest(parse_forest("(12),2"), 2), InvalidArgument);
  CHECK(forest_degree(parse_forest("((12)3),4"), 3) == 4);
}

TEST_CASE("tall bases") {
  auto top = tall_basis(3, 2, 2);
  REQUIRE(top.size() == 2);
  CHECK(forest_to_string(top[0]) == "((12)3)");
  CHECK(forest_to_string(top[1]) == "((13)2)");
  auto zero = tall_basis(2, 2, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].size() == 2);
  // tall forests on 5 leaves with two internal vertices: c(5,3)
  CHECK(tall_basis(5, 3, 4).size() == 35);
  CHECK(tall_basis(5, 2, 2).size() == 35);
  for (int k = 1; k <= 8; ++k) CHECK(Integer(tall_basis(k, 2, k - 1).size()) == oracle::factorial(k - 1));
  for (int k = 1; k <= 6; ++k)
    for (int j = 0; j < k; ++j) {
      auto b = tall_basis(k, 2, j);
      CHECK(Integer(b.size()) == oracle::stirling1(k, k - j));
      CHECK(Integer(b.size()) == oracle::tall_forest_count(k, k - j));
      for (const auto& f : b) CHECK(is_tall(f));
    }
  CHECK(tall_basis(3, 1, 0).size() == 6);
  CHECK(tall_basis(4, 3, 3).empty());
}

TEST_CASE("rewriting examples") {
  CHECK(rw("((12)3)", 2) == cls(3, 2, {{"((12)3)", 1}}));
  CHECK(rw("((23)1)", 2) == cls(3, 2, {{"((13)2)", -1}, {"((12)3)", -1}}));
  CHECK(rw("((21)3)", 3) == cls(3, 3, {{"((12)3)", -1}}));
  CHECK(rw("((21)3)", 2) == cls(3, 2, {{"((12)3)", 1}}));
  CHECK(rw("2,1", 2) == cls(2, 2, {{"1,2", 1}}));
}

TEST_CASE("rewriting agrees with the tensor-algebra oracle") {
  std::mt19937_64 rng(211);
  for (int n : {2, 3, 4})
    for (int k = 1; k <= 6; ++k)
      for (int trial = 0; trial < 60; ++trial) {
        auto f = oracle::random_forest(k, rng);
        auto h = rewrite_to_tall(f, n);
        for (const auto& [g, c] : h.terms()) CHECK(is_tall(g));
        CHECK(oracle::tensor_image(f, n) == oracle::tensor_image(h.terms(), n));
      }
}

TEST_CASE("graded Jacobi sum vanishes") {
  std::mt19937_64 rng(223);
  for (int n : {2, 3})
    for (int k = 3; k <= 7; ++k)
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> labels(k);
        std::iota(labels.begin(), labels.end(), 1);
        std::shuffle(labels.begin(), labels.end(), rng);
        const int c1 = 1 + static_cast<int>(rng() % static_cast<unsigned>(k - 2));
        const int c2 = c1 + 1 + static_cast<int>(rng() % static_cast<unsigned>(k - c1 - 1));
        Tree a = random_tree({labels.begin(), labels.begin() + c1}, rng);
        Tree b = random_tree({labels.begin() + c1, labels.begin() + c2}, rng);
        Tree c = random_tree({labels.begin() + c2, labels.end()}, rng);
        auto deg = [&](const Tree& t) { return t.leaf_count() * (n - 1); };
        auto sgn = [&](const Tree& x, const Tree& y) { return (deg(x) * deg(y)) % 2 ? -1 : 1; };
        auto term = [&](const Tree& x, const Tree& y, const Tree& z) {
          return rewrite_to_tall({Tree::bracket(Tree::bracket(x, y), z)}, n).scaled(sgn(x, z));
        };
        CHECK((term(a, b, c) + term(b, c, a) + term(c, a, b)).is_zero());
      }
}

TEST_CASE("pairing matrices") {
  auto p = pairing_matrix(3, 2, 2);
  CHECK(p.rows() == 2);
  CHECK(abs(oracle::dense_determinant(oracle::to_dense(p))) == 1);
  auto z = pairing_matrix(4, 3, 0);
  CHECK(z == linalg::SparseMatrix<Integer>::identity(1));
  auto top4 = pairing_matrix(4, 2, 3);
  CHECK(top4.rows() == 6);
  CHECK(abs(oracle::dense_determinant(oracle::to_dense(top4))) == 1);
  auto snf = linalg::smith_normal_form(top4);
  CHECK(snf.rank == 6);
  for (const auto& f : snf.invariant_factors) CHECK(f == 1);
  CHECK(pairing_matrix(3, 2, 3).rows() == 0);
  CHECK_THROWS_AS(pairing_matrix(3, 1, 0), InvalidArgument);
}

TEST_CASE("pairing matrices match the tree pairing oracle") {
  for (int n : {2, 3, 4})
    for (int k = 1; k <= 5; ++k)
      for (int j = 0; j < k; ++j) {
        auto p = pairing_matrix(k, n, j * (n - 1));
        auto rows = tall_basis(k, n, j * (n - 1));
        auto cols = arnold::admissible_basis(k, n, j * (n - 1));
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (std::size_t c = 0; c < cols.size(); ++c) CHECK(p.get(r, c) == oracle::planetary_pairing(rows[r], cols[c], n));
      }
}

TEST_CASE("path monomials") {
  CHECK(arnold::monomial_to_string(path_monomial(parse_forest("((13)2),4"))) == "a13*a32");
  CHECK(path_monomial(parse_forest("1,2")).empty());
}

TEST_CASE("symmetric group action on homology") {
  auto x = cls(3, 2, {{"((12)3)", 1}});
  CHECK(sigma_act(identity_permutation(3), x) == x);
  CHECK(sigma_act(transposition(2, 1, 2), cls(2, 2, {{"(12)", 1}})) == cls(2, 2, {{"(12)", 1}}));
  CHECK(sigma_act(transposition(2, 1, 2), cls(2, 3, {{"(12)", 1}})) == cls(2, 3, {{"(12)", -1}}));
  auto cyc = sigma_act(long_cycle(3), x);  // ((23)1)
  CHECK(oracle::tensor_image(cyc.terms(), 2) == oracle::tensor_image(parse_forest("((23)1)"), 2));
  CHECK(cyc == cls(3, 2, {{"((13)2)", -1}, {"((12)3)", -1}}));
}

TEST_CASE("action matrices form a representation") {
  std::mt19937_64 rng(227);
  for (int n : {2, 3})
    for (int k = 2; k <= 5; ++k)
      for (int j = 0; j < k; ++j) {
        auto s = random_permutation(k, rng), t = random_permutation(k, rng);
        const int d = j * (n - 1);
        auto lhs = action_matrix(compose(s, t), k, n, d);
        auto rhs = linalg::multiply(action_matrix(s, k, n, d), action_matrix(t, k, n, d));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("rational coinvariants and unordered Betti numbers") {
  CHECK(coinvariants_dims(2, 2, 0) == GradedDims{{0, 1}, {1, 1}});
  CHECK(coinvariants_dims(2, 3, 0) == GradedDims{{0, 1}});
  CHECK(coinvariants_dims(3, 2, 0)[2] == 0);
  CHECK(coinvariants_dims(3, 4, 0)[6] == 0);
  for (int n = 1; n <= 4; ++n)
    for (int k = 2; k <= 6; ++k) CHECK(coinvariants_dims(k, n, 0) == unordered_betti_rational(k, n));
  CHECK(unordered_betti_rational(5, 2) == GradedDims{{0, 1}, {1, 1}});
  CHECK(unordered_betti_rational(5, 3) == GradedDims{{0, 1}});
  CHECK(unordered_betti_rational(2, 4) == GradedDims{{0, 1}, {3, 1}});
  // large characteristic gives the same answer
  CHECK(coinvariants_dims(4, 2, 5) == unordered_betti_rational(4, 2));
  CHECK_THROWS_AS(coinvariants_dims(3, 2, 3), HypothesisViolation);
  CHECK_THROWS_AS(coinvariants_dims(3, 2, 4), InvalidArgument);
}
