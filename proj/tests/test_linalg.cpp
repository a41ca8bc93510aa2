#include <random>

#include "confspace/arnold.hpp"
#include "confspace/dense_fp.hpp"
#include "confspace/error.hpp"
#include "confspace/linalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace confspace;
using namespace confspace::linalg;

namespace {

SparseMatrix<Integer> random_integer_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, int density = 3) {
  std::vector<Triplet<Integer>> t;
  std::uniform_int_distribution<int> val(-4, 4), coin(0, density);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) == 0) t.push_back({i, j, Integer(val(rng))});
  return SparseMatrix<Integer>::from_triplets(r, c, std::move(t));
}

SparseMatrix<Fp> random_fp_matrix(std::size_t r, std::size_t c, std::uint32_t p, std::mt19937_64& rng) {
  std::vector<Triplet<Fp>> t;
  std::uniform_int_distribution<int> val(0, static_cast<int>(p) - 1), coin(0, 2);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) == 0) t.push_back({i, j, Fp(val(rng), p)});
  return SparseMatrix<Fp>::from_triplets(r, c, std::move(t), Fp(0, p));
}

}  // namespace

TEST_CASE("rank of trivial matrices") {
  CHECK(rank(SparseMatrix<Rational>::identity(3)) == 3);
  CHECK(rank(SparseMatrix<Rational>(4, 7)) == 0);
  CHECK_THROWS_AS(rank(SparseMatrix<Integer>::identity(2)), UnsupportedDomain);
}

TEST_CASE("rank of the degree-2 Arnold change of basis for k=3, n=2") {
  // rows: admissible monomials; columns: normal forms of the three products a12a23, a13a23, a12a13
  auto basis = arnold::admissible_basis(3, 2, 2);
  REQUIRE(basis.size() == 2);
  std::vector<arnold::Monomial> words{{{1, 2}, {2, 3}}, {{1, 3}, {2, 3}}, {{1, 2}, {1, 3}}};
  std::vector<Triplet<Integer>> t;
  for (std::size_t c = 0; c < words.size(); ++c) {
    auto nf = arnold::normal_form(words[c], 3, 2);
    for (std::size_t r = 0; r < basis.size(); ++r) t.push_back({r, c, nf.coefficient(basis[r])});
  }
  auto m = SparseMatrix<Integer>::from_triplets(2, 3, t);
  CHECK(rank(to_rational(m)) == 2);
  CHECK(oracle::dense_rank(oracle::to_dense(m)) == 2);
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(SparseMatrix<Rational>::identity(4)).empty());
  auto row = SparseMatrix<Rational>::from_triplets(1, 2, {{0, 0, Rational(1)}, {0, 1, Rational(-1)}});
  auto k = kernel_basis(row);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == k[0][1]);
  CHECK(k[0][0] != 0);
}

TEST_CASE("kernel vectors multiply back to zero over F_7") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_fp_matrix(20, 20, 7, rng);
    auto k = kernel_basis(m);
    CHECK(rank(m) + k.size() == m.cols());
    for (const auto& v : k)
      for (const auto& x : m.apply(v)) CHECK(x.is_zero());
  }
}

TEST_CASE("rank plus nullity equals column count over Q") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_integer_matrix(1 + rng() % 12, 1 + rng() % 12, rng);
    auto q = to_rational(m);
    auto k = kernel_basis(q);
    CHECK(rank(q) + k.size() == m.cols());
    CHECK(rank(q) == oracle::dense_rank(oracle::to_dense(m)));
    for (const auto& v : k)
      for (const auto& x : q.apply(v)) CHECK(x == 0);
  }
}

TEST_CASE("rank over Q matches rank mod a large prime") {
  std::mt19937_64 rng(13);
  const std::uint32_t primes[] = {1000003, 998244353, 2147483647};
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_integer_matrix(1 + rng() % 10, 1 + rng() % 10, rng, 1);
    const auto rq = rank(to_rational(m));
    bool some = false;
    for (auto p : primes) {
      const auto rp = rank(reduce_mod(m, p));
      CHECK(rp <= rq);
      some = some || rp == rq;
    }
    CHECK(some);
  }
}

TEST_CASE("Smith normal form") {
  auto id = smith_normal_form(SparseMatrix<Integer>::identity(2));
  CHECK(id.invariant_factors == std::vector<Integer>{1, 1});
  auto three = smith_normal_form(SparseMatrix<Integer>::from_triplets(1, 1, {{0, 0, Integer(3)}}));
  CHECK(three.invariant_factors == std::vector<Integer>{3});
  CHECK(three.rank == 1);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_integer_matrix(1 + rng() % 7, 1 + rng() % 7, rng, 1);
    auto s = smith_normal_form(m);
    CHECK(s.rank == rank(to_rational(m)));
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
      CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
    if (m.rows() == m.cols()) {
      Integer prod = 1;
      for (const auto& d : s.invariant_factors) prod *= d;
      if (s.rank < m.rows()) prod = 0;
      CHECK(abs(oracle::dense_determinant(oracle::to_dense(m))) == Rational(prod));
    }
  }
}

TEST_CASE("F_p arithmetic") {
  Fp a(3, 7), b(5, 7);
  CHECK((a + b).value() == 1);
  CHECK((a * b).value() == 1);
  CHECK((a / b * b) == a);
  CHECK((-a).value() == 4);
  CHECK(Fp(-1, 7).value() == 6);
  CHECK_THROWS(Fp(0, 7).inverse());
  CHECK(is_prime(2));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("dense F_p matrices agree with sparse elimination") {
  std::mt19937_64 rng(19);
  for (std::uint32_t p : {2u, 3u, 7u, 8191u}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto m = random_integer_matrix(1 + rng() % 30, 1 + rng() % 30, rng);
      auto d = DenseMatrixFp::from_sparse(m, p);
      CHECK(d.rank() == rank(reduce_mod(m, p)));
      auto k = d.kernel_basis();
      CHECK(k.cols() + d.rank() == d.cols());
      CHECK((d * k).is_zero());
      CHECK(d.transposed().rank() == d.rank());
    }
  }
  CHECK_THROWS_AS(DenseMatrixFp(2, 2, 4), InvalidArgument);
  CHECK_THROWS_AS(DenseMatrixFp(2, 2, 16411), UnsupportedDomain);
}

TEST_CASE("dense multiply, stacking and identity") {
  std::mt19937_64 rng(23);
  auto a = DenseMatrixFp::from_sparse(random_integer_matrix(6, 4, rng), 5);
  auto b = DenseMatrixFp::from_sparse(random_integer_matrix(4, 3, rng), 5);
  auto c = DenseMatrixFp::from_sparse(random_integer_matrix(3, 2, rng), 5);
  CHECK((a * b) * c == a * (b * c));
  CHECK(DenseMatrixFp::identity(6, 5) * a == a);
  CHECK((a - a).is_zero());
  CHECK((a * b).transposed() == b.transposed() * a.transposed());
  CHECK(a.hstack(a).rank() == a.rank());
  CHECK(a.vstack(a).rank() == a.rank());
  CHECK(a.scaled(5).is_zero());
}
