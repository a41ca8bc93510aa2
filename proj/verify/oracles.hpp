#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "confspace/arnold.hpp"
#include "confspace/forest.hpp"
#include "confspace/graded.hpp"
#include "confspace/linalg.hpp"

// Independent reference computations. None of these call into the rewriting or elimination
// code they are used to check.
namespace confspace::oracle {

using linalg::Integer;
using linalg::Rational;

// Unsigned Stirling numbers of the first kind c(k, m), by the recurrence.
Integer stirling1(int k, int m);
Integer factorial(int k);
// Coefficients of prod_{j=1}^{k-1} (1 + j t^{n-1}) by direct polynomial multiplication.
std::map<int, Integer> product_formula(int k, int n);

// Pairing of a forest (any shape) with a monomial in the generators a_ab, read off the
// trees: each factor a_ab is matched with the internal vertex where leaves a and b meet.
Integer planetary_pairing(const forest::Forest& f, const arnold::Monomial& m, int n);

// Image of a forest in the tensor product of tensor algebras: components sorted by minimal
// leaf with the Koszul sign, each tree expanded through [a,b] = ab - (-1)^{|a||b|} ba with
// every leaf in degree n-1. Keys are the tuples of words.
using TensorImage = std::map<std::vector<std::vector<int>>, Integer>;
TensorImage tensor_image(const forest::Forest& f, int n);
TensorImage tensor_image(const std::map<forest::Forest, Integer>& combination, int n);

// A random forest on {1..k}: random set partition, random binary tree shapes, random leaf order.
forest::Forest random_forest(int k, std::mt19937_64& rng);

// Number of tall forests on k leaves with m components: sum over set partitions of
// prod (|B|-1)!, by brute-force enumeration of partitions.
Integer tall_forest_count(int k, int components);

// Rank over Q by dense Gaussian elimination on mpq_class.
std::size_t dense_rank(std::vector<std::vector<Rational>> rows);
// Determinant by dense elimination over Q.
Rational dense_determinant(std::vector<std::vector<Rational>> rows);
std::vector<std::vector<Rational>> to_dense(const linalg::SparseMatrix<Integer>& m);

// Weight-k part of the free graded-commutative algebra on a graded space, by enumerating
// multisets of basis vectors (odd-degree vectors used at most once).
GradedDims sym_power(const GradedDims& h, int k);

}  // namespace confspace::oracle
