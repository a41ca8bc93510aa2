#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confspace/arnold.hpp"
#include "confspace/graded.hpp"
#include "confspace/linalg.hpp"
#include "confspace/permutation.hpp"

// Homology of Conf_k(R^n) in the forest model: binary trees are iterated brackets of
// degree n-1, forests are products of trees, and tall forests form a basis.
namespace confspace::forest {

using linalg::Integer;

class Tree {
 public:
  static Tree leaf(int label);
  static Tree bracket(const Tree& left, const Tree& right);
  // "((12)3)"; labels above 9 are written in braces, e.g. "(1{10})"
  static Tree parse(const std::string& text);

  bool is_leaf() const { return code_.size() == 1; }
  int label() const;
  Tree left() const;
  Tree right() const;
  std::vector<int> leaves() const;  // left to right
  int leaf_count() const;
  int min_leaf() const;
  // left-combed with the minimal leaf first
  bool is_tall() const;
  bool is_left_normed() const;
  Tree relabeled(const Permutation& perm) const;
  std::string to_string() const;
  const std::vector<int>& code() const { return code_; }  // preorder, 0 marks an internal vertex

  friend auto operator<=>(const Tree&, const Tree&) = default;

 private:
  std::vector<int> code_;
};

// Left comb (...((i1 i2) i3) ...) on the given leaf order.
Tree comb(const std::vector<int>& leaves);

using Forest = std::vector<Tree>;

std::string forest_to_string(const Forest& f);
Forest parse_forest(const std::string& text);  // components separated by commas
// Throws unless the leaf labels are exactly {1..k}.
void check_forest(const Forest& f, int k);
bool is_tall(const Forest& f);
// Leaf sets of the components, each sorted, listed in order of minimal leaf.
std::vector<std::vector<int>> forest_partition(const Forest& f);
int forest_degree(const Forest& f, int n);

struct Context {
  int k;
  int n;
  friend bool operator==(const Context&, const Context&) = default;
};

class HomologyClass {
 public:
  using Terms = std::map<Forest, Integer>;
  explicit HomologyClass(Context ctx) : ctx_(ctx) {}

  const Context& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Forest& f) const;
  void add_term(const Forest& f, const Integer& c);  // f must be tall

  HomologyClass& operator+=(const HomologyClass& o);
  HomologyClass operator+(const HomologyClass& o) const;
  HomologyClass operator-(const HomologyClass& o) const;
  HomologyClass scaled(const Integer& c) const;
  friend bool operator==(const HomologyClass& x, const HomologyClass& y) {
    return x.ctx_ == y.ctx_ && x.terms_ == y.terms_;
  }
  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  Context ctx_;
  Terms terms_;
};

// Expands trees and forests in the tall basis. Keeps memo tables, so reuse one instance
// for batches (not thread-safe; use one per thread).
class TallRewriter {
 public:
  explicit TallRewriter(int n);
  const std::vector<std::pair<Tree, std::int64_t>>& expand(const Tree& t);
  std::map<Forest, Integer> expand(const Forest& f);
  int n() const { return n_; }

 private:
  using Comb = std::vector<std::pair<Tree, std::int64_t>>;
  const Comb& left_normed(const Tree& t);
  const Comb& bracket_ln(const Tree& x, const Tree& y);
  Comb make_tall(const Tree& t);
  int sign(int leaves_x, int leaves_y) const;  // (-1)^{||x|| ||y||}

  int n_;
  std::map<std::vector<int>, Comb> tall_cache_, ln_cache_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Comb> br_cache_;
};

HomologyClass rewrite_to_tall(const Forest& f, int n);

std::vector<Forest> tall_basis(int k, int n, int degree);

// The cohomology class dual to a tall forest: for each comb (...((i1 i2) i3)...) the
// product a_{i1 i2} a_{i2 i3} ..., components in order.
arnold::Monomial path_monomial(const Forest& f);

// Rows: tall_basis(k, n, degree); columns: arnold::admissible_basis(k, n, degree).
linalg::SparseMatrix<Integer> pairing_matrix(int k, int n, int degree);

HomologyClass sigma_act(const Permutation& perm, const HomologyClass& x);
// Column j is the image of basis vector j of tall_basis(k, n, degree).
linalg::SparseMatrix<Integer> action_matrix(const Permutation& perm, int k, int n, int degree);

// characteristic 0 means Q; otherwise a prime > k
GradedDims coinvariants_dims(int k, int n, std::uint32_t characteristic);
GradedDims unordered_betti_rational(int k, int n);

}  // namespace confspace::forest
