#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confspace/graded.hpp"
#include "confspace/linalg.hpp"

// Rational homology of unordered configuration spaces B_k(M) of an orientable manifold M,
// as the weight-k part of the Chevalley-Eilenberg homology of the bigraded Lie algebra
// H_c^{-*}(M) (x) L(v), |v| = n-1.
namespace confspace::ce {

using linalg::Integer;

struct AlgebraBasis {
  std::string name;
  int degree;  // cohomological degree in [0, n]
};

struct ProductTerm {
  int basis;
  std::int64_t coeff;
  friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

// Compactly supported cohomology of M with its cup product, given on a basis.
class CAlgebra {
 public:
  // Validates degrees, graded commutativity and associativity; throws ValidationError.
  static CAlgebra from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  const std::string& name() const { return name_; }
  int ambient_dim() const { return n_; }
  const std::vector<AlgebraBasis>& basis() const { return basis_; }
  int index_of(const std::string& name) const;
  // Product of basis elements i and j as a sparse vector; empty means zero.
  const std::vector<ProductTerm>& product(int i, int j) const;
  // H_i(M) = H_c^{n-i}(M)
  GradedDims manifold_homology() const;

 private:
  void validate() const;
  std::vector<ProductTerm> multiply(const std::vector<ProductTerm>& x, int j) const;
  std::vector<ProductTerm> multiply(int i, const std::vector<ProductTerm>& y) const;

  std::string name_;
  int n_ = 0;
  std::vector<AlgebraBasis> basis_;
  std::map<std::pair<int, int>, std::vector<ProductTerm>> products_;
};

CAlgebra load_algebra(const nlohmann::json& doc);
CAlgebra load_algebra_file(const std::string& path);

struct Slot {
  std::string name;  // algebra basis name, with "~" appended for [v,v] slots
  int algebra_index;
  int weight;  // 1 for a (x) v, 2 for a (x) [v,v]
  int degree;  // homological degree in the Lie algebra
  int shifted() const { return degree + 1; }
  bool exterior() const { return (shifted() % 2) != 0; }
};

class GMLie {
 public:
  // negate_weight_two flips the sign of every [v,v] slot (a change of basis)
  static GMLie build(const CAlgebra& a, bool negate_weight_two = false);

  int ambient_dim() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<Slot>& slots() const { return slots_; }
  int slot_of(const std::string& name) const;
  // Bracket of two basis slots as a sparse vector of (slot, coefficient).
  const std::vector<std::pair<int, Integer>>& bracket(int i, int j) const;
  // The weight-1 slot carrying the top class of H_c (dual to a point), or -1.
  int point_slot() const { return point_slot_; }
  // Dimensions of g[1] keyed (shifted degree, weight).
  BigradedDims shifted_dims() const;

 private:
  void check_identities() const;
  std::vector<std::pair<int, Integer>> bracket_vec(const std::vector<std::pair<int, Integer>>& x,
                                                   const std::vector<std::pair<int, Integer>>& y) const;

  std::string name_;
  int n_ = 0;
  int point_slot_ = -1;
  std::vector<Slot> slots_;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Integer>>> brackets_;
};

using Exponents = std::vector<int>;

struct CEComplexBlock {
  int weight = 0;
  std::map<int, std::vector<Exponents>> basis;  // by homological degree
  // differential[i] : C_i -> C_{i-1}; column j is the image of basis[i][j]
  std::map<int, linalg::SparseMatrix<Integer>> differential;

  std::size_t dim(int degree) const;
  std::size_t index_of(int degree, const Exponents& e) const;  // throws if absent
  const linalg::SparseMatrix<Integer>& d(int degree) const;    // zero matrix when absent
  std::string monomial_name(const GMLie& g, const Exponents& e) const;

 private:
  mutable std::map<int, std::map<Exponents, std::size_t>> index_;
  mutable std::map<int, linalg::SparseMatrix<Integer>> zero_cache_;
};

// Builds the weight-k block and checks d^2 = 0 (InternalError otherwise).
CEComplexBlock ce_block(const GMLie& g, int k);
GradedDims homology_dims(const CEComplexBlock& block);
GradedDims betti(const GMLie& g, int k);

struct BettiTable {
  std::map<int, GradedDims> by_weight;
  std::string to_csv() const;  // k,i,dim
  nlohmann::json to_json() const;
};
// Weights 0..kmax; blocks are independent jobs run on up to `workers` threads.
BettiTable betti_table(const GMLie& g, int kmax, int workers = 1);

struct StabilizationMap {
  int source_weight;  // k+1; the target has weight k
  int slot;
  std::map<int, linalg::SparseMatrix<Integer>> maps;  // per degree, C_i(k+1) -> C_i(k)
  bool chain_map = false;
  bool surjective = false;
  bool kernel_is_x_free = false;  // kernel spanned exactly by monomials without the slot
};

// The formal derivative by `slot` from weight k+1 to weight k.
StabilizationMap stabilization_map(const GMLie& g, int slot, int k);

struct StabilityEntry {
  int k;  // map H_i(weight k+1) -> H_i(weight k)
  int i;
  std::int64_t source_dim;
  std::int64_t target_dim;
  std::int64_t induced_rank;
  bool iso;
};

struct StabilityReport {
  std::vector<StabilityEntry> entries;
  bool chain_maps_ok = true;  // chain map, surjectivity and kernel description for every k
  // true when every entry with i <= k is an isomorphism
  bool stable_range_holds() const;
};

// k = 0 .. kmax-1; needs n > 2 (HypothesisViolation otherwise).
StabilityReport stability_report(const GMLie& g, int kmax);

struct EulerComparison {
  PoincareSeries by_chains;  // sum_k chi(C(weight k)) s^k
  PoincareSeries by_sym;     // sym_series of g[1] at t = -1
  bool agree;
};
EulerComparison euler_series(const GMLie& g, int kmax);

// Weight-k part of Sym(h), h placed in weight 1.
GradedDims sym_homology_odd(const GradedDims& h, int k);

// H_*(Omega^loops S^sphere; Q) through degree max_degree; sphere must be odd.
GradedDims loopspace_homology(int loops, int sphere, int max_degree);

struct LabeledCheck {
  PoincareSeries lhs;  // sum_k P(H_*(B_k M)) s^k t^{rk}
  PoincareSeries rhs;  // prod_i P(H_*(Omega^{n-i} S^{n+r}))^{dim H_i(M)}
  bool equal;
};
// Needs n odd and r even, r > 1; compares on degrees <= max_degree.
LabeledCheck labeled_series_check(const CAlgebra& m, int r, int max_degree);

}  // namespace confspace::ce
