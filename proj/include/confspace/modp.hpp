#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confspace/dense_fp.hpp"
#include "confspace/graded.hpp"
#include "confspace/permutation.hpp"

// Group (co)homology of C_p and Sigma_p over F_p with coefficients in graded pieces of
// H_*(Conf_p(R^n); F_p), computed from the periodic resolution of C_p.
namespace confspace::modp {

using linalg::DenseMatrixFp;

// A finite-dimensional F_p-representation of C_p = <sigma>, sigma = (1 2 ... p), optionally
// extended to Sigma_p through the Coxeter generators t_i = (i i+1).
class GModule {
 public:
  GModule(std::string name, std::uint32_t p, DenseMatrixFp sigma, std::vector<DenseMatrixFp> taus = {});

  static GModule trivial(std::uint32_t p, bool twist = false);
  // The permutation module on {1..p}; free of rank one over F_p[C_p].
  static GModule permutation(std::uint32_t p, bool twist = false);

  const std::string& name() const { return name_; }
  std::uint32_t prime() const { return p_; }
  std::size_t dim() const { return sigma_.rows(); }
  const DenseMatrixFp& sigma() const { return sigma_; }
  bool has_symmetric_action() const { return !taus_.empty(); }
  const std::vector<DenseMatrixFp>& taus() const { return taus_; }
  // Action of an arbitrary permutation of {1..p}, as a product of Coxeter generators.
  DenseMatrixFp rho(const Permutation& g) const;
  // sigma^p = 1 and sigma = t_1 t_2 ... t_{p-1}; with coxeter = true also every Coxeter relator.
  void validate(bool coxeter = false) const;
  DenseMatrixFp norm() const;  // 1 + sigma + ... + sigma^{p-1}

 private:
  std::string name_;
  std::uint32_t p_;
  DenseMatrixFp sigma_;
  std::vector<DenseMatrixFp> taus_;
};

// Degree-t piece of H_*(Conf_p(R^n); F_p) on the tall-forest basis; twist multiplies every
// transposition by -1 (the module tensored with the sign representation).
GModule conf_module(std::uint32_t p, int n, int t, bool twist = false);

// Ranks of sigma - 1 and N, and the (co)homology dimensions they determine.
struct CyclicData {
  std::size_t dim = 0;
  std::size_t rank_sigma_minus_one = 0;
  std::size_t rank_norm = 0;
  bool composites_vanish = false;  // (sigma-1) N = N (sigma-1) = 0
};
CyclicData cyclic_data(const GModule& v);

GradedDims cyclic_cohomology(const GModule& v, int s_max);
GradedDims cyclic_homology(const GModule& v, int s_max);

struct TateDims {
  int s_min = 0;
  int s_max = 0;
  std::map<int, std::int64_t> dims;  // every s in the window, zeros included
  bool two_periodic() const;
  bool periodic(int period) const;
};
TateDims tate(const GModule& v, int s_min, int s_max);

struct VanishingEntry {
  int t;
  std::size_t dim;
  GradedDims homology;  // s = 1..2p
  bool vanishes;
  bool orbit_certificate;  // sigma permutes the partition blocks freely and maps blocks to blocks
};
struct VanishingReport {
  std::uint32_t p;
  int n;
  std::vector<VanishingEntry> entries;
  bool holds() const;
};
VanishingReport verify_vanishing(std::uint32_t p, int n);

// Per degree t, the dimension of the Sigma_p-coinvariants of the homology piece (equal to the
// invariants of the dual cohomology piece).
GradedDims invariants_sigma_p(std::uint32_t p, int n);
// Lambda(a_{n-1}) for n even, F_p for n odd.
GradedDims invariants_closed_form(int n);

PoincareSeries nakaoka_series(std::uint32_t p, int max_degree);
PoincareSeries cohen_series(std::uint32_t p, int n, int max_degree);

// Smallest primitive root modulo p.
std::uint32_t primitive_root(std::uint32_t p);

// Normalizer-invariant part of H^s(C_p; v), s = 0..s_max.
GradedDims sigma_p_cohomology_stable(const GModule& v, int s_max);
// Brute-force H^s(Sigma_3; v) from normalized bar cochains; s_max <= 4, p = 3 only.
GradedDims bar_cohomology(const GModule& v, int s_max);

// 2 |N(C_p)| / |C(C_p)| in Sigma_p, by enumerating the group.
int swan_period(std::uint32_t p);

}  // namespace confspace::modp
