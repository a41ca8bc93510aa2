#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confspace/graded.hpp"
#include "confspace/linalg.hpp"
#include "confspace/permutation.hpp"

// Integral cohomology ring of the ordered configuration space Conf_k(R^n): generators
// a_ij of degree n-1, admissible monomial basis, normal forms, products, Σ_k action.
namespace confspace::arnold {

using linalg::Integer;

struct GeneratorPair {
  int a;
  int b;
  friend auto operator<=>(const GeneratorPair&, const GeneratorPair&) = default;
};

using Monomial = std::vector<GeneratorPair>;

// Lexicographic on the flattened (b, a) sequence.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

bool is_admissible(const Monomial& m);

struct Context {
  int k;
  int n;
  friend bool operator==(const Context&, const Context&) = default;
};

class CohomologyClass {
 public:
  using Terms = std::map<Monomial, Integer, MonomialOrder>;

  explicit CohomologyClass(Context ctx) : ctx_(ctx) {}
  static CohomologyClass one(Context ctx);
  static CohomologyClass generator(Context ctx, int a, int b);  // already in normal form

  const Context& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Monomial& m) const;

  // Adds c times an admissible monomial; throws if m is not admissible.
  void add_term(const Monomial& m, const Integer& c);

  CohomologyClass& operator+=(const CohomologyClass& o);
  CohomologyClass operator+(const CohomologyClass& o) const;
  CohomologyClass operator-(const CohomologyClass& o) const;
  CohomologyClass scaled(const Integer& c) const;
  friend bool operator==(const CohomologyClass& x, const CohomologyClass& y) {
    return x.ctx_ == y.ctx_ && x.terms_ == y.terms_;
  }

  std::string to_string() const;  // "a12*a23 - a12*a13"
  nlohmann::json to_json() const;  // {"a12*a23": 1, ...}

  // Coefficients reduced modulo a prime, keyed by monomial.
  std::map<Monomial, linalg::Fp, MonomialOrder> reduce_mod(std::uint32_t p) const;

 private:
  Context ctx_;
  Terms terms_;
};

std::string monomial_to_string(const Monomial& m);
Monomial parse_monomial(const std::string& text);  // "a12*a23", "1" for the empty product

std::vector<Monomial> admissible_basis(int k, int n, int degree);

enum class Strategy {
  Canonical,  // rewrite the last two factors of the cluster with the largest repeated index
  Random,     // rewrite a randomly chosen adjacent pair inside a random repeated cluster
};

CohomologyClass normal_form(const Monomial& word, int k, int n, Strategy strategy = Strategy::Canonical,
                            std::uint64_t seed = 0);
CohomologyClass normal_form(const std::vector<std::pair<Monomial, Integer>>& combination, int k, int n,
                            Strategy strategy = Strategy::Canonical, std::uint64_t seed = 0);

CohomologyClass multiply(const CohomologyClass& x, const CohomologyClass& y);
CohomologyClass sigma_act(const Permutation& perm, const CohomologyClass& x);

// Product formula prod_{j=1}^{k-1} (1 + j t^{n-1}).
PoincareSeries poincare_polynomial(int k, int n);
// Count of admissible monomials per degree.
PoincareSeries poincare_by_census(int k, int n);

}  // namespace confspace::arnold
