#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace confspace {

using BigInt = mpz_class;

// Dimension function of a graded vector space; degrees may be negative.
class GradedDims {
 public:
  GradedDims() = default;
  GradedDims(std::initializer_list<std::pair<const int, std::int64_t>> init);

  std::int64_t operator[](int degree) const;
  void set(int degree, std::int64_t dim);
  void add(int degree, std::int64_t dim) { set(degree, (*this)[degree] + dim); }
  const std::map<int, std::int64_t>& entries() const { return dims_; }
  std::int64_t total() const;
  std::int64_t euler_characteristic() const;
  bool empty() const { return dims_.empty(); }
  std::string to_string() const;  // "{0:1, 3:1}"
  nlohmann::json to_json() const;
  friend bool operator==(const GradedDims&, const GradedDims&) = default;

 private:
  std::map<int, std::int64_t> dims_;
};

// Keys are (degree, weight).
class BigradedDims {
 public:
  BigradedDims() = default;
  std::int64_t get(int degree, int weight) const;
  void set(int degree, int weight, std::int64_t dim);
  void add(int degree, int weight, std::int64_t dim) { set(degree, weight, get(degree, weight) + dim); }
  const std::map<std::pair<int, int>, std::int64_t>& entries() const { return dims_; }
  BigradedDims direct_sum(const BigradedDims& o) const;
  friend bool operator==(const BigradedDims&, const BigradedDims&) = default;

 private:
  std::map<std::pair<int, int>, std::int64_t> dims_;
};

GradedDims tensor(const GradedDims& a, const GradedDims& b);
BigradedDims tensor(const BigradedDims& a, const BigradedDims& b);

// Formal series in t (degree, Laurent) and s (weight, nonnegative), known exactly for
// weight <= max_weight and degree <= max_degree (unbounded when max_degree is empty).
class PoincareSeries {
 public:
  PoincareSeries(std::optional<int> max_degree, int max_weight);

  static PoincareSeries one(std::optional<int> max_degree, int max_weight);
  // sum_d coeffs[d] t^d in weight 0
  static PoincareSeries univariate(const std::vector<BigInt>& coeffs, std::optional<int> max_degree);
  static PoincareSeries from_dims(const GradedDims& d, std::optional<int> max_degree);

  std::optional<int> max_degree() const { return max_degree_; }
  int max_weight() const { return max_weight_; }
  bool in_window(int degree, int weight) const;

  BigInt coeff(int degree, int weight = 0) const;
  void add_term(int degree, int weight, const BigInt& c);  // silently ignores terms outside the window
  const std::map<std::pair<int, int>, BigInt>& terms() const { return terms_; }  // keyed (weight, degree)
  std::optional<int> min_degree() const;

  PoincareSeries operator+(const PoincareSeries& o) const;
  PoincareSeries operator-(const PoincareSeries& o) const;
  PoincareSeries operator*(const PoincareSeries& o) const;
  PoincareSeries truncated(std::optional<int> max_degree, int max_weight) const;
  // coefficient of s^w as a polynomial in t
  std::map<int, BigInt> weight_piece(int weight) const;
  // t -> -1; needs every degree of every weight in the window to be known
  PoincareSeries at_t_minus_one() const;

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  std::optional<int> max_degree_;
  int max_weight_;
  std::map<std::pair<int, int>, BigInt> terms_;
};

// Sym of a bigraded space with the usual parity rule: a basis element of even degree
// contributes 1/(1 - s^w t^d), one of odd degree contributes (1 + s^w t^d).
PoincareSeries sym_series(const BigradedDims& v, std::optional<int> degree_bound, int weight_bound);

// Equality on the common window of the two series.
bool series_equal(const PoincareSeries& a, const PoincareSeries& b);

nlohmann::json bigint_json(const BigInt& x);

}  // namespace confspace
