#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "confspace/error.hpp"

namespace confspace::linalg {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(std::uint64_t n);

// Residue class modulo a runtime prime. A default-constructed value is the zero of an
// unspecified field and adopts the prime of whatever it is combined with.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint32_t prime);

  std::uint32_t value() const { return value_; }
  std::uint32_t prime() const { return prime_; }
  bool is_zero() const { return value_ == 0; }
  Fp inverse() const;

  Fp operator-() const;
  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.value_ == b.value_; }

 private:
  std::uint32_t common_prime(const Fp& o) const;
  std::uint32_t value_ = 0;
  std::uint32_t prime_ = 0;
};

inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Fp& x) { return x.is_zero(); }

inline Integer one_like(const Integer&) { return 1; }
inline Rational one_like(const Rational&) { return 1; }
inline Fp one_like(const Fp& z) { return Fp(1, z.prime()); }

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
std::string to_string(const Fp& x);

template <class Scalar>
struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

// Row-major sparse matrix. Rows keep their entries sorted by column and never store zeros.
// `zero` carries the coefficient domain (the prime, for F_p) even when nothing is stored.
template <class Scalar>
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, Scalar>;
  using Row = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, Scalar zero = Scalar())
      : rows_(rows), cols_(cols), zero_(zero), data_(rows) {}

  // Duplicate positions are summed.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet<Scalar>> entries, Scalar zero = Scalar()) {
    SparseMatrix m(rows, cols, zero);
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t i = 0; i < entries.size();) {
      auto& e = entries[i];
      if (e.row >= rows || e.col >= cols) throw InvalidArgument("matrix entry out of range");
      Scalar acc = e.value;
      std::size_t j = i + 1;
      while (j < entries.size() && entries[j].row == e.row && entries[j].col == e.col) acc += entries[j++].value;
      if (!is_zero(acc)) m.data_[e.row].emplace_back(e.col, acc);
      i = j;
    }
    return m;
  }

  static SparseMatrix identity(std::size_t n, Scalar zero = Scalar()) {
    SparseMatrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, one_like(zero));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& zero() const { return zero_; }
  const Row& row(std::size_t r) const { return data_.at(r); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }
  bool is_zero_matrix() const { return nonzeros() == 0; }

  Scalar get(std::size_t r, std::size_t c) const {
    const Row& row = data_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? it->second : zero_;
  }

  void set(std::size_t r, std::size_t c, const Scalar& v) {
    if (r >= rows_ || c >= cols_) throw InvalidArgument("matrix index out of range");
    Row& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.first < col; });
    bool present = it != row.end() && it->first == c;
    if (is_zero(v)) {
      if (present) row.erase(it);
    } else if (present) {
      it->second = v;
    } else {
      row.insert(it, Entry(c, v));
    }
  }

  void add(std::size_t r, std::size_t c, const Scalar& v) { set(r, c, get(r, c) + v); }

  SparseMatrix transposed() const {
    SparseMatrix t(cols_, rows_, zero_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw InvalidArgument("vector length does not match column count");
    std::vector<Scalar> out(rows_, zero_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, x] : data_[r]) out[r] += x * v[c];
    return out;
  }

  // Stack other's rows below this matrix.
  SparseMatrix vstack(const SparseMatrix& other) const {
    if (other.cols_ != cols_) throw InvalidArgument("vstack: column mismatch");
    SparseMatrix m = *this;
    m.rows_ += other.rows_;
    m.data_.insert(m.data_.end(), other.data_.begin(), other.data_.end());
    return m;
  }

  SparseMatrix hstack(const SparseMatrix& other) const {
    if (other.rows_ != rows_) throw InvalidArgument("hstack: row mismatch");
    SparseMatrix m = *this;
    m.cols_ += other.cols_;
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : other.data_[r]) m.data_[r].emplace_back(c + cols_, v);
    return m;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Scalar zero_{};
  std::vector<Row> data_;
};

template <class Scalar>
SparseMatrix<Scalar> multiply(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("multiply: inner dimensions differ");
  std::vector<Triplet<Scalar>> out;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& [k, x] : a.row(r))
      for (const auto& [c, y] : b.row(k)) out.push_back({r, c, x * y});
  return SparseMatrix<Scalar>::from_triplets(a.rows(), b.cols(), std::move(out), a.zero());
}

template <class Scalar>
SparseMatrix<Scalar> subtract(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("subtract: shape mismatch");
  std::vector<Triplet<Scalar>> out;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (const auto& [c, x] : a.row(r)) out.push_back({r, c, x});
    for (const auto& [c, y] : b.row(r)) out.push_back({r, c, -y});
  }
  return SparseMatrix<Scalar>::from_triplets(a.rows(), a.cols(), std::move(out), a.zero());
}

SparseMatrix<Rational> to_rational(const SparseMatrix<Integer>& m);
SparseMatrix<Fp> reduce_mod(const SparseMatrix<Integer>& m, std::uint32_t p);

std::size_t rank(const SparseMatrix<Rational>& m);
std::size_t rank(const SparseMatrix<Fp>& m);
std::size_t rank(const SparseMatrix<Integer>& m);  // always throws UnsupportedDomain

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix<Rational>& m);
std::vector<std::vector<Fp>> kernel_basis(const SparseMatrix<Fp>& m);
std::vector<std::vector<Integer>> kernel_basis(const SparseMatrix<Integer>& m);  // throws

struct SmithForm {
  std::vector<Integer> invariant_factors;  // nonzero diagonal entries, each dividing the next
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const SparseMatrix<Integer>& m);
SmithForm smith_normal_form(const SparseMatrix<Rational>& m);  // throws
SmithForm smith_normal_form(const SparseMatrix<Fp>& m);        // throws

}  // namespace confspace::linalg
