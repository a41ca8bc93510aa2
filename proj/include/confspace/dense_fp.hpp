#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "confspace/linalg.hpp"

namespace confspace::linalg {

// Dense matrix over F_p for small primes (p < 2^14), stored row-major as 16-bit residues
// so that row updates vectorize. Used for the mod-p group-cohomology pieces.
class DenseMatrixFp {
 public:
  DenseMatrixFp() = default;
  DenseMatrixFp(std::size_t rows, std::size_t cols, std::uint32_t p);

  static DenseMatrixFp identity(std::size_t n, std::uint32_t p);
  static DenseMatrixFp from_sparse(const SparseMatrix<Integer>& m, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return p_; }

  std::uint32_t at(std::size_t r, std::size_t c) const { return static_cast<std::uint32_t>(data_[r * cols_ + c]); }
  void set(std::size_t r, std::size_t c, std::int64_t v);

  DenseMatrixFp operator*(const DenseMatrixFp& o) const;
  DenseMatrixFp operator+(const DenseMatrixFp& o) const;
  DenseMatrixFp operator-(const DenseMatrixFp& o) const;
  DenseMatrixFp scaled(std::int64_t s) const;
  DenseMatrixFp transposed() const;
  DenseMatrixFp hstack(const DenseMatrixFp& o) const;
  DenseMatrixFp vstack(const DenseMatrixFp& o) const;
  bool is_zero() const;
  friend bool operator==(const DenseMatrixFp& a, const DenseMatrixFp& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.data_ == b.data_;
  }

  std::size_t rank() const;
  // Columns of the result span the right null space.
  DenseMatrixFp kernel_basis() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::int16_t> data_;
};

}  // namespace confspace::linalg
