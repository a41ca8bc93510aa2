#include "confspace/dense_fp.hpp"

#include <algorithm>

namespace confspace::linalg {

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Reduced echelon form in place; returns pivot columns. `full` also clears above pivots.
std::vector<std::size_t> echelon(std::vector<std::int16_t>& a, std::size_t R, std::size_t C, std::uint32_t p, bool full) {
  const std::int16_t P = static_cast<std::int16_t>(p);
  const bool tabled = p <= 64;
  std::vector<std::int16_t> table;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t pr = row;
    while (pr < R && a[pr * C + c] == 0) ++pr;
    if (pr == R) continue;
    if (pr != row) std::swap_ranges(a.begin() + pr * C + c, a.begin() + pr * C + C, a.begin() + row * C + c);
    std::int16_t* piv = a.data() + row * C;
    std::uint32_t inv = inv_mod(static_cast<std::uint32_t>(piv[c]), p);
    for (std::size_t j = c; j < C; ++j) piv[j] = static_cast<std::int16_t>(std::uint32_t(piv[j]) * inv % p);
    const std::size_t len = C - c;
    if (tabled) {
      // table[f] = f * pivot-row segment, so each update is an add and a conditional subtract
      table.assign((p) * len, 0);
      for (std::uint32_t f = 1; f < p; ++f)
        for (std::size_t j = 0; j < len; ++j)
          table[f * len + j] = static_cast<std::int16_t>(f * std::uint32_t(piv[c + j]) % p);
    }
    std::size_t start = full ? 0 : row + 1;
    for (std::size_t r = start; r < R; ++r) {
      if (r == row) continue;
      std::int16_t* dst = a.data() + r * C + c;
      if (dst[0] == 0) continue;
      std::uint32_t f = p - static_cast<std::uint32_t>(dst[0]);
      if (tabled) {
        const std::int16_t* src = table.data() + f * len;
        for (std::size_t j = 0; j < len; ++j) {
          std::int16_t x = static_cast<std::int16_t>(dst[j] + src[j] - P);
          dst[j] = static_cast<std::int16_t>(x + ((x >> 15) & P));
        }
      } else {
        const std::int16_t* src = piv + c;
        for (std::size_t j = 0; j < len; ++j)
          dst[j] = static_cast<std::int16_t>((std::uint32_t(dst[j]) + f * std::uint32_t(src[j])) % p);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

DenseMatrixFp::DenseMatrixFp(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  if (!is_prime(p)) throw InvalidArgument("dense F_p matrix needs a prime modulus");
  if (p >= (1u << 14)) throw UnsupportedDomain("dense F_p matrices support primes below 16384");
}

DenseMatrixFp DenseMatrixFp::identity(std::size_t n, std::uint32_t p) {
  DenseMatrixFp m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

DenseMatrixFp DenseMatrixFp::from_sparse(const SparseMatrix<Integer>& s, std::uint32_t p) {
  DenseMatrixFp m(s.rows(), s.cols(), p);
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (const auto& [c, v] : s.row(r)) {
      Integer red = v % p;
      if (red < 0) red += p;
      m.data_[r * m.cols_ + c] = static_cast<std::int16_t>(red.get_si());
    }
  return m;
}

void DenseMatrixFp::set(std::size_t r, std::size_t c, std::int64_t v) {
  std::int64_t x = v % static_cast<std::int64_t>(p_);
  if (x < 0) x += p_;
  data_.at(r * cols_ + c) = static_cast<std::int16_t>(x);
}

DenseMatrixFp DenseMatrixFp::operator*(const DenseMatrixFp& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw InvalidArgument("dense multiply: shape or prime mismatch");
  DenseMatrixFp out(rows_, o.cols_, p_);
  const std::uint64_t pm1 = p_ - 1;
  const std::size_t flush = std::max<std::uint64_t>(1, 0xFFFFFFFFull / (pm1 * pm1 + 1) - 1);
  std::vector<std::uint32_t> acc(o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t pending = 0;
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint32_t a = static_cast<std::uint32_t>(data_[i * cols_ + k]);
      if (a == 0) continue;
      const std::int16_t* b = o.data_.data() + k * o.cols_;
      for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * static_cast<std::uint32_t>(b[j]);
      if (++pending == flush) {
        for (auto& x : acc) x %= p_;
        pending = 0;
      }
    }
    for (std::size_t j = 0; j < o.cols_; ++j) out.data_[i * o.cols_ + j] = static_cast<std::int16_t>(acc[j] % p_);
  }
  return out;
}

DenseMatrixFp DenseMatrixFp::operator+(const DenseMatrixFp& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw InvalidArgument("dense add: shape mismatch");
  DenseMatrixFp out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = static_cast<std::int16_t>((data_[i] + o.data_[i]) % p_);
  return out;
}

DenseMatrixFp DenseMatrixFp::operator-(const DenseMatrixFp& o) const { return *this + o.scaled(-1); }

DenseMatrixFp DenseMatrixFp::scaled(std::int64_t s) const {
  std::int64_t f = s % static_cast<std::int64_t>(p_);
  if (f < 0) f += p_;
  DenseMatrixFp out = *this;
  for (auto& x : out.data_) x = static_cast<std::int16_t>(std::int64_t(x) * f % p_);
  return out;
}

DenseMatrixFp DenseMatrixFp::transposed() const {
  DenseMatrixFp t(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  return t;
}

DenseMatrixFp DenseMatrixFp::hstack(const DenseMatrixFp& o) const {
  if (rows_ != o.rows_ || p_ != o.p_) throw InvalidArgument("hstack: row mismatch");
  DenseMatrixFp m(rows_, cols_ + o.cols_, p_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::copy_n(data_.begin() + r * cols_, cols_, m.data_.begin() + r * m.cols_);
    std::copy_n(o.data_.begin() + r * o.cols_, o.cols_, m.data_.begin() + r * m.cols_ + cols_);
  }
  return m;
}

DenseMatrixFp DenseMatrixFp::vstack(const DenseMatrixFp& o) const {
  if (cols_ != o.cols_ || p_ != o.p_) throw InvalidArgument("vstack: column mismatch");
  DenseMatrixFp m = *this;
  m.rows_ += o.rows_;
  m.data_.insert(m.data_.end(), o.data_.begin(), o.data_.end());
  return m;
}

bool DenseMatrixFp::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int16_t x) { return x == 0; });
}

std::size_t DenseMatrixFp::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  // eliminate along the shorter side
  if (rows_ > cols_) return transposed().rank();
  std::vector<std::int16_t> a = data_;
  return echelon(a, rows_, cols_, p_, false).size();
}

DenseMatrixFp DenseMatrixFp::kernel_basis() const {
  std::vector<std::int16_t> a = data_;
  auto pivots = echelon(a, rows_, cols_, p_, true);
  std::vector<char> is_pivot(cols_, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  DenseMatrixFp k(cols_, cols_ - pivots.size(), p_);
  std::size_t col = 0;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    k.data_[f * k.cols_ + col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      std::int16_t v = a[i * cols_ + f];
      k.data_[pivots[i] * k.cols_ + col] = static_cast<std::int16_t>(v == 0 ? 0 : p_ - v);
    }
    ++col;
  }
  return k;
}

}  // namespace confspace::linalg
