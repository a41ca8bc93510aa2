#include "confspace/linalg.hpp"

#include <set>

namespace confspace::linalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Fp::Fp(std::int64_t value, std::uint32_t prime) : prime_(prime) {
  if (prime < 2) throw InvalidArgument("F_p needs a prime modulus");
  std::int64_t r = value % static_cast<std::int64_t>(prime);
  if (r < 0) r += prime;
  value_ = static_cast<std::uint32_t>(r);
}

std::uint32_t Fp::common_prime(const Fp& o) const {
  if (prime_ == 0) return o.prime_;
  if (o.prime_ != 0 && o.prime_ != prime_) throw InvalidArgument("mixing residues of different primes");
  return prime_;
}

Fp Fp::operator-() const {
  Fp r = *this;
  if (value_ != 0) r.value_ = prime_ - value_;
  return r;
}

Fp& Fp::operator+=(const Fp& o) {
  prime_ = common_prime(o);
  if (prime_ == 0) return *this;
  std::uint64_t s = std::uint64_t(value_) + o.value_;
  value_ = static_cast<std::uint32_t>(s % prime_);
  return *this;
}

Fp& Fp::operator-=(const Fp& o) { return *this += -o; }

Fp& Fp::operator*=(const Fp& o) {
  prime_ = common_prime(o);
  if (prime_ == 0) return *this;
  value_ = static_cast<std::uint32_t>(std::uint64_t(value_) * o.value_ % prime_);
  return *this;
}

Fp Fp::inverse() const {
  if (value_ == 0) throw InvalidArgument("division by zero in F_p");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = value_, e = prime_ - 2;
  while (e) {
    if (e & 1) result = result * base % prime_;
    base = base * base % prime_;
    e >>= 1;
  }
  Fp r;
  r.value_ = static_cast<std::uint32_t>(result);
  r.prime_ = prime_;
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const Fp& x) { return std::to_string(x.value()); }

SparseMatrix<Rational> to_rational(const SparseMatrix<Integer>& m) {
  std::vector<Triplet<Rational>> t;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) t.push_back({r, c, Rational(v)});
  return SparseMatrix<Rational>::from_triplets(m.rows(), m.cols(), std::move(t));
}

SparseMatrix<Fp> reduce_mod(const SparseMatrix<Integer>& m, std::uint32_t p) {
  if (!is_prime(p)) throw InvalidArgument("reduce_mod: modulus is not prime");
  std::vector<Triplet<Fp>> t;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) {
      Integer red = v % p;
      if (red < 0) red += p;
      t.push_back({r, c, Fp(red.get_si(), p)});
    }
  return SparseMatrix<Fp>::from_triplets(m.rows(), m.cols(), std::move(t), Fp(0, p));
}

namespace {

// Sparse elimination with a Markowitz-style pivot rule: take the shortest active row
// (lowest index on ties), and within it the column touching the fewest rows (lowest
// column on ties). Ops supplies the field-specific row update.
template <class V, class Ops>
std::size_t markowitz_rank(std::vector<std::vector<std::pair<std::uint32_t, V>>> rows, std::size_t ncols, Ops ops) {
  using Row = std::vector<std::pair<std::uint32_t, V>>;
  std::vector<std::vector<std::uint32_t>> col_rows(ncols);
  std::set<std::pair<std::size_t, std::size_t>> active;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    active.insert({rows[r].size(), r});
    for (const auto& e : rows[r]) col_rows[e.first].push_back(static_cast<std::uint32_t>(r));
  }
  auto has_col = [&](const Row& row, std::uint32_t c) -> const V* {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t x) { return e.first < x; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  };

  std::size_t rank = 0;
  std::vector<char> retired(rows.size(), 0);
  while (!active.empty()) {
    auto [len, pr] = *active.begin();
    active.erase(active.begin());
    retired[pr] = 1;
    const Row& prow = rows[pr];
    std::uint32_t pc = prow.front().first;
    std::size_t best = col_rows[pc].size();
    for (const auto& e : prow) {
      if (col_rows[e.first].size() < best) {
        best = col_rows[e.first].size();
        pc = e.first;
      }
    }
    ++rank;
    std::vector<std::uint32_t> targets;
    targets.swap(col_rows[pc]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::uint32_t r : targets) {
      if (retired[r]) continue;
      Row& row = rows[r];
      if (!has_col(row, pc)) continue;
      active.erase({row.size(), r});
      std::vector<std::uint32_t> added;
      ops.eliminate(row, prow, pc, added);
      for (std::uint32_t c : added) col_rows[c].push_back(r);
      if (row.empty())
        retired[r] = 1;
      else
        active.insert({row.size(), r});
    }
    rows[pr].clear();
    rows[pr].shrink_to_fit();
  }
  return rank;
}

struct FpOps {
  std::uint64_t p;
  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  }
  using Row = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
  void eliminate(Row& row, const Row& piv, std::uint32_t col, std::vector<std::uint32_t>& added) const {
    std::uint64_t a = 0, b = 0;
    for (auto& e : row)
      if (e.first == col) a = e.second;
    for (auto& e : piv)
      if (e.first == col) b = e.second;
    std::uint64_t f = (p - a * inv(b) % p) % p;  // row += f * piv
    Row out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
      if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || piv[j].first < row[i].first) {
        std::uint64_t v = f * piv[j].second % p;
        if (v) {
          out.emplace_back(piv[j].first, v);
          added.push_back(piv[j].first);
        }
        ++j;
      } else {
        std::uint64_t v = (row[i].second + f * piv[j].second) % p;
        if (v) out.emplace_back(row[i].first, v);
        ++i;
        ++j;
      }
    }
    row.swap(out);
  }
};

// Fraction-free update: row <- b*row - a*piv, then divide out the content of the row.
struct IntegerOps {
  using Row = std::vector<std::pair<std::uint32_t, Integer>>;
  void eliminate(Row& row, const Row& piv, std::uint32_t col, std::vector<std::uint32_t>& added) const {
    Integer a, b;
    for (auto& e : row)
      if (e.first == col) a = e.second;
    for (auto& e : piv)
      if (e.first == col) b = e.second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer fa = a / g, fb = b / g;
    Row out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 0, j = 0;
    Integer content = 0;
    while (i < row.size() || j < piv.size()) {
      if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.emplace_back(row[i].first, fb * row[i].second);
        ++i;
      } else if (i == row.size() || piv[j].first < row[i].first) {
        out.emplace_back(piv[j].first, -fa * piv[j].second);
        added.push_back(piv[j].first);
        ++j;
      } else {
        Integer v = fb * row[i].second - fa * piv[j].second;
        if (sgn(v) != 0) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    for (const auto& e : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.second.get_mpz_t());
    if (content > 1)
      for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), content.get_mpz_t());
    row.swap(out);
  }
};

// Dense Gauss-Jordan over a field, used for kernels.
template <class F>
std::vector<std::vector<F>> dense_kernel(const SparseMatrix<F>& m) {
  const std::size_t R = m.rows(), C = m.cols();
  const F zero = m.zero();
  const F one = one_like(zero);
  std::vector<std::vector<F>> a(R, std::vector<F>(C, zero));
  for (std::size_t r = 0; r < R; ++r)
    for (const auto& [c, v] : m.row(r)) a[r][c] = v;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t p = row;
    while (p < R && is_zero(a[p][c])) ++p;
    if (p == R) continue;
    std::swap(a[p], a[row]);
    F inv = one / a[row][c];
    for (std::size_t j = c; j < C; ++j) a[row][j] *= inv;
    for (std::size_t r = 0; r < R; ++r) {
      if (r == row || is_zero(a[r][c])) continue;
      F f = a[r][c];
      for (std::size_t j = c; j < C; ++j)
        if (!is_zero(a[row][j])) a[r][j] -= f * a[row][j];
    }
    pivot_cols.push_back(c);
    ++row;
  }
  std::vector<char> is_pivot(C, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(C, zero);
    v[free] = one;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::size_t rank(const SparseMatrix<Fp>& m) {
  std::uint32_t p = m.zero().prime();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) {
      if (p == 0) p = v.prime();
      rows[r].emplace_back(static_cast<std::uint32_t>(c), v.value());
    }
  if (p == 0) return 0;  // no prime known means no nonzero entries
  return markowitz_rank(std::move(rows), m.cols(), FpOps{p});
}

std::size_t rank(const SparseMatrix<Rational>& m) {
  std::vector<std::vector<std::pair<std::uint32_t, Integer>>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (const auto& [c, v] : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (const auto& [c, v] : m.row(r)) rows[r].emplace_back(static_cast<std::uint32_t>(c), Integer(v.get_num() * (l / v.get_den())));
  }
  return markowitz_rank(std::move(rows), m.cols(), IntegerOps{});
}

std::size_t rank(const SparseMatrix<Integer>&) {
  throw UnsupportedDomain("rank over the integers is not a field rank; use smith_normal_form");
}

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix<Rational>& m) { return dense_kernel(m); }

std::vector<std::vector<Fp>> kernel_basis(const SparseMatrix<Fp>& m) {
  if (m.zero().prime() == 0) throw InvalidArgument("kernel_basis over F_p needs the matrix prime");
  return dense_kernel(m);
}

std::vector<std::vector<Integer>> kernel_basis(const SparseMatrix<Integer>&) {
  throw UnsupportedDomain("kernel_basis needs field coefficients");
}

SmithForm smith_normal_form(const SparseMatrix<Integer>& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<Integer>> a(R, std::vector<Integer>(C, 0));
  for (std::size_t r = 0; r < R; ++r)
    for (const auto& [c, v] : m.row(r)) a[r][c] = v;

  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
  };

  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    // Move the entry of least absolute value in the trailing block to (t, t).
    auto place_min = [&]() -> bool {
      std::size_t bi = R, bj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (sgn(a[i][j]) != 0 && (bi == R || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == R) return false;
      std::swap(a[t], a[bi]);
      swap_cols(t, bj);
      return true;
    };
    if (!place_min()) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < C; ++j) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < R; ++i) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (!clean) {
        // a remainder is smaller than the pivot; bring the smallest entry of row/col t to the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < R; ++i)
          if (sgn(a[i][t]) != 0 && abs(a[i][t]) < abs(a[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t + 1; j < C; ++j)
          if (sgn(a[t][j]) != 0 && abs(a[t][j]) < abs(a[bi][bj])) bi = t, bj = j;
        std::swap(a[t], a[bi]);
        swap_cols(t, bj);
        continue;
      }
      // divisibility: if some trailing entry is not a multiple of the pivot, fold its row in
      bool divisible = true;
      for (std::size_t i = t + 1; i < R && divisible; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            for (std::size_t jj = t; jj < C; ++jj) a[t][jj] += a[i][jj];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
  }
  SmithForm out;
  for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(abs(a[i][i]));
  out.rank = out.invariant_factors.size();
  return out;
}

SmithForm smith_normal_form(const SparseMatrix<Rational>&) {
  throw UnsupportedDomain("smith_normal_form needs integer coefficients");
}

SmithForm smith_normal_form(const SparseMatrix<Fp>&) {
  throw UnsupportedDomain("smith_normal_form needs integer coefficients");
}

}  // namespace confspace::linalg
