#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "confspace/error.hpp"

namespace confspace::oracle {

Integer stirling1(int k, int m) {
  if (k < 0 || m < 0) return 0;
  std::vector<std::vector<Integer>> c(k + 1, std::vector<Integer>(k + 1, 0));
  c[0][0] = 1;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + Integer(i - 1) * c[i - 1][j];
  return m <= k ? c[k][m] : Integer(0);
}

Integer factorial(int k) {
  Integer r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::map<int, Integer> product_formula(int k, int n) {
  std::map<int, Integer> poly{{0, 1}};
  for (int j = 1; j < k; ++j) {
    std::map<int, Integer> next;
    for (const auto& [d, c] : poly) {
      next[d] += c;
      next[d + n - 1] += c * j;
    }
    poly = std::move(next);
  }
  for (auto it = poly.begin(); it != poly.end();) it = it->second == 0 ? poly.erase(it) : std::next(it);
  return poly;
}

namespace {

struct Vertex {
  std::vector<int> left_leaves, right_leaves;
};

// in-order list of internal vertices
void collect(const forest::Tree& t, std::vector<Vertex>& out) {
  if (t.is_leaf()) return;
  collect(t.left(), out);
  out.push_back({t.left().leaves(), t.right().leaves()});
  collect(t.right(), out);
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

using WordPoly = std::map<std::vector<int>, Integer>;

WordPoly tree_words(const forest::Tree& t, int n) {
  if (t.is_leaf()) return {{{t.label()}, 1}};
  const auto l = tree_words(t.left(), n), r = tree_words(t.right(), n);
  const long dl = static_cast<long>(t.left().leaf_count()) * (n - 1);
  const long dr = static_cast<long>(t.right().leaf_count()) * (n - 1);
  const int swap = (dl * dr) % 2 ? -1 : 1;
  WordPoly out;
  for (const auto& [a, ca] : l)
    for (const auto& [b, cb] : r) {
      std::vector<int> ab = a, ba = b;
      ab.insert(ab.end(), b.begin(), b.end());
      ba.insert(ba.end(), a.begin(), a.end());
      out[ab] += ca * cb;
      out[ba] -= swap * ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

Integer planetary_pairing(const forest::Forest& f, const arnold::Monomial& m, int n) {
  std::vector<Vertex> vertices;
  for (const auto& t : f) collect(t, vertices);
  if (vertices.size() != m.size()) return 0;
  std::vector<int> target;
  int sign = 1;
  for (const auto& g : m) {
    int found = -1;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      const auto& vx = vertices[v];
      if (contains(vx.left_leaves, g.a) && contains(vx.right_leaves, g.b)) {
        found = static_cast<int>(v);
      } else if (contains(vx.right_leaves, g.a) && contains(vx.left_leaves, g.b)) {
        found = static_cast<int>(v);
        if (n % 2) sign = -sign;
      }
    }
    if (found < 0) return 0;
    target.push_back(found);
  }
  std::vector<int> sorted = target;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
  long inversions = 0;
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = i + 1; j < target.size(); ++j)
      if (target[i] > target[j]) ++inversions;
  // each factor has degree n-1
  if ((inversions * (n - 1)) % 2) sign = -sign;
  return sign;
}

TensorImage tensor_image(const forest::Forest& f, int n) {
  forest::Forest comps = f;
  int sign = 1;
  for (std::size_t i = 1; i < comps.size(); ++i)
    for (std::size_t j = i; j > 0 && comps[j - 1].min_leaf() > comps[j].min_leaf(); --j) {
      const long da = static_cast<long>(comps[j - 1].leaf_count() - 1) * (n - 1);
      const long db = static_cast<long>(comps[j].leaf_count() - 1) * (n - 1);
      if ((da * db) % 2) sign = -sign;
      std::swap(comps[j - 1], comps[j]);
    }
  TensorImage out{{{}, sign}};
  for (const auto& t : comps) {
    const auto words = tree_words(t, n);
    TensorImage next;
    for (const auto& [tuple, c] : out)
      for (const auto& [w, cw] : words) {
        auto key = tuple;
        key.push_back(w);
        next[key] += c * cw;
      }
    out = std::move(next);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

TensorImage tensor_image(const std::map<forest::Forest, Integer>& combination, int n) {
  TensorImage out;
  for (const auto& [f, c] : combination)
    for (const auto& [key, v] : tensor_image(f, n)) out[key] += c * v;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

forest::Forest random_forest(int k, std::mt19937_64& rng) {
  std::vector<std::vector<int>> blocks(k);
  for (int i = 1; i <= k; ++i) blocks[std::uniform_int_distribution<int>(0, k - 1)(rng)].push_back(i);
  forest::Forest out;
  for (auto& b : blocks) {
    if (b.empty()) continue;
    std::shuffle(b.begin(), b.end(), rng);
    std::vector<forest::Tree> pool;
    for (int x : b) pool.push_back(forest::Tree::leaf(x));
    while (pool.size() > 1) {
      std::size_t i = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
      std::size_t j = std::uniform_int_distribution<std::size_t>(0, pool.size() - 2)(rng);
      if (j >= i) ++j;
      auto t = forest::Tree::bracket(pool[i], pool[j]);
      pool.erase(pool.begin() + std::max(i, j));
      pool.erase(pool.begin() + std::min(i, j));
      pool.push_back(t);
    }
    out.push_back(pool.front());
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

Integer tall_forest_count(int k, int components) {
  // restricted growth strings enumerate set partitions
  Integer total = 0;
  std::vector<int> block(k, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == k) {
      if (used != components) return;
      std::vector<int> sizes(used, 0);
      for (int b : block) ++sizes[b];
      Integer prod = 1;
      for (int s : sizes) prod *= factorial(s - 1);
      total += prod;
      return;
    }
    for (int b = 0; b <= used && b < components; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (k == 0) return components == 0 ? 1 : 0;
  rec(0, 0);
  return total;
}

std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

Rational dense_determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c].size() != n) throw InvalidArgument("determinant of a non-square matrix");
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

std::vector<std::vector<Rational>> to_dense(const linalg::SparseMatrix<Integer>& m) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = Rational(m.get(r, c));
  return out;
}

GradedDims sym_power(const GradedDims& h, int k) {
  std::vector<int> degrees;
  for (const auto& [d, m] : h.entries())
    for (std::int64_t i = 0; i < m; ++i) degrees.push_back(d);
  GradedDims out;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int left, int deg) {
    if (left == 0) {
      out.add(deg, 1);
      return;
    }
    if (i == degrees.size()) return;
    const int cap = degrees[i] % 2 ? std::min(left, 1) : left;
    for (int c = 0; c <= cap; ++c) rec(i + 1, left - c, deg + c * degrees[i]);
  };
  rec(0, k, 0);
  return out;
}

}  // namespace confspace::oracle
