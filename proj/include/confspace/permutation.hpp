#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "confspace/error.hpp"

namespace confspace {

// A permutation of {1..k}: perm[i-1] is the image of i.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int k) {
  Permutation p(k);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

inline void check_permutation(const Permutation& p) {
  std::vector<char> seen(p.size() + 1, 0);
  for (int x : p) {
    if (x < 1 || x > static_cast<int>(p.size()) || seen[x]) throw InvalidArgument("not a permutation of 1..k");
    seen[x] = 1;
  }
}

// (a ∘ b)(i) = a(b(i))
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i] - 1];
  return r;
}

inline Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i] - 1] = static_cast<int>(i) + 1;
  return r;
}

inline Permutation transposition(int k, int i, int j) {
  Permutation p = identity_permutation(k);
  std::swap(p[i - 1], p[j - 1]);
  return p;
}

// The cycle 1 -> 2 -> ... -> k -> 1.
inline Permutation long_cycle(int k) {
  Permutation p(k);
  for (int i = 0; i < k; ++i) p[i] = (i + 1) % k + 1;
  return p;
}

inline int permutation_sign(const Permutation& p) {
  int s = 1;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j] - 1) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

// Indices i of adjacent transpositions t_i = (i i+1) with p = t_{i_1} ∘ ... ∘ t_{i_m}.
inline std::vector<int> adjacent_word(const Permutation& p) {
  // bubble-sort p into the identity; each swap of positions j, j+1 is a right factor t_j
  Permutation q = p;
  std::vector<int> right;
  for (std::size_t n = q.size(); n > 1; --n)
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (q[j] > q[j + 1]) {
        std::swap(q[j], q[j + 1]);
        right.push_back(static_cast<int>(j) + 1);
      }
  // p ∘ t_{r_1} ∘ ... ∘ t_{r_m} = id, so p = t_{r_m} ∘ ... ∘ t_{r_1}
  std::reverse(right.begin(), right.end());
  return right;
}

template <class Rng>
Permutation random_permutation(int k, Rng& rng) {
  Permutation p = identity_permutation(k);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace confspace
