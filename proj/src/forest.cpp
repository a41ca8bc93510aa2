#include "confspace/forest.hpp"

#include <numeric>
#include <sstream>

namespace confspace::forest {

namespace {

std::size_t subtree_end(const std::vector<int>& code, std::size_t start) {
  int need = 1;
  std::size_t i = start;
  while (need > 0) {
    if (i >= code.size()) throw InvalidArgument("malformed tree code");
    need += (code[i] == 0) ? 1 : -1;
    ++i;
  }
  return i;
}

}  // namespace

Tree Tree::leaf(int label) {
  if (label < 1) throw InvalidArgument("leaf labels must be positive");
  Tree t;
  t.code_ = {label};
  return t;
}

Tree Tree::bracket(const Tree& left, const Tree& right) {
  Tree t;
  t.code_.reserve(1 + left.code_.size() + right.code_.size());
  t.code_.push_back(0);
  t.code_.insert(t.code_.end(), left.code_.begin(), left.code_.end());
  t.code_.insert(t.code_.end(), right.code_.begin(), right.code_.end());
  return t;
}

int Tree::label() const {
  if (!is_leaf()) throw InvalidArgument("label() on an internal vertex");
  return code_[0];
}

Tree Tree::left() const {
  if (is_leaf()) throw InvalidArgument("left() on a leaf");
  Tree t;
  t.code_.assign(code_.begin() + 1, code_.begin() + subtree_end(code_, 1));
  return t;
}

Tree Tree::right() const {
  if (is_leaf()) throw InvalidArgument("right() on a leaf");
  Tree t;
  t.code_.assign(code_.begin() + subtree_end(code_, 1), code_.end());
  return t;
}

std::vector<int> Tree::leaves() const {
  std::vector<int> out;
  for (int c : code_)
    if (c != 0) out.push_back(c);
  return out;
}

int Tree::leaf_count() const { return static_cast<int>(code_.size() + 1) / 2; }

int Tree::min_leaf() const {
  auto l = leaves();
  return *std::min_element(l.begin(), l.end());
}

bool Tree::is_left_normed() const {
  // preorder of a left comb on m leaves: m-1 zeros, then the first two leaves, then one leaf per vertex
  const int m = leaf_count();
  for (int i = 0; i < m - 1; ++i)
    if (code_[i] != 0) return false;
  for (std::size_t i = static_cast<std::size_t>(m - 1); i < code_.size(); ++i)
    if (code_[i] == 0) return false;
  return true;
}

bool Tree::is_tall() const {
  if (!is_left_normed()) return false;
  return code_[leaf_count() - 1] == min_leaf();
}

Tree Tree::relabeled(const Permutation& perm) const {
  Tree t = *this;
  for (int& c : t.code_)
    if (c != 0) {
      if (c > static_cast<int>(perm.size())) throw InvalidArgument("leaf label outside the permutation range");
      c = perm[c - 1];
    }
  return t;
}

std::string Tree::to_string() const {
  std::ostringstream os;
  auto rec = [&](auto&& self, std::size_t& i) -> void {
    int c = code_[i++];
    if (c != 0) {
      if (c < 10)
        os << c;
      else
        os << '{' << c << '}';
      return;
    }
    os << '(';
    self(self, i);
    self(self, i);
    os << ')';
  };
  std::size_t i = 0;
  rec(rec, i);
  return os.str();
}

Tree Tree::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> Tree { throw InvalidArgument("malformed tree '" + text + "': " + why); };
  auto rec = [&](auto&& self) -> Tree {
    if (i >= s.size()) return fail("unexpected end");
    char c = s[i];
    if (c == '(') {
      ++i;
      Tree l = self(self);
      Tree r = self(self);
      if (i >= s.size() || s[i] != ')') return fail("a vertex needs exactly two children");
      ++i;
      return bracket(l, r);
    }
    if (c == '{') {
      std::size_t close = s.find('}', i);
      if (close == std::string::npos) return fail("unclosed label");
      int v = std::stoi(s.substr(i + 1, close - i - 1));
      i = close + 1;
      return leaf(v);
    }
    if (isdigit(static_cast<unsigned char>(c)) && c != '0') {
      ++i;
      return leaf(c - '0');
    }
    return fail(std::string("unexpected character '") + c + "'");
  };
  Tree t = rec(rec);
  if (i != s.size()) fail("trailing characters");
  auto l = t.leaves();
  std::sort(l.begin(), l.end());
  if (std::adjacent_find(l.begin(), l.end()) != l.end()) fail("repeated leaf label");
  return t;
}

Tree comb(const std::vector<int>& leaves) {
  if (leaves.empty()) throw InvalidArgument("comb on no leaves");
  Tree t = Tree::leaf(leaves[0]);
  for (std::size_t i = 1; i < leaves.size(); ++i) t = Tree::bracket(t, Tree::leaf(leaves[i]));
  return t;
}

std::string forest_to_string(const Forest& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + f[i].to_string();
  return s;
}

Forest parse_forest(const std::string& text) {
  Forest f;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      f.push_back(Tree::parse(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) f.push_back(Tree::parse(cur));
  return f;
}

void check_forest(const Forest& f, int k) {
  std::vector<char> seen(k + 1, 0);
  int count = 0;
  for (const auto& t : f)
    for (int l : t.leaves()) {
      if (l < 1 || l > k || seen[l]) throw InvalidArgument("forest leaves must be exactly 1..k, each once");
      seen[l] = 1;
      ++count;
    }
  if (count != k) throw InvalidArgument("forest leaves must be exactly 1..k, each once");
}

bool is_tall(const Forest& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_tall()) return false;
    if (i > 0 && f[i - 1].min_leaf() >= f[i].min_leaf()) return false;
  }
  return true;
}

std::vector<std::vector<int>> forest_partition(const Forest& f) {
  std::vector<std::vector<int>> blocks;
  for (const auto& t : f) {
    auto l = t.leaves();
    std::sort(l.begin(), l.end());
    blocks.push_back(l);
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

int forest_degree(const Forest& f, int n) {
  int d = 0;
  for (const auto& t : f) d += (t.leaf_count() - 1) * (n - 1);
  return d;
}

Integer HomologyClass::coefficient(const Forest& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? Integer(0) : it->second;
}

void HomologyClass::add_term(const Forest& f, const Integer& c) {
  if (!is_tall(f)) throw InvalidArgument("homology classes are supported on tall forests; got " + forest_to_string(f));
  check_forest(f, ctx_.k);
  if (sgn(c) == 0) return;
  auto& slot = terms_[f];
  slot += c;
  if (sgn(slot) == 0) terms_.erase(f);
}

HomologyClass& HomologyClass::operator+=(const HomologyClass& o) {
  if (!(ctx_ == o.ctx_)) throw InvalidArgument("homology classes from different contexts");
  for (const auto& [f, c] : o.terms_) add_term(f, c);
  return *this;
}

HomologyClass HomologyClass::operator+(const HomologyClass& o) const {
  HomologyClass r = *this;
  return r += o;
}

HomologyClass HomologyClass::operator-(const HomologyClass& o) const { return *this + o.scaled(-1); }

HomologyClass HomologyClass::scaled(const Integer& c) const {
  HomologyClass r(ctx_);
  if (sgn(c) == 0) return r;
  for (const auto& [f, x] : terms_) r.terms_[f] = x * c;
  return r;
}

std::string HomologyClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [f, c] : terms_) {
    Integer mag = abs(c);
    os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
    first = false;
    if (mag != 1) os << mag.get_str() << '*';
    os << (f.size() > 1 ? "[" : "") << forest_to_string(f) << (f.size() > 1 ? "]" : "");
  }
  return os.str();
}

nlohmann::json HomologyClass::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [f, c] : terms_) j[forest_to_string(f)] = bigint_json(c);
  return j;
}

TallRewriter::TallRewriter(int n) : n_(n) {
  if (n < 1) throw InvalidArgument("n must be positive");
}

int TallRewriter::sign(int leaves_x, int leaves_y) const {
  // ||x|| = leaves(x) (n-1)
  return ((n_ - 1) % 2 != 0 && (leaves_x * leaves_y) % 2 != 0) ? -1 : 1;
}

namespace {
void accumulate(std::map<Tree, std::int64_t>& acc, const Tree& t, std::int64_t c) {
  if (c == 0) return;
  auto& slot = acc[t];
  slot += c;
  if (slot == 0) acc.erase(t);
}
}  // namespace

// [x, y] for left-normed x, y, expanded into left-normed trees that all start with x's first leaf:
// [x, [y', b]] = [[x, y'], b] - (-1)^{||y'|| ||b||} [[x, b], y']
const TallRewriter::Comb& TallRewriter::bracket_ln(const Tree& x, const Tree& y) {
  auto key = std::make_pair(x.code(), y.code());
  if (auto it = br_cache_.find(key); it != br_cache_.end()) return it->second;
  std::map<Tree, std::int64_t> acc;
  if (y.is_leaf()) {
    acc[Tree::bracket(x, y)] = 1;
  } else {
    Tree yl = y.left(), b = y.right();
    Comb first = bracket_ln(x, yl);
    for (const auto& [z, c] : first) accumulate(acc, Tree::bracket(z, b), c);
    int s = sign(yl.leaf_count(), 1);
    Comb second = bracket_ln(Tree::bracket(x, b), yl);
    for (const auto& [z, c] : second) accumulate(acc, z, -s * c);
  }
  return br_cache_[key] = Comb(acc.begin(), acc.end());
}

const TallRewriter::Comb& TallRewriter::left_normed(const Tree& t) {
  if (auto it = ln_cache_.find(t.code()); it != ln_cache_.end()) return it->second;
  std::map<Tree, std::int64_t> acc;
  if (t.is_leaf() || t.is_left_normed()) {
    acc[t] = 1;
  } else {
    Comb la = left_normed(t.left());
    Comb lb = left_normed(t.right());
    for (const auto& [a, ca] : la)
      for (const auto& [b, cb] : lb) {
        Comb br = bracket_ln(a, b);
        for (const auto& [z, c] : br) accumulate(acc, z, ca * cb * c);
      }
  }
  return ln_cache_[t.code()] = Comb(acc.begin(), acc.end());
}

// Moves the minimal leaf of a left-normed tree to the front:
// [p, m] = -(-1)^{||p|| ||m||} [m, p], then [m, p] is expanded and the remaining leaves re-attached.
TallRewriter::Comb TallRewriter::make_tall(const Tree& t) {
  std::vector<int> l = t.leaves();
  std::size_t j = std::min_element(l.begin(), l.end()) - l.begin();
  if (j == 0) return {{t, 1}};
  Tree p = comb(std::vector<int>(l.begin(), l.begin() + j));
  int s = -sign(static_cast<int>(j), 1);
  std::map<Tree, std::int64_t> acc;
  for (const auto& [z, c] : bracket_ln(Tree::leaf(l[j]), p)) {
    Tree full = z;
    for (std::size_t r = j + 1; r < l.size(); ++r) full = Tree::bracket(full, Tree::leaf(l[r]));
    accumulate(acc, full, s * c);
  }
  return Comb(acc.begin(), acc.end());
}

const TallRewriter::Comb& TallRewriter::expand(const Tree& t) {
  if (auto it = tall_cache_.find(t.code()); it != tall_cache_.end()) return it->second;
  std::map<Tree, std::int64_t> acc;
  Comb ln = left_normed(t);
  for (const auto& [z, c] : ln)
    for (const auto& [w, d] : make_tall(z)) accumulate(acc, w, c * d);
  return tall_cache_[t.code()] = Comb(acc.begin(), acc.end());
}

std::map<Forest, Integer> TallRewriter::expand(const Forest& f) {
  std::vector<Comb> parts;
  for (const auto& t : f) parts.push_back(expand(t));
  std::map<Forest, Integer> out;
  Forest cur(f.size());
  auto rec = [&](auto&& self, std::size_t i, std::int64_t coeff) -> void {
    if (i == f.size()) {
      // order components by minimal leaf; swapping trees of degrees d1, d2 costs (-1)^{d1 d2}
      Forest g = cur;
      int s = 1;
      for (std::size_t a = 1; a < g.size(); ++a)
        for (std::size_t b = a; b > 0 && g[b - 1].min_leaf() > g[b].min_leaf(); --b) {
          int d1 = (g[b - 1].leaf_count() - 1) * (n_ - 1), d2 = (g[b].leaf_count() - 1) * (n_ - 1);
          if ((d1 * d2) % 2 != 0) s = -s;
          std::swap(g[b - 1], g[b]);
        }
      auto& slot = out[g];
      slot += Integer(static_cast<long>(coeff * s));
      if (sgn(slot) == 0) out.erase(g);
      return;
    }
    for (const auto& [t, c] : parts[i]) {
      cur[i] = t;
      self(self, i + 1, coeff * c);
    }
  };
  rec(rec, 0, 1);
  return out;
}

HomologyClass rewrite_to_tall(const Forest& f, int n) {
  int k = 0;
  for (const auto& t : f) k += t.leaf_count();
  check_forest(f, k);
  TallRewriter rw(n);
  HomologyClass out(Context{k, n});
  for (const auto& [g, c] : rw.expand(f)) out.add_term(g, c);
  return out;
}

namespace {

// Set partitions of {1..k} into exactly `blocks` blocks, via restricted growth strings.
void set_partitions(int k, int blocks, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<int> rgs(k, 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (k - i < blocks - used) return;
    if (i == k) {
      if (used != blocks) return;
      std::vector<std::vector<int>> part(blocks);
      for (int x = 0; x < k; ++x) part[rgs[x]].push_back(x + 1);
      out.push_back(std::move(part));
      return;
    }
    for (int b = 0; b <= used && b < blocks; ++b) {
      rgs[i] = b;
      self(self, i + 1, b == used ? used + 1 : used);
    }
  };
  if (k == 0) {
    if (blocks == 0) out.push_back({});
    return;
  }
  rec(rec, 0, 0);
}

std::vector<Tree> tall_trees_on(const std::vector<int>& block) {
  std::vector<Tree> out;
  std::vector<int> rest(block.begin() + 1, block.end());
  do {
    std::vector<int> order{block[0]};
    order.insert(order.end(), rest.begin(), rest.end());
    out.push_back(comb(order));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace

std::vector<Forest> tall_basis(int k, int n, int degree) {
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  if (n < 1) throw InvalidArgument("n must be positive");
  std::vector<int> vertex_counts;
  if (n == 1) {
    if (degree != 0) return {};
    for (int j = 0; j < std::max(1, k); ++j) vertex_counts.push_back(j);
  } else {
    if (degree < 0 || degree % (n - 1) != 0) return {};
    vertex_counts.push_back(degree / (n - 1));
  }
  std::vector<Forest> out;
  for (int j : vertex_counts) {
    if (j > std::max(0, k - 1)) continue;
    std::vector<std::vector<std::vector<int>>> parts;
    set_partitions(k, k - j, parts);
    for (const auto& part : parts) {
      std::vector<std::vector<Tree>> choices;
      for (const auto& block : part) choices.push_back(tall_trees_on(block));
      Forest cur(part.size());
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == part.size()) {
          out.push_back(cur);
          return;
        }
        for (const auto& t : choices[i]) {
          cur[i] = t;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
    }
  }
  return out;
}

arnold::Monomial path_monomial(const Forest& f) {
  arnold::Monomial m;
  for (const auto& t : f) {
    if (!t.is_left_normed()) throw InvalidArgument("path_monomial needs left-combed components");
    auto l = t.leaves();
    for (std::size_t i = 0; i + 1 < l.size(); ++i) m.push_back({l[i], l[i + 1]});
  }
  return m;
}

namespace {

std::vector<std::vector<int>> monomial_partition(const arnold::Monomial& m, int k) {
  std::vector<int> parent(k + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : m) parent[find(g.a)] = find(g.b);
  std::map<int, std::vector<int>> groups;
  for (int x = 1; x <= k; ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<int>> blocks;
  for (auto& [r, b] : groups) blocks.push_back(b);
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace

linalg::SparseMatrix<Integer> pairing_matrix(int k, int n, int degree) {
  if (n < 2) throw InvalidArgument("pairing_matrix needs n >= 2");
  auto forests = tall_basis(k, n, degree);
  auto monos = arnold::admissible_basis(k, n, degree);
  if (forests.size() != monos.size())
    throw InternalError("tall basis and admissible basis differ in size (" + std::to_string(forests.size()) + " vs " +
                        std::to_string(monos.size()) + ")");
  std::map<arnold::Monomial, std::size_t, arnold::MonomialOrder> mono_index;
  for (std::size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = i;

  // group both bases by the underlying partition of {1..k}
  std::map<std::vector<std::vector<int>>, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> blocks;
  for (std::size_t i = 0; i < forests.size(); ++i) blocks[forest_partition(forests[i])].first.push_back(i);
  for (std::size_t j = 0; j < monos.size(); ++j) blocks[monomial_partition(monos[j], k)].second.push_back(j);

  std::vector<linalg::Triplet<Integer>> entries;
  for (const auto& [part, idx] : blocks) {
    const auto& rows = idx.first;
    const auto& cols = idx.second;
    if (rows.size() != cols.size()) throw InternalError("pairing block is not square");
    const std::size_t m = rows.size();
    std::map<std::size_t, std::size_t> col_pos;
    for (std::size_t c = 0; c < m; ++c) col_pos[cols[c]] = c;
    // change of basis: path monomial of forest r = sum_c C[r][c] * admissible monomial c
    std::vector<std::vector<linalg::Rational>> a(m, std::vector<linalg::Rational>(2 * m, 0));
    for (std::size_t r = 0; r < m; ++r) {
      auto nf = arnold::normal_form(path_monomial(forests[rows[r]]), k, n);
      for (const auto& [mono, c] : nf.terms()) {
        auto it = col_pos.find(mono_index.at(mono));
        if (it == col_pos.end()) throw InternalError("normal form left its partition block");
        a[r][it->second] = c;
      }
      a[r][m + r] = 1;
    }
    // invert C by Gauss-Jordan
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t p = c;
      while (p < m && sgn(a[p][c]) == 0) ++p;
      if (p == m) throw InternalError("pairing block is singular");
      std::swap(a[p], a[c]);
      linalg::Rational inv = 1 / a[c][c];
      for (auto& x : a[c]) x *= inv;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c || sgn(a[r][c]) == 0) continue;
        linalg::Rational f = a[r][c];
        for (std::size_t j = 0; j < 2 * m; ++j) a[r][j] -= f * a[c][j];
      }
    }
    // pairing = transpose of C^{-1}: entry (forest r, monomial c) = Cinv[c][r]
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t r = 0; r < m; ++r) {
        const auto& v = a[c][m + r];
        if (sgn(v) == 0) continue;
        if (v.get_den() != 1) throw InternalError("pairing is not integral");
        entries.push_back({rows[r], cols[c], v.get_num()});
      }
  }
  return linalg::SparseMatrix<Integer>::from_triplets(forests.size(), monos.size(), std::move(entries));
}

HomologyClass sigma_act(const Permutation& perm, const HomologyClass& x) {
  if (static_cast<int>(perm.size()) != x.context().k) throw InvalidArgument("sigma_act: permutation size differs from k");
  check_permutation(perm);
  TallRewriter rw(x.context().n);
  HomologyClass out(x.context());
  for (const auto& [f, c] : x.terms()) {
    Forest g;
    for (const auto& t : f) g.push_back(t.relabeled(perm));
    for (const auto& [h, d] : rw.expand(g)) out.add_term(h, c * d);
  }
  return out;
}

linalg::SparseMatrix<Integer> action_matrix(const Permutation& perm, int k, int n, int degree) {
  if (static_cast<int>(perm.size()) != k) throw InvalidArgument("action_matrix: permutation size differs from k");
  check_permutation(perm);
  auto basis = tall_basis(k, n, degree);
  std::map<Forest, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  TallRewriter rw(n);
  std::vector<linalg::Triplet<Integer>> entries;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Forest g;
    for (const auto& t : basis[j]) g.push_back(t.relabeled(perm));
    for (const auto& [h, c] : rw.expand(g)) entries.push_back({index.at(h), j, c});
  }
  return linalg::SparseMatrix<Integer>::from_triplets(basis.size(), basis.size(), std::move(entries));
}

GradedDims coinvariants_dims(int k, int n, std::uint32_t characteristic) {
  if (characteristic != 0) {
    if (!linalg::is_prime(characteristic)) throw InvalidArgument("field characteristic must be 0 or a prime");
    if (static_cast<int>(characteristic) <= k)
      throw HypothesisViolation("coinvariants compute unordered homology only when k! is invertible (characteristic > k)");
  }
  GradedDims out;
  std::vector<int> degrees;
  if (n == 1)
    degrees.push_back(0);
  else
    for (int j = 0; j <= std::max(0, k - 1); ++j) degrees.push_back(j * (n - 1));
  for (int d : degrees) {
    auto basis = tall_basis(k, n, d);
    const std::size_t dim = basis.size();
    if (dim == 0) continue;
    // span of (t_i - 1) x over the Coxeter generators, as rows of the stacked transposes
    linalg::SparseMatrix<Integer> stacked(0, dim);
    for (int i = 1; i < k; ++i) {
      auto a = action_matrix(transposition(k, i, i + 1), k, n, d);
      stacked = stacked.vstack(linalg::subtract(a, linalg::SparseMatrix<Integer>::identity(dim)).transposed());
    }
    std::size_t r = characteristic == 0 ? linalg::rank(linalg::to_rational(stacked))
                                        : linalg::rank(linalg::reduce_mod(stacked, characteristic));
    out.set(d, static_cast<std::int64_t>(dim - r) + out[d]);
  }
  return out;
}

GradedDims unordered_betti_rational(int k, int n) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  GradedDims out{{0, 1}};
  if (k >= 2 && (n - 1) % 2 != 0) out.set(n - 1, 1);
  return out;
}

}  // namespace confspace::forest
