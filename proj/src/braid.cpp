#include "confspace/braid.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace confspace::braid {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t a = 0, b = r.size();
  while (b - a >= 2 && r[a].gen == r[b - 1].gen && r[a].exp == -r[b - 1].exp) {
    ++a;
    --b;
  }
  return Word(r.begin() + a, r.begin() + b);
}

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l.exp = -l.exp;
  return r;
}

Word concat(std::initializer_list<Word> parts) {
  Word r;
  for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
  return free_reduce(r);
}

Word power(const Word& w, int e) {
  Word base = e < 0 ? inverse(w) : w;
  Word r;
  for (int i = 0; i < std::abs(e); ++i) r.insert(r.end(), base.begin(), base.end());
  return free_reduce(r);
}

Word commutator(const Word& a, const Word& b) { return concat({a, b, inverse(a), inverse(b)}); }

Word gen_word(int gen, int exp) { return Word{Letter{gen, exp}}; }

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.empty()) throw InvalidArgument("empty generator name");
  std::set<Word> seen;
  for (auto& r : relators) {
    for (const auto& l : r)
      if (l.gen < 0 || l.gen >= static_cast<int>(generators_.size()) || (l.exp != 1 && l.exp != -1))
        throw InvalidArgument("relator letter out of range");
    Word c = cyclic_reduce(r);
    if (c.empty() || !seen.insert(c).second) continue;
    relators_.push_back(std::move(c));
  }
}

int Presentation::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] == name) return static_cast<int>(i);
  throw InvalidArgument("unknown generator '" + name + "'");
}

std::string Presentation::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '*';
    s += generators_.at(w[i].gen);
    if (w[i].exp < 0) s += "^-1";
  }
  return s;
}

std::string Presentation::to_string() const {
  std::string s = "gens: ";
  for (std::size_t i = 0; i < generators_.size(); ++i) s += (i ? "," : "") + generators_[i];
  s += " ; rels: ";
  for (std::size_t i = 0; i < relators_.size(); ++i) s += (i ? ", " : "") + word_to_string(relators_[i]);
  return s;
}

Word Presentation::parse_word(const std::string& text) const {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> Word { throw InvalidArgument("cannot parse word '" + text + "': " + why); };
  auto exponent = [&]() -> int {
    if (i >= s.size() || s[i] != '^') return 1;
    ++i;
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("missing exponent");
    int e = std::stoi(s.substr(i, j - i));
    i = j;
    return e;
  };
  auto rec = [&](auto&& self, bool nested) -> Word {
    Word w;
    while (i < s.size()) {
      char c = s[i];
      if (c == '*') {
        ++i;
        continue;
      }
      if (c == ')') {
        if (!nested) fail("unbalanced ')'");
        ++i;
        return w;
      }
      Word atom;
      if (c == '(') {
        ++i;
        atom = self(self, true);
      } else if (c == '1') {
        ++i;
      } else {
        std::size_t best = 0;
        int gen = -1;
        for (std::size_t g = 0; g < generators_.size(); ++g) {
          const auto& name = generators_[g];
          if (name.size() > best && s.compare(i, name.size(), name) == 0) {
            best = name.size();
            gen = static_cast<int>(g);
          }
        }
        if (gen < 0) fail("unknown generator at position " + std::to_string(i));
        i += best;
        atom = gen_word(gen);
      }
      Word p = power(atom, exponent());
      w.insert(w.end(), p.begin(), p.end());
    }
    if (nested) fail("unbalanced '('");
    return w;
  };
  return free_reduce(rec(rec, false));
}

Presentation Presentation::parse(const std::string& text) {
  auto gens_pos = text.find("gens:");
  auto rels_pos = text.find("rels:");
  if (gens_pos == std::string::npos) throw InvalidArgument("presentation needs 'gens:'");
  std::string gens_part = text.substr(gens_pos + 5, rels_pos == std::string::npos ? std::string::npos : rels_pos - gens_pos - 5);
  std::vector<std::string> gens;
  std::string cur;
  for (char c : gens_part) {
    if (c == ',' || c == ';') {
      if (!cur.empty()) gens.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) gens.push_back(cur);
  Presentation p(gens, {});
  std::vector<Word> rels;
  if (rels_pos != std::string::npos) {
    std::string rest = text.substr(rels_pos + 5);
    int depth = 0;
    cur.clear();
    for (char c : rest) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        if (cur.find_first_not_of(" \t\n") != std::string::npos) rels.push_back(p.parse_word(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (cur.find_first_not_of(" \t\n") != std::string::npos) rels.push_back(p.parse_word(cur));
  }
  return Presentation(gens, rels);
}

Word sigma(int i, int exp) { return gen_word(i - 1, exp); }

Presentation braid_presentation(int k) {
  if (k < 1) throw InvalidArgument("braid group needs k >= 1");
  std::vector<std::string> gens;
  for (int i = 1; i < k; ++i) gens.push_back("s" + std::to_string(i));
  std::vector<Word> rels;
  for (int i = 1; i + 1 < k; ++i)
    rels.push_back(concat({sigma(i), sigma(i + 1), sigma(i), sigma(i + 1, -1), sigma(i, -1), sigma(i + 1, -1)}));
  for (int i = 1; i < k; ++i)
    for (int j = i + 2; j < k; ++j) rels.push_back(commutator(sigma(i), sigma(j)));
  return Presentation(gens, rels);
}

Presentation symmetric_presentation(int k) {
  if (k < 1) throw InvalidArgument("symmetric group needs k >= 1");
  std::vector<std::string> gens;
  for (int i = 1; i < k; ++i) gens.push_back("t" + std::to_string(i));
  std::vector<Word> rels;
  for (int i = 1; i < k; ++i) rels.push_back(power(sigma(i), 2));
  for (int i = 1; i + 1 < k; ++i) rels.push_back(power(concat({sigma(i), sigma(i + 1)}), 3));
  for (int i = 1; i < k; ++i)
    for (int j = i + 2; j < k; ++j) rels.push_back(commutator(sigma(i), sigma(j)));
  return Presentation(gens, rels);
}

int CosetTable::act(int coset, const Word& w) const {
  for (const auto& l : w) coset = act(coset, l);
  return coset;
}

void CosetTable::validate(const Presentation& p) const {
  const int ngen = static_cast<int>(p.generators().size());
  if (static_cast<int>(forward.size()) != ngen || static_cast<int>(backward.size()) != ngen)
    throw ValidationError("coset table does not match the presentation");
  for (int g = 0; g < ngen; ++g) {
    std::vector<char> hit(size, 0);
    for (int c = 0; c < size; ++c) {
      int d = forward[g][c];
      if (d < 0 || d >= size || hit[d]) throw ValidationError("generator " + p.generators()[g] + " does not act bijectively");
      hit[d] = 1;
      if (backward[g][d] != c) throw ValidationError("inverse table inconsistent for " + p.generators()[g]);
    }
  }
  for (const auto& r : p.relators())
    for (int c = 0; c < size; ++c)
      if (act(c, r) != c) throw ValidationError("relator " + p.word_to_string(r) + " moves coset " + std::to_string(c + 1));
  std::vector<char> seen(size, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int g = 0; g < ngen; ++g)
      for (int d : {forward[g][c], backward[g][c]})
        if (!seen[d]) {
          seen[d] = 1;
          ++count;
          q.push_back(d);
        }
  }
  if (count != size) throw ValidationError("coset action is not transitive");
}

namespace {

std::string perm_label(const Permutation& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

}  // namespace

CosetTable coset_table_from_hom(const Presentation& p, const std::vector<Permutation>& images, SubgroupKind kind, int point) {
  const int ngen = static_cast<int>(p.generators().size());
  if (static_cast<int>(images.size()) != ngen) throw InvalidArgument("need one permutation per generator");
  if (ngen == 0) {
    CosetTable t;
    t.size = 1;
    t.labels = {"1"};
    return t;
  }
  const std::size_t m = images[0].size();
  for (const auto& im : images) {
    if (im.size() != m) throw InvalidArgument("generator images act on different sets");
    check_permutation(im);
  }
  // right action: apply the letters' permutations left to right
  auto act_perm = [&](const Permutation& state, const Letter& l) {
    const Permutation& g = l.exp > 0 ? images[l.gen] : confspace::inverse(images[l.gen]);
    return compose(g, state);
  };
  for (const auto& r : p.relators()) {
    Permutation s = identity_permutation(static_cast<int>(m));
    for (const auto& l : r) s = act_perm(s, l);
    if (s != identity_permutation(static_cast<int>(m)))
      throw NotAHomomorphism("relator " + p.word_to_string(r) + " maps to " + perm_label(s) + ", not the identity");
  }

  CosetTable t;
  t.forward.assign(ngen, {});
  t.backward.assign(ngen, {});
  if (kind == SubgroupKind::Stabilizer) {
    if (point < 1 || point > static_cast<int>(m)) throw InvalidArgument("stabilized point out of range");
    std::map<int, int> index{{point, 0}};
    std::vector<int> pts{point};
    for (std::size_t c = 0; c < pts.size(); ++c)
      for (int g = 0; g < ngen; ++g)
        for (int e : {1, -1}) {
          int q = e > 0 ? images[g][pts[c] - 1] : confspace::inverse(images[g])[pts[c] - 1];
          if (!index.count(q)) {
            index[q] = static_cast<int>(pts.size());
            pts.push_back(q);
          }
        }
    t.size = static_cast<int>(pts.size());
    for (int g = 0; g < ngen; ++g) {
      t.forward[g].resize(t.size);
      t.backward[g].resize(t.size);
      for (int c = 0; c < t.size; ++c) {
        t.forward[g][c] = index.at(images[g][pts[c] - 1]);
        t.backward[g][c] = index.at(confspace::inverse(images[g])[pts[c] - 1]);
      }
    }
    for (int x : pts) t.labels.push_back(std::to_string(x));
  } else {
    std::map<Permutation, int> index;
    std::vector<Permutation> elems{identity_permutation(static_cast<int>(m))};
    index[elems[0]] = 0;
    for (std::size_t c = 0; c < elems.size(); ++c)
      for (int g = 0; g < ngen; ++g)
        for (int e : {1, -1}) {
          Permutation q = act_perm(elems[c], Letter{g, e});
          if (!index.count(q)) {
            index[q] = static_cast<int>(elems.size());
            elems.push_back(q);
          }
        }
    t.size = static_cast<int>(elems.size());
    for (int g = 0; g < ngen; ++g) {
      t.forward[g].resize(t.size);
      t.backward[g].resize(t.size);
      for (int c = 0; c < t.size; ++c) {
        t.forward[g][c] = index.at(act_perm(elems[c], Letter{g, 1}));
        t.backward[g][c] = index.at(act_perm(elems[c], Letter{g, -1}));
      }
    }
    for (const auto& e : elems) t.labels.push_back(perm_label(e));
  }
  t.validate(p);
  return t;
}

bool SchreierTransversal::prefix_closed(const CosetTable& t) const {
  if (static_cast<int>(representatives.size()) != t.size || !representatives[0].empty()) return false;
  std::set<Word> reps(representatives.begin(), representatives.end());
  for (int c = 0; c < t.size; ++c) {
    const Word& w = representatives[c];
    if (free_reduce(w) != w || t.act(0, w) != c) return false;
    for (std::size_t len = 0; len < w.size(); ++len)
      if (!reps.count(Word(w.begin(), w.begin() + len))) return false;
  }
  return true;
}

SchreierTransversal schreier_transversal(const CosetTable& t) {
  SchreierTransversal s;
  s.representatives.assign(t.size, {});
  std::vector<char> seen(t.size, 0);
  seen[0] = 1;
  std::deque<int> q{0};
  const int ngen = static_cast<int>(t.forward.size());
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int g = 0; g < ngen; ++g)
      for (int e : {1, -1}) {
        int d = t.act(c, Letter{g, e});
        if (seen[d]) continue;
        seen[d] = 1;
        s.representatives[d] = s.representatives[c];
        s.representatives[d].push_back(Letter{g, e});
        q.push_back(d);
      }
  }
  return s;
}

Word SubgroupPresentation::rewrite(const CosetTable& t, const Word& w, int start) const {
  Word out;
  int cur = start;
  for (const auto& l : w) {
    if (l.exp > 0) {
      auto it = symbol.find({cur, l.gen});
      if (it != symbol.end()) out.push_back(Letter{it->second, 1});
      cur = t.act(cur, l);
    } else {
      int prev = t.act(cur, l);
      auto it = symbol.find({prev, l.gen});
      if (it != symbol.end()) out.push_back(Letter{it->second, -1});
      cur = prev;
    }
  }
  return free_reduce(out);
}

SubgroupPresentation subgroup_presentation(const Presentation& p, const CosetTable& t, const SchreierTransversal& s) {
  t.validate(p);
  if (!s.prefix_closed(t)) throw InvalidArgument("transversal is not a prefix-closed set of coset representatives");
  SubgroupPresentation out;
  std::vector<std::string> names;
  const int ngen = static_cast<int>(p.generators().size());
  for (int c = 0; c < t.size; ++c)
    for (int g = 0; g < ngen; ++g) {
      int d = t.act(c, Letter{g, 1});
      Word w = concat({s.representatives[c], gen_word(g), inverse(s.representatives[d])});
      if (w.empty()) continue;  // a tree edge
      out.symbol[{c, g}] = static_cast<int>(names.size());
      names.push_back(p.generators()[g] + "_" + std::to_string(c + 1));
      out.generator_words.push_back(w);
    }
  std::vector<Word> rels;
  for (int c = 0; c < t.size; ++c)
    for (const auto& r : p.relators()) rels.push_back(out.rewrite(t, r, c));
  out.presentation = Presentation(names, rels);
  return out;
}

std::string Abelianization::to_string() const {
  std::vector<std::string> parts;
  for (const auto& d : torsion) parts.push_back("Z/" + d.get_str());
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  if (parts.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
  return s;
}

Abelianization abelianize(const Presentation& p) {
  const std::size_t ngen = p.generators().size();
  std::vector<linalg::Triplet<linalg::Integer>> entries;
  for (std::size_t r = 0; r < p.relators().size(); ++r)
    for (const auto& l : p.relators()[r]) entries.push_back({r, static_cast<std::size_t>(l.gen), linalg::Integer(l.exp)});
  auto m = linalg::SparseMatrix<linalg::Integer>::from_triplets(p.relators().size(), ngen, std::move(entries));
  Abelianization a;
  auto snf = linalg::smith_normal_form(m);
  a.free_rank = static_cast<int>(ngen - snf.rank);
  for (const auto& d : snf.invariant_factors)
    if (abs(d) != 1) a.torsion.push_back(abs(d));
  return a;
}

namespace {

Word substitute(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (const auto& l : w) {
    const Word& im = images.at(l.gen);
    if (l.exp > 0)
      out.insert(out.end(), im.begin(), im.end());
    else {
      Word inv = inverse(im);
      out.insert(out.end(), inv.begin(), inv.end());
    }
    out = free_reduce(out);
  }
  return out;
}

std::vector<Word> letter_images(const Letter& l, int k) {
  std::vector<Word> im;
  for (int j = 0; j < k; ++j) im.push_back(gen_word(j));
  const int i = l.gen;  // sigma_{i+1} in 1-based terms, moves x_i and x_{i+1} (0-based)
  if (i < 0 || i + 1 >= k) throw InvalidArgument("braid generator index out of range for B_" + std::to_string(k));
  if (l.exp > 0) {
    im[i] = Word{{i, 1}, {i + 1, 1}, {i, -1}};
    im[i + 1] = gen_word(i);
  } else {
    im[i] = gen_word(i + 1);
    im[i + 1] = Word{{i + 1, -1}, {i, 1}, {i + 1, 1}};
  }
  return im;
}

std::vector<Word> images_of(const Word& w, int k) {
  std::vector<Word> out;
  for (int j = 0; j < k; ++j) {
    Word cur = gen_word(j);
    for (auto it = w.rbegin(); it != w.rend(); ++it) cur = substitute(cur, letter_images(*it, k));
    out.push_back(cur);
  }
  return out;
}

}  // namespace

Word FreeAutomorphism::apply(const Word& w) const { return substitute(w, images); }
Word FreeAutomorphism::apply_inverse(const Word& w) const { return substitute(w, inverse_images); }

bool FreeAutomorphism::verify() const {
  for (int j = 0; j < rank; ++j) {
    if (apply(inverse_images[j]) != gen_word(j)) return false;
    if (apply_inverse(images[j]) != gen_word(j)) return false;
  }
  return true;
}

bool FreeAutomorphism::is_identity() const {
  for (int j = 0; j < rank; ++j)
    if (images[j] != gen_word(j)) return false;
  return true;
}

FreeAutomorphism artin_action(const Word& w, int k) {
  if (k < 1) throw InvalidArgument("need k >= 1");
  FreeAutomorphism a;
  a.rank = k;
  a.images = images_of(w, k);
  a.inverse_images = images_of(inverse(w), k);
  return a;
}

bool braid_words_equal(const Word& a, const Word& b, int k) {
  return images_of(a, k) == images_of(b, k);
}

Permutation braid_permutation(const Word& w, int k) {
  Permutation s = identity_permutation(k);
  for (const auto& l : w) {
    if (l.gen < 0 || l.gen + 1 >= k) throw InvalidArgument("braid generator index out of range");
    s = compose(transposition(k, l.gen + 1, l.gen + 2), s);
  }
  return s;
}

Word g_word(int ell, int k) {
  Word w;
  for (int i = k - 1; i >= ell; --i) w.push_back(Letter{i - 1, 1});
  return w;
}

Word a_word(int i, int j) {
  if (!(1 <= i && i < j)) throw InvalidArgument("A_ij needs i < j");
  Word up;
  for (int m = j - 1; m > i; --m) up.push_back(Letter{m - 1, 1});
  return concat({up, sigma(i), sigma(i), inverse(up)});
}

bool RelationReport::all_passed() const { return failures() == 0 && !checks.empty(); }

std::size_t RelationReport::failures() const {
  std::size_t f = 0;
  for (const auto& c : checks)
    if (!c.passed()) ++f;
  return f;
}

namespace {

// Words in the generators of D_k: sigma_1..sigma_{k-2}, then A_{1k}..A_{k-1,k}.
struct DkAlphabet {
  int k;
  int s(int i) const { return i - 1; }
  int a(int ell) const { return (k - 2) + (ell - 1); }
  Word S(int i, int e = 1) const { return gen_word(s(i), e); }
  Word A(int ell, int e = 1) const { return gen_word(a(ell), e); }
  Word expand(const Word& w) const {
    Word out;
    for (const auto& l : w) {
      Word piece = l.gen < k - 2 ? sigma(l.gen + 1) : a_word(l.gen - (k - 2) + 1, k);
      if (l.exp < 0) piece = inverse(piece);
      out.insert(out.end(), piece.begin(), piece.end());
    }
    return free_reduce(out);
  }
  std::string name(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += '*';
      out += w[i].gen < k - 2 ? "s" + std::to_string(w[i].gen + 1)
                              : "A(" + std::to_string(w[i].gen - (k - 2) + 1) + "," + std::to_string(k) + ")";
      if (w[i].exp < 0) out += "^-1";
    }
    return out;
  }
};

// Reidemeister rewriting of g_ell r g_ell^-1 along the transversal {g_ell}: coset ell * sigma_i
// is ell-1 if i = ell-1, ell+1 if i = ell, else ell; the Schreier generator of (ell, sigma_i)
// is 1, A_{ell k}, sigma_i or sigma_{i-1} accordingly.
Word rewrite_along_g(const Word& r, int ell, const DkAlphabet& al) {
  auto next = [](int c, int i) { return i == c - 1 ? c - 1 : (i == c ? c + 1 : c); };
  auto symbol = [&](int c, int i) -> Word {
    if (i == c - 1) return {};
    if (i == c) return al.A(c);
    if (i < c - 1) return al.S(i);
    return al.S(i - 1);
  };
  Word out;
  int cur = ell;
  for (const auto& l : r) {
    const int i = l.gen + 1;
    if (l.exp > 0) {
      Word sym = symbol(cur, i);
      out.insert(out.end(), sym.begin(), sym.end());
      cur = next(cur, i);
    } else {
      int prev = next(cur, i);  // sigma_i acts on points as an involution
      Word sym = inverse(symbol(prev, i));
      out.insert(out.end(), sym.begin(), sym.end());
      cur = prev;
    }
  }
  if (cur != ell) throw InternalError("relator did not return to its coset");
  return free_reduce(out);
}

void flip(Word& w, int k) {
  if (w.empty())
    w = gen_word(0);
  else
    w[0].exp = -w[0].exp;
  (void)k;
}

}  // namespace

RelationReport verify_braid_relations(int k, int perturb) {
  if (k < 3) throw InvalidArgument("verify_braid_relations needs k >= 3");
  RelationReport rep;
  rep.k = k;
  DkAlphabet al{k};
  auto g = [&](int ell) { return g_word(ell, k); };
  int counter = 0;
  auto equal_check = [&](const std::string& family, const std::string& lhs_name, const Word& lhs, Word rhs,
                         const std::string& rhs_name) {
    if (counter++ == perturb) flip(rhs, k);
    RelationCheck c{family, lhs_name + " = " + rhs_name, braid_words_equal(lhs, rhs, k), true};
    rep.checks.push_back(c);
  };

  // conjugation identities for g_ell
  for (int ell = 1; ell <= k; ++ell)
    for (int i = 1; i < ell - 1; ++i)
      equal_check("lemma-fixed", "g" + std::to_string(ell) + " s" + std::to_string(i) + " g" + std::to_string(ell) + "^-1",
                  concat({g(ell), sigma(i), inverse(g(ell))}), sigma(i), "s" + std::to_string(i));
  for (int ell = 1; ell <= k; ++ell)
    for (int i = ell + 1; i < k; ++i)
      equal_check("lemma-shift", "g" + std::to_string(ell) + " s" + std::to_string(i) + " g" + std::to_string(ell) + "^-1",
                  concat({g(ell), sigma(i), inverse(g(ell))}), sigma(i - 1), "s" + std::to_string(i - 1));
  for (int i = 1; i < k; ++i)
    equal_check("lemma-A", "g" + std::to_string(i) + " s" + std::to_string(i) + " g" + std::to_string(i + 1) + "^-1",
                concat({g(i), sigma(i), inverse(g(i + 1))}), a_word(i, k), "A(" + std::to_string(i) + "," + std::to_string(k) + ")");
  for (int i = 2; i <= k; ++i)
    equal_check("lemma-trivial", "g" + std::to_string(i) + " s" + std::to_string(i - 1) + " g" + std::to_string(i - 1) + "^-1",
                concat({g(i), sigma(i - 1), inverse(g(i - 1))}), {}, "1");

  // {g_ell} is a Schreier set for D_k: distinct cosets (last strand goes to ell), prefix-closed
  {
    Presentation bk = braid_presentation(k);
    std::vector<Permutation> images;
    for (int i = 1; i < k; ++i) images.push_back(transposition(k, i, i + 1));
    CosetTable t = coset_table_from_hom(bk, images, SubgroupKind::Stabilizer, k);
    SchreierTransversal bfs = schreier_transversal(t);
    bool ok = t.size == k && bfs.prefix_closed(t);
    std::set<int> cosets;
    for (int ell = 1; ell <= k; ++ell) {
      int c = t.act(0, g(ell));
      cosets.insert(c);
      if (t.labels[c] != std::to_string(ell)) ok = false;
      // the BFS representative lies in the same coset as g_ell
      if (t.act(0, bfs.representatives[c]) != c) ok = false;
      Word w = g(ell);
      for (std::size_t len = 0; len <= w.size(); ++len)
        if (Word(w.begin(), w.begin() + len) != g(k - static_cast<int>(len))) ok = false;
    }
    if (static_cast<int>(cosets.size()) != k) ok = false;
    if (counter++ == perturb) ok = !ok;
    rep.checks.push_back({"schreier-set", "{g_1..g_k} are prefix-closed representatives of D_k\\B_k", ok, true});
  }

  // conjugated relators, rewritten along {g_ell} and compared with the expected words
  auto family_check = [&](const std::string& family, const Word& relator, int ell, Word expected, const std::string& relator_name) {
    if (counter++ == perturb) flip(expected, k);
    Word lhs = concat({g(ell), relator, inverse(g(ell))});
    RelationCheck c;
    c.family = family;
    c.statement = "g" + std::to_string(ell) + " (" + relator_name + ") g" + std::to_string(ell) + "^-1 = " + al.name(expected);
    c.artin_ok = braid_words_equal(lhs, al.expand(expected), k);
    c.rewrite_ok = rewrite_along_g(relator, ell, al) == free_reduce(expected);
    rep.checks.push_back(c);
  };
  auto cm = [](const Word& a, const Word& b) { return commutator(a, b); };
  for (int i = 1; i < k; ++i)
    for (int j = i + 2; j < k; ++j) {
      Word r = commutator(sigma(i), sigma(j));
      std::string rn = "[s" + std::to_string(i) + ",s" + std::to_string(j) + "]";
      for (int ell = 1; ell <= k; ++ell) {
        if (ell < i)
          family_check("commutator-1", r, ell, cm(al.S(i - 1), al.S(j - 1)), rn);
        else if (ell == i)
          family_check("commutator-2", r, ell, cm(al.A(i), al.S(j - 1)), rn);
        else if (ell == i + 1)
          family_check("commutator-3", r, ell, {}, rn);
        else if (ell < j)
          family_check("commutator-between", r, ell, cm(al.S(i), al.S(j - 1)), rn);
        else if (ell == j)
          family_check("commutator-4", r, ell, cm(al.S(i), al.A(j)), rn);
        else if (ell == j + 1)
          family_check("commutator-5", r, ell, {}, rn);
        else
          family_check("commutator-6", r, ell, cm(al.S(i), al.S(j)), rn);
      }
    }
  for (int i = 1; i + 1 < k; ++i) {
    Word r = concat({sigma(i), sigma(i + 1), sigma(i), sigma(i + 1, -1), sigma(i, -1), sigma(i + 1, -1)});
    std::string rn = "s" + std::to_string(i) + " braid s" + std::to_string(i + 1);
    for (int ell = 1; ell <= k; ++ell) {
      if (ell < i)
        family_check("braid-7", r, ell,
                     concat({al.S(i - 1), al.S(i), al.S(i - 1), al.S(i, -1), al.S(i - 1, -1), al.S(i, -1)}), rn);
      else if (ell == i)
        family_check("braid-8", r, ell,
                     concat({al.A(i), al.A(i + 1), al.S(i), al.A(i + 1, -1), al.A(i, -1), al.S(i, -1)}), rn);
      else if (ell == i + 1)
        family_check("braid-9", r, ell, concat({al.S(i), al.A(i), al.S(i, -1), al.A(i + 1, -1)}), rn);
      else if (ell == i + 2)
        family_check("braid-10", r, ell, {}, rn);
      else
        family_check("braid-11", r, ell,
                     concat({al.S(i), al.S(i + 1), al.S(i), al.S(i + 1, -1), al.S(i, -1), al.S(i + 1, -1)}), rn);
    }
  }

  // U_k is normalized by B_{k-1}, and its generators are pure braids
  for (int i = 1; i + 1 < k; ++i)
    for (int ell = 1; ell < k; ++ell) {
      Word conj = concat({sigma(i), a_word(ell, k), sigma(i, -1)});
      Word conj_inv = concat({sigma(i, -1), a_word(ell, k), sigma(i)});
      Word expect, expect_inv;
      if (ell == i) {
        expect = al.A(i + 1);
        expect_inv = concat({al.A(i), al.A(i + 1), al.A(i, -1)});
      } else if (ell == i + 1) {
        expect = concat({al.A(i + 1, -1), al.A(i), al.A(i + 1)});
        expect_inv = al.A(i);
      } else {
        expect = al.A(ell);
        expect_inv = al.A(ell);
      }
      std::string a = "A(" + std::to_string(ell) + "," + std::to_string(k) + ")";
      equal_check("normality", "s" + std::to_string(i) + " " + a + " s" + std::to_string(i) + "^-1", conj, al.expand(expect),
                  al.name(expect));
      equal_check("normality", "s" + std::to_string(i) + "^-1 " + a + " s" + std::to_string(i), conj_inv,
                  al.expand(expect_inv), al.name(expect_inv));
    }
  {
    bool pure = true;
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        if (braid_permutation(a_word(i, j), k) != identity_permutation(k)) pure = false;
    if (counter++ == perturb) pure = !pure;
    rep.checks.push_back({"pure", "every A_ij is a pure braid", pure, true});
  }
  return rep;
}

}  // namespace confspace::braid
