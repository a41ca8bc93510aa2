#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confspace/linalg.hpp"
#include "confspace/permutation.hpp"

// Finitely presented groups, Reidemeister-Schreier subgroup presentations, and the Artin
// action of braid groups on free groups as a word-problem oracle.
namespace confspace::braid {

struct Letter {
  int gen;  // 0-based generator index
  int exp;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);  // freely and cyclically reduced
Word inverse(const Word& w);
Word concat(std::initializer_list<Word> parts);
Word power(const Word& w, int e);
Word commutator(const Word& a, const Word& b);  // a b a^-1 b^-1
Word gen_word(int gen, int exp = 1);

class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  // "gens: a,b ; rels: aba(bab)^-1, b^3" -- generators may be multi-character; juxtaposed
  // names are split greedily by longest match, and '*' is accepted as a separator.
  static Presentation parse(const std::string& text);
  std::string to_string() const;
  std::string word_to_string(const Word& w) const;
  Word parse_word(const std::string& text) const;

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  int generator_index(const std::string& name) const;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

Presentation braid_presentation(int k);      // generators s1..s{k-1}
Presentation symmetric_presentation(int k);  // generators t1..t{k-1}

// Right action of a group on cosets H\G: coset * generator.
struct CosetTable {
  int size = 0;
  std::vector<std::vector<int>> forward;   // forward[gen][coset]
  std::vector<std::vector<int>> backward;  // inverse action
  std::vector<std::string> labels;         // what each coset corresponds to in the image
  int act(int coset, const Letter& l) const { return l.exp > 0 ? forward[l.gen][coset] : backward[l.gen][coset]; }
  int act(int coset, const Word& w) const;
  // bijections, relators trivial on every coset, transitive from coset 0
  void validate(const Presentation& p) const;
};

enum class SubgroupKind { Kernel, Stabilizer };

// images[g] is the permutation assigned to generator g; the subgroup is the kernel of the
// induced homomorphism or the stabilizer of `point`. Throws NotAHomomorphism if some
// relator does not map to the identity.
CosetTable coset_table_from_hom(const Presentation& p, const std::vector<Permutation>& images, SubgroupKind kind,
                                int point = 1);

struct SchreierTransversal {
  std::vector<Word> representatives;  // by coset; coset 0 is the empty word
  bool prefix_closed(const CosetTable& t) const;
};

// Breadth-first spanning tree; generators in declared order, positive exponent first.
SchreierTransversal schreier_transversal(const CosetTable& t);

struct SubgroupPresentation {
  Presentation presentation;
  std::vector<Word> generator_words;       // ambient word of each subgroup generator
  std::map<std::pair<int, int>, int> symbol;  // (coset, ambient generator) -> subgroup generator, absent if trivial
  // Rewrites an ambient word read from `start`, as a word in the subgroup generators.
  Word rewrite(const CosetTable& t, const Word& w, int start = 0) const;
};

SubgroupPresentation subgroup_presentation(const Presentation& p, const CosetTable& t, const SchreierTransversal& s);

struct Abelianization {
  int free_rank = 0;
  std::vector<linalg::Integer> torsion;  // invariant factors > 1
  std::string to_string() const;         // "Z^3", "Z/3", "Z/2 + Z", "0"
};
Abelianization abelianize(const Presentation& p);

struct FreeAutomorphism {
  int rank = 0;
  std::vector<Word> images;          // of x_1..x_rank
  std::vector<Word> inverse_images;  // of the asserted inverse
  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;
  bool verify() const;  // both composites fix every generator
  bool is_identity() const;
};

// sigma_i : x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i; the word acts as the composite of its letters.
FreeAutomorphism artin_action(const Word& w, int k);
bool braid_words_equal(const Word& a, const Word& b, int k);
// The permutation of strands induced by a braid word (sigma_i -> (i i+1)), read left to right.
Permutation braid_permutation(const Word& w, int k);

// Standard braid words.
Word sigma(int i, int exp = 1);  // sigma_i, 1-based
Word g_word(int ell, int k);     // sigma_{k-1} ... sigma_ell
Word a_word(int i, int j);       // A_ij = sigma_{j-1}..sigma_{i+1} sigma_i^2 sigma_{i+1}^-1..sigma_{j-1}^-1

struct RelationCheck {
  std::string family;
  std::string statement;
  bool artin_ok = false;
  bool rewrite_ok = true;  // only meaningful for the rewritten families
  bool passed() const { return artin_ok && rewrite_ok; }
};

struct RelationReport {
  int k = 0;
  std::vector<RelationCheck> checks;
  bool all_passed() const;
  std::size_t failures() const;
};

// Checks the g_ell / sigma_i identities, the coset and Schreier properties of {g_ell}, every
// conjugated relator family for D_k, and the normality of U_k = <A_{ell k}>. perturb >= 0
// flips one exponent in the expected side of that check (a negative control).
RelationReport verify_braid_relations(int k, int perturb = -1);

}  // namespace confspace::braid
