#include <random>
#include <set>

#include "confspace/braid.hpp"
#include "confspace/error.hpp"
#include "doctest.h"

using namespace confspace;
using namespace confspace::braid;

namespace {

std::vector<Permutation> strand_images(int k) {
  std::vector<Permutation> out;
  for (int i = 1; i < k; ++i) out.push_back(transposition(k, i, i + 1));
  return out;
}

Word random_braid(int k, int length, std::mt19937_64& rng) {
  Word w;
  for (int i = 0; i < length; ++i)
    w.push_back({static_cast<int>(rng() % static_cast<unsigned>(k - 1)), rng() % 2 ? 1 : -1});
  return w;
}

Word expand(const SubgroupPresentation& sp, const Word& w) {
  Word out;
  for (const auto& l : w) {
    const auto& g = sp.generator_words[static_cast<std::size_t>(l.gen)];
    const auto piece = l.exp > 0 ? g : inverse(g);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

}  // namespace

TEST_CASE("word utilities") {
  Word w{{0, 1}, {1, 1}, {1, -1}, {0, 1}};
  CHECK(free_reduce(w) == Word{{0, 1}, {0, 1}});
  CHECK(cyclic_reduce(Word{{1, -1}, {0, 1}, {1, 1}}) == Word{{0, 1}});
  CHECK(free_reduce(concat({w, inverse(w)})).empty());
  CHECK(power(gen_word(0), 3).size() == 3);
  CHECK(power(gen_word(0), -2) == Word{{0, -1}, {0, -1}});
  CHECK(commutator(gen_word(0), gen_word(1)) == Word{{0, 1}, {1, 1}, {0, -1}, {1, -1}});
}

TEST_CASE("presentations") {
  auto b5 = braid_presentation(5);
  CHECK(b5.generators().size() == 4);
  CHECK(b5.relators().size() == 6);
  auto s4 = symmetric_presentation(4);
  CHECK(s4.generators().size() == 3);
  CHECK(abelianize(s4).to_string() == "Z/2");
  CHECK(abelianize(braid_presentation(4)).to_string() == "Z");
  auto p = Presentation::parse("gens: a,b ; rels: aba(bab)^-1, b^3");
  CHECK(p.generators() == std::vector<std::string>{"a", "b"});
  REQUIRE(p.relators().size() == 2);
  CHECK(p.word_to_string(p.relators()[1]) == "b*b*b");
  CHECK(abelianize(p).to_string() == "Z/3");
  auto q = Presentation::parse(b5.to_string());
  CHECK(q.generators() == b5.generators());
  CHECK(q.relators() == b5.relators());
  CHECK_THROWS_AS(p.parse_word("c"), InvalidArgument);
}

TEST_CASE("coset tables from permutation representations") {
  auto b3 = braid_presentation(3);
  auto kernel = coset_table_from_hom(b3, strand_images(3), SubgroupKind::Kernel);
  CHECK(kernel.size == 6);
  CHECK_NOTHROW(kernel.validate(b3));
  for (int k = 2; k <= 6; ++k) {
    auto bk = braid_presentation(k);
    auto stab = coset_table_from_hom(bk, strand_images(k), SubgroupKind::Stabilizer, k);
    CHECK(stab.size == k);
    CHECK_NOTHROW(stab.validate(bk));
    // the words g_ell reach every coset of the point stabilizer
    std::set<int> reached;
    for (int ell = 1; ell <= k; ++ell) reached.insert(stab.act(0, g_word(ell, k)));
    CHECK(static_cast<int>(reached.size()) == k);
  }
  std::vector<Permutation> bad{Permutation{2, 1, 3, 4}, Permutation{1, 2, 4, 3}};
  CHECK_THROWS_AS(coset_table_from_hom(b3, bad, SubgroupKind::Kernel), NotAHomomorphism);
}

TEST_CASE("Schreier transversals are prefix closed") {
  for (int k = 2; k <= 5; ++k) {
    auto bk = braid_presentation(k);
    for (auto kind : {SubgroupKind::Kernel, SubgroupKind::Stabilizer}) {
      auto t = coset_table_from_hom(bk, strand_images(k), kind, 1);
      auto s = schreier_transversal(t);
      REQUIRE(static_cast<int>(s.representatives.size()) == t.size);
      CHECK(s.representatives[0].empty());
      CHECK(s.prefix_closed(t));
      for (int c = 0; c < t.size; ++c) CHECK(t.act(0, s.representatives[static_cast<std::size_t>(c)]) == c);
    }
  }
}

TEST_CASE("Reidemeister-Schreier presentations") {
  // index-2 subgroup of the free group of rank 2 is free of rank 3
  auto f2 = Presentation::parse("gens: a,b ; rels:");
  auto t = coset_table_from_hom(f2, {Permutation{2, 1}, Permutation{1, 2}}, SubgroupKind::Kernel);
  auto sp = subgroup_presentation(f2, t, schreier_transversal(t));
  CHECK(sp.presentation.generators().size() == 3);
  CHECK(abelianize(sp.presentation).to_string() == "Z^3");

  auto s3 = symmetric_presentation(3);
  auto sign = coset_table_from_hom(s3, {Permutation{2, 1}, Permutation{2, 1}}, SubgroupKind::Kernel);
  CHECK(sign.size == 2);
  auto a3 = subgroup_presentation(s3, sign, schreier_transversal(sign));
  CHECK(abelianize(a3.presentation).to_string() == "Z/3");

  auto b3 = braid_presentation(3);
  auto pure = coset_table_from_hom(b3, strand_images(3), SubgroupKind::Kernel);
  auto p3 = subgroup_presentation(b3, pure, schreier_transversal(pure));
  CHECK(abelianize(p3.presentation).to_string() == "Z^3");
}

TEST_CASE("subgroup relators are trivial in the braid group") {
  for (int k = 3; k <= 4; ++k) {
    auto bk = braid_presentation(k);
    for (auto kind : {SubgroupKind::Kernel, SubgroupKind::Stabilizer}) {
      auto t = coset_table_from_hom(bk, strand_images(k), kind, k);
      auto sp = subgroup_presentation(bk, t, schreier_transversal(t));
      for (const auto& g : sp.generator_words) CHECK(t.act(0, g) == 0);
      for (const auto& r : sp.presentation.relators()) CHECK(braid_words_equal(expand(sp, r), {}, k));
      // rewriting a subgroup element and expanding gives the same braid
      std::mt19937_64 rng(31 + static_cast<unsigned>(k));
      for (int trial = 0; trial < 20; ++trial) {
        auto w = random_braid(k, 8, rng);
        auto closing = schreier_transversal(t).representatives[static_cast<std::size_t>(t.act(0, w))];
        auto h = concat({w, inverse(closing)});
        CHECK(braid_words_equal(expand(sp, sp.rewrite(t, h)), h, k));
      }
    }
  }
}

TEST_CASE("Artin action") {
  CHECK(braid_words_equal(concat({sigma(1), sigma(2), sigma(1)}), concat({sigma(2), sigma(1), sigma(2)}), 3));
  CHECK(braid_words_equal(concat({sigma(1), sigma(3)}), concat({sigma(3), sigma(1)}), 4));
  CHECK_FALSE(braid_words_equal(sigma(1), sigma(1, -1), 3));
  CHECK_FALSE(braid_words_equal(concat({sigma(1), sigma(2)}), concat({sigma(2), sigma(1)}), 3));
  CHECK(artin_action({}, 3).is_identity());
  CHECK(braid_permutation(concat({sigma(1), sigma(2)}), 3) != identity_permutation(3));
  CHECK(braid_permutation(power(sigma(1), 2), 3) == identity_permutation(3));

  std::mt19937_64 rng(37);
  for (int k = 2; k <= 6; ++k)
    for (int trial = 0; trial < 30; ++trial) {
      auto w = random_braid(k, 10, rng);
      auto a = artin_action(w, k);
      CHECK(a.verify());
      CHECK(artin_action(concat({w, inverse(w)}), k).is_identity());
      Word x = random_braid(k + 1, 6, rng);  // any word in the free group on k letters
      CHECK(free_reduce(a.apply_inverse(a.apply(x))) == free_reduce(x));
    }
}

TEST_CASE("the g_ell identities and the semidirect decompositions") {
  for (int k = 3; k <= 6; ++k) {
    CAPTURE(k);
    auto rep = verify_braid_relations(k);
    CHECK(rep.all_passed());
    CHECK(rep.failures() == 0);
    CHECK(rep.checks.size() > 5);
  }
  auto broken = verify_braid_relations(4, 0);
  CHECK_FALSE(broken.all_passed());
  CHECK(broken.failures() >= 1);
  CHECK_THROWS(verify_braid_relations(2));
}
