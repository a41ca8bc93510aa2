#include "acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "confspace/arnold.hpp"
#include "confspace/braid.hpp"
#include "confspace/ce.hpp"
#include "confspace/error.hpp"
#include "confspace/forest.hpp"
#include "confspace/modp.hpp"
#include "confspace/presets.hpp"
#include "oracles.hpp"

namespace confspace::acceptance {

namespace {

using linalg::Integer;

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  int checks = 0;
  void require(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      note << "first failure: " << what;
    }
  }
};

using Body = std::function<void(Outcome&, const Options&)>;

struct Criterion {
  int id;
  const char* title;
  double budget;
  Body body;
};

std::string kn(int k, int n) { return "k=" + std::to_string(k) + " n=" + std::to_string(n); }

void poincare(Outcome& o, const Options&) {
  for (int n : {2, 3, 4})
    for (int k = 1; k <= 8; ++k) {
      auto census = arnold::poincare_by_census(k, n);
      auto formula = oracle::product_formula(k, n);
      std::map<int, Integer> got;
      for (const auto& [key, c] : census.terms()) got[key.second] = c;
      o.require(got == formula, "census vs product formula at " + kn(k, n));
      for (int j = 0; j < k; ++j)
        o.require(census.coeff(j * (n - 1)) == oracle::stirling1(k, k - j), "Stirling coefficient at " + kn(k, n));
    }
}

void arnold_relation(Outcome& o, const Options&) {
  for (int n : {2, 3})
    for (int k = 3; k <= 6; ++k)
      for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b)
          for (int c = 1; c <= k; ++c) {
            if (a == b || b == c || a == c) continue;
            using arnold::GeneratorPair;
            std::vector<std::pair<arnold::Monomial, Integer>> rel{
                {{GeneratorPair{a, b}, GeneratorPair{b, c}}, 1},
                {{GeneratorPair{b, c}, GeneratorPair{c, a}}, 1},
                {{GeneratorPair{c, a}, GeneratorPair{a, b}}, 1}};
            o.require(arnold::normal_form(rel, k, n).is_zero(),
                      "relation on (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ") " +
                          kn(k, n));
          }
}

void pairing(Outcome& o, const Options&) {
  for (int n : {2, 3})
    for (int k = 1; k <= 6; ++k)
      for (int j = 0; j < k; ++j) {
        const int d = j * (n - 1);
        auto p = forest::pairing_matrix(k, n, d);
        o.require(p.rows() == p.cols(), "square pairing at " + kn(k, n));
        auto snf = linalg::smith_normal_form(p);
        bool unit = snf.rank == p.rows();
        for (const auto& f : snf.invariant_factors) unit = unit && abs(f) == 1;
        o.require(unit, "unimodular pairing at " + kn(k, n) + " degree " + std::to_string(d));
        if (k <= 5) {
          auto rows = forest::tall_basis(k, n, d);
          auto cols = arnold::admissible_basis(k, n, d);
          for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols.size(); ++c)
              o.require(p.get(r, c) == oracle::planetary_pairing(rows[r], cols[c], n),
                        "pairing entry vs tree oracle at " + kn(k, n));
        }
      }
}

void forest_oracle(Outcome& o, const Options&) {
  std::mt19937_64 rng(20240611);
  for (int n : {2, 3})
    for (int k = 1; k <= 6; ++k)
      for (int trial = 0; trial < 500; ++trial) {
        auto f = oracle::random_forest(k, rng);
        auto h = forest::rewrite_to_tall(f, n);
        bool tall = true;
        for (const auto& [g, c] : h.terms()) tall = tall && forest::is_tall(g);
        o.require(tall, "rewrite produced a non-tall forest for " + forest::forest_to_string(f));
        o.require(oracle::tensor_image(f, n) == oracle::tensor_image(h.terms(), n),
                  "tensor-algebra image differs for " + forest::forest_to_string(f) + " " + kn(k, n));
      }
  for (int k = 1; k <= 8; ++k)
    o.require(Integer(forest::tall_basis(k, 2, k - 1).size()) == oracle::factorial(k - 1),
              "tall tree count at k=" + std::to_string(k));
  for (int k = 1; k <= 7; ++k)
    for (int j = 0; j < k; ++j)
      o.require(Integer(forest::tall_basis(k, 3, 2 * j).size()) == oracle::tall_forest_count(k, k - j),
                "tall forest count at k=" + std::to_string(k));
}

void unordered(Outcome& o, const Options&) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 6; ++k) {
      GradedDims expected{{0, 1}};
      if (k >= 2 && (n - 1) % 2 == 1) expected.set(n - 1, 1);
      o.require(forest::coinvariants_dims(k, n, 0) == expected, "coinvariants at " + kn(k, n));
    }
}

void ce_example(Outcome& o, const Options&) {
  auto a = ce::betti(ce::GMLie::build(ce::preset("punctured-torus")), 2);
  auto b = ce::betti(ce::GMLie::build(ce::preset("twice-punctured-plane")), 2);
  o.require(a[2] == 2, "punctured torus, degree 2 of weight 2 is " + std::to_string(a[2]));
  o.require(b[2] == 3, "twice-punctured plane, degree 2 of weight 2 is " + std::to_string(b[2]));
  o.note << "punctured-torus " << a.to_string() << ", twice-punctured-plane " << b.to_string() << "; ";
}

void odd_sym(Outcome& o, const Options& opts) {
  for (std::string name : {"euclidean-3", "solid-torus", "handlebody-0", "handlebody-1", "handlebody-2", "handlebody-3",
                           "r3-minus-1", "r3-minus-2", "r3-minus-3"}) {
    auto m = ce::preset(name);
    auto table = ce::betti_table(ce::GMLie::build(m), 8, opts.workers);
    for (int k = 0; k <= 8; ++k)
      o.require(table.by_weight.at(k) == oracle::sym_power(m.manifold_homology(), k),
                name + " weight " + std::to_string(k));
    if (opts.log) *opts.log << "  [7] " << name << " done\n";
  }
}

void stability(Outcome& o, const Options& opts) {
  int used = 0;
  for (const auto& name : ce::preset_catalog()) {
    auto m = ce::preset(name);
    if (m.ambient_dim() < 3) continue;
    auto g = ce::GMLie::build(m);
    if (g.point_slot() < 0) continue;
    auto rep = ce::stability_report(g, 7);
    o.require(rep.chain_maps_ok, name + ": chain map / surjectivity / kernel description");
    o.require(rep.stable_range_holds(), name + ": isomorphism in the range i <= k");
    ++used;
    if (opts.log) *opts.log << "  [8] " << name << " done\n";
  }
  o.note << used << " presets; ";
}

void euler(Outcome& o, const Options& opts) {
  for (const auto& name : ce::preset_catalog()) {
    auto e = ce::euler_series(ce::GMLie::build(ce::preset(name)), 10);
    o.require(e.agree, name + ": chain Euler characteristic vs Sym series");
    if (opts.log) *opts.log << "  [9] " << name << " done\n";
  }
}

void labeled(Outcome& o, const Options&) {
  int used = 0;
  for (const auto& name : ce::preset_catalog()) {
    auto m = ce::preset(name);
    if (m.ambient_dim() % 2 == 0) continue;
    o.require(ce::labeled_series_check(m, 2, 20).equal, name + ": labeled series");
    ++used;
  }
  o.note << used << " odd-dimensional presets; ";
}

void vanishing(Outcome& o, const Options& opts) {
  std::vector<std::pair<std::uint32_t, int>> cases{{3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {5, 4}, {7, 2}};
  for (auto [p, n] : cases) {
    auto rep = modp::verify_vanishing(p, n);
    o.require(rep.holds(), "vanishing at p=" + std::to_string(p) + " n=" + std::to_string(n));
    if (opts.log) *opts.log << "  [11] p=" << p << " n=" << n << " done\n";
  }
}

void invariants(Outcome& o, const Options& opts) {
  for (std::uint32_t p : {5u, 7u})
    for (int n : {2, 3, 4}) {
      auto got = modp::invariants_sigma_p(p, n);
      o.require(got == modp::invariants_closed_form(n),
                "invariants at p=" + std::to_string(p) + " n=" + std::to_string(n) + ": " + got.to_string());
      if (opts.log) *opts.log << "  [12] p=" << p << " n=" << n << " done\n";
    }
}

void tate_swan(Outcome& o, const Options&) {
  auto check = [&](const modp::GModule& v) { o.require(modp::tate(v, -4, 4).two_periodic(), v.name()); };
  for (std::uint32_t p : {3u, 5u})
    for (int n : {2, 3, 4})
      for (int j = 0; j < static_cast<int>(p); ++j)
        for (bool twist : {false, true}) check(modp::conf_module(p, n, j * (n - 1), twist));
  for (int j = 0; j < 7; ++j) check(modp::conf_module(7, 2, j));
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const int s = modp::swan_period(p);
    o.require(s == 2 * static_cast<int>(p - 1), "swan period at p=" + std::to_string(p) + " is " + std::to_string(s));
  }
}

void sigma3(Outcome& o, const Options&) {
  std::vector<modp::GModule> modules{modp::GModule::trivial(3), modp::GModule::trivial(3, true)};
  for (int n : {2, 3})
    for (int j = 0; j < 3; ++j)
      for (bool twist : {false, true}) modules.push_back(modp::conf_module(3, n, j * (n - 1), twist));
  for (const auto& v : modules) {
    auto stable = modp::sigma_p_cohomology_stable(v, 4);
    auto bar = modp::bar_cohomology(v, 4);
    o.require(stable == bar, v.name() + ": stable " + stable.to_string() + " vs bar " + bar.to_string());
  }
  o.note << modules.size() << " modules; ";
}

void braids(Outcome& o, const Options&) {
  for (int k = 2; k <= 10; ++k) {
    auto pres = braid::braid_presentation(k);
    for (const auto& r : pres.relators())
      o.require(braid::artin_action(r, k).is_identity(), "braid relator " + pres.word_to_string(r));
  }
  for (int k = 3; k <= 6; ++k) {
    auto rep = braid::verify_braid_relations(k);
    for (const auto& c : rep.checks) o.require(c.passed(), "k=" + std::to_string(k) + " " + c.family + ": " + c.statement);
    o.require(rep.all_passed(), "relation report at k=" + std::to_string(k));
  }
  {
    auto s3 = braid::symmetric_presentation(3);
    Permutation swap{2, 1};
    auto t = braid::coset_table_from_hom(s3, {swap, swap}, braid::SubgroupKind::Kernel);
    auto sub = braid::subgroup_presentation(s3, t, braid::schreier_transversal(t));
    auto ab = braid::abelianize(sub.presentation).to_string();
    o.require(ab == "Z/3", "A_3 abelianizes to " + ab);
  }
  {
    auto b3 = braid::braid_presentation(3);
    auto t = braid::coset_table_from_hom(b3, {transposition(3, 1, 2), transposition(3, 2, 3)}, braid::SubgroupKind::Kernel);
    auto sub = braid::subgroup_presentation(b3, t, braid::schreier_transversal(t));
    auto ab = braid::abelianize(sub.presentation).to_string();
    o.require(ab == "Z^3", "P_3 abelianizes to " + ab);
  }
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "Poincare polynomial of the admissible basis", 5, poincare},
      {2, "Arnold relation reduces to zero", 5, arnold_relation},
      {3, "perfect pairing is unimodular", 30, pairing},
      {4, "forest rewriting vs tensor-algebra oracle; tall counts", 60, forest_oracle},
      {5, "rational unordered Betti numbers", 60, unordered},
      {6, "CE worked example (weight 2)", 1, ce_example},
      {7, "odd-dimensional manifolds: CE homology = Sym", 120, odd_sym},
      {8, "homological stability by d/dx", 120, stability},
      {9, "Euler characteristics vs Sym series", 60, euler},
      {10, "labeled configuration series", 60, labeled},
      {11, "vanishing of C_p homology off the ends", 180, vanishing},
      {12, "Sigma_p invariants", 300, invariants},
      {13, "Tate 2-periodicity and Swan period", 60, tate_swan},
      {14, "Sigma_3 stable elements vs bar complex", 60, sigma3},
      {15, "braid identities and subgroup presentations", 30, braids},
  };
  return all;
}

}  // namespace

int criterion_count() { return static_cast<int>(criteria().size()); }

std::vector<CriterionResult> run(const Options& opts) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!opts.only.empty() && !opts.only.count(c.id)) continue;
    if (opts.log) *opts.log << "running criterion " << c.id << ": " << c.title << "\n" << std::flush;
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(o, opts);
    } catch (const Error& e) {
      o.ok = false;
      o.note << "error [" << e.code() << "]: " << e.what();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CriterionResult r{c.id, c.title, o.ok, secs, c.budget, ""};
    r.detail = o.note.str();
    if (!r.detail.empty() && r.detail.back() != ' ') r.detail += "; ";
    r.detail += std::to_string(o.checks) + " checks";
    if (opts.log) *opts.log << format_line(r) << "\n" << std::flush;
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed() ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << "  (" << std::fixed;
  s.precision(2);
  s << r.seconds << " s / budget " << r.budget_seconds << " s";
  if (r.math_ok && !r.passed()) s << ", over budget";
  s << ")  " << r.detail;
  return s.str();
}

}  // namespace confspace::acceptance
