#include "confspace/ce.hpp"
#include "confspace/error.hpp"
#include "confspace/presets.hpp"
#include "doctest.h"

using namespace confspace;
using namespace confspace::ce;

namespace {

nlohmann::json algebra_doc(bool commutative) {
  return {{"name", "bad"},
          {"ambient_dim", 2},
          {"basis", {{{"name", "x"}, {"degree", 1}}, {{"name", "y"}, {"degree", 1}}, {{"name", "z"}, {"degree", 2}}}},
          {"products",
           {{{"left", "x"}, {"right", "y"}, {"result", {{{"basis", "z"}, {"coeff", 1}}}}},
            {{"left", "y"}, {"right", "x"}, {"result", {{{"basis", "z"}, {"coeff", commutative ? -1 : 1}}}}}}}};
}

std::vector<std::string> names(const CEComplexBlock& b, const GMLie& g, int degree) {
  std::vector<std::string> out;
  if (!b.basis.count(degree)) return out;
  for (const auto& e : b.basis.at(degree)) out.push_back(b.monomial_name(g, e));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("loading algebras") {
  auto pt = preset("punctured-torus");
  CHECK(pt.ambient_dim() == 2);
  REQUIRE(pt.basis().size() == 3);
  const int x = pt.index_of("x"), y = pt.index_of("y"), z = pt.index_of("z");
  CHECK(pt.product(x, y) == std::vector<ProductTerm>{{z, 1}});
  CHECK(pt.product(y, x) == std::vector<ProductTerm>{{z, -1}});
  CHECK(pt.product(x, x).empty());
  CHECK(pt.manifold_homology() == GradedDims{{0, 1}, {1, 2}});

  auto tp = preset("twice-punctured-plane");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(tp.product(i, j).empty());

  CHECK_NOTHROW(load_algebra(algebra_doc(true)));
  CHECK_THROWS_AS(load_algebra(algebra_doc(false)), ValidationError);
  auto overflow = algebra_doc(true);
  overflow["basis"][2]["degree"] = 3;
  CHECK_THROWS_AS(load_algebra(overflow), ValidationError);
  CHECK_THROWS_AS(preset("no-such-manifold"), InvalidArgument);

  // round trip
  auto again = load_algebra(pt.to_json());
  CHECK(betti(GMLie::build(again), 3) == betti(GMLie::build(pt), 3));
}

TEST_CASE("the Lie algebra of a manifold") {
  auto r3 = GMLie::build(preset("euclidean-3"));
  REQUIRE(r3.slots().size() == 1);
  CHECK(r3.slots()[0].degree == -1);
  CHECK(r3.point_slot() == 0);
  CHECK(r3.bracket(0, 0).empty());

  auto g = GMLie::build(preset("punctured-torus"));
  REQUIRE(g.slots().size() == 6);
  std::map<std::string, int> deg;
  for (const auto& s : g.slots()) deg[s.name] = s.degree;
  CHECK(deg == std::map<std::string, int>{{"x", 0}, {"y", 0}, {"z", -1}, {"x~", 1}, {"y~", 1}, {"z~", 0}});
  auto br = g.bracket(g.slot_of("x"), g.slot_of("y"));
  REQUIRE(br.size() == 1);
  CHECK(br[0].first == g.slot_of("z~"));
  CHECK(abs(br[0].second) == 1);
  CHECK(g.slots()[static_cast<std::size_t>(g.point_slot())].name == "z");

  auto h = GMLie::build(preset("twice-punctured-plane"));
  CHECK(h.slots().size() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(h.bracket(static_cast<int>(i), static_cast<int>(j)).empty());
}

TEST_CASE("weight-2 blocks for the surfaces") {
  auto g = GMLie::build(preset("punctured-torus"));
  auto b = ce_block(g, 2);
  CHECK(b.dim(2) == 3);
  CHECK(b.dim(1) == 3);
  CHECK(b.dim(0) == 1);
  CHECK(b.dim(3) == 0);
  CHECK(names(b, g, 0) == std::vector<std::string>{"z^2"});
  CHECK(linalg::rank(linalg::to_rational(b.d(2))) == 1);
  CHECK(b.d(1).is_zero_matrix());
  const auto xy = b.index_of(2, [&] {
    Exponents e(g.slots().size(), 0);
    e[static_cast<std::size_t>(g.slot_of("x"))] = 1;
    e[static_cast<std::size_t>(g.slot_of("y"))] = 1;
    return e;
  }());
  Exponents zt(g.slots().size(), 0);
  zt[static_cast<std::size_t>(g.slot_of("z~"))] = 1;
  CHECK(abs(b.d(2).get(b.index_of(1, zt), xy)) == 1);

  auto h = GMLie::build(preset("twice-punctured-plane"));
  auto c = ce_block(h, 2);
  CHECK(c.dim(2) == 3);
  CHECK(c.dim(1) == 3);
  CHECK(c.dim(0) == 1);
  CHECK(c.d(2).is_zero_matrix());

  auto zero = ce_block(g, 0);
  CHECK(zero.dim(0) == 1);
  CHECK(homology_dims(zero) == GradedDims{{0, 1}});
}

TEST_CASE("Betti numbers") {
  CHECK(betti(GMLie::build(preset("punctured-torus")), 2)[2] == 2);
  CHECK(betti(GMLie::build(preset("twice-punctured-plane")), 2)[2] == 3);
  auto r3 = GMLie::build(preset("euclidean-3"));
  for (int k = 0; k <= 6; ++k) CHECK(betti(r3, k) == GradedDims{{0, 1}});
  auto r2 = GMLie::build(preset("euclidean-2"));
  for (int k = 2; k <= 6; ++k) CHECK(betti(r2, k) == (GradedDims{{0, 1}, {1, 1}}));
  auto r4 = GMLie::build(preset("euclidean-4"));
  CHECK(betti(r4, 3) == (GradedDims{{0, 1}, {3, 1}}));
  // B_2(S^2) is rationally a point
  CHECK(betti(GMLie::build(preset("closed-surface-0")), 2) == GradedDims{{0, 1}});

  auto table = betti_table(GMLie::build(preset("punctured-torus")), 4, 2);
  CHECK(table.by_weight.size() == 5);
  CHECK(table.by_weight.at(2)[2] == 2);
  CHECK(table.to_csv().rfind("k,i,dim", 0) == 0);
}

TEST_CASE("every preset block squares to zero and ignores the bracket sign") {
  for (const auto& name : preset_catalog()) {
    CAPTURE(name);
    auto a = preset(name);
    auto g = GMLie::build(a);
    auto neg = GMLie::build(a, true);
    for (int k = 0; k <= 12; ++k) CHECK_NOTHROW(ce_block(g, k));  // d^2 = 0 is checked on construction
    for (int k = 0; k <= 6; ++k) CHECK(betti(g, k) == betti(neg, k));
  }
}

TEST_CASE("Euler characteristics") {
  for (const auto& name : preset_catalog()) {
    CAPTURE(name);
    auto g = GMLie::build(preset(name));
    auto e = euler_series(g, 10);
    CHECK(e.agree);
    for (int k = 0; k <= 10; ++k) CHECK(e.by_chains.coeff(0, k) == betti(g, k).euler_characteristic());
  }
  auto e = euler_series(GMLie::build(preset("punctured-torus")), 4);
  CHECK(e.by_chains.coeff(0, 2) == 1);
  auto r3 = euler_series(GMLie::build(preset("euclidean-3")), 5);
  for (int k = 0; k <= 5; ++k) CHECK(r3.by_sym.coeff(0, k) == 1);
}

TEST_CASE("stabilization by the point class") {
  auto r3 = GMLie::build(preset("euclidean-3"));
  for (int k = 0; k <= 4; ++k) {
    auto m = stabilization_map(r3, r3.point_slot(), k);
    CHECK(m.chain_map);
    CHECK(m.surjective);
    CHECK(m.kernel_is_x_free);
    const auto& d0 = m.maps.at(0);
    REQUIRE(d0.rows() == 1);
    REQUIRE(d0.cols() == 1);
    CHECK(d0.get(0, 0) == k + 1);
  }
  auto hb = GMLie::build(preset("handlebody-2"));
  for (int k = 0; k <= 4; ++k) {
    auto m = stabilization_map(hb, hb.point_slot(), k);
    CHECK(m.chain_map);
    CHECK(m.surjective);
    CHECK(m.kernel_is_x_free);
  }
  CHECK_THROWS_AS(stabilization_map(hb, 99, 2), InvalidArgument);

  auto rep = stability_report(hb, 6);
  CHECK(rep.chain_maps_ok);
  CHECK(rep.stable_range_holds());
  for (const auto& e : stability_report(r3, 5).entries) CHECK(e.iso);
  CHECK_THROWS_AS(stability_report(GMLie::build(preset("punctured-torus")), 3), HypothesisViolation);
}

TEST_CASE("odd-dimensional manifolds: symmetric powers of homology") {
  CHECK(sym_homology_odd(GradedDims{{0, 1}}, 5) == GradedDims{{0, 1}});
  for (int g = 0; g <= 4; ++g) {
    GradedDims h{{0, 1}, {1, g}};
    GradedDims expected{{0, 1}, {1, g}, {2, g * (g - 1) / 2}};
    CHECK(sym_homology_odd(h, 2) == expected);
  }
  for (const auto& name : preset_catalog()) {
    auto a = preset(name);
    if (a.ambient_dim() % 2 == 0) continue;
    CAPTURE(name);
    auto g = GMLie::build(a);
    for (int k = 0; k <= 8; ++k) CHECK(betti(g, k) == sym_homology_odd(a.manifold_homology(), k));
  }
}

TEST_CASE("loop spaces of odd spheres") {
  CHECK(loopspace_homology(0, 3, 10) == GradedDims{{0, 1}, {3, 1}});
  CHECK(loopspace_homology(1, 3, 8) == GradedDims{{0, 1}, {2, 1}, {4, 1}, {6, 1}, {8, 1}});
  CHECK(loopspace_homology(2, 3, 10) == GradedDims{{0, 1}, {1, 1}});
  CHECK_THROWS_AS(loopspace_homology(1, 4, 10), UnsupportedDomain);
  CHECK_THROWS_AS(loopspace_homology(3, 3, 10), InvalidArgument);
}

TEST_CASE("labeled configuration series") {
  auto r3 = labeled_series_check(preset("euclidean-3"), 2, 12);
  CHECK(r3.equal);
  for (int k = 0; 2 * k <= 12; ++k) CHECK(r3.lhs.coeff(2 * k, k) == 1);
  CHECK(labeled_series_check(preset("handlebody-1"), 2, 20).equal);
  CHECK(labeled_series_check(preset("handlebody-2"), 4, 16).equal);
  auto a = labeled_series_check(preset("s1xr2"), 2, 16);
  auto b = labeled_series_check(preset("solid-torus"), 2, 16);
  CHECK(a.equal);
  CHECK(series_equal(a.lhs, b.lhs));
  CHECK(series_equal(a.rhs, b.rhs));
  CHECK_THROWS_AS(labeled_series_check(preset("euclidean-3"), 3, 10), HypothesisViolation);
  CHECK_THROWS_AS(labeled_series_check(preset("punctured-torus"), 2, 10), HypothesisViolation);
}
