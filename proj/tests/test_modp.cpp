#include "confspace/error.hpp"
#include "confspace/modp.hpp"
#include "doctest.h"

using namespace confspace;
using namespace confspace::modp;

namespace {

GradedDims ones(int s_max) {
  GradedDims d;
  for (int s = 0; s <= s_max; ++s) d.set(s, 1);
  return d;
}

std::vector<int> coefficients(const PoincareSeries& s, int max_degree) {
  std::vector<int> out;
  for (int d = 0; d <= max_degree; ++d) out.push_back(static_cast<int>(s.coeff(d).get_si()));
  return out;
}

}  // namespace

TEST_CASE("configuration modules") {
  CHECK(conf_module(3, 2, 0).dim() == 1);
  CHECK(conf_module(3, 2, 2).dim() == 2);
  CHECK(conf_module(5, 3, 4).dim() == 35);
  CHECK(conf_module(5, 2, 4).dim() == 24);
  for (std::uint32_t p : {3u, 5u})
    for (int n : {2, 3})
      for (int j = 0; j < static_cast<int>(p); ++j)
        for (bool twist : {false, true}) {
          auto v = conf_module(p, n, j * (n - 1), twist);
          CHECK_NOTHROW(v.validate(true));
          CHECK(v.rho(long_cycle(static_cast<int>(p))) == v.sigma());
        }
  // degree 0 is the trivial module, or the sign module when twisted
  auto s = conf_module(3, 2, 0, true);
  CHECK(s.taus()[0].at(0, 0) == 2);
  CHECK_THROWS_AS(conf_module(4, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(conf_module(3, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(conf_module(3, 2, 3), InvalidArgument);
  CHECK_NOTHROW(GModule::trivial(5).validate(true));
  CHECK_NOTHROW(GModule::permutation(5, true).validate(true));
}

TEST_CASE("periodic complex composites vanish") {
  for (std::uint32_t p : {3u, 5u})
    for (int n : {2, 3, 4})
      for (int j = 0; j < static_cast<int>(p); ++j) {
        auto v = conf_module(p, n, j * (n - 1));
        CHECK(cyclic_data(v).composites_vanish);
        CHECK((v.norm() * (v.sigma() - DenseMatrixFp::identity(v.dim(), p))).is_zero());
      }
}

TEST_CASE("cohomology and homology of the cyclic group") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    CHECK(cyclic_cohomology(GModule::trivial(p), 4) == ones(4));
    CHECK(cyclic_homology(GModule::trivial(p), 3) == ones(3));
    CHECK(cyclic_cohomology(GModule::permutation(p), 6) == GradedDims{{0, 1}});
    CHECK(cyclic_homology(GModule::permutation(p), 6) == GradedDims{{0, 1}});
  }
  auto v = conf_module(3, 2, 2);
  auto c = cyclic_data(v);
  auto h = cyclic_cohomology(v, 6);
  auto hom = cyclic_homology(v, 6);
  CHECK(h[0] == static_cast<std::int64_t>(v.dim() - c.rank_sigma_minus_one));
  CHECK(hom[0] == static_cast<std::int64_t>(v.dim() - c.rank_sigma_minus_one));
  for (int s = 1; s + 2 <= 6; ++s) CHECK(h[s] == h[s + 2]);
  // dense kernel of sigma - 1 independently
  auto fixed = (v.sigma() - DenseMatrixFp::identity(2, 3)).kernel_basis();
  CHECK(h[0] == static_cast<std::int64_t>(fixed.cols()));
}

TEST_CASE("Tate cohomology") {
  for (std::uint32_t p : {3u, 5u}) {
    auto t = tate(GModule::trivial(p), -6, 6);
    for (int s = -6; s <= 6; ++s) CHECK(t.dims.at(s) == 1);
    auto f = tate(GModule::permutation(p), -6, 6);
    for (int s = -6; s <= 6; ++s) CHECK(f.dims.at(s) == 0);
    for (int n : {2, 3})
      for (int j = 0; j < static_cast<int>(p); ++j)
        for (bool twist : {false, true}) {
          auto v = conf_module(p, n, j * (n - 1), twist);
          auto td = tate(v, -8, 8);
          CHECK(td.two_periodic());
          CHECK(td.periodic(2 * (static_cast<int>(p) - 1)));
          auto h = cyclic_cohomology(v, 8);
          auto hom = cyclic_homology(v, 8);
          for (int s = 1; s <= 8; ++s) CHECK(td.dims.at(s) == h[s]);
          for (int s = -8; s < -1; ++s) CHECK(td.dims.at(s) == hom[-s - 1]);
        }
  }
  CHECK_THROWS_AS(tate(GModule::trivial(3), 2, 1), InvalidArgument);
}

TEST_CASE("vanishing in the interior degrees") {
  auto r = verify_vanishing(3, 3);
  CHECK(r.holds());
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].t == 2);
  auto q = verify_vanishing(5, 2);
  CHECK(q.holds());
  CHECK(q.entries.size() == 3);
  for (const auto& e : q.entries) CHECK(e.orbit_certificate);
  auto two = verify_vanishing(2, 3);
  CHECK(two.holds());
  CHECK(two.entries.empty());
  for (std::uint32_t p : {3u, 5u})
    for (int n : {2, 3, 4}) CHECK(verify_vanishing(p, n).holds());
}

TEST_CASE("symmetric-group invariants") {
  CHECK(invariants_sigma_p(5, 2) == GradedDims{{0, 1}, {1, 1}});
  CHECK(invariants_sigma_p(5, 3) == GradedDims{{0, 1}});
  // outside the p > 3 range: over F_3 the top piece keeps a one-dimensional quotient
  CHECK(invariants_sigma_p(3, 2) == GradedDims{{0, 1}, {1, 1}, {2, 1}});
  CHECK(invariants_closed_form(4) == GradedDims{{0, 1}, {3, 1}});
  CHECK(invariants_closed_form(3) == GradedDims{{0, 1}});
  for (std::uint32_t p : {5u, 7u})
    for (int n : {2, 3, 4}) {
      auto inv = invariants_sigma_p(p, n);
      CHECK(inv == invariants_closed_form(n));
      CHECK(inv[(n - 1) * (static_cast<int>(p) - 1)] == 0);  // top degree
    }
}

TEST_CASE("closed-form series") {
  CHECK(coefficients(nakaoka_series(3, 8), 8) == std::vector<int>{1, 0, 0, 1, 1, 0, 0, 1, 1});
  CHECK(coefficients(nakaoka_series(5, 8), 8) == std::vector<int>{1, 0, 0, 0, 0, 0, 0, 1, 1});
  CHECK(coefficients(cohen_series(5, 2, 12), 12) == std::vector<int>{1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(coefficients(cohen_series(5, 3, 8), 8) == std::vector<int>{1, 0, 0, 0, 0, 0, 0, 1, 1});
  for (std::uint32_t p : {5u, 7u})
    for (int n : {2, 3, 4}) {
      auto c = cohen_series(p, n, 40);
      CHECK(c.coeff(0) == 1);
      for (const auto& [key, v] : c.terms()) CHECK(key.second <= n * static_cast<int>(p));
    }
  CHECK_THROWS_AS(cohen_series(3, 2, 8), HypothesisViolation);
}

TEST_CASE("stable elements against the bar complex") {
  CHECK(primitive_root(3) == 2);
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(bar_cohomology(GModule::trivial(3), 0) == GradedDims{{0, 1}});
  CHECK(bar_cohomology(GModule::trivial(3), 4) == (GradedDims{{0, 1}, {3, 1}, {4, 1}}));
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto stable = sigma_p_cohomology_stable(GModule::trivial(p), 12);
    for (int s = 0; s <= 12; ++s) CHECK(stable[s] == nakaoka_series(p, 12).coeff(s));
    CHECK(sigma_p_cohomology_stable(GModule::permutation(p), 6) == GradedDims{{0, 1}});
  }
  for (bool twist : {false, true}) {
    CHECK(sigma_p_cohomology_stable(GModule::trivial(3, twist), 4) == bar_cohomology(GModule::trivial(3, twist), 4));
    for (int n : {2, 3})
      for (int j = 0; j < 3; ++j) {
        auto v = conf_module(3, n, j * (n - 1), twist);
        CHECK(sigma_p_cohomology_stable(v, 4) == bar_cohomology(v, 4));
      }
  }
  CHECK_THROWS_AS(bar_cohomology(GModule::trivial(5), 2), UnsupportedDomain);
  CHECK_THROWS_AS(bar_cohomology(GModule::trivial(3), 5), InvalidArgument);
}

TEST_CASE("Swan period") {
  CHECK(swan_period(3) == 4);
  CHECK(swan_period(5) == 8);
  CHECK(swan_period(7) == 12);
  CHECK_THROWS_AS(swan_period(13), UnsupportedDomain);
}
