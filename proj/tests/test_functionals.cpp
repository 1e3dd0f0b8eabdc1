#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "iv/fixtures.hpp"
#include "iv/functionals.hpp"

using namespace iv;

namespace {

Distribution four_point() { return DiscreteDist{{0, 1, 2, 3}, {0.1, 0.4, 0.4, 0.1}}; }

Distribution uniform01() { return PiecewiseUniformDist{{0.0, 1.0}, {1.0}}; }

Distribution gapped() { return PiecewiseUniformDist{{0.0, 1.0, 2.0, 5.0}, {0.8, 0.0, 0.2}}; }

// flat stretches at both quantile levels for alpha = 0.1
Distribution plateau() {
  return PiecewiseUniformDist{{0.0, 1.0, 2.0, 3.0, 4.0, 5.0}, {0.05, 0.0, 0.9, 0.0, 0.05}};
}

}  // namespace

TEST_CASE("coverage of closed intervals") {
  CHECK(coverage(four_point(), {1.0, 2.0}) == doctest::Approx(0.8));
  CHECK(coverage(four_point(), {1.0, 1.0}) == doctest::Approx(0.4));
  CHECK(coverage(uniform01(), {0.25, 0.75}) == doctest::Approx(0.5));
  CHECK(coverage(gapped(), {0.0, 1.0}) == doctest::Approx(0.8));
}

TEST_CASE("equal-tailed interval of the four-point law") {
  auto r = eti(four_point(), 0.2);
  CHECK(r.lower_set.lower == 0.0);
  CHECK(r.lower_set.upper == 1.0);
  CHECK(r.upper_set.lower == 2.0);
  CHECK(r.upper_set.upper == 3.0);
  CHECK(r.enumerable);
  CHECK(r.result.families.size() == 4);
  for (const Interval& iv :
       {Interval{1, 2}, Interval{0, 2}, Interval{1, 3}, Interval{0, 3}})
    CHECK(r.contains(four_point(), iv));
  CHECK_FALSE(r.contains(four_point(), {0.0, 1.0}));
  CHECK_FALSE(r.contains(four_point(), {2.0, 3.0}));
  CHECK_FALSE(r.contains(four_point(), {0.5, 2.0}));
}

TEST_CASE("equal-tailed interval of continuous laws") {
  auto r = eti(uniform01(), 0.2);
  CHECK(r.enumerable);
  REQUIRE(r.result.families.size() == 1);
  CHECK(r.result.families[0].lower_lo == doctest::Approx(0.1));
  CHECK(r.result.families[0].length == doctest::Approx(0.8));
  CHECK(r.contains(uniform01(), {0.1, 0.9}));
  CHECK_FALSE(r.contains(uniform01(), {0.1, 0.8}));

  auto p = eti(plateau(), 0.1);
  CHECK_FALSE(p.enumerable);
  CHECK(p.lower_set.lower == doctest::Approx(1.0));
  CHECK(p.lower_set.upper == doctest::Approx(2.0));
  CHECK(p.upper_set.lower == doctest::Approx(3.0));
  CHECK(p.upper_set.upper == doctest::Approx(4.0));
  CHECK(p.contains(plateau(), {1.5, 3.5}));
  CHECK(p.contains(plateau(), {1.0, 4.0}));
  CHECK_FALSE(p.contains(plateau(), {0.9, 3.5}));
  CHECK(p.result.length == doctest::Approx(3.0));
}

TEST_CASE("shortest interval") {
  auto r = si(four_point(), 0.2);
  REQUIRE(r.families.size() == 1);
  CHECK(r.families[0].lower_lo == 1.0);
  CHECK(r.families[0].length == 1.0);
  CHECK(r.coverage == doctest::Approx(0.8));

  auto u = si(uniform01(), 0.2);
  REQUIRE(u.families.size() == 1);
  CHECK(u.families[0].lower_lo == doctest::Approx(0.0));
  CHECK(u.families[0].lower_hi == doctest::Approx(0.2));
  CHECK(u.families[0].length == doctest::Approx(0.8));
  CHECK(u.contains({0.1, 0.9}, 1e-6));
  CHECK_FALSE(u.contains({0.1, 0.95}, 1e-6));

  auto g = si(gapped(), 0.2);
  REQUIRE(g.families.size() == 1);
  CHECK(g.families[0].lower_lo == doctest::Approx(0.0));
  CHECK(g.families[0].lower_hi == doctest::Approx(0.0));
  CHECK(g.families[0].length == doctest::Approx(1.0));
}

TEST_CASE("modal interval, integer windows") {
  auto lows = mi_lower_discrete(four_point(), 1);
  REQUIRE(lows.size() == 1);
  CHECK(lows[0] == 1);
  auto r = mi(four_point(), 0.5);
  REQUIRE(r.families.size() == 1);
  CHECK(r.families[0].lower_lo == 1.0);
  CHECK(r.coverage == doctest::Approx(0.8));

  // every window of length 3 catches a lone atom at 7
  Distribution lone = DiscreteDist{{7}, {1.0}};
  auto wide = mi_lower_discrete(lone, 3);
  REQUIRE(wide.size() == 4);
  CHECK(wide.front() == 4);
  CHECK(wide.back() == 7);
  auto rf = mi(lone, 1.5);
  CHECK(rf.families.size() == 4);
  CHECK(rf.coverage == doctest::Approx(1.0));
}

TEST_CASE("modal interval, midpoint windows") {
  auto mids = mi_mid_continuous(uniform01(), 0.25);
  REQUIRE(mids.size() == 1);
  CHECK(mids[0].lower == doctest::Approx(0.25));
  CHECK(mids[0].upper == doctest::Approx(0.75));
  auto r = mi(uniform01(), 0.25);
  REQUIRE(r.families.size() == 1);
  CHECK(r.families[0].lower_lo == doctest::Approx(0.0));
  CHECK(r.families[0].lower_hi == doctest::Approx(0.5));
  CHECK(r.families[0].length == doctest::Approx(0.5));
  CHECK(r.coverage == doctest::Approx(0.5));

  auto g = mi_mid_continuous(gapped(), 0.5);
  REQUIRE(g.size() == 1);
  CHECK(g[0].lower == doctest::Approx(0.5));
  CHECK(g[0].upper == doctest::Approx(0.5));
}

TEST_CASE("guaranteed coverage members of the four-point law") {
  auto r = gci(four_point(), 0.2);
  REQUIRE(r.members.size() == 3);
  auto has = [&](double a, double b) {
    return std::any_of(r.members.begin(), r.members.end(), [&](const Interval& iv) {
      return iv.lower == a && iv.upper == b;
    });
  };
  CHECK(has(1, 2));
  CHECK(has(0, 2));
  CHECK(has(1, 3));
  CHECK_FALSE(has(0, 3));
  CHECK(gci_contains(four_point(), 0.2, {1.0, 2.0}));
  CHECK(gci_contains(four_point(), 0.2, {0.0, 2.0}));
  CHECK_FALSE(gci_contains(four_point(), 0.2, {0.0, 3.0}));
  CHECK_FALSE(gci_contains(four_point(), 0.2, {1.0, 1.0}));
}

TEST_CASE("guaranteed coverage components of continuous laws") {
  auto u = gci(uniform01(), 0.2);
  REQUIRE(u.components.size() == 1);
  CHECK_FALSE(u.components[0].rectangular);
  CHECK(u.components[0].b_slope == doctest::Approx(1.0));
  CHECK(u.components[0].a_range.lower == doctest::Approx(0.0));
  CHECK(u.components[0].a_range.upper == doctest::Approx(0.2));
  REQUIRE(u.families.size() == 1);
  CHECK(u.families[0].length == doctest::Approx(0.8));
  CHECK(gci_contains(uniform01(), 0.2, {0.05, 0.85}));
  CHECK_FALSE(gci_contains(uniform01(), 0.2, {0.0, 0.9}));

  // zero-density stretch gives a rectangular component plus a sloped one
  auto g = gci(gapped(), 0.2);
  bool saw_rect = false, saw_slope = false;
  for (const auto& comp : g.components) {
    if (comp.rectangular) {
      saw_rect = true;
      CHECK(comp.a_range.upper == doctest::Approx(0.0));
      CHECK(comp.b_range.lower == doctest::Approx(1.0));
      CHECK(comp.b_range.upper == doctest::Approx(2.0));
    } else if (comp.b_slope > 1.5) {
      saw_slope = true;
      CHECK(comp.b_slope == doctest::Approx(12.0));
      CHECK(comp.a_range.upper == doctest::Approx(0.25));
    }
    // every component corner is itself a member
    CHECK(gci_contains(gapped(), 0.2,
                       {comp.a_range.lower,
                        comp.rectangular ? comp.b_range.lower
                                         : comp.b_intercept + comp.b_slope * comp.a_range.lower}));
    CHECK(gci_contains(gapped(), 0.2,
                       {comp.a_range.upper,
                        comp.rectangular ? comp.b_range.upper
                                         : comp.b_intercept + comp.b_slope * comp.a_range.upper}));
  }
  CHECK(saw_rect);
  CHECK(saw_slope);
  CHECK(gci_contains(gapped(), 0.2, {0.0, 1.0}));
  CHECK(gci_contains(gapped(), 0.2, {0.0, 1.5}));
  CHECK(gci_contains(gapped(), 0.2, {0.1, 3.2}));
  CHECK_FALSE(gci_contains(gapped(), 0.2, {0.0, 5.0}));
  CHECK_FALSE(gci_contains(gapped(), 0.2, {0.5, 2.0}));
}

TEST_CASE("uniform functional handle") {
  FunctionalParams si_p{FunctionalKind::si, 0.2, 0.5};
  FunctionalParams eti_p{FunctionalKind::eti, 0.2, 0.5};
  FunctionalParams mi_p{FunctionalKind::mi, 0.1, 0.5};
  FunctionalParams gci_p{FunctionalKind::gci, 0.2, 0.5};
  for (const auto& f : {four_point(), gapped(), plateau()})
    for (const auto& p : {si_p, eti_p, mi_p, gci_p})
      for (const auto& rep : functional_representatives(f, p)) {
        CAPTURE(static_cast<int>(p.kind));
        CAPTURE(rep.lower);
        CAPTURE(rep.upper);
        CHECK(functional_contains(f, p, rep));
      }
  CHECK(functional_contains(four_point(), si_p, {1.0, 2.0}));
  CHECK_FALSE(functional_contains(four_point(), si_p, {0.0, 2.0}));
}

TEST_CASE("fixture invariants hold at construction") {
  CHECK_NOTHROW(fixture_table1());
  CHECK_NOTHROW(fixture_example_uniform(0.2));
  CHECK_NOTHROW(fixture_example_discrete(0.25, 2, 0.05, 0.02));
  CHECK_NOTHROW(fixture_gci_cxls(0.2));
  CHECK_NOTHROW(condition1_instance(0.2, 1.0, 0.5));
  CHECK_THROWS_AS(fixture_example_uniform(0.7), std::invalid_argument);
  CHECK_THROWS_AS(fixture_example_discrete(0.5, 2, 0.05, 0.02), std::invalid_argument);

  auto pair = fixture_example_uniform(0.2);
  auto s0 = si(pair.f0, 0.2);
  auto s1 = si(pair.f1, 0.2);
  CHECK(s0.contains({0.0, 1.0}, 1e-6));
  CHECK(s1.contains({0.0, 2.0}, 1e-6));
  CHECK(s0.length == doctest::Approx(1.0));
  CHECK(s1.length == doctest::Approx(2.0));

  auto inst = condition1_instance(0.2, 1.0, 0.5);
  CHECK(inst.shortest.upper == doctest::Approx(1.0));
  auto stretched = condition1_stretched(inst);
  CHECK(si(stretched, inst.alpha).contains({0.0, 1.25}, 1e-6));
}
