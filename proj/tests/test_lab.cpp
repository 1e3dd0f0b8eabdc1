#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "iv/fixtures.hpp"
#include "iv/lab.hpp"

using namespace iv;

TEST_CASE("report grids") {
  auto g = ReportGrid::integer_intervals(0, 3);
  CHECK(g.size() == 10);
  CHECK(g.has_interval({1.0, 2.0}, 1e-9));
  CHECK_FALSE(g.has_interval({1.5, 2.0}, 1e-9));
  auto p = ReportGrid::continuous_points(0.0, 1.0, 0.25, {0.33});
  CHECK(p.size() == 6);
  CHECK(p.has_point(0.33, 1e-9));
  CHECK_FALSE(p.has_point(0.4, 1e-9));
  CHECK(ReportGrid::integer_points(2, 5).size() == 4);
  // endpoints {0, 0.5, 1} give six ordered pairs
  CHECK(ReportGrid::continuous_intervals(0.0, 1.0, 0.5, {}).size() == 6);
}

TEST_CASE("thread cap parsing") {
  unsetenv("IV_THREADS");
  CHECK(requested_threads() == 0);
  setenv("IV_THREADS", "3", 1);
  CHECK(requested_threads() == 3);
  setenv("IV_THREADS", "0", 1);
  CHECK(requested_threads() == 0);
  setenv("IV_THREADS", "junk", 1);
  CHECK_THROWS_AS(requested_threads(), std::invalid_argument);
  setenv("IV_THREADS", "-1", 1);
  CHECK_THROWS_AS(requested_threads(), std::invalid_argument);
  unsetenv("IV_THREADS");
}

TEST_CASE("parallel scan equals the serial reference") {
  auto f = random_piecewise_uniform(3);
  ScoreSpec s = WinklerScoreSpec{0.2};
  auto hull = support_hull(f);
  auto grid = ReportGrid::continuous_intervals(hull.lower, hull.upper, 0.1, {});
  auto a = scan_expected_scores_serial(f, s, grid);
  auto b = scan_expected_scores(f, s, grid);
  REQUIRE(a.size() == grid.size());
  CHECK(a == b);
  setenv("IV_THREADS", "2", 1);
  auto c = scan_expected_scores(f, s, grid);
  unsetenv("IV_THREADS");
  CHECK(a == c);
}

TEST_CASE("brute force minimizers on the uniform law") {
  Distribution u = PiecewiseUniformDist{{0.0, 1.0}, {1.0}};
  auto grid = ReportGrid::continuous_intervals(0.0, 1.0, 0.05, {});
  auto r = brute_force_minimizers(u, WinklerScoreSpec{0.2}, grid);
  CHECK(r.min_expected == doctest::Approx(0.9));
  // the interval score is minimized by the equal-tailed interval alone
  REQUIRE(r.argmin.size() == 1);
  CHECK(grid.intervals[r.argmin[0]].lower == doctest::Approx(0.1));
  CHECK(grid.intervals[r.argmin[0]].upper == doctest::Approx(0.9));
}

TEST_CASE("consistency checks") {
  std::vector<Distribution> laws = {random_discrete_dirichlet(7), random_discrete_dirichlet(8)};
  auto good = consistency_check({FunctionalKind::eti, 0.2, 0.5}, WinklerScoreSpec{0.2}, laws);
  CHECK(good.verdict == "pass");

  auto f0 = fixture_example_uniform(0.2).f0;
  auto bad = consistency_check({FunctionalKind::si, 0.2, 0.5}, WinklerScoreSpec{0.2}, {f0});
  CHECK(bad.verdict == "fail");
  CHECK_FALSE(bad.witnesses.empty());
}

TEST_CASE("scalar consistency checks") {
  std::vector<Distribution> laws = {random_discrete_dirichlet(11), random_discrete_dirichlet(12)};
  auto id = MonotoneFunction::identity();
  CHECK(consistency_check_scalar(QuantileScoreSpec{0.5, id}, laws).verdict == "pass");
  CHECK(consistency_check_scalar(KZeroOneScoreSpec{1}, laws).verdict == "pass");
  std::vector<Distribution> claws = {random_piecewise_uniform(5)};
  CHECK(consistency_check_scalar(CZeroOneScoreSpec{0.25}, claws).verdict == "pass");
  // midpoint windows have no integer encoding
  CHECK_THROWS_AS(consistency_check_scalar(CZeroOneScoreSpec{0.25}, laws),
                  std::invalid_argument);
  CHECK_THROWS_AS(consistency_check_scalar(WinklerScoreSpec{0.2}, laws), std::invalid_argument);
}

TEST_CASE("mixture level-set checks") {
  auto pair = fixture_example_discrete(0.25, 2, 0.05, 0.02);
  auto rep = cxls_check({FunctionalKind::si, 0.25, 0.5}, pair.f0, pair.f1);
  CHECK(rep.verdict == "fail");
  CHECK(rep.lambda_trace.size() == 99);
  CHECK_FALSE(rep.witnesses.empty());

  // a constant path has constant level sets
  auto same = cxls_check({FunctionalKind::si, 0.25, 0.5}, pair.f0, pair.f0, 19);
  CHECK(same.verdict == "pass");
}

TEST_CASE("exclusive witness scan") {
  auto pair = fixture_example_uniform(0.2);
  FunctionalParams p{FunctionalKind::si, 0.2, 0.5};
  auto rep = prop2_witness_check(p, pair.f0, pair.f1, {0.0, 1.0}, {0.0, 2.0});
  CHECK(rep.verdict == "pass");
  REQUIRE(rep.lambda_trace.size() == 99);
  for (const auto& [lambda, note] : rep.lambda_trace) {
    (void)lambda;
    CHECK(note == "t1");
  }
  // a non-solution witness voids the precondition
  auto bogus = prop2_witness_check(p, pair.f0, pair.f1, {0.0, 1.0}, {0.0, 1.7});
  CHECK(bogus.verdict == "inconclusive");
}

TEST_CASE("score property checks") {
  ScoreSpec w = WinklerScoreSpec{0.2};
  CHECK(score_property_check(w, ScoreProperty::translation, 500, 42).verdict == "pass");
  CHECK(score_property_check(w, ScoreProperty::homogeneity, 500, 43).verdict == "pass");
  CHECK(score_property_check(w, ScoreProperty::symmetry, 500, 44).verdict == "pass");

  EtiScoreParams cp{0.2, 10.0, 10.0, MonotoneFunction::cubic(), MonotoneFunction::cubic()};
  ScoreSpec cub = EtiFamilyScoreSpec{cp};
  auto t = score_property_check(cub, ScoreProperty::translation, 500, 45);
  CHECK(t.verdict == "fail");
  CHECK_FALSE(t.witnesses.empty());
  auto h = score_property_check(cub, ScoreProperty::homogeneity, 500, 46);
  CHECK(h.verdict == "fail");
}

TEST_CASE("experiment driver") {
  CHECK(experiment_names().size() == 8);
  CHECK_THROWS_AS(run_experiment("bogus", 1), std::invalid_argument);
  for (const char* name :
       {"table1", "example-uniform", "example-discrete", "condition1", "gci-cxls"}) {
    auto rep = run_experiment(name, 1);
    CAPTURE(name);
    CHECK(rep.matches_expectation());
  }
}

TEST_CASE("seeded fixture generators") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    CHECK_NOTHROW(validate(random_discrete_dirichlet(s)));
    CHECK_NOTHROW(validate(random_piecewise_uniform(s)));
  }
  CHECK(sample(random_discrete_dirichlet(5), 1, 50) ==
        sample(random_discrete_dirichlet(5), 1, 50));
  CHECK(sample(random_piecewise_uniform(5), 1, 50) ==
        sample(random_piecewise_uniform(5), 1, 50));
}
