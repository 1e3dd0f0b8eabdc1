#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "iv/functionals.hpp"
#include "iv/io.hpp"

using namespace iv;

TEST_CASE("distribution json round trips") {
  Distribution d = DiscreteDist{{0, 1, 2, 3}, {0.1, 0.4, 0.4, 0.1}};
  std::string s = serialize(d);
  CHECK(serialize(parse_distribution(s)) == s);
  CHECK(s.find("\"kind\":\"discrete\"") != std::string::npos);

  Distribution p = PiecewiseUniformDist{{0.0, 1.0, 2.0, 5.0}, {0.8, 0.0, 0.2}};
  std::string sp = serialize(p);
  CHECK(serialize(parse_distribution(sp)) == sp);
  CHECK(sp.find("\"kind\":\"pw_uniform\"") != std::string::npos);
}

TEST_CASE("composite distribution forms flatten on parse") {
  std::string mixture = R"({"kind":"mixture","weights":[0.5,0.5],"components":[
    {"kind":"discrete","support":[0,1],"probs":[0.5,0.5]},
    {"kind":"discrete","support":[1,2],"probs":[0.5,0.5]}]})";
  auto m = parse_distribution(mixture);
  REQUIRE(is_discrete(m));
  const auto& dm = std::get<DiscreteDist>(m);
  REQUIRE(dm.support.size() == 3);
  CHECK(dm.probs[1] == doctest::Approx(0.5));

  std::string scaled = R"({"kind":"location_scale","loc":2,"scale":3,
    "base":{"kind":"pw_uniform","breakpoints":[0,1],"masses":[1]}})";
  auto ls = parse_distribution(scaled);
  const auto& dl = std::get<PiecewiseUniformDist>(ls);
  CHECK(dl.breakpoints.front() == doctest::Approx(2.0));
  CHECK(dl.breakpoints.back() == doctest::Approx(5.0));
}

TEST_CASE("malformed distribution json is rejected") {
  CHECK_THROWS_AS(parse_distribution("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution(R"({"kind":"nope"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution(R"({"kind":"discrete","support":[0],"probs":[0.5]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_distribution(R"({"kind":"pw_uniform","breakpoints":[0,1],"masses":[1,1]})"),
      std::invalid_argument);
}

TEST_CASE("score json round trips") {
  std::vector<ScoreSpec> specs;
  specs.push_back(QuantileScoreSpec{0.3, MonotoneFunction::identity()});
  specs.push_back(QuantileScoreSpec{0.3, MonotoneFunction::piecewise_linear({0, 2}, {0, 5})});
  specs.push_back(EtiFamilyScoreSpec{{0.2, 2.0, 3.0, MonotoneFunction::cubic(),
                                      MonotoneFunction::step(0.0, {1.0}, {2.0})}});
  specs.push_back(WinklerScoreSpec{0.2});
  specs.push_back(ElementaryQuantileScoreSpec{0.1, 1.5});
  specs.push_back(ElementarySymmetricScoreSpec{0.2, 2.5});
  specs.push_back(MixtureScoreSpec{{{0.5, 2.0}, {1.0, 0.5}}, 0.25});
  specs.push_back(KZeroOneScoreSpec{2});
  specs.push_back(CZeroOneScoreSpec{0.25});
  for (const auto& spec : specs) {
    std::string s = serialize(spec);
    CAPTURE(s);
    CHECK(serialize(parse_score(s)) == s);
  }
  // g defaults to the identity when omitted
  auto q = parse_score(R"({"score":"quantile","alpha":0.4})");
  CHECK(score_scalar(q, 1.0, 2.0) == doctest::Approx(0.4));
  CHECK_THROWS_AS(parse_score(R"({"score":"nope"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_score("[1,2]"), std::invalid_argument);
}

TEST_CASE("result serialization carries the structure") {
  Distribution g = DiscreteDist{{0, 1, 2, 3}, {0.1, 0.4, 0.4, 0.1}};
  auto ej = nlohmann::json::parse(serialize(eti(g, 0.2)));
  CHECK(ej["enumerable"] == true);
  CHECK(ej["lower_set"][0] == 0.0);
  CHECK(ej["upper_set"][1] == 3.0);
  CHECK(ej["result"]["families"].size() == 4);

  auto gj = nlohmann::json::parse(serialize(gci(g, 0.2)));
  CHECK(gj["alpha"] == 0.2);
  CHECK(gj["members"].size() == 3);

  LabReport rep;
  rep.experiment = "demo";
  rep.verdict = "pass";
  rep.expected_verdict = "pass";
  rep.witness("w");
  rep.lambda_trace.push_back({0.5, "t1"});
  auto rj = nlohmann::json::parse(serialize(rep));
  CHECK(rj["experiment"] == "demo");
  CHECK(rj["witnesses"].size() == 1);
  CHECK(rj["lambda_trace"][0][0] == 0.5);
}

TEST_CASE("forecast csv parsing") {
  auto cases = parse_forecast_csv("id,lower,upper,observation\nA,1,2,0\nB,0,3,1.5\n");
  REQUIRE(cases.size() == 2);
  CHECK(cases[0].id == "A");
  CHECK(cases[0].lower == 1.0);
  CHECK(cases[1].observation == 1.5);

  auto noid = parse_forecast_csv("lower,upper,observation\n1,2,0.5\n");
  REQUIRE(noid.size() == 1);
  CHECK(noid[0].id.empty());

  auto crlf = parse_forecast_csv("id,lower,upper,observation\r\nA,1,2,0\r\n\r\n");
  REQUIRE(crlf.size() == 1);
  CHECK(crlf[0].id == "A");
}

TEST_CASE("forecast csv rejects malformed input") {
  CHECK_THROWS_AS(parse_forecast_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_forecast_csv("x,y,z\n1,2,3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_forecast_csv("lower,upper,observation\n1,2\n"), std::invalid_argument);
  try {
    parse_forecast_csv("lower,upper,observation\n1,2,0\n1,abc,0\n");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_forecast_csv("id,lower,upper,observation\nA,3,2,0\n");
    FAIL("expected an endpoint order error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("A") != std::string::npos);
  }
}

TEST_CASE("case evaluation and ranking") {
  std::vector<ForecastCase> cases = {{"A", 1.0, 2.0, 0.0}, {"B", 1.0, 2.0, 1.5}};
  auto rep = evaluate_cases(cases, WinklerScoreSpec{0.2});
  REQUIRE(rep.cases.size() == 2);
  CHECK(rep.cases[0].score == doctest::Approx(11.0));
  CHECK(rep.cases[1].score == doctest::Approx(1.0));
  CHECK(rep.mean_score == doctest::Approx(6.0));
  CHECK(rep.decomposed);
  CHECK(rep.mean_length == doctest::Approx(1.0));
  CHECK(rep.mean_penalty == doctest::Approx(5.0));

  auto plain = evaluate_cases(cases, ElementarySymmetricScoreSpec{0.2, 1.5});
  CHECK_FALSE(plain.decomposed);

  CHECK_THROWS_AS(evaluate_cases(cases, QuantileScoreSpec{0.5, MonotoneFunction::identity()}),
                  std::invalid_argument);

  auto ranked = rank_forecasters({"wide", "sharp"},
                                 {{{"A", 0.0, 10.0, 5.0}}, {{"A", 4.0, 6.0, 5.0}}},
                                 WinklerScoreSpec{0.2});
  REQUIRE(ranked.ranking.size() == 2);
  CHECK(ranked.ranking[0] == 1);
  CHECK(ranked.ranking[1] == 0);

  auto tied = rank_forecasters({"a", "b"}, {{{"A", 1.0, 2.0, 1.5}}, {{"A", 1.0, 2.0, 1.5}}},
                               WinklerScoreSpec{0.2});
  CHECK(tied.ranking[0] == 0);
  CHECK(tied.ranking[1] == 1);

  auto rj = nlohmann::json::parse(serialize(ranked));
  CHECK(rj["names"].size() == 2);
  CHECK(rj["reports"][0]["mean_score"].is_number());
}
