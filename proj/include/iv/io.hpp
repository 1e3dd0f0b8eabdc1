#pragma once

#include <string>
#include <vector>

#include "iv/distribution.hpp"
#include "iv/functionals.hpp"
#include "iv/interval.hpp"
#include "iv/lab.hpp"
#include "iv/scoring.hpp"

namespace iv {

// JSON forms. Distributions:
//   {"kind":"discrete","support":[...],"probs":[...]}
//   {"kind":"pw_uniform","breakpoints":[...],"masses":[...]}
//   {"kind":"mixture","weights":[...],"components":[...]}   (flattened on parse)
//   {"kind":"location_scale","loc":x,"scale":s,"base":{...}} (flattened on parse)
// Scores: {"score":"winkler","alpha":0.2} and analogous records for the
// other families. parse(serialize(v)) == v, and serialize(parse(s)) == s
// byte for byte when s is in canonical (serialized) form.
Distribution parse_distribution(const std::string& json_text);
std::string serialize(const Distribution& f);

ScoreSpec parse_score(const std::string& json_text);
std::string serialize(const ScoreSpec& s);

std::string serialize(const FunctionalResult& r);
std::string serialize(const EtiResult& r);
std::string serialize(const GciResult& r);
std::string serialize(const LabReport& r);

// One prediction interval with its realized observation.
struct ForecastCase {
  std::string id;  // empty when the file has no id column
  double lower = 0.0;
  double upper = 0.0;
  double observation = 0.0;
};

// Header "id,lower,upper,observation" or "lower,upper,observation".
// Throws std::invalid_argument naming the offending line on malformed rows
// and the case id when lower > upper.
std::vector<ForecastCase> parse_forecast_csv(const std::string& text);

struct EvaluationReport {
  struct PerCase {
    std::string id;
    double score = 0.0;
    double length = 0.0;   // winkler decomposition only
    double penalty = 0.0;  // winkler decomposition only
  };
  std::vector<PerCase> cases;
  double mean_score = 0.0;
  bool decomposed = false;  // true for winkler scores
  double mean_length = 0.0;
  double mean_penalty = 0.0;
};
EvaluationReport evaluate_cases(const std::vector<ForecastCase>& cases, const ScoreSpec& s);
std::string serialize(const EvaluationReport& r);

// Mean-score ranking of several forecasters over their own case lists;
// names keep input order on ties.
struct RankedEvaluation {
  std::vector<std::string> names;
  std::vector<EvaluationReport> reports;
  std::vector<std::size_t> ranking;  // indices, best (lowest mean) first
};
RankedEvaluation rank_forecasters(const std::vector<std::string>& names,
                                  const std::vector<std::vector<ForecastCase>>& case_lists,
                                  const ScoreSpec& s);
std::string serialize(const RankedEvaluation& r);

}  // namespace iv
