#include "iv/io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "json.hpp"

namespace iv {

namespace {

using nlohmann::json;

json to_json(const Interval& iv) { return json::array({iv.lower, iv.upper}); }

json to_json(const IntervalFamily& fam) {
  return json{{"length", fam.length}, {"lower_range", json::array({fam.lower_lo, fam.lower_hi})}};
}

json to_json(const FunctionalResult& r) {
  json fams = json::array();
  for (const auto& fam : r.families) fams.push_back(to_json(fam));
  return json{{"coverage", r.coverage}, {"families", fams}, {"length", r.length}};
}

json to_json(const MonotoneFunction& g) {
  switch (g.kind) {
    case MonotoneFunction::Kind::Linear:
      return json{{"intercept", g.intercept}, {"kind", "linear"}, {"slope", g.slope}};
    case MonotoneFunction::Kind::Step:
      return json{{"base", g.base},
                  {"kind", "step"},
                  {"locations", g.jump_locations},
                  {"sizes", g.jump_sizes}};
    case MonotoneFunction::Kind::PiecewiseLinear:
      return json{{"kind", "piecewise_linear"}, {"knots", g.knots}, {"values", g.values}};
    case MonotoneFunction::Kind::Cubic:
      return json{{"kind", "cubic"}};
  }
  throw std::logic_error("unreachable monotone kind");
}

MonotoneFunction monotone_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  MonotoneFunction g;
  if (kind == "linear") {
    g = MonotoneFunction::linear(j.at("slope").get<double>(), j.at("intercept").get<double>());
  } else if (kind == "step") {
    g = MonotoneFunction::step(j.at("base").get<double>(),
                               j.at("locations").get<std::vector<double>>(),
                               j.at("sizes").get<std::vector<double>>());
  } else if (kind == "piecewise_linear") {
    g = MonotoneFunction::piecewise_linear(j.at("knots").get<std::vector<double>>(),
                                           j.at("values").get<std::vector<double>>());
  } else if (kind == "cubic") {
    g = MonotoneFunction::cubic();
  } else {
    throw std::invalid_argument("monotone function: unknown kind '" + kind + "'");
  }
  validate(g);
  return g;
}

Distribution distribution_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "discrete") {
    DiscreteDist d;
    d.support = j.at("support").get<std::vector<long long>>();
    d.probs = j.at("probs").get<std::vector<double>>();
    return d;
  }
  if (kind == "pw_uniform") {
    PiecewiseUniformDist d;
    d.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    d.masses = j.at("masses").get<std::vector<double>>();
    return d;
  }
  if (kind == "mixture") {
    std::vector<Distribution> components;
    for (const auto& c : j.at("components")) components.push_back(distribution_from_json(c));
    return mix(components, j.at("weights").get<std::vector<double>>());
  }
  if (kind == "location_scale") {
    return location_scale(distribution_from_json(j.at("base")), j.at("loc").get<double>(),
                          j.at("scale").get<double>());
  }
  throw std::invalid_argument("distribution: unknown kind '" + kind + "'");
}

}  // namespace

Distribution parse_distribution(const std::string& json_text) {
  try {
    Distribution f = distribution_from_json(json::parse(json_text));
    validate(f);
    return f;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("distribution json: ") + e.what());
  }
}

std::string serialize(const Distribution& f) {
  if (const auto* d = std::get_if<DiscreteDist>(&f)) {
    return json{{"kind", "discrete"}, {"probs", d->probs}, {"support", d->support}}.dump();
  }
  const auto& d = std::get<PiecewiseUniformDist>(f);
  return json{{"breakpoints", d.breakpoints}, {"kind", "pw_uniform"}, {"masses", d.masses}}
      .dump();
}

ScoreSpec parse_score(const std::string& json_text) {
  try {
    json j = json::parse(json_text);
    std::string name = j.at("score").get<std::string>();
    if (name == "quantile") {
      MonotoneFunction g = j.contains("g") ? monotone_from_json(j.at("g"))
                                           : MonotoneFunction::identity();
      return QuantileScoreSpec{j.at("alpha").get<double>(), g};
    }
    if (name == "eti_family") {
      EtiScoreParams p;
      p.alpha = j.at("alpha").get<double>();
      p.w1 = j.value("w1", 1.0);
      p.w2 = j.value("w2", 1.0);
      p.g1 = j.contains("g1") ? monotone_from_json(j.at("g1")) : MonotoneFunction::identity();
      p.g2 = j.contains("g2") ? monotone_from_json(j.at("g2")) : MonotoneFunction::identity();
      return EtiFamilyScoreSpec{p};
    }
    if (name == "winkler") return WinklerScoreSpec{j.at("alpha").get<double>()};
    if (name == "elementary_quantile")
      return ElementaryQuantileScoreSpec{j.at("alpha").get<double>(),
                                         j.at("theta").get<double>()};
    if (name == "elementary_symmetric")
      return ElementarySymmetricScoreSpec{j.at("alpha").get<double>(),
                                          j.at("theta").get<double>()};
    if (name == "mixture") {
      StepMeasure mu;
      mu.locations = j.at("locations").get<std::vector<double>>();
      mu.masses = j.at("masses").get<std::vector<double>>();
      return MixtureScoreSpec{mu, j.at("alpha").get<double>()};
    }
    if (name == "k01") return KZeroOneScoreSpec{j.at("k").get<long long>()};
    if (name == "c01") return CZeroOneScoreSpec{j.at("c").get<double>()};
    throw std::invalid_argument("score: unknown family '" + name + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("score json: ") + e.what());
  }
}

std::string serialize(const ScoreSpec& s) {
  json j = std::visit(
      [](const auto& spec) -> json {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, QuantileScoreSpec>)
          return json{{"alpha", spec.alpha}, {"g", to_json(spec.g)}, {"score", "quantile"}};
        else if constexpr (std::is_same_v<T, EtiFamilyScoreSpec>)
          return json{{"alpha", spec.params.alpha},   {"g1", to_json(spec.params.g1)},
                      {"g2", to_json(spec.params.g2)}, {"score", "eti_family"},
                      {"w1", spec.params.w1},          {"w2", spec.params.w2}};
        else if constexpr (std::is_same_v<T, WinklerScoreSpec>)
          return json{{"alpha", spec.alpha}, {"score", "winkler"}};
        else if constexpr (std::is_same_v<T, ElementaryQuantileScoreSpec>)
          return json{{"alpha", spec.alpha}, {"score", "elementary_quantile"},
                      {"theta", spec.theta}};
        else if constexpr (std::is_same_v<T, ElementarySymmetricScoreSpec>)
          return json{{"alpha", spec.alpha}, {"score", "elementary_symmetric"},
                      {"theta", spec.theta}};
        else if constexpr (std::is_same_v<T, MixtureScoreSpec>)
          return json{{"alpha", spec.alpha},
                      {"locations", spec.mu.locations},
                      {"masses", spec.mu.masses},
                      {"score", "mixture"}};
        else if constexpr (std::is_same_v<T, KZeroOneScoreSpec>)
          return json{{"k", spec.k}, {"score", "k01"}};
        else
          return json{{"c", spec.c}, {"score", "c01"}};
      },
      s);
  return j.dump();
}

std::string serialize(const FunctionalResult& r) { return to_json(r).dump(); }

std::string serialize(const EtiResult& r) {
  return json{{"enumerable", r.enumerable},
              {"lower_set", to_json(r.lower_set)},
              {"result", to_json(r.result)},
              {"upper_set", to_json(r.upper_set)}}
      .dump();
}

std::string serialize(const GciResult& r) {
  json comps = json::array();
  for (const auto& c : r.components)
    comps.push_back(json{{"a_range", to_json(c.a_range)},
                         {"b_intercept", c.b_intercept},
                         {"b_range", to_json(c.b_range)},
                         {"b_slope", c.b_slope},
                         {"rectangular", c.rectangular}});
  json members = json::array();
  for (const auto& m : r.members) members.push_back(to_json(m));
  json fams = json::array();
  for (const auto& fam : r.families) fams.push_back(to_json(fam));
  return json{{"alpha", r.alpha},
              {"components", comps},
              {"families", fams},
              {"members", members}}
      .dump();
}

std::string serialize(const LabReport& r) {
  json trace = json::array();
  for (const auto& [lam, note] : r.lambda_trace) trace.push_back(json::array({lam, note}));
  return json{{"expected_verdict", r.expected_verdict},
              {"experiment", r.experiment},
              {"lambda_trace", trace},
              {"verdict", r.verdict},
              {"witnesses", r.witnesses}}
      .dump();
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

double parse_field(const std::string& s, std::size_t lineno, const char* name) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("forecast csv: line " + std::to_string(lineno) + ": field '" +
                                name + "' is not a number: '" + s + "'");
  }
}

}  // namespace

std::vector<ForecastCase> parse_forecast_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ForecastCase> out;
  std::size_t lineno = 0;
  bool with_id = false;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);

    if (!header_seen) {
      header_seen = true;
      if (fields == std::vector<std::string>{"id", "lower", "upper", "observation"}) {
        with_id = true;
      } else if (fields == std::vector<std::string>{"lower", "upper", "observation"}) {
        with_id = false;
      } else {
        throw std::invalid_argument(
            "forecast csv: line " + std::to_string(lineno) +
            ": header must be 'id,lower,upper,observation' or 'lower,upper,observation'");
      }
      continue;
    }

    std::size_t want = with_id ? 4 : 3;
    if (fields.size() != want)
      throw std::invalid_argument("forecast csv: line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(want) + " fields, got " +
                                  std::to_string(fields.size()));
    ForecastCase c;
    std::size_t k = 0;
    if (with_id) c.id = fields[k++];
    c.lower = parse_field(fields[k++], lineno, "lower");
    c.upper = parse_field(fields[k++], lineno, "upper");
    c.observation = parse_field(fields[k++], lineno, "observation");
    if (c.lower > c.upper) {
      std::string which = c.id.empty() ? "at line " + std::to_string(lineno) : "'" + c.id + "'";
      throw std::invalid_argument("forecast csv: case " + which + ": lower exceeds upper");
    }
    out.push_back(std::move(c));
  }
  if (!header_seen) throw std::invalid_argument("forecast csv: empty input");
  return out;
}

EvaluationReport evaluate_cases(const std::vector<ForecastCase>& cases, const ScoreSpec& s) {
  if (!accepts_interval(s))
    throw std::invalid_argument("evaluation: score must grade interval reports");
  EvaluationReport rep;
  rep.decomposed = std::holds_alternative<WinklerScoreSpec>(s);
  for (const auto& c : cases) {
    Interval iv{c.lower, c.upper};
    EvaluationReport::PerCase pc;
    pc.id = c.id;
    pc.score = score_interval(s, iv, c.observation);
    if (rep.decomposed) {
      auto [len, pen] = is_decomposition(std::get<WinklerScoreSpec>(s).alpha, iv, c.observation);
      pc.length = len;
      pc.penalty = pen;
    }
    rep.mean_score += pc.score;
    rep.mean_length += pc.length;
    rep.mean_penalty += pc.penalty;
    rep.cases.push_back(std::move(pc));
  }
  if (!rep.cases.empty()) {
    double n = static_cast<double>(rep.cases.size());
    rep.mean_score /= n;
    rep.mean_length /= n;
    rep.mean_penalty /= n;
  }
  return rep;
}

namespace {

json to_json(const EvaluationReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    json jc{{"id", c.id}, {"score", c.score}};
    if (r.decomposed) {
      jc["length"] = c.length;
      jc["penalty"] = c.penalty;
    }
    cases.push_back(jc);
  }
  json j{{"cases", cases}, {"decomposed", r.decomposed}, {"mean_score", r.mean_score}};
  if (r.decomposed) {
    j["mean_length"] = r.mean_length;
    j["mean_penalty"] = r.mean_penalty;
  }
  return j;
}

}  // namespace

std::string serialize(const EvaluationReport& r) { return to_json(r).dump(); }

RankedEvaluation rank_forecasters(const std::vector<std::string>& names,
                                  const std::vector<std::vector<ForecastCase>>& case_lists,
                                  const ScoreSpec& s) {
  if (names.size() != case_lists.size())
    throw std::invalid_argument("ranking: one name per case list required");
  RankedEvaluation r;
  r.names = names;
  for (const auto& cases : case_lists) r.reports.push_back(evaluate_cases(cases, s));
  r.ranking.resize(names.size());
  for (std::size_t i = 0; i < r.ranking.size(); ++i) r.ranking[i] = i;
  std::stable_sort(r.ranking.begin(), r.ranking.end(), [&](std::size_t a, std::size_t b) {
    return r.reports[a].mean_score < r.reports[b].mean_score;
  });
  return r;
}

std::string serialize(const RankedEvaluation& r) {
  json reports = json::array();
  for (const auto& rep : r.reports) reports.push_back(to_json(rep));
  json ranking = json::array();
  for (std::size_t i : r.ranking) ranking.push_back(i);
  return json{{"names", r.names}, {"ranking", ranking}, {"reports", reports}}.dump();
}

}  // namespace iv
