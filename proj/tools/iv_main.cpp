#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iv/fixtures.hpp"
#include "iv/functionals.hpp"
#include "iv/io.hpp"
#include "iv/lab.hpp"
#include "iv/scoring.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Inline JSON when the argument starts with '{', a file path otherwise.
std::string json_arg(const std::string& arg) {
  std::size_t first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return read_file(arg);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text << "\n";
}

json reparse(const std::string& serialized) { return json::parse(serialized); }

int run_score(const std::string& score_text, const std::vector<std::string>& case_files,
              std::vector<std::string> names, bool single, double lower, double upper,
              bool scalar, double x, double obs, const std::string& out_path) {
  iv::ScoreSpec score = iv::parse_score(json_arg(score_text));

  if (single || scalar) {
    json j;
    if (scalar) {
      j = json{{"observation", obs}, {"report", x}, {"score", iv::score_scalar(score, x, obs)}};
    } else {
      if (upper < lower) throw std::invalid_argument("report interval: lower exceeds upper");
      j = json{{"observation", obs},
               {"report", json::array({lower, upper})},
               {"score", iv::score_interval(score, {lower, upper}, obs)}};
    }
    emit(j.dump(), out_path);
    return 0;
  }

  std::vector<std::vector<iv::ForecastCase>> lists;
  for (const auto& path : case_files) lists.push_back(iv::parse_forecast_csv(read_file(path)));
  if (names.empty())
    for (std::size_t i = 0; i < lists.size(); ++i)
      names.push_back("forecaster-" + std::to_string(i + 1));
  if (names.size() != lists.size())
    throw std::invalid_argument("need exactly one --name per --cases file");

  if (lists.size() == 1) {
    emit(iv::serialize(iv::evaluate_cases(lists.front(), score)), out_path);
  } else {
    emit(iv::serialize(iv::rank_forecasters(names, lists, score)), out_path);
  }
  return 0;
}

int run_functional(const std::string& dist_text, const std::string& kind, double alpha, double c,
                   const std::string& out_path) {
  iv::Distribution f = iv::parse_distribution(json_arg(dist_text));
  if (kind == "eti") {
    emit(iv::serialize(iv::eti(f, alpha)), out_path);
  } else if (kind == "si") {
    emit(iv::serialize(iv::si(f, alpha)), out_path);
  } else if (kind == "mi") {
    emit(iv::serialize(iv::mi(f, c)), out_path);
  } else {
    emit(iv::serialize(iv::gci(f, alpha)), out_path);
  }
  return 0;
}

int run_lab(const std::string& name, bool list, std::uint64_t seed, const std::string& out_path) {
  if (list) {
    json j = json::array();
    for (const auto& n : iv::experiment_names()) j.push_back(n);
    emit(j.dump(), out_path);
    return 0;
  }
  iv::LabReport rep = iv::run_experiment(name, seed);
  emit(iv::serialize(rep), out_path);
  return rep.matches_expectation() ? 0 : 1;
}

int run_fixtures(const std::string& name, bool list, double alpha, long long k, double eps,
                 double delta, double b, const std::string& out_path) {
  auto pick = [](double v, double fallback) { return std::isnan(v) ? fallback : v; };
  if (list) {
    emit(json(std::vector<std::string>{"table1", "example-uniform", "example-discrete",
                                       "gci-cxls", "condition1"})
             .dump(),
         out_path);
    return 0;
  }
  json j;
  if (name == "table1") {
    auto t = iv::fixture_table1();
    json rows = json::array();
    for (const auto& row : t.rows)
      rows.push_back(json{{"coverage", row.coverage},
                          {"expected_interval_score", row.expected_interval_score},
                          {"expected_penalty", row.expected_penalty},
                          {"interval", json::array({row.interval.lower, row.interval.upper})},
                          {"length", row.length}});
    j = json{{"alpha", t.alpha}, {"law", reparse(iv::serialize(t.g))}, {"rows", rows}};
  } else if (name == "example-uniform" || name == "example-discrete" || name == "gci-cxls") {
    iv::MixturePair p;
    if (name == "example-uniform") {
      p = iv::fixture_example_uniform(pick(alpha, 0.2));
    } else if (name == "example-discrete") {
      p = iv::fixture_example_discrete(pick(alpha, 0.25), k, pick(eps, 0.05),
                                       pick(delta, 0.02));
    } else {
      p = iv::fixture_gci_cxls(pick(alpha, 0.2));
    }
    j = json{{"alpha", p.alpha},
             {"f0", reparse(iv::serialize(p.f0))},
             {"f1", reparse(iv::serialize(p.f1))}};
  } else {
    auto inst = iv::condition1_instance(pick(alpha, 0.2), pick(b, 1.0), pick(eps, 0.5));
    j = json{{"alpha", inst.alpha},
             {"b", inst.b},
             {"eps", inst.eps},
             {"f", reparse(iv::serialize(inst.f))},
             {"shortest", json::array({inst.shortest.lower, inst.shortest.upper})},
             {"stretched", reparse(iv::serialize(iv::condition1_stretched(inst)))}};
  }
  emit(j.dump(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interval functionals, scores, and elicitability experiments"};
  app.require_subcommand(1);

  std::string score_text, dist_text, out_path, experiment, fixture_name, functional_kind;
  std::vector<std::string> case_files, names;
  double lower = 0.0, upper = 0.0, x = 0.0, obs = 0.0;
  double alpha = 0.1, c = 0.5;
  double fx_alpha = NAN, fx_eps = NAN, fx_delta = NAN, fx_b = NAN;
  long long fx_k = 2;
  std::uint64_t seed = 1;
  bool list = false;

  auto* sc_score = app.add_subcommand("score", "evaluate a score on cases or a single report");
  sc_score->add_option("--score", score_text, "score spec: inline JSON or a file path")
      ->required();
  sc_score->add_option("--cases", case_files, "forecast CSV file (repeatable for ranking)");
  sc_score->add_option("--name", names, "forecaster name per --cases file");
  auto* opt_lower = sc_score->add_option("--lower", lower, "interval report lower endpoint");
  auto* opt_upper = sc_score->add_option("--upper", upper, "interval report upper endpoint");
  auto* opt_x = sc_score->add_option("--x", x, "scalar report");
  auto* opt_obs = sc_score->add_option("--obs", obs, "realized observation");
  sc_score->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* sc_fun = app.add_subcommand("functional", "compute an interval functional of a law");
  sc_fun->add_option("--dist", dist_text, "distribution: inline JSON or a file path")
      ->required();
  sc_fun->add_option("--functional", functional_kind, "one of eti|si|mi|gci")
      ->required()
      ->check(CLI::IsMember({"eti", "si", "mi", "gci"}));
  sc_fun->add_option("--alpha", alpha, "level for eti/si/gci (default 0.1)");
  sc_fun->add_option("--c", c, "half length for mi (default 0.5)");
  sc_fun->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* sc_lab = app.add_subcommand("lab", "run a named elicitability experiment");
  sc_lab->add_option("--experiment", experiment, "experiment name; see --list");
  sc_lab->add_flag("--list", list, "list experiment names");
  sc_lab->add_option("--seed", seed, "seed for the randomized fixture streams (default 1)");
  sc_lab->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* sc_fix = app.add_subcommand("fixtures", "dump a built-in fixture as JSON");
  sc_fix->add_option("--name", fixture_name, "fixture name; see --list")
      ->check(CLI::IsMember(
          {"table1", "example-uniform", "example-discrete", "gci-cxls", "condition1"}));
  sc_fix->add_flag("--list", list, "list fixture names");
  sc_fix->add_option("--alpha", fx_alpha, "fixture level (fixture-specific default)");
  sc_fix->add_option("--k", fx_k, "mode location for example-discrete (default 2)");
  sc_fix->add_option("--eps", fx_eps, "eps parameter (fixture-specific default)");
  sc_fix->add_option("--delta", fx_delta, "delta parameter for example-discrete");
  sc_fix->add_option("--b", fx_b, "length parameter for condition1 (default 1)");
  sc_fix->add_option("--out", out_path, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sc_score->parsed()) {
      bool single = opt_lower->count() > 0 || opt_upper->count() > 0;
      bool scalar = opt_x->count() > 0;
      if (single && scalar) {
        std::cerr << "score: give either --lower/--upper or --x, not both\n";
        return 2;
      }
      if ((single || scalar) && opt_obs->count() == 0) {
        std::cerr << "score: a single report needs --obs\n";
        return 2;
      }
      if (!single && !scalar && case_files.empty()) {
        std::cerr << "score: give --cases files or a single report\n";
        return 2;
      }
      if (single && opt_lower->count() + opt_upper->count() != 2) {
        std::cerr << "score: an interval report needs both --lower and --upper\n";
        return 2;
      }
      return run_score(score_text, case_files, names, single, lower, upper, scalar, x, obs,
                       out_path);
    }
    if (sc_fun->parsed())
      return run_functional(dist_text, functional_kind, alpha, c, out_path);
    if (sc_lab->parsed()) {
      if (!list) {
        auto known = iv::experiment_names();
        bool ok = false;
        for (const auto& n : known) ok = ok || n == experiment;
        if (!ok) {
          std::cerr << "lab: unknown experiment '" << experiment << "'; try --list\n";
          return 2;
        }
      }
      return run_lab(experiment, list, seed, out_path);
    }
    if (sc_fix->parsed()) {
      if (!list && fixture_name.empty()) {
        std::cerr << "fixtures: give --name or --list\n";
        return 2;
      }
      return run_fixtures(fixture_name, list, fx_alpha, fx_k, fx_eps, fx_delta, fx_b, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
