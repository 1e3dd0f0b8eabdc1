#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "iv/distribution.hpp"
#include "iv/lab.hpp"
#include "iv/scoring.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <class Fn>
double best_of(int repeat, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expected-score scan benchmark: serial reference vs parallel kernel"};
  int points = 400;
  int repeat = 3;
  app.add_option("--points", points, "endpoint grid size (candidates grow quadratically)")
      ->check(CLI::Range(10, 5000));
  app.add_option("--repeat", repeat, "timing repetitions, best run counts")
      ->check(CLI::Range(1, 100));
  CLI11_PARSE(app, argc, argv);

  iv::Distribution law = iv::random_piecewise_uniform(7);
  iv::ScoreSpec score = iv::WinklerScoreSpec{0.2};
  iv::Interval hull = iv::support_hull(law);
  double step = (hull.upper - hull.lower) / points;
  iv::ReportGrid grid = iv::ReportGrid::continuous_intervals(hull.lower, hull.upper, step, {});

  std::vector<double> serial, parallel;
  double t_serial = best_of(repeat, [&] { serial = iv::scan_expected_scores_serial(law, score, grid); });
  double t_parallel = best_of(repeat, [&] { parallel = iv::scan_expected_scores(law, score, grid); });

  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < serial.size(); ++i)
    if (serial[i] != parallel[i]) ++mismatches;

  int threads = 1;
#ifdef _OPENMP
  threads = iv::requested_threads() ? iv::requested_threads() : omp_get_max_threads();
#endif

  std::printf("candidates          %zu\n", grid.size());
  std::printf("threads             %d\n", threads);
  std::printf("serial reference    %.4f s\n", t_serial);
  std::printf("parallel kernel     %.4f s\n", t_parallel);
  std::printf("speedup             %.2fx\n", t_serial / t_parallel);
  std::printf("elementwise match   %s\n", mismatches == 0 ? "yes" : "NO");
  if (mismatches != 0) {
    std::printf("mismatching entries %zu\n", mismatches);
    return 1;
  }
  return 0;
}
