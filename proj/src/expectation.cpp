#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "iv/scoring.hpp"
#include "iv/tolerances.hpp"

namespace iv {

namespace {

// y-locations where S(report, y) kinks or jumps. Between consecutive points
// the integrand is polynomial of degree <= 3 (degree 1 except for cubic g).
std::vector<double> score_breaks_interval(const ScoreSpec& s, const Interval& iv) {
  std::vector<double> pts{iv.lower, iv.upper};
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, EtiFamilyScoreSpec>) {
          auto c1 = spec.params.g1.critical_points();
          auto c2 = spec.params.g2.critical_points();
          pts.insert(pts.end(), c1.begin(), c1.end());
          pts.insert(pts.end(), c2.begin(), c2.end());
        } else if constexpr (std::is_same_v<T, ElementarySymmetricScoreSpec>) {
          pts.push_back(spec.theta);
          pts.push_back(-spec.theta);
        } else if constexpr (std::is_same_v<T, MixtureScoreSpec>) {
          for (double t : spec.mu.locations) {
            pts.push_back(t);
            pts.push_back(-t);
          }
        } else if constexpr (std::is_same_v<T, KZeroOneScoreSpec>) {
          pts.push_back(iv.lower + static_cast<double>(spec.k));
        } else if constexpr (std::is_same_v<T, CZeroOneScoreSpec>) {
          double mid = 0.5 * (iv.lower + iv.upper);
          pts.push_back(mid - spec.c);
          pts.push_back(mid + spec.c);
        }
      },
      s);
  return pts;
}

std::vector<double> score_breaks_scalar(const ScoreSpec& s, double x) {
  std::vector<double> pts{x};
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, QuantileScoreSpec>) {
          auto c = spec.g.critical_points();
          pts.insert(pts.end(), c.begin(), c.end());
        } else if constexpr (std::is_same_v<T, ElementaryQuantileScoreSpec>) {
          pts.push_back(spec.theta);
        } else if constexpr (std::is_same_v<T, KZeroOneScoreSpec>) {
          pts.push_back(x + static_cast<double>(spec.k));
        } else if constexpr (std::is_same_v<T, CZeroOneScoreSpec>) {
          pts.push_back(x - spec.c);
          pts.push_back(x + spec.c);
        }
      },
      s);
  return pts;
}

void require_integer_endpoint(double x, const char* what) {
  if (std::floor(x) != x || x < 0.0)
    throw std::invalid_argument(std::string(what) +
                                ": discrete laws require nonnegative integer report endpoints");
}

template <class Eval>
double expected_discrete(const DiscreteDist& d, Eval&& eval) {
  double total = 0.0;
  for (std::size_t i = 0; i < d.support.size(); ++i)
    total += d.probs[i] * eval(static_cast<double>(d.support[i]));
  return total;
}

// Exact integral of S against the piecewise constant density: the density
// grid is refined by the score breakpoints and each open cell is integrated
// with two-point Gauss-Legendre, exact through cubic integrands.
template <class Eval>
double expected_pw(const PiecewiseUniformDist& d, std::vector<double> breaks, Eval&& eval) {
  breaks.insert(breaks.end(), d.breakpoints.begin(), d.breakpoints.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  constexpr double gl_offset = 0.28867513459481288225;  // 1/(2 sqrt(3))
  double total = 0.0;
  std::size_t piece = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double lo = breaks[i], hi = breaks[i + 1];
    if (hi <= d.breakpoints.front() || lo >= d.breakpoints.back()) continue;
    while (d.breakpoints[piece + 1] <= lo) ++piece;
    double width = d.breakpoints[piece + 1] - d.breakpoints[piece];
    double density = d.masses[piece] / width;
    if (density == 0.0) continue;
    double mid = 0.5 * (lo + hi), half = hi - lo;
    double y1 = mid - gl_offset * half, y2 = mid + gl_offset * half;
    total += density * half * 0.5 * (eval(y1) + eval(y2));
  }
  return total;
}

}  // namespace

double expected_score_interval(const Distribution& f, const ScoreSpec& s, const Interval& iv) {
  if (iv.lower > iv.upper)
    throw std::invalid_argument("expected score: interval endpoints out of order");
  if (const auto* d = std::get_if<DiscreteDist>(&f)) {
    require_integer_endpoint(iv.lower, "expected score");
    require_integer_endpoint(iv.upper, "expected score");
    return expected_discrete(*d, [&](double y) { return score_interval(s, iv, y); });
  }
  const auto& d = std::get<PiecewiseUniformDist>(f);
  return expected_pw(d, score_breaks_interval(s, iv),
                     [&](double y) { return score_interval(s, iv, y); });
}

double expected_score_scalar(const Distribution& f, const ScoreSpec& s, double x) {
  if (const auto* d = std::get_if<DiscreteDist>(&f)) {
    require_integer_endpoint(x, "expected score");
    return expected_discrete(*d, [&](double y) { return score_scalar(s, x, y); });
  }
  const auto& d = std::get<PiecewiseUniformDist>(f);
  return expected_pw(d, score_breaks_scalar(s, x),
                     [&](double y) { return score_scalar(s, x, y); });
}

}  // namespace iv
