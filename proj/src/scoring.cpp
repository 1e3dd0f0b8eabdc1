#include "iv/scoring.hpp"

#include <cmath>
#include <stdexcept>

namespace iv {

namespace {

double indicator_leq(double y, double x) { return y <= x ? 1.0 : 0.0; }

// 1{theta < x} + (1/2) 1{theta = x}: the midpoint-convention unit step.
double half_step(double theta, double x) {
  if (theta < x) return 1.0;
  if (theta == x) return 0.5;
  return 0.0;
}

}  // namespace

double quantile_score(const MonotoneFunction& g, double alpha, double x, double y) {
  return (indicator_leq(y, x) - alpha) * (g(x) - g(y));
}

double eti_score(const EtiScoreParams& p, const Interval& iv, double y) {
  if (!(p.w1 > 0.0 && p.w2 > 0.0))
    throw std::invalid_argument("eti score: weights must be positive");
  double lower_term = p.w1 * (indicator_leq(y, iv.lower) - p.alpha / 2.0) * (p.g1(iv.lower) - p.g1(y));
  double upper_term =
      p.w2 * (indicator_leq(y, iv.upper) - (1.0 - p.alpha / 2.0)) * (p.g2(iv.upper) - p.g2(y));
  return lower_term + upper_term;
}

double winkler_is(double alpha, const Interval& iv, double y) {
  auto [length, penalty] = is_decomposition(alpha, iv, y);
  return length + penalty;
}

std::pair<double, double> is_decomposition(double alpha, const Interval& iv, double y) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("interval score: alpha must be in (0,1)");
  double penalty = 0.0;
  if (y < iv.lower) penalty = (2.0 / alpha) * (iv.lower - y);
  if (y > iv.upper) penalty = (2.0 / alpha) * (y - iv.upper);
  return {iv.length(), penalty};
}

double elementary_quantile_score(double alpha, double theta, double x, double y) {
  return (indicator_leq(y, x) - alpha) * (half_step(theta, x) - half_step(theta, y));
}

double elementary_symmetric_interval_score(double alpha, double theta, const Interval& iv,
                                           double y) {
  if (theta < 0.0) throw std::invalid_argument("elementary symmetric score: theta must be >= 0");
  return elementary_quantile_score(alpha / 2.0, theta, iv.lower, y) +
         elementary_quantile_score(1.0 - alpha / 2.0, -theta, iv.upper, y);
}

double mixture_eti_score(const StepMeasure& mu, double alpha, const Interval& iv, double y) {
  if (mu.locations.size() != mu.masses.size())
    throw std::invalid_argument("step measure: locations and masses must match");
  double total = 0.0;
  for (std::size_t i = 0; i < mu.locations.size(); ++i) {
    if (mu.locations[i] < 0.0) throw std::invalid_argument("step measure: atoms must lie in [0,inf)");
    if (!(mu.masses[i] > 0.0)) throw std::invalid_argument("step measure: masses must be positive");
    total += mu.masses[i] * elementary_symmetric_interval_score(alpha, mu.locations[i], iv, y);
  }
  return total;
}

double k_zero_one(long long k, double x, double y) {
  if (k < 0) throw std::invalid_argument("k zero-one score: k must be >= 0");
  return (x <= y && y <= x + static_cast<double>(k)) ? -1.0 : 0.0;
}

double c_zero_one(double c, double x, double y) {
  if (!(c >= 0.0)) throw std::invalid_argument("c zero-one score: c must be >= 0");
  return (x - c <= y && y <= x + c) ? -1.0 : 0.0;
}

bool accepts_scalar(const ScoreSpec& s) {
  return std::holds_alternative<QuantileScoreSpec>(s) ||
         std::holds_alternative<ElementaryQuantileScoreSpec>(s) ||
         std::holds_alternative<KZeroOneScoreSpec>(s) ||
         std::holds_alternative<CZeroOneScoreSpec>(s);
}

bool accepts_interval(const ScoreSpec& s) {
  return !std::holds_alternative<QuantileScoreSpec>(s) &&
         !std::holds_alternative<ElementaryQuantileScoreSpec>(s);
}

double score_interval(const ScoreSpec& s, const Interval& iv, double y) {
  if (iv.lower > iv.upper) throw std::invalid_argument("score: interval endpoints out of order");
  return std::visit(
      [&](const auto& spec) -> double {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, EtiFamilyScoreSpec>)
          return eti_score(spec.params, iv, y);
        else if constexpr (std::is_same_v<T, WinklerScoreSpec>)
          return winkler_is(spec.alpha, iv, y);
        else if constexpr (std::is_same_v<T, ElementarySymmetricScoreSpec>)
          return elementary_symmetric_interval_score(spec.alpha, spec.theta, iv, y);
        else if constexpr (std::is_same_v<T, MixtureScoreSpec>)
          return mixture_eti_score(spec.mu, spec.alpha, iv, y);
        else if constexpr (std::is_same_v<T, KZeroOneScoreSpec>)
          return k_zero_one(spec.k, iv.lower, y);
        else if constexpr (std::is_same_v<T, CZeroOneScoreSpec>)
          return c_zero_one(spec.c, 0.5 * (iv.lower + iv.upper), y);
        else
          throw std::invalid_argument("score: this family grades scalar reports, not intervals");
      },
      s);
}

double score_scalar(const ScoreSpec& s, double x, double y) {
  return std::visit(
      [&](const auto& spec) -> double {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, QuantileScoreSpec>)
          return quantile_score(spec.g, spec.alpha, x, y);
        else if constexpr (std::is_same_v<T, ElementaryQuantileScoreSpec>)
          return elementary_quantile_score(spec.alpha, spec.theta, x, y);
        else if constexpr (std::is_same_v<T, KZeroOneScoreSpec>)
          return k_zero_one(spec.k, x, y);
        else if constexpr (std::is_same_v<T, CZeroOneScoreSpec>)
          return c_zero_one(spec.c, x, y);
        else
          throw std::invalid_argument("score: this family grades interval reports, not scalars");
      },
      s);
}

}  // namespace iv
