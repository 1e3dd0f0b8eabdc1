#include "iv/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "iv/tolerances.hpp"

namespace iv {

namespace {

void validate_discrete(const DiscreteDist& d) {
  if (d.support.empty() || d.support.size() != d.probs.size())
    throw std::invalid_argument("discrete law: support and probs must be nonempty and equal-sized");
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    if (d.support[i] < 0) throw std::invalid_argument("discrete law: negative support point");
    if (i > 0 && d.support[i] <= d.support[i - 1])
      throw std::invalid_argument("discrete law: support must be strictly ascending");
    if (!(d.probs[i] > 0.0)) throw std::invalid_argument("discrete law: probabilities must be positive");
  }
  double total = std::accumulate(d.probs.begin(), d.probs.end(), 0.0);
  if (std::abs(total - 1.0) > tau_mass)
    throw std::invalid_argument("discrete law: probabilities must sum to 1");
}

void validate_pw(const PiecewiseUniformDist& d) {
  if (d.breakpoints.size() < 2 || d.masses.size() + 1 != d.breakpoints.size())
    throw std::invalid_argument("piecewise uniform law: need n+1 breakpoints for n masses");
  for (std::size_t i = 0; i + 1 < d.breakpoints.size(); ++i) {
    if (!(d.breakpoints[i] < d.breakpoints[i + 1]))
      throw std::invalid_argument("piecewise uniform law: breakpoints must be strictly ascending");
    if (!std::isfinite(d.breakpoints[i]))
      throw std::invalid_argument("piecewise uniform law: breakpoints must be finite");
  }
  double total = 0.0;
  bool any_positive = false;
  for (double m : d.masses) {
    if (m < 0.0) throw std::invalid_argument("piecewise uniform law: masses must be nonnegative");
    any_positive = any_positive || m > 0.0;
    total += m;
  }
  if (!any_positive) throw std::invalid_argument("piecewise uniform law: all masses are zero");
  if (std::abs(total - 1.0) > tau_mass)
    throw std::invalid_argument("piecewise uniform law: masses must sum to 1");
}

// Cumulative mass through each atom / piece end, prefix[0] = 0.
std::vector<double> prefix_sums(const std::vector<double>& ms) {
  std::vector<double> p(ms.size() + 1, 0.0);
  std::partial_sum(ms.begin(), ms.end(), p.begin() + 1);
  return p;
}

}  // namespace

void validate(const Distribution& f) {
  if (std::holds_alternative<DiscreteDist>(f))
    validate_discrete(std::get<DiscreteDist>(f));
  else
    validate_pw(std::get<PiecewiseUniformDist>(f));
}

bool is_discrete(const Distribution& f) { return std::holds_alternative<DiscreteDist>(f); }

double cdf(const Distribution& f, double x) {
  if (const auto* d = std::get_if<DiscreteDist>(&f)) {
    double total = 0.0;
    for (std::size_t i = 0; i < d->support.size() && d->support[i] <= x; ++i) total += d->probs[i];
    return total;
  }
  const auto& d = std::get<PiecewiseUniformDist>(f);
  if (x <= d.breakpoints.front()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < d.masses.size(); ++i) {
    double left = d.breakpoints[i], right = d.breakpoints[i + 1];
    if (x >= right) {
      total += d.masses[i];
    } else {
      total += d.masses[i] * (x - left) / (right - left);
      break;
    }
  }
  return total;
}

double cdf_left(const Distribution& f, double x) {
  if (const auto* d = std::get_if<DiscreteDist>(&f)) {
    double total = 0.0;
    for (std::size_t i = 0; i < d->support.size() && d->support[i] < x; ++i) total += d->probs[i];
    return total;
  }
  return cdf(f, x);  // continuous laws have no atoms
}

Interval quantile_set(const Distribution& f, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("quantile level must be in (0,1)");
  if (const auto* d = std::get_if<DiscreteDist>(&f)) {
    auto prefix = prefix_sums(d->probs);
    std::size_t lo = 0;
    while (lo < d->support.size() && prefix[lo + 1] < beta - tau_cmp) ++lo;
    std::size_t hi = d->support.size() - 1;
    while (hi > 0 && prefix[hi] > beta + tau_cmp) --hi;
    return {static_cast<double>(d->support[lo]), static_cast<double>(d->support[hi])};
  }
  const auto& d = std::get<PiecewiseUniformDist>(f);
  auto prefix = prefix_sums(d.masses);
  auto invert = [&](std::size_t piece) {
    double width = d.breakpoints[piece + 1] - d.breakpoints[piece];
    double x = d.breakpoints[piece] + (beta - prefix[piece]) * width / d.masses[piece];
    return std::clamp(x, d.breakpoints[piece], d.breakpoints[piece + 1]);
  };
  std::size_t lo = 0;
  while (lo + 1 < d.masses.size() && prefix[lo + 1] < beta - tau_cmp) ++lo;
  double q_lo = d.masses[lo] > 0.0 ? invert(lo) : d.breakpoints[lo + 1];
  std::size_t hi = d.masses.size() - 1;
  while (hi > 0 && prefix[hi] > beta + tau_cmp) --hi;
  double q_hi = d.masses[hi] > 0.0 ? invert(hi) : d.breakpoints[hi + 1];
  return {q_lo, q_hi};
}

Distribution mix(const std::vector<Distribution>& components, const std::vector<double>& weights) {
  if (components.empty() || components.size() != weights.size())
    throw std::invalid_argument("mix: need matching nonempty components and weights");
  double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(wsum - 1.0) > tau_mass) throw std::invalid_argument("mix: weights must sum to 1");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("mix: weights must be positive");
  bool discrete = is_discrete(components.front());
  for (const auto& c : components)
    if (is_discrete(c) != discrete) throw std::invalid_argument("mix: components must share a kind");

  if (discrete) {
    std::map<long long, double> atoms;
    for (std::size_t k = 0; k < components.size(); ++k) {
      const auto& d = std::get<DiscreteDist>(components[k]);
      for (std::size_t i = 0; i < d.support.size(); ++i) atoms[d.support[i]] += weights[k] * d.probs[i];
    }
    DiscreteDist out;
    for (auto& [x, p] : atoms) {
      out.support.push_back(x);
      out.probs.push_back(p);
    }
    validate_discrete(out);
    return out;
  }

  std::vector<double> grid;
  for (const auto& c : components) {
    const auto& d = std::get<PiecewiseUniformDist>(c);
    grid.insert(grid.end(), d.breakpoints.begin(), d.breakpoints.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  PiecewiseUniformDist out;
  out.breakpoints = grid;
  out.masses.resize(grid.size() - 1, 0.0);
  for (std::size_t k = 0; k < components.size(); ++k) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      out.masses[i] += weights[k] * (cdf(components[k], grid[i + 1]) - cdf(components[k], grid[i]));
  }
  validate_pw(out);
  return out;
}

Distribution location_scale(const Distribution& f, double loc, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("location_scale: scale must be positive");
  if (const auto* d = std::get_if<DiscreteDist>(&f)) {
    if (scale != 1.0)
      throw std::invalid_argument("location_scale: discrete laws only admit scale 1");
    if (std::floor(loc) != loc)
      throw std::invalid_argument("location_scale: discrete laws only admit integer loc");
    DiscreteDist out = *d;
    for (auto& x : out.support) {
      x += static_cast<long long>(loc);
      if (x < 0) throw std::invalid_argument("location_scale: shifted support leaves the nonnegative integers");
    }
    return out;
  }
  PiecewiseUniformDist out = std::get<PiecewiseUniformDist>(f);
  for (auto& b : out.breakpoints) b = loc + scale * b;
  return out;
}

std::vector<double> sample(const Distribution& f, std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> out;
  out.reserve(n);
  if (const auto* d = std::get_if<DiscreteDist>(&f)) {
    auto prefix = prefix_sums(d->probs);
    for (std::size_t k = 0; k < n; ++k) {
      double u = unif(rng);
      auto it = std::lower_bound(prefix.begin() + 1, prefix.end(), u);
      std::size_t i = std::min<std::size_t>(it - prefix.begin() - 1, d->support.size() - 1);
      out.push_back(static_cast<double>(d->support[i]));
    }
    return out;
  }
  const auto& d = std::get<PiecewiseUniformDist>(f);
  auto prefix = prefix_sums(d.masses);
  for (std::size_t k = 0; k < n; ++k) {
    double u = unif(rng);
    std::size_t i = 0;
    while (i + 1 < d.masses.size() && (prefix[i + 1] < u || d.masses[i] == 0.0)) ++i;
    double width = d.breakpoints[i + 1] - d.breakpoints[i];
    double x = d.masses[i] > 0.0
                   ? d.breakpoints[i] + (u - prefix[i]) * width / d.masses[i]
                   : d.breakpoints[i];
    out.push_back(std::clamp(x, d.breakpoints[i], d.breakpoints[i + 1]));
  }
  return out;
}

Interval support_hull(const Distribution& f) {
  if (const auto* d = std::get_if<DiscreteDist>(&f))
    return {static_cast<double>(d->support.front()), static_cast<double>(d->support.back())};
  const auto& d = std::get<PiecewiseUniformDist>(f);
  return {d.breakpoints.front(), d.breakpoints.back()};
}

}  // namespace iv
