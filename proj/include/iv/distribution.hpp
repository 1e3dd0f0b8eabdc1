#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "iv/interval.hpp"

namespace iv {

// Law with finitely many atoms on the nonnegative integers.
struct DiscreteDist {
  std::vector<long long> support;  // strictly ascending, all >= 0
  std::vector<double> probs;       // strictly positive, sums to 1
};

// Law with piecewise constant density: masses[i] is spread uniformly over
// [breakpoints[i], breakpoints[i+1]]. Zero masses encode gaps in the support.
struct PiecewiseUniformDist {
  std::vector<double> breakpoints;  // strictly ascending, size >= 2
  std::vector<double> masses;       // size breakpoints.size()-1, each >= 0, sums to 1
};

// Every law is one of the two base kinds. Mixtures and location-scale maps
// are flattened eagerly by mix() and location_scale(); they never persist as
// separate node types.
using Distribution = std::variant<DiscreteDist, PiecewiseUniformDist>;

// Throws std::invalid_argument on any invariant violation.
void validate(const Distribution& f);

bool is_discrete(const Distribution& f);

double cdf(const Distribution& f, double x);       // P(Y <= x)
double cdf_left(const Distribution& f, double x);  // P(Y < x)

// {x : F(x-) <= beta <= F(x)} as a closed interval, beta in (0,1). For
// discrete laws the admissible points are the integers inside. Comparisons
// use tau_cmp.
Interval quantile_set(const Distribution& f, double beta);

// Components must share a kind; weights positive and summing to 1 within
// tau_mass. The result is flattened to that kind.
Distribution mix(const std::vector<Distribution>& components,
                 const std::vector<double>& weights);

// x -> loc + scale * x, scale > 0. Discrete laws only admit integer loc with
// scale == 1 and a shifted support still inside the nonnegative integers.
Distribution location_scale(const Distribution& f, double loc, double scale);

// n inverse-CDF draws from a seeded 64-bit Mersenne twister.
std::vector<double> sample(const Distribution& f, std::uint64_t seed, std::size_t n);

// Hull of the support: [first breakpoint, last breakpoint] or
// [min atom, max atom].
Interval support_hull(const Distribution& f);

}  // namespace iv
