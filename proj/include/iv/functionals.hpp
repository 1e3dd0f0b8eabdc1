#pragma once

#include <vector>

#include "iv/distribution.hpp"
#include "iv/interval.hpp"

namespace iv {

// F(upper) - F(lower-): probability content of a closed interval.
double coverage(const Distribution& f, const Interval& iv);

// Equal-tailed interval. The full solution set is the product
// {[a, b] : a in lower_set, b in upper_set} of the two quantile sets.
// result enumerates it as families when that is finite (discrete laws) or a
// single interval (continuous laws with degenerate quantile sets); the
// product form is authoritative either way.
struct EtiResult {
  Interval lower_set;
  Interval upper_set;
  bool enumerable = true;
  FunctionalResult result;

  bool contains(const Distribution& f, const Interval& iv) const;
};
EtiResult eti(const Distribution& f, double alpha);

// Shortest interval: argmin of length subject to coverage >= 1 - alpha.
// Solutions for discrete laws have integer atom endpoints; for piecewise
// uniform laws they form finitely many fixed-length families.
FunctionalResult si(const Distribution& f, double alpha);

// Modal interval, half-length convention: windows of length 2c (continuous)
// or floor(2c) (integer endpoints), coverage maximized.
FunctionalResult mi(const Distribution& f, double c);

// Lower endpoints x of the maximizing integer windows [x, x+k].
std::vector<long long> mi_lower_discrete(const Distribution& f, long long k);
// Midpoints of the maximizing windows [m-c, m+c]; range endpoints of each
// solution family, degenerate families contribute one midpoint.
std::vector<Interval> mi_mid_continuous(const Distribution& f, double c);

// Guaranteed coverage intervals: coverage >= 1 - alpha and shrinking either
// endpoint by any positive amount leaves at most 1 - alpha.
//
// Discrete laws: members enumerated with integer endpoints inside the
// support hull (right-open continuations beyond the last atom repeat the
// boundary member and are not listed). Continuous laws: the solution set
// {(a, b) : F(b) - F(a) = 1 - alpha} decomposes over the breakpoint grid
// into components with b affine in a, or rectangles across zero-mass
// pieces; components are reported inside the support hull.
struct GciComponent {
  Interval a_range;
  Interval b_range;
  bool rectangular = false;  // both endpoints range freely
  double b_intercept = 0.0;  // otherwise b = b_intercept + b_slope * a
  double b_slope = 0.0;
};
struct GciResult {
  double alpha = 0.1;
  std::vector<Interval> members;         // discrete enumeration
  std::vector<GciComponent> components;  // continuous structure
  // Slope-one components exactly; other components and rectangles sampled at
  // their corners as degenerate families.
  std::vector<IntervalFamily> families;
};
GciResult gci(const Distribution& f, double alpha);

// Membership per the definition itself; exact for any interval, including
// ones outside the reported hull.
bool gci_contains(const Distribution& f, double alpha, const Interval& iv);

// Uniform handle on the four functionals for the lab.
enum class FunctionalKind { eti, si, mi, gci };
struct FunctionalParams {
  FunctionalKind kind = FunctionalKind::si;
  double alpha = 0.1;  // eti, si, gci
  double c = 0.5;      // mi
};

bool functional_contains(const Distribution& f, const FunctionalParams& p, const Interval& iv);
// Finite stand-ins for the solution set: family and component corners,
// discrete members. Every representative is itself a solution.
std::vector<Interval> functional_representatives(const Distribution& f, const FunctionalParams& p);

}  // namespace iv
