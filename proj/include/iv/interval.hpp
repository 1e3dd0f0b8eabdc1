#pragma once

#include <vector>

namespace iv {

// Closed interval [lower, upper] with lower <= upper.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  double length() const { return upper - lower; }
  bool contains(double y) const { return lower <= y && y <= upper; }
};

bool same_interval(const Interval& a, const Interval& b, double tol);

// Fixed-length continuum {[x, x + length] : x in [lower_lo, lower_hi]}.
// A single interval is the degenerate case lower_lo == lower_hi.
struct IntervalFamily {
  double lower_lo = 0.0;
  double lower_hi = 0.0;
  double length = 0.0;

  Interval at(double x) const { return {x, x + length}; }
  Interval first() const { return at(lower_lo); }
  Interval last() const { return at(lower_hi); }
  bool contains(const Interval& iv, double tol) const;
};

// Solution set of an interval functional. Families are sorted by
// (length, lower_lo); families of equal length have disjoint lower ranges.
// coverage is the minimum probability content over the set, length the
// maximum member length.
struct FunctionalResult {
  std::vector<IntervalFamily> families;
  double coverage = 0.0;
  double length = 0.0;

  bool contains(const Interval& iv, double tol) const;
  // One interval per family boundary; finite stand-ins for the full set.
  std::vector<Interval> representatives() const;
};

// Sort, merge same-length families with touching lower ranges.
void canonicalize_families(std::vector<IntervalFamily>& fams, double tol);

}  // namespace iv
