#include "iv/interval.hpp"

#include <algorithm>
#include <cmath>

#include "iv/tolerances.hpp"

namespace iv {

bool same_interval(const Interval& a, const Interval& b, double tol) {
  return std::abs(a.lower - b.lower) <= tol && std::abs(a.upper - b.upper) <= tol;
}

bool IntervalFamily::contains(const Interval& iv, double tol) const {
  if (std::abs(iv.length() - length) > tol) return false;
  return iv.lower >= lower_lo - tol && iv.lower <= lower_hi + tol;
}

bool FunctionalResult::contains(const Interval& iv, double tol) const {
  for (const auto& fam : families)
    if (fam.contains(iv, tol)) return true;
  return false;
}

std::vector<Interval> FunctionalResult::representatives() const {
  std::vector<Interval> out;
  for (const auto& fam : families) {
    out.push_back(fam.first());
    if (fam.lower_hi > fam.lower_lo) out.push_back(fam.last());
  }
  return out;
}

void canonicalize_families(std::vector<IntervalFamily>& fams, double tol) {
  std::sort(fams.begin(), fams.end(), [](const IntervalFamily& a, const IntervalFamily& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.lower_lo < b.lower_lo;
  });
  std::vector<IntervalFamily> merged;
  for (const auto& fam : fams) {
    if (!merged.empty() && std::abs(merged.back().length - fam.length) <= tol &&
        fam.lower_lo <= merged.back().lower_hi + tol) {
      merged.back().lower_hi = std::max(merged.back().lower_hi, fam.lower_hi);
    } else {
      merged.push_back(fam);
    }
  }
  fams = std::move(merged);
}

}  // namespace iv
