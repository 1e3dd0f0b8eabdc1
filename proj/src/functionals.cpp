#include "iv/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "iv/tolerances.hpp"

namespace iv {

namespace {

std::vector<double> prefix_sums(const std::vector<double>& ms) {
  std::vector<double> p(ms.size() + 1, 0.0);
  std::partial_sum(ms.begin(), ms.end(), p.begin() + 1);
  return p;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
}

// Leftmost x with F(x) >= p, clamped to the breakpoint hull. Trailing
// zero-mass pieces are excluded when p reaches the total mass.
double q_low(const PiecewiseUniformDist& d, const std::vector<double>& prefix, double p) {
  if (p <= 0.0) return d.breakpoints.front();
  if (p >= prefix.back() - tau_mass) {
    std::size_t j = d.masses.size();
    while (j > 0 && d.masses[j - 1] == 0.0) --j;
    return d.breakpoints[j];
  }
  std::size_t i = 0;
  while (prefix[i + 1] < p - tau_mass) ++i;
  double width = d.breakpoints[i + 1] - d.breakpoints[i];
  double x = d.breakpoints[i] + (p - prefix[i]) * width / d.masses[i];
  return std::clamp(x, d.breakpoints[i], d.breakpoints[i + 1]);
}

// Rightmost x with F(x) <= p (within the hull).
double q_high(const PiecewiseUniformDist& d, const std::vector<double>& prefix, double p) {
  if (p >= prefix.back() - tau_mass) return d.breakpoints.back();
  std::size_t i = d.masses.size() - 1;
  while (i > 0 && prefix[i] > p + tau_mass) --i;
  if (d.masses[i] == 0.0) return d.breakpoints[i + 1];
  double width = d.breakpoints[i + 1] - d.breakpoints[i];
  double x = d.breakpoints[i] + (p - prefix[i]) * width / d.masses[i];
  return std::clamp(x, d.breakpoints[i], d.breakpoints[i + 1]);
}

double pw_cdf(const PiecewiseUniformDist& d, const std::vector<double>& prefix, double x) {
  if (x <= d.breakpoints.front()) return 0.0;
  if (x >= d.breakpoints.back()) return prefix.back();
  std::size_t i = 0;
  while (d.breakpoints[i + 1] < x) ++i;
  double width = d.breakpoints[i + 1] - d.breakpoints[i];
  return prefix[i] + d.masses[i] * (x - d.breakpoints[i]) / width;
}

// Scan a piecewise linear objective over its own breakpoints and return the
// optimum together with the maximal sub-intervals attaining it. The
// objective must be linear between consecutive candidates.
struct ScanPiece {
  double lo, hi;  // candidate interval attaining the optimum
};
template <class Objective>
std::pair<double, std::vector<ScanPiece>> scan_linear(std::vector<double> candidates,
                                                      Objective&& value, bool minimize) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<double> vals(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) vals[i] = value(candidates[i]);
  double best = minimize ? *std::min_element(vals.begin(), vals.end())
                         : *std::max_element(vals.begin(), vals.end());
  auto at_best = [&](double v) { return std::abs(v - best) <= tau_cmp; };

  std::vector<ScanPiece> pieces;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!at_best(vals[i])) continue;
    // extend over consecutive optimal candidates; linearity makes the whole
    // stretch optimal once both ends are
    std::size_t j = i;
    while (j + 1 < candidates.size() && at_best(vals[j + 1]) &&
           at_best(value(0.5 * (candidates[j] + candidates[j + 1]))))
      ++j;
    pieces.push_back({candidates[i], candidates[j]});
    i = j;
  }
  return {best, pieces};
}

FunctionalResult si_discrete(const DiscreteDist& d, double alpha) {
  double need = 1.0 - alpha;
  auto prefix = prefix_sums(d.probs);
  std::size_t n = d.support.size();
  double best_len = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (prefix[j + 1] - prefix[i] < need - tau_cmp) continue;
      double len = static_cast<double>(d.support[j] - d.support[i]);
      if (best_len < 0.0 || len < best_len) best_len = len;
      break;  // longer j only adds length
    }
  if (best_len < 0.0) throw std::logic_error("shortest interval: no feasible window");

  FunctionalResult out;
  out.length = best_len;
  out.coverage = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double len = static_cast<double>(d.support[j] - d.support[i]);
      if (len > best_len + tau_cmp) break;
      double cov = prefix[j + 1] - prefix[i];
      if (cov < need - tau_cmp) continue;
      out.families.push_back({static_cast<double>(d.support[i]),
                              static_cast<double>(d.support[i]), len});
      out.coverage = std::min(out.coverage, cov);
    }
  canonicalize_families(out.families, tau_cmp);
  return out;
}

FunctionalResult si_pw(const PiecewiseUniformDist& d, double alpha) {
  double need = 1.0 - alpha;
  auto prefix = prefix_sums(d.masses);
  double total = prefix.back();

  // Window length as a function of the left endpoint:
  //   w(a) = q_low(F(a) + need) - a,
  // piecewise linear in a with breakpoints where a or its partner crosses
  // the grid. Candidates cover both.
  std::vector<double> candidates;
  for (double b : d.breakpoints) candidates.push_back(b);
  for (std::size_t j = 0; j < prefix.size(); ++j) {
    double t = prefix[j] - need;
    if (t < -tau_cmp || t > alpha + tau_cmp) continue;
    candidates.push_back(q_low(d, prefix, t));
    candidates.push_back(q_high(d, prefix, std::max(t, 0.0)));
  }
  std::vector<double> feasible;
  for (double a : candidates)
    if (pw_cdf(d, prefix, a) + need <= total + tau_cmp) feasible.push_back(a);

  auto window = [&](double a) { return q_low(d, prefix, pw_cdf(d, prefix, a) + need) - a; };
  auto [best, pieces] = scan_linear(std::move(feasible), window, /*minimize=*/true);

  FunctionalResult out;
  out.length = best;
  out.coverage = 1.0;
  for (const auto& p : pieces) {
    out.families.push_back({p.lo, p.hi, best});
    out.coverage = std::min({out.coverage, coverage(Distribution{d}, {p.lo, p.lo + best}),
                             coverage(Distribution{d}, {p.hi, p.hi + best})});
  }
  canonicalize_families(out.families, tau_cmp);
  return out;
}

FunctionalResult mi_discrete(const DiscreteDist& d, long long k) {
  auto prefix = prefix_sums(d.probs);
  auto mass_window = [&](long long x) {
    auto lo = std::lower_bound(d.support.begin(), d.support.end(), x);
    auto hi = std::upper_bound(d.support.begin(), d.support.end(), x + k);
    return prefix[hi - d.support.begin()] - prefix[lo - d.support.begin()];
  };
  long long from = std::max<long long>(0, d.support.front() - k);
  long long to = d.support.back();
  double best = 0.0;
  for (long long x = from; x <= to; ++x) best = std::max(best, mass_window(x));

  FunctionalResult out;
  out.length = static_cast<double>(k);
  out.coverage = best;
  for (long long x = from; x <= to; ++x)
    if (mass_window(x) >= best - tau_cmp)
      out.families.push_back(
          {static_cast<double>(x), static_cast<double>(x), static_cast<double>(k)});
  canonicalize_families(out.families, tau_cmp);
  return out;
}

FunctionalResult mi_pw(const PiecewiseUniformDist& d, double c) {
  double len = 2.0 * c;
  auto prefix = prefix_sums(d.masses);
  std::vector<double> candidates;
  for (double b : d.breakpoints) {
    candidates.push_back(b);
    candidates.push_back(b - len);
  }
  auto content = [&](double a) {
    return pw_cdf(d, prefix, a + len) - pw_cdf(d, prefix, a);
  };
  auto [best, pieces] = scan_linear(std::move(candidates), content, /*minimize=*/false);

  FunctionalResult out;
  out.length = len;
  out.coverage = best;
  for (const auto& p : pieces) out.families.push_back({p.lo, p.hi, len});
  canonicalize_families(out.families, tau_cmp);
  return out;
}

}  // namespace

double coverage(const Distribution& f, const Interval& iv) {
  if (iv.lower > iv.upper) throw std::invalid_argument("coverage: interval endpoints out of order");
  return cdf(f, iv.upper) - cdf_left(f, iv.lower);
}

EtiResult eti(const Distribution& f, double alpha) {
  check_alpha(alpha);
  EtiResult r;
  r.lower_set = quantile_set(f, alpha / 2.0);
  r.upper_set = quantile_set(f, 1.0 - alpha / 2.0);

  if (is_discrete(f)) {
    r.enumerable = true;
    r.result.coverage = 1.0;
    r.result.length = 0.0;
    for (long long a = static_cast<long long>(std::ceil(r.lower_set.lower - 0.5));
         a <= static_cast<long long>(std::floor(r.lower_set.upper + 0.5)); ++a) {
      if (a < r.lower_set.lower - tau_cmp || a > r.lower_set.upper + tau_cmp) continue;
      for (long long b = static_cast<long long>(std::ceil(r.upper_set.lower - 0.5));
           b <= static_cast<long long>(std::floor(r.upper_set.upper + 0.5)); ++b) {
        if (b < r.upper_set.lower - tau_cmp || b > r.upper_set.upper + tau_cmp || b < a) continue;
        Interval member{static_cast<double>(a), static_cast<double>(b)};
        r.result.families.push_back({member.lower, member.lower, member.length()});
        r.result.coverage = std::min(r.result.coverage, coverage(f, member));
        r.result.length = std::max(r.result.length, member.length());
      }
    }
    canonicalize_families(r.result.families, tau_cmp);
    return r;
  }

  bool lower_deg = r.lower_set.length() <= tau_cmp;
  bool upper_deg = r.upper_set.length() <= tau_cmp;
  r.enumerable = lower_deg && upper_deg;
  Interval tight{r.lower_set.upper, r.upper_set.lower};   // least coverage member
  Interval wide{r.lower_set.lower, r.upper_set.upper};    // greatest length member
  r.result.coverage = coverage(f, tight);
  r.result.length = wide.length();
  if (r.enumerable)
    r.result.families.push_back({r.lower_set.lower, r.lower_set.lower,
                                 r.upper_set.lower - r.lower_set.lower});
  return r;
}

bool EtiResult::contains(const Distribution& f, const Interval& iv) const {
  if (is_discrete(f) && (std::floor(iv.lower) != iv.lower || std::floor(iv.upper) != iv.upper))
    return false;
  return iv.lower >= lower_set.lower - tau_cmp && iv.lower <= lower_set.upper + tau_cmp &&
         iv.upper >= upper_set.lower - tau_cmp && iv.upper <= upper_set.upper + tau_cmp &&
         iv.lower <= iv.upper;
}

FunctionalResult si(const Distribution& f, double alpha) {
  check_alpha(alpha);
  if (const auto* d = std::get_if<DiscreteDist>(&f)) return si_discrete(*d, alpha);
  return si_pw(std::get<PiecewiseUniformDist>(f), alpha);
}

FunctionalResult mi(const Distribution& f, double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("modal interval: c must be >= 0");
  if (const auto* d = std::get_if<DiscreteDist>(&f))
    return mi_discrete(*d, static_cast<long long>(std::floor(2.0 * c)));
  return mi_pw(std::get<PiecewiseUniformDist>(f), c);
}

std::vector<long long> mi_lower_discrete(const Distribution& f, long long k) {
  if (k < 0) throw std::invalid_argument("modal interval: k must be >= 0");
  const auto* d = std::get_if<DiscreteDist>(&f);
  if (!d) throw std::invalid_argument("mi_lower_discrete: law must be discrete");
  auto res = mi_discrete(*d, k);
  std::vector<long long> out;
  for (const auto& fam : res.families)
    for (long long x = static_cast<long long>(fam.lower_lo);
         x <= static_cast<long long>(fam.lower_hi); ++x)
      out.push_back(x);
  return out;
}

std::vector<Interval> mi_mid_continuous(const Distribution& f, double c) {
  const auto* d = std::get_if<PiecewiseUniformDist>(&f);
  if (!d) throw std::invalid_argument("mi_mid_continuous: law must be piecewise uniform");
  auto res = mi_pw(*d, c);
  std::vector<Interval> out;
  for (const auto& fam : res.families) out.push_back({fam.lower_lo + c, fam.lower_hi + c});
  return out;
}

namespace {

void push_member_family(std::vector<IntervalFamily>& fams, const Interval& iv) {
  fams.push_back({iv.lower, iv.lower, iv.length()});
}

GciResult gci_discrete(const DiscreteDist& d, double alpha) {
  GciResult out;
  out.alpha = alpha;
  double need = 1.0 - alpha;
  auto prefix = prefix_sums(d.probs);
  auto mass_at = [&](long long x) {
    auto it = std::lower_bound(d.support.begin(), d.support.end(), x);
    return (it != d.support.end() && *it == x) ? d.probs[it - d.support.begin()] : 0.0;
  };
  auto cdf_at = [&](double x) {
    std::size_t i = 0;
    while (i < d.support.size() && d.support[i] <= x) ++i;
    return prefix[i];
  };
  long long lo = 0, hi = d.support.back();
  for (long long a = lo; a <= hi; ++a)
    for (long long b = a; b <= hi; ++b) {
      double cov = cdf_at(static_cast<double>(b)) - cdf_at(static_cast<double>(a) - 1.0);
      if (cov < need - tau_cmp) continue;
      if (cov - mass_at(b) > need + tau_cmp) continue;
      if (cov - mass_at(a) > need + tau_cmp) continue;
      out.members.push_back({static_cast<double>(a), static_cast<double>(b)});
    }
  for (const auto& m : out.members) push_member_family(out.families, m);
  canonicalize_families(out.families, tau_cmp);
  return out;
}

GciResult gci_pw(const PiecewiseUniformDist& d, double alpha) {
  GciResult out;
  out.alpha = alpha;
  double need = 1.0 - alpha;
  auto prefix = prefix_sums(d.masses);
  std::size_t n = d.masses.size();

  // Components of {(a,b) : F(b) - F(a) = need} over piece pairs. Positive
  // density on both sides gives b affine in a; zero-mass pieces free one or
  // both endpoints.
  for (std::size_t i = 0; i < n; ++i) {
    double ai = d.breakpoints[i], ai1 = d.breakpoints[i + 1];
    double di = d.masses[i] / (ai1 - ai);
    for (std::size_t j = i; j < n; ++j) {
      double bj = d.breakpoints[j], bj1 = d.breakpoints[j + 1];
      double dj = d.masses[j] / (bj1 - bj);
      if (di > 0.0 && dj > 0.0) {
        // F(b) = prefix[j] + dj (b - bj), F(a) = prefix[i] + di (a - ai)
        double slope = di / dj;
        double icept = bj + (prefix[i] - prefix[j] + need - di * ai) / dj;
        // a range where b(a) stays inside piece j
        double a_from = std::max(ai, (bj - icept) / slope);
        double a_to = std::min(ai1, (bj1 - icept) / slope);
        if (a_from > a_to + tau_cmp) continue;
        a_from = std::clamp(a_from, ai, ai1);
        a_to = std::clamp(a_to, ai, ai1);
        GciComponent comp;
        comp.a_range = {a_from, a_to};
        comp.b_range = {icept + slope * a_from, icept + slope * a_to};
        comp.b_intercept = icept;
        comp.b_slope = slope;
        if (comp.b_range.lower >= comp.a_range.lower - tau_cmp) out.components.push_back(comp);
      } else if (di == 0.0 && dj > 0.0) {
        double level = prefix[i] + need;
        if (level < prefix[j] - tau_cmp || level > prefix[j + 1] + tau_cmp) continue;
        double b = std::clamp(bj + (level - prefix[j]) / dj, bj, bj1);
        GciComponent comp;
        comp.a_range = {ai, ai1};
        comp.b_range = {b, b};
        comp.b_intercept = b;
        comp.b_slope = 0.0;
        out.components.push_back(comp);
      } else if (di > 0.0 && dj == 0.0) {
        double level = prefix[j] - need;
        if (level < prefix[i] - tau_cmp || level > prefix[i + 1] + tau_cmp) continue;
        double a = std::clamp(ai + (level - prefix[i]) / di, ai, ai1);
        GciComponent comp;
        comp.a_range = {a, a};
        comp.b_range = {bj, bj1};
        comp.rectangular = true;
        out.components.push_back(comp);
      } else {
        if (std::abs(prefix[j] - prefix[i] - need) > tau_cmp) continue;
        GciComponent comp;
        comp.a_range = {ai, ai1};
        comp.b_range = {bj, bj1};
        comp.rectangular = true;
        out.components.push_back(comp);
      }
    }
  }

  for (const auto& comp : out.components) {
    if (!comp.rectangular && std::abs(comp.b_slope - 1.0) <= 1e-12) {
      out.families.push_back({comp.a_range.lower, comp.a_range.upper, comp.b_intercept});
    } else if (!comp.rectangular) {
      push_member_family(out.families, {comp.a_range.lower, comp.b_range.lower});
      push_member_family(out.families, {comp.a_range.upper, comp.b_range.upper});
    } else {
      push_member_family(out.families, {comp.a_range.lower, comp.b_range.lower});
      push_member_family(out.families, {comp.a_range.lower, comp.b_range.upper});
      push_member_family(out.families, {comp.a_range.upper, comp.b_range.lower});
      push_member_family(out.families, {comp.a_range.upper, comp.b_range.upper});
    }
  }
  canonicalize_families(out.families, tau_cmp);
  return out;
}

}  // namespace

GciResult gci(const Distribution& f, double alpha) {
  check_alpha(alpha);
  if (const auto* d = std::get_if<DiscreteDist>(&f)) return gci_discrete(*d, alpha);
  return gci_pw(std::get<PiecewiseUniformDist>(f), alpha);
}

bool gci_contains(const Distribution& f, double alpha, const Interval& iv) {
  check_alpha(alpha);
  double need = 1.0 - alpha;
  double cov = coverage(f, iv);
  if (cov < need - tau_cmp) return false;
  if (is_discrete(f)) {
    const auto& d = std::get<DiscreteDist>(f);
    auto mass_at = [&](double x) {
      if (std::floor(x) != x) return 0.0;
      auto it = std::lower_bound(d.support.begin(), d.support.end(), static_cast<long long>(x));
      return (it != d.support.end() && *it == static_cast<long long>(x))
                 ? d.probs[it - d.support.begin()]
                 : 0.0;
    };
    return cov - mass_at(iv.upper) <= need + tau_cmp && cov - mass_at(iv.lower) <= need + tau_cmp;
  }
  return cov <= need + tau_cmp;
}

bool functional_contains(const Distribution& f, const FunctionalParams& p, const Interval& iv) {
  switch (p.kind) {
    case FunctionalKind::eti:
      return eti(f, p.alpha).contains(f, iv);
    case FunctionalKind::si:
      return si(f, p.alpha).contains(iv, tau_len);
    case FunctionalKind::mi:
      return mi(f, p.c).contains(iv, tau_len);
    case FunctionalKind::gci:
      return gci_contains(f, p.alpha, iv);
  }
  return false;
}

std::vector<Interval> functional_representatives(const Distribution& f,
                                                 const FunctionalParams& p) {
  std::vector<Interval> reps;
  switch (p.kind) {
    case FunctionalKind::eti: {
      auto r = eti(f, p.alpha);
      if (r.enumerable && !r.result.families.empty()) {
        reps = r.result.representatives();
      } else {
        for (double a : {r.lower_set.lower, r.lower_set.upper})
          for (double b : {r.upper_set.lower, r.upper_set.upper}) reps.push_back({a, b});
      }
      break;
    }
    case FunctionalKind::si:
      reps = si(f, p.alpha).representatives();
      break;
    case FunctionalKind::mi:
      reps = mi(f, p.c).representatives();
      break;
    case FunctionalKind::gci: {
      auto r = gci(f, p.alpha);
      reps = r.members;
      for (const auto& fam : r.families) {
        reps.push_back(fam.first());
        if (fam.lower_hi > fam.lower_lo) reps.push_back(fam.last());
      }
      break;
    }
  }
  std::vector<Interval> dedup;
  for (const auto& r : reps) {
    bool seen = false;
    for (const auto& s : dedup) seen = seen || same_interval(r, s, 1e-12);
    if (!seen) dedup.push_back(r);
  }
  return dedup;
}

}  // namespace iv
