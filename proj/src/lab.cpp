#include "iv/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iv/fixtures.hpp"
#include "iv/tolerances.hpp"

namespace iv {

namespace {

// A consistency mismatch counts as a failure only past this gap; smaller
// positive gaps land in the inconclusive zone between tau_argmin and here.
constexpr double fail_gap = 1e-6;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string fmt_iv(const Interval& iv) {
  return "[" + fmt(iv.lower) + ", " + fmt(iv.upper) + "]";
}

Distribution mix2(const Distribution& f0, const Distribution& f1, double lambda) {
  return mix({f0, f1}, {1.0 - lambda, lambda});
}

std::vector<double> lambda_grid(int points) {
  std::vector<double> out;
  out.reserve(points);
  for (int i = 1; i <= points; ++i)
    out.push_back(static_cast<double>(i) / (points + 1));
  return out;
}

bool family_inside(const IntervalFamily& a, const IntervalFamily& b) {
  return std::abs(a.length - b.length) <= tau_len && a.lower_lo >= b.lower_lo - tau_cmp &&
         a.lower_hi <= b.lower_hi + tau_cmp;
}

bool families_subset(const std::vector<IntervalFamily>& as,
                     const std::vector<IntervalFamily>& bs) {
  for (const auto& a : as) {
    bool inside = false;
    for (const auto& b : bs)
      if (family_inside(a, b)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

bool families_equal(const std::vector<IntervalFamily>& as,
                    const std::vector<IntervalFamily>& bs) {
  return families_subset(as, bs) && families_subset(bs, as);
}

std::vector<IntervalFamily> families_intersect(const std::vector<IntervalFamily>& as,
                                               const std::vector<IntervalFamily>& bs) {
  std::vector<IntervalFamily> out;
  for (const auto& a : as)
    for (const auto& b : bs) {
      if (std::abs(a.length - b.length) > tau_len) continue;
      double lo = std::max(a.lower_lo, b.lower_lo);
      double hi = std::min(a.lower_hi, b.lower_hi);
      if (lo > hi + tau_cmp) continue;
      out.push_back({lo, std::max(lo, hi), a.length});
    }
  canonicalize_families(out, tau_cmp);
  return out;
}

FunctionalResult solve_families(const Distribution& f, const FunctionalParams& p) {
  switch (p.kind) {
    case FunctionalKind::si:
      return si(f, p.alpha);
    case FunctionalKind::mi:
      return mi(f, p.c);
    default:
      throw std::logic_error("family solver covers si and mi only");
  }
}

bool interval_subset(const Interval& a, const Interval& b) {
  return a.lower >= b.lower - tau_cmp && a.upper <= b.upper + tau_cmp;
}

}  // namespace

ReportGrid ReportGrid::integer_intervals(long long lo, long long hi) {
  if (hi < lo) throw std::invalid_argument("report grid: hi < lo");
  ReportGrid g;
  for (long long a = lo; a <= hi; ++a)
    for (long long b = a; b <= hi; ++b)
      g.intervals.push_back({static_cast<double>(a), static_cast<double>(b)});
  return g;
}

ReportGrid ReportGrid::integer_points(long long lo, long long hi) {
  if (hi < lo) throw std::invalid_argument("report grid: hi < lo");
  ReportGrid g;
  for (long long x = lo; x <= hi; ++x) g.points.push_back(static_cast<double>(x));
  return g;
}

namespace {

std::vector<double> grid_points(double lo, double hi, double step,
                                const std::vector<double>& inject) {
  if (!(step > 0.0)) throw std::invalid_argument("report grid: step must be positive");
  if (hi < lo) throw std::invalid_argument("report grid: hi < lo");
  std::vector<double> pts;
  long long n = static_cast<long long>(std::floor((hi - lo) / step + tau_cmp));
  for (long long i = 0; i <= n; ++i) pts.push_back(lo + step * static_cast<double>(i));
  pts.push_back(hi);
  pts.insert(pts.end(), inject.begin(), inject.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
            pts.end());
  return pts;
}

}  // namespace

ReportGrid ReportGrid::continuous_intervals(double lo, double hi, double step,
                                            const std::vector<double>& inject) {
  auto pts = grid_points(lo, hi, step, inject);
  ReportGrid g;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) g.intervals.push_back({pts[i], pts[j]});
  return g;
}

ReportGrid ReportGrid::continuous_points(double lo, double hi, double step,
                                         const std::vector<double>& inject) {
  ReportGrid g;
  g.points = grid_points(lo, hi, step, inject);
  return g;
}

bool ReportGrid::has_point(double x, double tol) const {
  for (double p : points)
    if (std::abs(p - x) <= tol) return true;
  return false;
}

bool ReportGrid::has_interval(const Interval& iv, double tol) const {
  for (const auto& c : intervals)
    if (same_interval(c, iv, tol)) return true;
  return false;
}

int requested_threads() {
  const char* env = std::getenv("IV_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0 || v > 4096)
    throw std::invalid_argument("IV_THREADS must be a small nonnegative integer");
  return static_cast<int>(v);
}

std::vector<double> scan_expected_scores_serial(const Distribution& f, const ScoreSpec& s,
                                                const ReportGrid& grid) {
  std::vector<double> out(grid.size());
  if (grid.intervals.empty()) {
    for (std::size_t i = 0; i < grid.points.size(); ++i)
      out[i] = expected_score_scalar(f, s, grid.points[i]);
  } else {
    for (std::size_t i = 0; i < grid.intervals.size(); ++i)
      out[i] = expected_score_interval(f, s, grid.intervals[i]);
  }
  return out;
}

std::vector<double> scan_expected_scores(const Distribution& f, const ScoreSpec& s,
                                         const ReportGrid& grid) {
#ifdef _OPENMP
  std::vector<double> out(grid.size());
  int nt = requested_threads();
  if (nt == 0) nt = omp_get_max_threads();
  const bool points = grid.intervals.empty();
  const std::int64_t n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = points ? expected_score_scalar(f, s, grid.points[i])
                    : expected_score_interval(f, s, grid.intervals[i]);
  }
  return out;
#else
  return scan_expected_scores_serial(f, s, grid);
#endif
}

BruteForceResult brute_force_minimizers(const Distribution& f, const ScoreSpec& s,
                                        const ReportGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("brute force: empty grid");
  auto expected = scan_expected_scores(f, s, grid);
  BruteForceResult r;
  r.min_expected = *std::min_element(expected.begin(), expected.end());
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (expected[i] <= r.min_expected + tau_argmin) r.argmin.push_back(i);
  return r;
}

namespace {

// Shared mismatch accounting between the interval and scalar checks.
struct CheckState {
  bool any_fail = false;
  bool any_unclear = false;
  std::size_t shown = 0;
  LabReport* rep = nullptr;

  void note(std::string w) {
    constexpr std::size_t cap = 8;
    if (shown < cap)
      rep->witnesses.push_back(std::move(w));
    else if (shown == cap)
      rep->witnesses.push_back("(further witnesses suppressed)");
    ++shown;
  }

  template <class Format>
  void compare(const std::string& where, const std::vector<double>& expected,
               const std::vector<std::size_t>& sols, Format&& format) {
    double best = *std::min_element(expected.begin(), expected.end());
    std::vector<std::size_t> mins;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (expected[i] <= best + tau_argmin) mins.push_back(i);

    if (sols.empty()) {
      any_unclear = true;
      note(where + ": no grid candidate solves the functional");
      return;
    }
    for (std::size_t i : sols) {
      if (std::binary_search(mins.begin(), mins.end(), i)) continue;
      double gap = expected[i] - best;
      if (gap >= fail_gap) {
        any_fail = true;
        note(where + ": solution " + format(i) + " has expected score " + fmt(expected[i]) +
             ", minimum " + fmt(best) + ", gap " + fmt(gap));
      } else {
        any_unclear = true;
        note(where + ": solution " + format(i) + " sits in the ambiguous gap " + fmt(gap));
      }
    }
    for (std::size_t i : mins) {
      if (std::binary_search(sols.begin(), sols.end(), i)) continue;
      any_fail = true;
      note(where + ": minimizer " + format(i) + " (expected score " + fmt(expected[i]) +
           ") is not a solution");
    }
  }

  std::string verdict() const {
    return any_fail ? "fail" : (any_unclear ? "inconclusive" : "pass");
  }
};

}  // namespace

LabReport consistency_check(const FunctionalParams& func, const ScoreSpec& score,
                            const std::vector<Distribution>& fixtures) {
  if (!accepts_interval(score))
    throw std::invalid_argument("consistency check: score must grade interval reports");
  LabReport rep;
  rep.experiment = "consistency";
  rep.expected_verdict = "pass";
  CheckState st;
  st.rep = &rep;

  for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
    const Distribution& f = fixtures[fi];
    std::string where = "fixture " + std::to_string(fi);
    auto reps = functional_representatives(f, func);

    ReportGrid grid;
    if (is_discrete(f)) {
      long long hi = std::max<long long>(10, std::llround(support_hull(f).upper));
      for (const auto& r : reps)
        hi = std::max(hi, std::llround(std::ceil(r.upper - tau_cmp)));
      grid = ReportGrid::integer_intervals(0, hi);
    } else {
      Interval hull = support_hull(f);
      std::vector<double> inject;
      for (const auto& r : reps) {
        inject.push_back(r.lower);
        inject.push_back(r.upper);
      }
      grid = ReportGrid::continuous_intervals(hull.lower, hull.upper, 0.05, inject);
    }

    bool missing = false;
    for (const auto& r : reps)
      if (!grid.has_interval(r, tau_cmp)) {
        missing = true;
        st.note(where + ": solution " + fmt_iv(r) + " missing from the grid");
      }
    if (missing) {
      st.any_unclear = true;
      continue;
    }

    auto expected = scan_expected_scores(f, score, grid);
    std::vector<std::size_t> sols;
    for (std::size_t i = 0; i < grid.intervals.size(); ++i)
      if (functional_contains(f, func, grid.intervals[i])) sols.push_back(i);
    st.compare(where, expected, sols, [&](std::size_t i) { return fmt_iv(grid.intervals[i]); });
  }

  rep.verdict = st.verdict();
  if (rep.witnesses.empty())
    rep.witness("minimizer sets match the solution sets on every grid");
  return rep;
}

LabReport consistency_check_scalar(const ScoreSpec& score,
                                   const std::vector<Distribution>& fixtures) {
  if (!accepts_scalar(score))
    throw std::invalid_argument("scalar consistency check: score must grade scalar reports");
  enum class Target { quantile, window_lower, window_mid };
  Target target;
  double level = 0.0;
  double half = 0.0;
  if (const auto* q = std::get_if<QuantileScoreSpec>(&score)) {
    target = Target::quantile;
    level = q->alpha;
  } else if (const auto* eq = std::get_if<ElementaryQuantileScoreSpec>(&score)) {
    target = Target::quantile;
    level = eq->alpha;
  } else if (const auto* k = std::get_if<KZeroOneScoreSpec>(&score)) {
    target = Target::window_lower;
    half = static_cast<double>(k->k) / 2.0;
  } else {
    target = Target::window_mid;
    half = std::get<CZeroOneScoreSpec>(score).c;
  }
  const FunctionalParams mi_params{FunctionalKind::mi, 0.1, half};

  LabReport rep;
  rep.experiment = "consistency-scalar";
  rep.expected_verdict = "pass";
  CheckState st;
  st.rep = &rep;

  for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
    const Distribution& f = fixtures[fi];
    std::string where = "fixture " + std::to_string(fi);
    if (target == Target::window_mid && is_discrete(f))
      throw std::invalid_argument(
          "scalar consistency check: midpoint windows need a piecewise uniform law");

    std::vector<double> reps;
    switch (target) {
      case Target::quantile: {
        Interval qs = quantile_set(f, level);
        reps = {qs.lower, qs.upper};
        break;
      }
      case Target::window_lower: {
        auto r = mi(f, half);
        for (const auto& fam : r.families) {
          reps.push_back(fam.lower_lo);
          reps.push_back(fam.lower_hi);
        }
        break;
      }
      case Target::window_mid: {
        for (const auto& m : mi_mid_continuous(f, half)) {
          reps.push_back(m.lower);
          reps.push_back(m.upper);
        }
        break;
      }
    }

    auto member = [&](double x) {
      switch (target) {
        case Target::quantile: {
          Interval qs = quantile_set(f, level);
          return x >= qs.lower - tau_cmp && x <= qs.upper + tau_cmp;
        }
        case Target::window_lower:
          return functional_contains(f, mi_params, {x, x + 2.0 * half});
        case Target::window_mid:
          return functional_contains(f, mi_params, {x - half, x + half});
      }
      return false;
    };

    ReportGrid grid;
    if (is_discrete(f)) {
      long long hi = std::max<long long>(10, std::llround(support_hull(f).upper));
      for (double r : reps) hi = std::max(hi, std::llround(std::ceil(r - tau_cmp)));
      grid = ReportGrid::integer_points(0, hi);
    } else {
      Interval hull = support_hull(f);
      grid = ReportGrid::continuous_points(hull.lower, hull.upper, 0.05, reps);
    }

    bool missing = false;
    for (double r : reps)
      if (!grid.has_point(r, tau_cmp)) {
        missing = true;
        st.note(where + ": solution point " + fmt(r) + " missing from the grid");
      }
    if (missing) {
      st.any_unclear = true;
      continue;
    }

    auto expected = scan_expected_scores(f, score, grid);
    std::vector<std::size_t> sols;
    for (std::size_t i = 0; i < grid.points.size(); ++i)
      if (member(grid.points[i])) sols.push_back(i);
    st.compare(where, expected, sols, [&](std::size_t i) { return fmt(grid.points[i]); });
  }

  rep.verdict = st.verdict();
  if (rep.witnesses.empty())
    rep.witness("minimizer sets match the solution sets on every grid");
  return rep;
}

LabReport cxls_check(const FunctionalParams& func, const Distribution& f0,
                     const Distribution& f1, int lambda_points) {
  if (lambda_points < 1)
    throw std::invalid_argument("cxls check: lambda grid needs at least one point");
  LabReport rep;
  rep.experiment = "cxls";
  auto grid = lambda_grid(lambda_points);
  bool cxls_ok = true;
  bool star_ok = true;
  bool certified = true;

  auto trace = [&](double lam, bool c, bool s) {
    rep.lambda_trace.push_back({lam, std::string(c ? "cxls ok" : "cxls violated") + "; " +
                                         (s ? "cxls* ok" : "cxls* violated")});
  };
  auto update = [&](double lam, bool c, bool s, const std::string& how) {
    if (!c && cxls_ok) rep.witness("cxls violated at lambda = " + fmt(lam) + ": " + how);
    if (!s && star_ok) rep.witness("cxls* violated at lambda = " + fmt(lam) + ": " + how);
    cxls_ok = cxls_ok && c;
    star_ok = star_ok && s;
    trace(lam, c, s);
  };

  if (func.kind == FunctionalKind::si || func.kind == FunctionalKind::mi) {
    auto r0 = solve_families(f0, func);
    auto r1 = solve_families(f1, func);
    auto inter = families_intersect(r0.families, r1.families);
    bool nonempty = !inter.empty();
    rep.witness(nonempty
                    ? "solution sets intersect, e.g. " + fmt_iv(inter.front().first())
                    : "solution sets are disjoint; both properties hold vacuously");
    for (double lam : grid) {
      if (!nonempty) {
        trace(lam, true, true);
        continue;
      }
      auto rl = solve_families(mix2(f0, f1, lam), func);
      bool c = families_subset(inter, rl.families);
      bool s = families_equal(inter, rl.families);
      update(lam, c, s, "mixture solutions differ from the intersection");
    }
  } else if (func.kind == FunctionalKind::eti) {
    auto e0 = eti(f0, func.alpha);
    auto e1 = eti(f1, func.alpha);
    Interval il{std::max(e0.lower_set.lower, e1.lower_set.lower),
                std::min(e0.lower_set.upper, e1.lower_set.upper)};
    Interval iu{std::max(e0.upper_set.lower, e1.upper_set.lower),
                std::min(e0.upper_set.upper, e1.upper_set.upper)};
    bool nonempty = il.lower <= il.upper + tau_cmp && iu.lower <= iu.upper + tau_cmp;
    rep.witness(nonempty ? "quantile-set products intersect"
                         : "quantile-set products are disjoint; both properties hold vacuously");
    for (double lam : grid) {
      if (!nonempty) {
        trace(lam, true, true);
        continue;
      }
      auto el = eti(mix2(f0, f1, lam), func.alpha);
      bool c = interval_subset(il, el.lower_set) && interval_subset(iu, el.upper_set);
      bool s = same_interval(il, el.lower_set, tau_cmp) && same_interval(iu, el.upper_set, tau_cmp);
      update(lam, c, s, "mixture quantile sets differ from the intersection");
    }
  } else {
    auto cands = functional_representatives(f0, func);
    for (const auto& r : functional_representatives(f1, func)) cands.push_back(r);
    std::vector<Interval> shared;
    for (const auto& cand : cands) {
      if (!functional_contains(f0, func, cand) || !functional_contains(f1, func, cand)) continue;
      bool seen = false;
      for (const auto& s : shared) seen = seen || same_interval(cand, s, 1e-12);
      if (!seen) shared.push_back(cand);
    }
    bool nonempty = !shared.empty();
    certified = nonempty;
    rep.witness(nonempty ? "shared member certified, e.g. " + fmt_iv(shared.front())
                         : "no shared member among the candidate intervals; "
                           "intersection not certified nonempty");
    for (double lam : grid) {
      if (!nonempty) {
        trace(lam, true, true);
        continue;
      }
      Distribution fl = mix2(f0, f1, lam);
      bool c = true;
      std::string how;
      for (const auto& m : shared)
        if (!functional_contains(fl, func, m)) {
          c = false;
          how = "shared member " + fmt_iv(m) + " drops out of the mixture solutions";
          break;
        }
      bool s = c;
      if (s)
        for (const auto& r : functional_representatives(fl, func))
          if (!functional_contains(f0, func, r) || !functional_contains(f1, func, r)) {
            s = false;
            how = "mixture member " + fmt_iv(r) + " is not shared by both laws";
            break;
          }
      update(lam, c, s, how);
    }
  }

  rep.witness(cxls_ok ? "cxls held at every grid lambda" : "cxls failed on the grid");
  rep.witness(star_ok ? "cxls* held at every grid lambda" : "cxls* failed on the grid");
  rep.verdict = !certified ? "inconclusive" : (star_ok ? "pass" : "fail");
  return rep;
}

LabReport prop2_witness_check(const FunctionalParams& func, const Distribution& f0,
                              const Distribution& f1, const Interval& t0, const Interval& t1,
                              int lambda_points) {
  if (lambda_points < 1)
    throw std::invalid_argument("witness check: lambda grid needs at least one point");
  LabReport rep;
  rep.experiment = "prop2-witness";
  rep.expected_verdict = "pass";

  bool pre = functional_contains(f0, func, t0) && !functional_contains(f1, func, t0) &&
             functional_contains(f1, func, t1) && !functional_contains(f0, func, t1);
  if (!pre) {
    rep.verdict = "inconclusive";
    rep.witness("witness pair does not separate the two laws: need t0 solving only f0 "
                "and t1 solving only f1");
    return rep;
  }
  rep.witness("t0 = " + fmt_iv(t0) + " solves f0 only; t1 = " + fmt_iv(t1) + " solves f1 only");

  bool ok = true;
  for (double lam : lambda_grid(lambda_points)) {
    Distribution fl = mix2(f0, f1, lam);
    bool c0 = functional_contains(fl, func, t0);
    bool c1 = functional_contains(fl, func, t1);
    const char* what = c0 && c1 ? "both" : (c0 ? "t0" : (c1 ? "t1" : "neither"));
    if (c0 == c1) {
      if (ok) rep.witness("lambda = " + fmt(lam) + ": " + what + " of t0, t1 solve the mixture");
      ok = false;
    }
    rep.lambda_trace.push_back({lam, what});
  }
  if (ok) rep.witness("exactly one of t0, t1 solves every grid mixture");
  rep.verdict = ok ? "pass" : "fail";
  return rep;
}

LabReport score_property_check(const ScoreSpec& score, ScoreProperty prop, int trials,
                               std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("property check: need at least one trial");
  if (!accepts_interval(score))
    throw std::invalid_argument("property check: score must grade interval reports");
  LabReport rep;
  rep.experiment = prop == ScoreProperty::translation
                       ? "translation"
                       : (prop == ScoreProperty::homogeneity ? "homogeneity" : "symmetry");
  rep.expected_verdict = "pass";

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-128, 128);
  std::uniform_int_distribution<int> len(0, 128);
  std::uniform_int_distribution<int> expo(0, 3);
  constexpr double den = 16.0;  // all inputs are dyadic rationals m/16
  constexpr double tol = 1e-12;
  const double scales[4] = {0.25, 0.5, 2.0, 4.0};

  double worst = 0.0;
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    double a = num(rng) / den;
    double b = a + len(rng) / den;
    double y = num(rng) / den;
    Interval iv{a, b};
    double base = score_interval(score, iv, y);
    double lhs = 0.0, rhs = 0.0;
    std::string detail;
    switch (prop) {
      case ScoreProperty::translation: {
        double z = num(rng) / den;
        lhs = score_interval(score, {a + z, b + z}, y + z);
        rhs = base;
        detail = "shift " + fmt(z);
        break;
      }
      case ScoreProperty::homogeneity: {
        double c = scales[expo(rng)];
        lhs = score_interval(score, {c * a, c * b}, c * y);
        rhs = c * base;
        detail = "scale " + fmt(c);
        break;
      }
      case ScoreProperty::symmetry: {
        lhs = score_interval(score, {-b, -a}, -y);
        rhs = base;
        detail = "reflection";
        break;
      }
    }
    double diff = std::abs(lhs - rhs);
    worst = std::max(worst, diff);
    if (diff > tol) {
      ++bad;
      if (bad <= 3)
        rep.witness("interval " + fmt_iv(iv) + ", y = " + fmt(y) + ", " + detail + ": score " +
                    fmt(lhs) + " vs " + fmt(rhs));
    }
  }
  rep.witness(std::to_string(trials) + " trials, " + std::to_string(bad) +
              " violations, worst deviation " + fmt(worst));
  rep.verdict = bad == 0 ? "pass" : "fail";
  return rep;
}

Distribution random_discrete_dirichlet(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DiscreteDist d;
  double total = 0.0;
  for (long long x = 0; x <= 10; ++x) {
    double draw;
    do {
      draw = u(rng);
    } while (draw <= 0.0);
    double e = std::max(-std::log(draw), 1e-12);
    d.support.push_back(x);
    d.probs.push_back(e);
    total += e;
  }
  for (double& p : d.probs) p /= total;
  Distribution f = d;
  validate(f);
  return f;
}

Distribution random_piecewise_uniform(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pieces(3, 6);
  std::uniform_real_distribution<double> start(0.0, 1.0);
  std::uniform_real_distribution<double> gap(0.5, 2.5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int n = pieces(rng);
  PiecewiseUniformDist d;
  d.breakpoints.push_back(start(rng));
  for (int i = 0; i < n; ++i) d.breakpoints.push_back(d.breakpoints.back() + gap(rng));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double draw;
    do {
      draw = u(rng);
    } while (draw <= 0.0);
    double e = std::max(-std::log(draw), 1e-12);
    d.masses.push_back(e);
    total += e;
  }
  for (double& m : d.masses) m /= total;
  Distribution f = d;
  validate(f);
  return f;
}

namespace {

// Appends a sub-report's witnesses under a prefix so experiment reports stay
// self-contained.
void absorb(LabReport& rep, const LabReport& sub, const std::string& prefix) {
  for (const auto& w : sub.witnesses) rep.witness(prefix + ": " + w);
}

LabReport experiment_table1() {
  LabReport rep;
  rep.experiment = "table1";
  rep.expected_verdict = "pass";
  auto t = fixture_table1();
  constexpr double tol = 1e-12;
  bool ok = true;

  auto er = eti(t.g, t.alpha);
  ok = ok && er.result.families.size() == t.rows.size();
  for (const auto& fam : er.result.families) {
    bool listed = false;
    for (const auto& row : t.rows)
      listed = listed || same_interval(fam.first(), row.interval, tau_cmp);
    ok = ok && listed;
  }
  for (const auto& row : t.rows) {
    bool member = er.contains(t.g, row.interval);
    double cov = coverage(t.g, row.interval);
    double es = expected_score_interval(t.g, WinklerScoreSpec{t.alpha}, row.interval);
    double length = row.interval.length();
    double pen = es - length;
    bool row_ok = member && std::abs(cov - row.coverage) <= tol &&
                  std::abs(es - row.expected_interval_score) <= tol &&
                  std::abs(length - row.length) <= tol &&
                  std::abs(pen - row.expected_penalty) <= tol;
    ok = ok && row_ok;
    rep.witness("interval " + fmt_iv(row.interval) + ": coverage " + fmt(cov) +
                ", expected interval score " + fmt(es) + ", length " + fmt(length) +
                ", expected penalty " + fmt(pen) + (row_ok ? "" : " (MISMATCH)"));
  }
  rep.witness("equal-tailed solution set has " + std::to_string(er.result.families.size()) +
              " members; reference values matched to 1e-12");
  rep.verdict = ok ? "pass" : "fail";
  return rep;
}

LabReport experiment_example_uniform() {
  LabReport rep;
  rep.experiment = "example-uniform";
  rep.expected_verdict = "pass";
  double alpha = 0.2;
  auto p = fixture_example_uniform(alpha);
  FunctionalParams si_params{FunctionalKind::si, alpha, 0.5};
  bool surprises = false;

  auto prop2 = prop2_witness_check(si_params, p.f0, p.f1, {0.0, 1.0}, {0.0, 2.0});
  rep.lambda_trace = prop2.lambda_trace;
  absorb(rep, prop2, "witness pair");

  std::vector<IntervalFamily> target{{0.0, 0.0, 2.0}};
  bool stable = true;
  for (double lam : lambda_grid(99))
    stable = stable && families_equal(si(mix2(p.f0, p.f1, lam), alpha).families, target);
  if (!stable) {
    surprises = true;
    rep.witness("unexpected: some proper mixture has a shortest interval other than [0, 2]");
  } else {
    rep.witness("every grid mixture keeps [0, 2] as its unique shortest interval");
  }

  auto cc = consistency_check(si_params, WinklerScoreSpec{alpha}, {p.f0});
  absorb(rep, cc, "interval-score consistency on f0");
  if (cc.verdict != "fail") {
    surprises = true;
    rep.witness("unexpected: the interval score did not expose the shortest interval "
                "(verdict " + cc.verdict + ")");
  }

  rep.verdict = prop2.verdict;
  if (surprises && rep.verdict == "pass") rep.verdict = "inconclusive";
  return rep;
}

LabReport experiment_example_discrete() {
  LabReport rep;
  rep.experiment = "example-discrete";
  rep.expected_verdict = "fail";
  double alpha = 0.25;
  auto p = fixture_example_discrete(alpha, 2, 0.05, 0.02);
  FunctionalParams si_params{FunctionalKind::si, alpha, 0.5};
  bool surprises = false;

  auto cx = cxls_check(si_params, p.f0, p.f1);
  rep.lambda_trace = cx.lambda_trace;
  absorb(rep, cx, "cxls");

  auto base = si(p.f0, alpha);
  auto narrow = si(p.f1, alpha);
  bool equal_below_half = true;
  for (double lam : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    auto mixed = si(mix2(p.f0, p.f1, lam), alpha);
    equal_below_half = equal_below_half && families_equal(mixed.families, base.families) &&
                       families_subset(narrow.families, mixed.families) &&
                       !families_subset(mixed.families, narrow.families);
  }
  if (!equal_below_half) {
    surprises = true;
    rep.witness("unexpected: mixtures up to lambda = 1/2 do not keep the full two-member set");
  } else {
    rep.witness("mixtures with lambda <= 1/2 keep both shortest intervals, a strict "
                "superset of the f1 solution set");
  }

  rep.verdict = cx.verdict;
  if (surprises) rep.verdict = "inconclusive";
  return rep;
}

LabReport experiment_condition1() {
  LabReport rep;
  rep.experiment = "condition1";
  rep.expected_verdict = "pass";
  auto inst = condition1_instance(0.2, 1.0, 0.5);
  Distribution f1 = condition1_stretched(inst);
  FunctionalParams si_params{FunctionalKind::si, inst.alpha, 0.5};
  bool surprises = false;

  Interval t0 = inst.shortest;
  Interval t1{0.0, inst.b + inst.eps / 2.0};
  auto prop2 = prop2_witness_check(si_params, inst.f, f1, t0, t1);
  rep.lambda_trace = prop2.lambda_trace;
  absorb(rep, prop2, "witness pair");

  std::vector<IntervalFamily> target{{0.0, 0.0, t1.length()}};
  bool stable = true;
  for (double lam : lambda_grid(99))
    stable = stable && families_equal(si(mix2(inst.f, f1, lam), inst.alpha).families, target);
  stable = stable && families_equal(si(f1, inst.alpha).families, target);
  if (!stable) {
    surprises = true;
    rep.witness("unexpected: some mixture drops the stretched interval " + fmt_iv(t1));
  } else {
    rep.witness("every grid mixture (and f1 itself) has " + fmt_iv(t1) +
                " as its unique shortest interval");
  }

  rep.verdict = prop2.verdict;
  if (surprises && rep.verdict == "pass") rep.verdict = "inconclusive";
  return rep;
}

LabReport experiment_gci_cxls() {
  LabReport rep;
  rep.experiment = "gci-cxls";
  rep.expected_verdict = "fail";
  double alpha = 0.2;
  auto p = fixture_gci_cxls(alpha);
  FunctionalParams gci_params{FunctionalKind::gci, alpha, 0.5};
  bool surprises = false;

  auto cx = cxls_check(gci_params, p.f0, p.f1);
  rep.lambda_trace = cx.lambda_trace;
  absorb(rep, cx, "cxls");

  Interval window = gci_cxls_crossing_window();
  Distribution half = mix2(p.f0, p.f1, 0.5);
  bool crossing = std::abs(coverage(half, window) - (1.0 - alpha)) <= tau_cmp &&
                  functional_contains(half, gci_params, window) &&
                  !functional_contains(p.f0, gci_params, window) &&
                  !functional_contains(p.f1, gci_params, window);
  if (!crossing) {
    surprises = true;
    rep.witness("unexpected: " + fmt_iv(window) + " fails to enter the even mixture's "
                "solution set exactly");
  } else {
    rep.witness(fmt_iv(window) + " covers exactly " + fmt(1.0 - alpha) +
                " under the even mixture and joins its solution set, though neither "
                "component admits it");
  }

  rep.verdict = cx.verdict;
  if (surprises) rep.verdict = "inconclusive";
  return rep;
}

LabReport experiment_eti_consistency(std::uint64_t seed) {
  LabReport rep;
  rep.experiment = "eti-consistency";
  rep.expected_verdict = "pass";
  std::vector<Distribution> laws;
  for (std::uint64_t i = 0; i < 100; ++i) laws.push_back(random_discrete_dirichlet(seed + i));

  MonotoneFunction bent = MonotoneFunction::piecewise_linear({0.0, 2.0, 5.0, 10.0},
                                                             {0.0, 1.0, 3.5, 10.0});
  bool all_pass = true;
  bool any_fail = false;
  for (double alpha : {0.1, 0.2, 0.5}) {
    std::vector<std::pair<std::string, ScoreSpec>> scores;
    scores.emplace_back("interval score", ScoreSpec{WinklerScoreSpec{alpha}});
    EtiScoreParams bent_params{alpha, 1.0, 1.0, bent, bent};
    scores.emplace_back("piecewise linear endpoint score",
                        ScoreSpec{EtiFamilyScoreSpec{bent_params}});
    for (const auto& [label, score] : scores) {
      auto cc = consistency_check({FunctionalKind::eti, alpha, 0.5}, score, laws);
      all_pass = all_pass && cc.verdict == "pass";
      any_fail = any_fail || cc.verdict == "fail";
      rep.witness("alpha = " + fmt(alpha) + ", " + label + ": " + cc.verdict + " over " +
                  std::to_string(laws.size()) + " laws");
      if (cc.verdict != "pass") absorb(rep, cc, "  detail");
    }
  }
  rep.verdict = all_pass ? "pass" : (any_fail ? "fail" : "inconclusive");
  return rep;
}

LabReport experiment_mi_consistency(std::uint64_t seed) {
  LabReport rep;
  rep.experiment = "mi-consistency";
  rep.expected_verdict = "pass";
  std::vector<Distribution> discrete;
  for (std::uint64_t i = 0; i < 100; ++i)
    discrete.push_back(random_discrete_dirichlet(seed + i));
  std::vector<Distribution> continuous;
  for (std::uint64_t i = 0; i < 20; ++i)
    continuous.push_back(random_piecewise_uniform(seed + 1000 + i));

  bool all_pass = true;
  bool any_fail = false;
  auto run = [&](const std::string& label, const ScoreSpec& score,
                 const std::vector<Distribution>& laws) {
    auto cc = consistency_check_scalar(score, laws);
    all_pass = all_pass && cc.verdict == "pass";
    any_fail = any_fail || cc.verdict == "fail";
    rep.witness(label + ": " + cc.verdict + " over " + std::to_string(laws.size()) + " laws");
    if (cc.verdict != "pass") absorb(rep, cc, "  detail");
  };
  for (long long k : {0LL, 1LL, 2LL})
    run("integer window score, k = " + std::to_string(k), KZeroOneScoreSpec{k}, discrete);
  for (double c : {0.25, 0.5})
    run("midpoint window score, c = " + fmt(c), CZeroOneScoreSpec{c}, continuous);
  rep.verdict = all_pass ? "pass" : (any_fail ? "fail" : "inconclusive");
  return rep;
}

LabReport experiment_score_properties(std::uint64_t seed) {
  LabReport rep;
  rep.experiment = "score-properties";
  rep.expected_verdict = "pass";
  constexpr int trials = 10000;

  ScoreSpec winkler = WinklerScoreSpec{0.2};
  MonotoneFunction cube = MonotoneFunction::cubic();
  ScoreSpec cubic_score = EtiFamilyScoreSpec{{0.2, 10.0, 10.0, cube, cube}};

  struct Expectation {
    const char* label;
    const ScoreSpec* score;
    ScoreProperty prop;
    const char* want;
  };
  const Expectation plan[] = {
      {"interval score translation", &winkler, ScoreProperty::translation, "pass"},
      {"interval score homogeneity", &winkler, ScoreProperty::homogeneity, "pass"},
      {"interval score symmetry", &winkler, ScoreProperty::symmetry, "pass"},
      {"cubic endpoint score translation", &cubic_score, ScoreProperty::translation, "fail"},
      {"cubic endpoint score homogeneity", &cubic_score, ScoreProperty::homogeneity, "fail"},
  };

  bool ok = true;
  std::uint64_t sub_seed = seed;
  for (const auto& e : plan) {
    auto sub = score_property_check(*e.score, e.prop, trials, sub_seed++);
    bool matched = sub.verdict == e.want;
    ok = ok && matched;
    rep.witness(std::string(e.label) + ": " + sub.verdict + " (theory: " + e.want + ")" +
                (matched ? "" : " MISMATCH"));
    if (sub.verdict == "fail" && !sub.witnesses.empty())
      rep.witness("  first violation: " + sub.witnesses.front());
  }
  rep.verdict = ok ? "pass" : "fail";
  return rep;
}

}  // namespace

LabReport run_experiment(const std::string& name, std::uint64_t seed) {
  if (name == "table1") return experiment_table1();
  if (name == "example-uniform") return experiment_example_uniform();
  if (name == "example-discrete") return experiment_example_discrete();
  if (name == "condition1") return experiment_condition1();
  if (name == "gci-cxls") return experiment_gci_cxls();
  if (name == "eti-consistency") return experiment_eti_consistency(seed);
  if (name == "mi-consistency") return experiment_mi_consistency(seed);
  if (name == "score-properties") return experiment_score_properties(seed);
  throw std::invalid_argument("unknown experiment: " + name);
}

std::vector<std::string> experiment_names() {
  return {"table1",   "example-uniform", "example-discrete", "condition1",
          "gci-cxls", "eti-consistency", "mi-consistency",   "score-properties"};
}

}  // namespace iv
