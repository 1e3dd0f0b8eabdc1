#include "iv/fixtures.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "iv/functionals.hpp"
#include "iv/tolerances.hpp"

namespace iv {

namespace {

DiscreteDist from_atoms(const std::map<long long, double>& atoms) {
  DiscreteDist d;
  for (auto& [x, p] : atoms) {
    if (p <= 0.0) throw std::invalid_argument("fixture: atom mass must be positive");
    d.support.push_back(x);
    d.probs.push_back(p);
  }
  return d;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("fixture construction check failed: ") + what);
}

bool si_equals(const FunctionalResult& r, const std::vector<Interval>& members) {
  if (r.families.size() != members.size()) return false;
  for (const auto& m : members)
    if (!r.contains(m, tau_cmp)) return false;
  return true;
}

}  // namespace

Table1Fixture fixture_table1() {
  Table1Fixture t;
  t.alpha = 0.2;
  t.g = DiscreteDist{{0, 1, 2, 3}, {0.1, 0.4, 0.4, 0.1}};
  t.rows = {
      {{1.0, 2.0}, 0.8, 3.0, 1.0, 2.0},
      {{0.0, 2.0}, 0.9, 3.0, 2.0, 1.0},
      {{1.0, 3.0}, 0.9, 3.0, 2.0, 1.0},
      {{0.0, 3.0}, 1.0, 3.0, 3.0, 0.0},
  };
  return t;
}

MixturePair fixture_example_uniform(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.6))
    throw std::invalid_argument("uniform example: alpha must be in (0, 0.6)");
  MixturePair p;
  p.alpha = alpha;
  p.f0 = PiecewiseUniformDist{{0.0, 1.0, 2.0, 5.0}, {1.0 - alpha, 0.0, alpha}};
  p.f1 = PiecewiseUniformDist{{0.0, 2.0, 5.0}, {1.0 - alpha, alpha}};
  require(si_equals(si(p.f0, alpha), {{0.0, 1.0}}), "si(f0) = [0,1]");
  require(si_equals(si(p.f1, alpha), {{0.0, 2.0}}), "si(f1) = [0,2]");
  return p;
}

MixturePair fixture_example_discrete(double alpha, long long k, double eps, double delta) {
  if (!(alpha > 0.0 && alpha < 1.0 / 3.0))
    throw std::invalid_argument("discrete example: alpha must be in (0, 1/3)");
  if (k < 1) throw std::invalid_argument("discrete example: k must be >= 1");
  if (!(eps > 0.0 && eps < alpha / 3.0))
    throw std::invalid_argument("discrete example: eps must be in (0, alpha/3)");
  if (!(delta > 0.0 && delta < eps))
    throw std::invalid_argument("discrete example: delta must be in (0, eps)");

  long long tail_left = std::max<long long>(0, k - 3);
  long long tail_right = k + 3;
  auto build = [&](double at_k_plus_1, double leftover) {
    std::map<long long, double> atoms;
    atoms[k - 1] += eps + delta;
    atoms[k] += 1.0 - alpha - eps;
    atoms[k + 1] += at_k_plus_1;
    atoms[tail_left] += leftover / 2.0;
    atoms[tail_right] += leftover / 2.0;
    return from_atoms(atoms);
  };
  MixturePair p;
  p.alpha = alpha;
  p.f0 = build(eps + delta, alpha - eps - 2.0 * delta);
  p.f1 = build(eps - delta, alpha - eps);

  double lo = static_cast<double>(k - 1), mid = static_cast<double>(k),
         hi = static_cast<double>(k + 1);
  require(si_equals(si(p.f0, alpha), {{lo, mid}, {mid, hi}}), "si(f0) = {[k-1,k],[k,k+1]}");
  require(si_equals(si(p.f1, alpha), {{lo, mid}}), "si(f1) = {[k-1,k]}");
  return p;
}

MixturePair fixture_gci_cxls(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.4))
    throw std::invalid_argument("gci pair: alpha must be in (0, 0.4)");
  // Both laws put coverage exactly 1 - alpha on [0,6]; the window [2,8]
  // covers 1 - alpha + alpha/2 under f0 and 1 - alpha - alpha/2 under f1.
  MixturePair p;
  p.alpha = alpha;
  p.f0 = PiecewiseUniformDist{{0.0, 2.0, 6.0, 8.0},
                              {alpha / 2.0, 1.0 - 1.5 * alpha, alpha}};
  p.f1 = PiecewiseUniformDist{{0.0, 2.0, 6.0, 8.0},
                              {1.5 * alpha, 1.0 - 2.5 * alpha, alpha}};
  double need = 1.0 - alpha;
  require(std::abs(coverage(p.f0, {0.0, 6.0}) - need) <= tau_cmp, "f0 covers 1-alpha on [0,6]");
  require(std::abs(coverage(p.f1, {0.0, 6.0}) - need) <= tau_cmp, "f1 covers 1-alpha on [0,6]");
  require(coverage(p.f0, {2.0, 8.0}) > need + tau_cmp, "f0 overcovers [2,8]");
  require(coverage(p.f1, {2.0, 8.0}) < need - tau_cmp, "f1 undercovers [2,8]");
  return p;
}

Interval gci_cxls_crossing_window() { return {2.0, 8.0}; }

Condition1Instance condition1_instance(double alpha, double b, double eps) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("condition instance: alpha must be in (0, 0.5)");
  if (!(b > 0.0)) throw std::invalid_argument("condition instance: b must be positive");
  if (!(eps > 0.0 && eps <= b))
    throw std::invalid_argument("condition instance: eps must be in (0, b]");

  Condition1Instance inst;
  inst.alpha = alpha;
  inst.b = b;
  inst.eps = eps;
  inst.shortest = {0.0, b};
  inst.f = PiecewiseUniformDist{{0.0, b, 2.0 * b, 3.0 * b}, {1.0 - alpha, 0.0, alpha}};

  require(si_equals(si(inst.f, alpha), {inst.shortest}), "si(f) = [0,b]");
  require(std::abs(cdf(inst.f, b) - cdf(inst.f, b + eps)) <= tau_cmp, "cdf flat on [b, b+eps]");
  for (int j = 1; j <= 5; ++j) {
    double beta = alpha * j / 6.0;
    require(si(inst.f, beta).length > b + eps / 2.0, "stricter levels need length > b + eps/2");
  }
  return inst;
}

Distribution condition1_stretched(const Condition1Instance& inst) {
  double scale = (inst.b + inst.eps / 2.0) / inst.b;
  return location_scale(inst.f, 0.0, scale);
}

}  // namespace iv
