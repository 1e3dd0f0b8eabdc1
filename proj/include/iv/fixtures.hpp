#pragma once

#include <vector>

#include "iv/distribution.hpp"
#include "iv/interval.hpp"

namespace iv {

// Four-point law 0.1/0.4/0.4/0.1 on {0,1,2,3} at alpha = 0.2, with the
// reference values every equal-tailed solution attains.
struct Table1Row {
  Interval interval;
  double coverage;
  double expected_interval_score;
  double length;
  double expected_penalty;
};
struct Table1Fixture {
  Distribution g;
  double alpha;
  std::vector<Table1Row> rows;
};
Table1Fixture fixture_table1();

// A pair of laws meant to be mixed along lambda.
struct MixturePair {
  Distribution f0;
  Distribution f1;
  double alpha;
};

// Continuous shortest-interval witness pair: f0 is uniform mass 1-alpha on
// [0,1] with the rest spread over [2,5]; f1 spreads 1-alpha over [0,2]
// instead. si(f0) = [0,1], si(f1) = [0,2], and every proper mixture keeps
// [0,2]. Requires alpha in (0, 0.6).
MixturePair fixture_example_uniform(double alpha);

// Discrete shortest-interval pair on atoms around k: mass eps+delta at k-1,
// 1-alpha-eps at k, and eps+delta (f0) vs eps-delta (f1) at k+1; leftover
// mass split evenly between k-3 and k+3 (clamped to 0 when k < 3).
// Requires alpha in (0, 1/3), k >= 1, eps in (0, alpha/3), delta in (0, eps).
// Construction asserts si(f0) = {[k-1,k],[k,k+1]} and si(f1) = {[k-1,k]}.
MixturePair fixture_example_discrete(double alpha, long long k, double eps, double delta);

// Continuous pair sharing the guaranteed-coverage member [0,6] while the
// window [2,8] covers 1-alpha+alpha/2 under f0 and 1-alpha-alpha/2 under f1,
// so the even mixture acquires it. Requires alpha in (0, 0.4).
MixturePair fixture_gci_cxls(double alpha);
// The window whose coverage crosses 1-alpha at lambda = 1/2.
Interval gci_cxls_crossing_window();

// Law with density (1-alpha)/b on [0,b] and alpha/b on [2b,3b]:
// si(f, alpha) = [0,b] exactly, the CDF is flat on [b, b+eps], and every
// stricter level beta < alpha needs length > b + eps/2. Asserted at
// construction (the beta clause on a grid).
struct Condition1Instance {
  Distribution f;
  double alpha;
  double b;
  double eps;
  Interval shortest;  // [0, b]
};
Condition1Instance condition1_instance(double alpha, double b, double eps);

// Companion law for the mixture behavior: f1(x) = f0(x * b / (b + eps/2)),
// i.e. f0 stretched so that si(f1) = [0, b + eps/2]; every proper mixture
// with f0 keeps that longer interval.
Distribution condition1_stretched(const Condition1Instance& inst);

}  // namespace iv
