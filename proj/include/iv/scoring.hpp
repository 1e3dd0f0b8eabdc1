#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "iv/distribution.hpp"
#include "iv/interval.hpp"
#include "iv/monotone.hpp"

namespace iv {

// Parameters of the two-endpoint interval score
//   S([a,b], y) = w1 (1{y<=a} - alpha/2)(g1(a) - g1(y))
//              + w2 (1{y<=b} - (1-alpha/2))(g2(b) - g2(y)).
// Strictly consistent for the equal-tailed interval iff w1, w2 > 0 and
// g1, g2 are strictly increasing.
struct EtiScoreParams {
  double alpha = 0.1;
  double w1 = 1.0;
  double w2 = 1.0;
  MonotoneFunction g1;
  MonotoneFunction g2;
};

// Finite nonnegative measure with atoms on [0, inf).
struct StepMeasure {
  std::vector<double> locations;  // strictly ascending, all >= 0
  std::vector<double> masses;     // strictly positive
};

double quantile_score(const MonotoneFunction& g, double alpha, double x, double y);
double eti_score(const EtiScoreParams& p, const Interval& iv, double y);

// (length + (2/alpha) * outside penalty); equals eti_score with identity g
// and w1 = w2 = 2/alpha.
double winkler_is(double alpha, const Interval& iv, double y);
// {length, penalty}; the two pieces sum to winkler_is.
std::pair<double, double> is_decomposition(double alpha, const Interval& iv, double y);

double elementary_quantile_score(double alpha, double theta, double x, double y);
// Elementary quantile scores at levels alpha/2 and 1 - alpha/2 applied to the
// endpoints, the second one mirrored: theta >= 0.
double elementary_symmetric_interval_score(double alpha, double theta,
                                           const Interval& iv, double y);
double mixture_eti_score(const StepMeasure& mu, double alpha, const Interval& iv, double y);

// Zero-one scores. k_zero_one grades the lower endpoint x of the integer
// window [x, x+k]; c_zero_one grades the midpoint x of [x-c, x+c].
double k_zero_one(long long k, double x, double y);
double c_zero_one(double c, double x, double y);

// Closed set of score specifications accepted by the CLI and the lab.
struct QuantileScoreSpec {
  double alpha;
  MonotoneFunction g;
};
struct EtiFamilyScoreSpec {
  EtiScoreParams params;
};
struct WinklerScoreSpec {
  double alpha;
};
struct ElementaryQuantileScoreSpec {
  double alpha;
  double theta;
};
struct ElementarySymmetricScoreSpec {
  double alpha;
  double theta;
};
struct MixtureScoreSpec {
  StepMeasure mu;
  double alpha;
};
struct KZeroOneScoreSpec {
  long long k;
};
struct CZeroOneScoreSpec {
  double c;
};

using ScoreSpec =
    std::variant<QuantileScoreSpec, EtiFamilyScoreSpec, WinklerScoreSpec,
                 ElementaryQuantileScoreSpec, ElementarySymmetricScoreSpec,
                 MixtureScoreSpec, KZeroOneScoreSpec, CZeroOneScoreSpec>;

// Quantile-type scores grade scalar reports; the rest grade intervals.
// k/c zero-one scores accept both (the interval form uses their encoding).
bool accepts_scalar(const ScoreSpec& s);
bool accepts_interval(const ScoreSpec& s);

double score_interval(const ScoreSpec& s, const Interval& iv, double y);
double score_scalar(const ScoreSpec& s, double x, double y);

// E_F S(report, Y), exact: atom sums for discrete laws, closed-form
// integration between score breakpoints for piecewise uniform laws. Discrete
// laws reject report endpoints outside the nonnegative integers.
double expected_score_interval(const Distribution& f, const ScoreSpec& s, const Interval& iv);
double expected_score_scalar(const Distribution& f, const ScoreSpec& s, double x);

}  // namespace iv
