#include "iv/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iv {

MonotoneFunction MonotoneFunction::identity() { return linear(1.0, 0.0); }

MonotoneFunction MonotoneFunction::linear(double slope, double intercept) {
  MonotoneFunction g;
  g.kind = Kind::Linear;
  g.slope = slope;
  g.intercept = intercept;
  validate(g);
  return g;
}

MonotoneFunction MonotoneFunction::step(double base, std::vector<double> locations,
                                        std::vector<double> sizes) {
  MonotoneFunction g;
  g.kind = Kind::Step;
  g.base = base;
  g.jump_locations = std::move(locations);
  g.jump_sizes = std::move(sizes);
  validate(g);
  return g;
}

MonotoneFunction MonotoneFunction::piecewise_linear(std::vector<double> knots,
                                                    std::vector<double> values) {
  MonotoneFunction g;
  g.kind = Kind::PiecewiseLinear;
  g.knots = std::move(knots);
  g.values = std::move(values);
  validate(g);
  return g;
}

MonotoneFunction MonotoneFunction::cubic() {
  MonotoneFunction g;
  g.kind = Kind::Cubic;
  return g;
}

void validate(const MonotoneFunction& g) {
  switch (g.kind) {
    case MonotoneFunction::Kind::Linear:
      if (g.slope < 0.0) throw std::invalid_argument("monotone function: negative slope");
      break;
    case MonotoneFunction::Kind::Step:
      if (g.jump_locations.size() != g.jump_sizes.size())
        throw std::invalid_argument("monotone function: jump locations and sizes must match");
      for (std::size_t i = 0; i < g.jump_locations.size(); ++i) {
        if (!(g.jump_sizes[i] > 0.0))
          throw std::invalid_argument("monotone function: jump sizes must be positive");
        if (i > 0 && g.jump_locations[i] <= g.jump_locations[i - 1])
          throw std::invalid_argument("monotone function: jump locations must be ascending");
      }
      break;
    case MonotoneFunction::Kind::PiecewiseLinear:
      if (g.knots.size() < 2 || g.knots.size() != g.values.size())
        throw std::invalid_argument("monotone function: need matching knots and values, two or more");
      for (std::size_t i = 1; i < g.knots.size(); ++i) {
        if (g.knots[i] <= g.knots[i - 1])
          throw std::invalid_argument("monotone function: knots must be strictly ascending");
        if (g.values[i] < g.values[i - 1])
          throw std::invalid_argument("monotone function: values must be non-decreasing");
      }
      break;
    case MonotoneFunction::Kind::Cubic:
      break;
  }
}

double MonotoneFunction::operator()(double x) const {
  switch (kind) {
    case Kind::Linear:
      return slope * x + intercept;
    case Kind::Step: {
      double v = base;
      for (std::size_t i = 0; i < jump_locations.size(); ++i) {
        if (jump_locations[i] < x)
          v += jump_sizes[i];
        else if (jump_locations[i] == x)
          v += 0.5 * jump_sizes[i];
        else
          break;
      }
      return v;
    }
    case Kind::PiecewiseLinear: {
      std::size_t n = knots.size();
      std::size_t seg = 0;  // segment [knots[seg], knots[seg+1]] extended at the ends
      if (x >= knots[n - 2])
        seg = n - 2;
      else
        while (seg + 2 < n && x > knots[seg + 1]) ++seg;
      double t = (x - knots[seg]) / (knots[seg + 1] - knots[seg]);
      return values[seg] + t * (values[seg + 1] - values[seg]);
    }
    case Kind::Cubic:
      return x * x * x;
  }
  return 0.0;
}

bool MonotoneFunction::strictly_increasing() const {
  switch (kind) {
    case Kind::Linear:
      return slope > 0.0;
    case Kind::Step:
      return false;
    case Kind::PiecewiseLinear:
      for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1])) return false;
      return true;
    case Kind::Cubic:
      return true;
  }
  return false;
}

std::vector<double> MonotoneFunction::critical_points() const {
  switch (kind) {
    case Kind::Linear:
    case Kind::Cubic:
      return {};
    case Kind::Step:
      return jump_locations;
    case Kind::PiecewiseLinear:
      return knots;
  }
  return {};
}

}  // namespace iv
