#pragma once

#include <vector>

namespace swimlab {

/// Natural cubic spline (zero second derivative at both end knots), extended
/// linearly outside the knot span.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline() = default;
  /// Knots strictly increasing, at least two.
  NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  const std::vector<double>& knots() const { return x_; }

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

}  // namespace swimlab
