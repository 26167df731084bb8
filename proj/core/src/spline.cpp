#include "swimlab/spline.hpp"

#include <algorithm>
#include <cmath>

#include "swimlab/error.hpp"

namespace swimlab {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw ValidationError("spline needs at least two knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw ValidationError("spline knots must be strictly increasing");

  m_.assign(n, 0.0);
  if (n < 3) return;
  // Thomas algorithm on the interior second derivatives.
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    if (i > 1) {
      const double w = h0 / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

double NaturalCubicSpline::operator()(double x) const {
  const std::size_t n = x_.size();
  if (x <= x_.front()) return y_.front() + derivative(x_.front()) * (x - x_.front());
  if (x >= x_.back()) return y_.back() + derivative(x_.back()) * (x - x_.back());
  const std::size_t i =
      static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
  const std::size_t j = std::min(i + 1, n - 1);
  const double h = x_[j] - x_[i];
  const double a = (x_[j] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[j] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[j]) * h * h / 6.0;
}

double NaturalCubicSpline::derivative(double x) const {
  const std::size_t n = x_.size();
  const double xc = std::clamp(x, x_.front(), x_.back());
  std::size_t i =
      static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), xc) - x_.begin());
  i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
  const std::size_t j = i + 1;
  const double h = x_[j] - x_[i];
  const double a = (x_[j] - xc) / h;
  const double b = (xc - x_[i]) / h;
  return (y_[j] - y_[i]) / h + ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[j]) * h / 6.0;
}

}  // namespace swimlab
