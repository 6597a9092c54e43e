#include "turnband/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "turnband/errors.hpp"

namespace turnband {

MonotoneCubic::MonotoneCubic(Eigen::VectorXd x, Eigen::VectorXd y)
    : x_(std::move(x)), y_(std::move(y)), slope_(Eigen::VectorXd::Zero(x_.size())) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) throw DomainError("MonotoneCubic: need >= 2 matching knots");
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(x_(i) > x_(i - 1))) throw DomainError("MonotoneCubic: knots must be increasing");
  }
  Eigen::VectorXd h = x_.tail(n - 1) - x_.head(n - 1);
  Eigen::VectorXd delta = (y_.tail(n - 1) - y_.head(n - 1)).cwiseQuotient(h);
  if (n == 2) {
    slope_.setConstant(delta(0));
    return;
  }
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (delta(i - 1) * delta(i) <= 0.0) {
      slope_(i) = 0.0;
    } else {
      const double w1 = 2.0 * h(i) + h(i - 1);
      const double w2 = h(i) + 2.0 * h(i - 1);
      slope_(i) = (w1 + w2) / (w1 / delta(i - 1) + w2 / delta(i));
    }
  }
  // One-sided three-point end slopes, limited to keep monotonicity.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) {
      s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::fabs(s) > std::fabs(3.0 * d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  slope_(0) = end_slope(h(0), h(1), delta(0), delta(1));
  slope_(n - 1) = end_slope(h(n - 2), h(n - 3), delta(n - 2), delta(n - 3));
}

double MonotoneCubic::operator()(double t) const {
  const Eigen::Index n = x_.size();
  if (!(t >= x_(0) && t <= x_(n - 1))) {
    throw DomainError("MonotoneCubic: evaluation point outside the tabulated range");
  }
  const double* begin = x_.data();
  Eigen::Index i = std::upper_bound(begin, begin + n, t) - begin - 1;
  i = std::clamp<Eigen::Index>(i, 0, n - 2);
  const double h = x_(i + 1) - x_(i);
  const double s = (t - x_(i)) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y_(i) + h10 * h * slope_(i) + h01 * y_(i + 1) + h11 * h * slope_(i + 1);
}

}  // namespace turnband
