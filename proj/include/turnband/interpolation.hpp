#pragma once

#include <Eigen/Core>

namespace turnband {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes with
/// the Fritsch-Butland harmonic mean). Never overshoots the data between
/// neighbouring knots. Evaluation outside [x.front(), x.back()] is a
/// DomainError.
class MonotoneCubic {
 public:
  MonotoneCubic(Eigen::VectorXd x, Eigen::VectorXd y);

  double operator()(double t) const;

  const Eigen::VectorXd& knots() const { return x_; }
  const Eigen::VectorXd& values() const { return y_; }

 private:
  Eigen::VectorXd x_;
  Eigen::VectorXd y_;
  Eigen::VectorXd slope_;
};

}  // namespace turnband
