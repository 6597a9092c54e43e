#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "turnband/errors.hpp"
#include "turnband/profiles.hpp"
#include "turnband/quadrature.hpp"

namespace turnband {

/// alpha_d = Gamma(d/2) / (sqrt(pi) Gamma((d+1)/2)), through the exact ratio
/// alpha_{d+2} = alpha_d d / (d + 1) from alpha_1 = 1 and alpha_2 = 2/pi.
double ball_slope(int d);

/// Period-2 triangle wave: 1 - alpha x on [0, 1), 1 - alpha (2 - x) on
/// [1, 2). Positive definite on the line for 0 < alpha <= 2.
template <typename Scalar>
Scalar triangle(Scalar alpha, Scalar x) {
  if (!(alpha > Scalar(0) && alpha <= Scalar(2))) {
    throw DomainError("triangle: alpha must lie in (0, 2]");
  }
  if (x < Scalar(0)) x = -x;
  const Scalar frac = std::fmod(x, Scalar(2));
  return frac < Scalar(1) ? Scalar(1) - alpha * frac : Scalar(1) - alpha * (Scalar(2) - frac);
}

/// Same wave with no restriction on alpha; used to exhibit non-membership.
double triangle_unchecked(double alpha, double x);

/// Partial sum 1 - alpha/2 + sum_{n=1}^{terms} 4 alpha cos((2n-1) pi x) / (pi^2 (2n-1)^2).
double triangle_series(double alpha, double x, int terms);

/// 1 - alpha_d alpha x on the ball B_d, x in [0, 1).
double ball_linear(int d, double alpha, double x);

RadialProfile triangle_profile(double alpha);
/// The triangle restricted to [0, 1), i.e. 1 - alpha x on B_1.
RadialProfile restricted_triangle_profile(double alpha);
RadialProfile ball_linear_profile(int d, double alpha);

enum class TimeFlavor { Euclidean, Circular };

/// A correlation alpha(.) of the time factor: on [0, inf) for linear time,
/// on [0, pi] for circular time.
struct TimeCorrelation {
  std::function<double(double)> fn;
  std::string name;

  double operator()(double s) const { return fn(s); }
};

/// (1 + alpha(s) (1/2 - alpha_d x)) / (1 + alpha(0)/2) on B_d x R or B_d x S^1.
class ProductLinearModel {
 public:
  ProductLinearModel(int d, TimeCorrelation alpha, TimeFlavor flavor);

  int d() const { return d_; }
  TimeFlavor flavor() const { return flavor_; }
  const TimeCorrelation& alpha() const { return alpha_; }

  double operator()(double x, double s) const;
  ProductModel as_model() const;

 private:
  int d_;
  TimeCorrelation alpha_;
  TimeFlavor flavor_;
  double slope_;
  double scale_;
};

double product_linear(const ProductLinearModel& model, double x, double s);

/// The periodic line profile whose turning bands image is the product
/// linear model: (1 + alpha(s)/2 - alpha(s) frac) on [0, 1) and
/// (1 + alpha(s)/2 - alpha(s)(2 - frac)) on [1, 2), period 2 in x,
/// normalized by 1 + alpha(0)/2.
ProductModel periodic_product_profile(const TimeCorrelation& alpha, TimeFlavor flavor);

/// The series 1 + sum_n 4 alpha(s) cos((2n-1) pi x) / (pi^2 (2n-1)^2) of the
/// periodic product profile (unnormalized), truncated at `terms`.
double periodic_product_series(double alpha_s, double x, int terms);

/// The worked example h(x, t) = exp(p(t) cos 2 pi x) cos(p(t) sin 2 pi x) / e
/// with p(t) = exp(-t^2/5) by default, and its turning bands images h_d.
class WorkedExample {
 public:
  static constexpr int kDefaultSeriesTerms = 30;

  WorkedExample();
  /// Any p with sup |p| <= 1 on a sample grid of [0, 50]; DomainError otherwise.
  explicit WorkedExample(std::function<double(double)> p, int series_terms = kDefaultSeriesTerms);

  double p(double t) const { return p_(t); }
  double h_bar(double x, double t) const;
  /// sum_{k=0}^{series_terms} p^k(t) cos(2 pi k x) / (k! e)
  double h_bar_series(double x, double t) const;
  double h_d(int d, double x, double t, const QuadratureConfig& cfg = {}) const;

  ProductModel h_bar_model() const;
  ProductModel h_d_model(int d, const QuadratureConfig& cfg = {}) const;

 private:
  std::function<double(double)> p_;
  int series_terms_;
};

double h_bar(double x, double t);
double h_d(int d, double x, double t, const QuadratureConfig& cfg = {});

}  // namespace turnband
