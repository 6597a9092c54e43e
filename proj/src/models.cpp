#include "turnband/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "turnband/turning_bands.hpp"

namespace turnband {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

double default_p(double t) { return std::exp(-t * t / 5.0); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
}

}  // namespace

double ball_slope(int d) {
  if (d < 1) throw DomainError("ball_slope: dimension must be >= 1");
  double alpha = (d % 2 == 1) ? 1.0 : 2.0 / kPi;
  for (int k = (d % 2 == 1) ? 1 : 2; k + 2 <= d; k += 2) alpha *= static_cast<double>(k) / (k + 1);
  return alpha;
}

double triangle_unchecked(double alpha, double x) {
  x = std::fabs(x);
  const double frac = std::fmod(x, 2.0);
  return frac < 1.0 ? 1.0 - alpha * frac : 1.0 - alpha * (2.0 - frac);
}

double triangle_series(double alpha, double x, int terms) {
  double sum = 0.0;
  for (int n = terms; n >= 1; --n) {
    const double m = 2.0 * n - 1.0;
    sum += std::cos(m * kPi * x) / (m * m);
  }
  return 1.0 - 0.5 * alpha + 4.0 * alpha / (kPi * kPi) * sum;
}

double ball_linear(int d, double alpha, double x) {
  check_alpha(alpha);
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("ball_linear: x must lie in [0, 1)");
  return 1.0 - ball_slope(d) * alpha * x;
}

RadialProfile triangle_profile(double alpha) {
  check_alpha(alpha);
  return RadialProfile([alpha](double x) { return triangle(alpha, x); }, ArgumentDomain::Full, 1,
                       "triangle(alpha=" + format_number(alpha) + ")");
}

RadialProfile restricted_triangle_profile(double alpha) {
  check_alpha(alpha);
  return RadialProfile([alpha](double x) { return 1.0 - alpha * x; }, ArgumentDomain::Ball, 1,
                       "triangle|B1(alpha=" + format_number(alpha) + ")");
}

RadialProfile ball_linear_profile(int d, double alpha) {
  check_alpha(alpha);
  const double slope = ball_slope(d) * alpha;
  return RadialProfile([slope](double x) { return 1.0 - slope * x; }, ArgumentDomain::Ball, d,
                       "ball_linear(d=" + std::to_string(d) + ",alpha=" + format_number(alpha) +
                           ")");
}

ProductLinearModel::ProductLinearModel(int d, TimeCorrelation alpha, TimeFlavor flavor)
    : d_(d), alpha_(std::move(alpha)), flavor_(flavor), slope_(ball_slope(d)), scale_(0.0) {
  const double a0 = alpha_(0.0);
  if (!(a0 > 0.0 && a0 <= 2.0)) {
    throw DomainError("product_linear: alpha(0) must lie in (0, 2], got " + format_number(a0));
  }
  scale_ = 1.0 / (1.0 + 0.5 * a0);
}

double ProductLinearModel::operator()(double x, double s) const {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("product_linear: x must lie in [0, 1)");
  if (!(s >= 0.0) || (flavor_ == TimeFlavor::Circular && s > kPi)) {
    throw DomainError("product_linear: lag outside the time domain");
  }
  return (1.0 + alpha_(s) * (0.5 - slope_ * x)) * scale_;
}

ProductModel ProductLinearModel::as_model() const {
  const ProductLinearModel self = *this;
  return ProductModel([self](double x, double s) { return self(x, s); }, ArgumentDomain::Ball, d_,
                      flavor_ == TimeFlavor::Circular ? SecondFactor::Sphere
                                                      : SecondFactor::Euclidean,
                      1,
                      "product_linear(d=" + std::to_string(d_) + ",alpha=" + alpha_.name + "," +
                          (flavor_ == TimeFlavor::Circular ? "circular" : "euclidean") + ")");
}

double product_linear(const ProductLinearModel& model, double x, double s) { return model(x, s); }

ProductModel periodic_product_profile(const TimeCorrelation& alpha, TimeFlavor flavor) {
  const double a0 = alpha(0.0);
  if (!(a0 > 0.0 && a0 <= 2.0)) throw DomainError("periodic_product_profile: alpha(0) must lie in (0, 2]");
  const double scale = 1.0 / (1.0 + 0.5 * a0);
  auto fn = [alpha, scale](double x, double s) {
    const double a = alpha(s);
    const double frac = std::fmod(std::fabs(x), 2.0);
    const double v = frac < 1.0 ? 1.0 + 0.5 * a - a * frac : 1.0 + 0.5 * a - a * (2.0 - frac);
    return v * scale;
  };
  return ProductModel(fn, ArgumentDomain::Full, 1,
                      flavor == TimeFlavor::Circular ? SecondFactor::Sphere : SecondFactor::Euclidean,
                      1, "periodic_product(alpha=" + alpha.name + ")");
}

double periodic_product_series(double alpha_s, double x, int terms) {
  double sum = 0.0;
  for (int n = terms; n >= 1; --n) {
    const double m = 2.0 * n - 1.0;
    sum += std::cos(m * kPi * x) / (m * m);
  }
  return 1.0 + 4.0 * alpha_s / (kPi * kPi) * sum;
}

WorkedExample::WorkedExample() : p_(default_p), series_terms_(kDefaultSeriesTerms) {}

WorkedExample::WorkedExample(std::function<double(double)> p, int series_terms)
    : p_(std::move(p)), series_terms_(series_terms) {
  if (series_terms_ < 0) throw DomainError("WorkedExample: series_terms must be >= 0");
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.05 * i;
    if (!(std::fabs(p_(t)) <= 1.0)) {
      throw DomainError("WorkedExample: |p(t)| must not exceed 1 (violated at t = " +
                        format_number(t) + ")");
    }
  }
}

double WorkedExample::h_bar(double x, double t) const {
  const double p = p_(t);
  const double angle = 2.0 * kPi * x;
  return std::exp(p * std::cos(angle)) * std::cos(p * std::sin(angle)) / std::numbers::e;
}

double WorkedExample::h_bar_series(double x, double t) const {
  const double p = p_(t);
  double term = 1.0;  // p^k / k!
  double sum = 1.0;
  for (int k = 1; k <= series_terms_; ++k) {
    term *= p / k;
    sum += term * std::cos(2.0 * kPi * k * x);
  }
  return sum / std::numbers::e;
}

double WorkedExample::h_d(int d, double x, double t, const QuadratureConfig& cfg) const {
  return tb_product_euclidean(h_bar_model(), d, x, t, cfg);
}

ProductModel WorkedExample::h_bar_model() const {
  const WorkedExample self = *this;
  return ProductModel([self](double x, double t) { return self.h_bar(x, t); },
                      ArgumentDomain::Full, 1, SecondFactor::Euclidean, 1, "hbar");
}

ProductModel WorkedExample::h_d_model(int d, const QuadratureConfig& cfg) const {
  ProductModel model = turning_bands(h_bar_model(), d, cfg);
  return ProductModel([model](double x, double t) { return model(x, t); }, ArgumentDomain::Full,
                      d, SecondFactor::Euclidean, 1, "hd(d=" + std::to_string(d) + ")");
}

double h_bar(double x, double t) { return WorkedExample().h_bar(x, t); }

double h_d(int d, double x, double t, const QuadratureConfig& cfg) {
  return WorkedExample().h_d(d, x, t, cfg);
}

}  // namespace turnband
