#include "turnband/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "turnband/errors.hpp"

namespace turnband {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

double bessel_series(double nu, double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = std::pow(0.5L * x, static_cast<long double>(nu)) / gamma_fn(nu + 1.0);
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (nu + k));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

double bessel_hankel_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::fabs(term);
    if (mag > last && k > 2) break;  // asymptotic series started diverging
    last = mag;
    // k odd -> Q with sign (-1)^((k-1)/2); k even -> P with sign (-1)^(k/2)
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0) ? term : -term;
    } else {
      p += ((k / 2) % 2 == 0) ? term : -term;
    }
    if (mag < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Miller's backward recurrence normalized with
//   (x/2)^mu = sum_k (mu + 2k) Gamma(mu + k) / k! J_{mu+2k}(x),  mu in [0, 1).
double bessel_miller(double nu, double x) {
  const double base = std::floor(nu);
  const double mu = nu - base;
  const int order = static_cast<int>(base);
  int start = static_cast<int>(std::ceil(std::max(x, static_cast<double>(order)) + 30.0 +
                                         10.0 * std::cbrt(x)));
  if (start % 2 == 1) ++start;

  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-30;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = 2.0 * (mu + k) / x * j[k] - j[k + 1];
    if (std::fabs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start + 1; ++i) j[i] *= 1e-250;
    }
  }

  double ratio = 1.0;  // Gamma(mu + k) / k!
  double norm = gamma_fn(mu + 1.0) * j[0];
  for (int k = 1; 2 * k <= start; ++k) {
    ratio = (k == 1) ? gamma_fn(mu + 1.0) : ratio * (mu + k - 1.0) / k;
    norm += (mu + 2.0 * k) * ratio * j[2 * k];
  }
  return j[order] * std::pow(0.5 * x, mu) / norm;
}

}  // namespace

double gamma_fn(double x) {
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  x -= 1.0;
  double acc = kLanczos[0];
  const double t = x + 7.5;
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (x + static_cast<double>(i));
  }
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

double bessel_j(double nu, double x) {
  if (!std::isfinite(nu) || !std::isfinite(x)) {
    throw DomainError("bessel_j: non-finite argument");
  }
  if (nu < -0.5) throw DomainError("bessel_j: order below -1/2 is not supported");
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (x <= 12.0) return bessel_series(nu, x);
  if (x >= std::max(25.0, nu * nu)) return bessel_hankel_asymptotic(nu, x);
  if (nu < 0.0) {
    // Step down from nonnegative orders: J_{nu} = 2(nu+1)/x J_{nu+1} - J_{nu+2}.
    return 2.0 * (nu + 1.0) / x * bessel_miller(nu + 1.0, x) - bessel_miller(nu + 2.0, x);
  }
  return bessel_miller(nu, x);
}

OmegaKernel::OmegaKernel(int d, int series_terms_max)
    : d_(d),
      series_terms_max_(series_terms_max),
      switch_radius_(std::max(12.0, static_cast<double>(d))),
      gamma_half_d_(0.0) {
  if (d < 1) throw DomainError("omega: dimension must be >= 1, got " + std::to_string(d));
  gamma_half_d_ = gamma_fn(0.5 * d);
}

double OmegaKernel::series(double x) const {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  const long double half_d = 0.5L * d_;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 0; n < series_terms_max_; ++n) {
    term *= q / ((half_d + n) * (n + 1));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

double OmegaKernel::bessel_quotient(double x) const {
  const double nu = 0.5 * d_ - 1.0;
  return gamma_half_d_ * bessel_j(nu, x) / std::pow(0.5 * x, nu);
}

double OmegaKernel::operator()(double x) const {
  if (x < 0.0) x = -x;
  if (x == 0.0) return 1.0;
  return x <= switch_radius_ ? series(x) : bessel_quotient(x);
}

double omega(int d, double x) { return OmegaKernel(d)(x); }

double normalized_gegenbauer(int n, int d_sphere, double t) {
  if (n < 0) throw DomainError("normalized_gegenbauer: negative degree");
  if (d_sphere < 1) throw DomainError("normalized_gegenbauer: sphere dimension must be >= 1");
  if (d_sphere == 1) return chebyshev_t(n, t);
  const double lambda = 0.5 * (d_sphere - 1);
  return gegenbauer(n, lambda, t) / gegenbauer(n, lambda, 1.0);
}

GegenbauerBasis::GegenbauerBasis(int d_sphere, int n_max)
    : d_sphere_(d_sphere), n_max_(n_max), lambda_(0.5 * (d_sphere - 1)), at_one_(n_max + 1) {
  if (d_sphere < 1) throw DomainError("GegenbauerBasis: sphere dimension must be >= 1");
  if (n_max < 0) throw DomainError("GegenbauerBasis: n_max must be >= 0");
  at_one_.setOnes();
  if (d_sphere_ > 1) {
    double prev = 1.0;
    double cur = 2.0 * lambda_;
    if (n_max_ >= 1) at_one_(1) = cur;
    for (int k = 2; k <= n_max_; ++k) {
      const double next = (2.0 * (k + lambda_ - 1.0) * cur - (k + 2.0 * lambda_ - 2.0) * prev) / k;
      prev = cur;
      cur = next;
      at_one_(k) = cur;
    }
  }
}

Eigen::VectorXd GegenbauerBasis::evaluate(double t) const {
  Eigen::VectorXd out(n_max_ + 1);
  out(0) = 1.0;
  if (n_max_ == 0) return out;
  if (d_sphere_ == 1) {
    out(1) = t;
    for (int k = 2; k <= n_max_; ++k) out(k) = 2.0 * t * out(k - 1) - out(k - 2);
    return out;
  }
  out(1) = 2.0 * lambda_ * t;
  for (int k = 2; k <= n_max_; ++k) {
    out(k) = (2.0 * (k + lambda_ - 1.0) * t * out(k - 1) - (k + 2.0 * lambda_ - 2.0) * out(k - 2)) / k;
  }
  return out.cwiseQuotient(at_one_);
}

}  // namespace turnband
