#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>

namespace turnband {

/// Gamma function by the Lanczos approximation (g = 7, nine coefficients),
/// with reflection below 1/2. Relative error is below 1e-14 on [0.5, 50].
double gamma_fn(double x);

/// Bessel function of the first kind J_nu(x) for nu >= -1/2 and x >= 0.
///
/// Ascending series for x <= 12, Hankel's asymptotic expansion once
/// x >= max(25, nu^2), Miller's backward recurrence in between. Absolute
/// error is below 1e-12 on [0, 100] for the orders used by Omega_d.
double bessel_j(double nu, double x);

/// The kernel Omega_d(x) = Gamma(d/2) J_{d/2-1}(x) / (x/2)^{d/2-1}, i.e. the
/// characteristic function of a uniform direction on the sphere S^{d-1}.
class OmegaKernel {
 public:
  explicit OmegaKernel(int d, int series_terms_max = 400);

  int dimension() const { return d_; }
  double switch_radius() const { return switch_radius_; }

  double operator()(double x) const;

  /// Power series sum_n Gamma(d/2)(-x^2/4)^n / (Gamma(d/2+n) n!).
  double series(double x) const;
  /// Bessel quotient form; undefined at x = 0.
  double bessel_quotient(double x) const;

 private:
  int d_;
  int series_terms_max_;
  double switch_radius_;
  double gamma_half_d_;
};

double omega(int d, double x);

/// Gegenbauer polynomial G_n^lambda(t) by the three-term recurrence
///   n G_n = 2 (n + lambda - 1) t G_{n-1} - (n + 2 lambda - 2) G_{n-2}.
template <typename Scalar>
Scalar gegenbauer(int n, Scalar lambda, Scalar t) {
  if (n == 0) return Scalar(1);
  Scalar prev(1);
  Scalar cur = Scalar(2) * lambda * t;
  for (int k = 2; k <= n; ++k) {
    Scalar next = (Scalar(2) * (k + lambda - Scalar(1)) * t * cur -
                   (k + Scalar(2) * lambda - Scalar(2)) * prev) /
                  Scalar(k);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Chebyshev polynomial of the first kind T_n(t).
template <typename Scalar>
Scalar chebyshev_t(int n, Scalar t) {
  if (n == 0) return Scalar(1);
  Scalar prev(1);
  Scalar cur = t;
  for (int k = 2; k <= n; ++k) {
    Scalar next = Scalar(2) * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Normalized Gegenbauer polynomial G_n^{(d-1)/2}(t) / G_n^{(d-1)/2}(1) on
/// the sphere S^d; Chebyshev T_n(t) when d = 1.
double normalized_gegenbauer(int n, int d_sphere, double t);

/// All normalized basis values 0..n_max at one point, sharing one recurrence.
class GegenbauerBasis {
 public:
  GegenbauerBasis(int d_sphere, int n_max);

  int d_sphere() const { return d_sphere_; }
  int n_max() const { return n_max_; }
  double lambda() const { return lambda_; }

  Eigen::VectorXd evaluate(double t) const;

 private:
  int d_sphere_;
  int n_max_;
  double lambda_;
  Eigen::VectorXd at_one_;
};

}  // namespace turnband
