#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "turnband/profiles.hpp"
#include "turnband/quadrature.hpp"

namespace turnband {

/// Coefficients of a normalized Gegenbauer (Chebyshev when d_sphere = 1)
/// expansion on S^{d_sphere}, truncated at n_max.
///
/// Scalar case: coeffs(n) = b_n. Product case: values(n, i) = b_n(x_grid(i))
/// with at_zero(n) = b_n(0). residual_mass = max(0, 1 - sum of b_n(0)).
struct SchoenbergSeq {
  int d_sphere = 1;
  int n_max = 0;
  Eigen::VectorXd coeffs;
  Eigen::VectorXd x_grid;
  Eigen::MatrixXd values;
  Eigen::VectorXd at_zero;
  double residual_mass = 0;
  /// Modes with b_n (or b_n(0)) below -1e-6: the analysed function is
  /// certified to lie outside the positive definite class.
  std::vector<int> negative_modes;

  bool tabulated() const { return x_grid.size() > 0; }

  /// Coefficients at the origin of the first factor (the scalar
  /// coefficients in the scalar case).
  const Eigen::VectorXd& origin_coeffs() const { return tabulated() ? at_zero : coeffs; }

  /// b_n(.) of a tabulated sequence, monotone-cubic between grid points.
  RadialProfile coefficient_profile(int n) const;

  static SchoenbergSeq from_coefficients(int d_sphere, Eigen::VectorXd coeffs);
};

inline constexpr int kDefaultSchoenbergTerms = 50;

/// b_n = <psi, N_n> / <N_n, N_n> in L^2([0, pi], sin^{d'-1}(theta) d theta),
/// where N_n is the normalized basis, so analysis and synthesis are exact
/// inverses on the truncated basis.
SchoenbergSeq sphere_coeffs(const std::function<double(double)>& psi, int d_sphere,
                            int n_max = kDefaultSchoenbergTerms, const QuadratureConfig& cfg = {});

/// u -> b_n(u) for a product model on (ball or R^d) x S^{d'}, evaluated by
/// quadrature at every call.
std::function<double(double)> coefficient_function(const ProductModel& psi, int n,
                                                   const QuadratureConfig& cfg = {});

SchoenbergSeq product_sphere_coeffs(const ProductModel& psi, int n_max,
                                    const Eigen::VectorXd& x_grid,
                                    const QuadratureConfig& cfg = {});

struct Reconstruction {
  double value;
  double error_bound;  ///< residual_mass; |N_n| <= 1 bounds the truncated tail
};

/// sum_n b_n(x) N_n(cos theta). x must be given for tabulated sequences and
/// omitted for scalar ones.
Reconstruction reconstruct(const SchoenbergSeq& seq, std::optional<double> x, double theta);

/// Surface area of S^{k-1} in R^k: 2 pi^{k/2} / Gamma(k/2).
double sphere_surface(int k);

/// phi_w(x) = \int_{R^{d'}} e^{-i <w, y>} phi(x, |y|) dy for |w| = w, reduced
/// to s_{d'-1} \int_0^\infty phi(x, r) Omega_{d'}(w r) r^{d'-1} dr.
/// decay(r) must bound |phi(x, r)| for the given x.
double partial_fourier(const ProductModel& phi, double x, double w,
                       const std::function<double(double)>& decay,
                       const QuadratureConfig& cfg = {});

/// phi(x, y) = (2 pi)^{-d'} s_{d'-1} \int_0^\infty phi_w(x, w) Omega_{d'}(w y) w^{d'-1} dw.
/// decay(w) must bound |phi_w(x, w)|.
double inverse_partial_fourier(const std::function<double(double, double)>& phi_w, double x,
                               double y, int d_prime,
                               const std::function<double(double)>& decay,
                               const QuadratureConfig& cfg = {});

}  // namespace turnband
