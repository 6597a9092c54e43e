#include "turnband/schoenberg.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "turnband/errors.hpp"
#include "turnband/interpolation.hpp"
#include "turnband/special_functions.hpp"

namespace turnband {

namespace {

constexpr double kNegativeWarning = -1e-6;

double weight_power(double theta, int d_sphere) {
  const double s = std::sin(theta);
  double w = 1.0;
  for (int i = 1; i < d_sphere; ++i) w *= s;
  return w;
}

double basis_norm(int n, int d_sphere, const QuadratureConfig& cfg) {
  auto integrand = [&](double theta) {
    const double g = normalized_gegenbauer(n, d_sphere, std::cos(theta));
    return g * g * weight_power(theta, d_sphere);
  };
  return integrate(integrand, 0.0, std::numbers::pi, cfg).value;
}

double projection(const std::function<double(double)>& psi, int n, int d_sphere, double norm,
                  const QuadratureConfig& cfg) {
  auto integrand = [&](double theta) {
    return psi(theta) * normalized_gegenbauer(n, d_sphere, std::cos(theta)) *
           weight_power(theta, d_sphere);
  };
  return integrate(integrand, 0.0, std::numbers::pi, cfg).value / norm;
}

void check_sphere_args(int d_sphere, int n_max) {
  if (d_sphere < 1) throw DomainError("schoenberg: sphere dimension must be >= 1");
  if (n_max < 0) throw DomainError("schoenberg: n_max must be >= 0");
}

void finish(SchoenbergSeq& seq) {
  const Eigen::VectorXd& origin = seq.origin_coeffs();
  seq.residual_mass = std::max(0.0, 1.0 - origin.sum());
  seq.negative_modes.clear();
  for (Eigen::Index n = 0; n < origin.size(); ++n) {
    if (origin(n) < kNegativeWarning) seq.negative_modes.push_back(static_cast<int>(n));
  }
}

void warn_negative(const SchoenbergSeq& seq) {
  if (seq.negative_modes.empty()) return;
  std::cerr << "warning: " << seq.negative_modes.size()
            << " negative Schoenberg coefficient(s); the function is not positive definite on S^"
            << seq.d_sphere << "\n";
}

}  // namespace

RadialProfile SchoenbergSeq::coefficient_profile(int n) const {
  if (!tabulated()) throw DomainError("coefficient_profile: sequence is not tabulated");
  if (n < 0 || n > n_max) throw DomainError("coefficient_profile: mode out of range");
  MonotoneCubic interp(x_grid, values.row(n).transpose());
  const bool ball = x_grid(x_grid.size() - 1) < 1.0;
  return RadialProfile([interp](double x) { return interp(x); },
                       ball ? ArgumentDomain::Ball : ArgumentDomain::Full, 1,
                       "b_" + std::to_string(n));
}

SchoenbergSeq SchoenbergSeq::from_coefficients(int d_sphere, Eigen::VectorXd coeffs) {
  check_sphere_args(d_sphere, static_cast<int>(coeffs.size()) - 1);
  SchoenbergSeq seq;
  seq.d_sphere = d_sphere;
  seq.n_max = static_cast<int>(coeffs.size()) - 1;
  seq.coeffs = std::move(coeffs);
  finish(seq);
  return seq;
}

SchoenbergSeq sphere_coeffs(const std::function<double(double)>& psi, int d_sphere, int n_max,
                            const QuadratureConfig& cfg) {
  check_sphere_args(d_sphere, n_max);
  Eigen::VectorXd coeffs(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    coeffs(n) = projection(psi, n, d_sphere, basis_norm(n, d_sphere, cfg), cfg);
  }
  SchoenbergSeq seq = SchoenbergSeq::from_coefficients(d_sphere, std::move(coeffs));
  warn_negative(seq);
  return seq;
}

std::function<double(double)> coefficient_function(const ProductModel& psi, int n,
                                                   const QuadratureConfig& cfg) {
  if (psi.second() != SecondFactor::Sphere) {
    throw DomainError("coefficient_function: model second factor must be a sphere");
  }
  check_sphere_args(psi.second_dim(), n);
  const int d_sphere = psi.second_dim();
  const double norm = basis_norm(n, d_sphere, cfg);
  return [psi, n, d_sphere, norm, cfg](double u) {
    return projection([&](double theta) { return psi(u, theta); }, n, d_sphere, norm, cfg);
  };
}

SchoenbergSeq product_sphere_coeffs(const ProductModel& psi, int n_max,
                                    const Eigen::VectorXd& x_grid, const QuadratureConfig& cfg) {
  if (psi.second() != SecondFactor::Sphere) {
    throw DomainError("product_sphere_coeffs: model second factor must be a sphere");
  }
  const int d_sphere = psi.second_dim();
  check_sphere_args(d_sphere, n_max);
  if (x_grid.size() < 2) throw DomainError("product_sphere_coeffs: x_grid needs >= 2 points");

  SchoenbergSeq seq;
  seq.d_sphere = d_sphere;
  seq.n_max = n_max;
  seq.x_grid = x_grid;
  seq.values.resize(n_max + 1, x_grid.size());
  seq.at_zero.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double norm = basis_norm(n, d_sphere, cfg);
    auto b_n = [&](double x) {
      return projection([&](double theta) { return psi(x, theta); }, n, d_sphere, norm, cfg);
    };
    seq.at_zero(n) = b_n(0.0);
    for (Eigen::Index i = 0; i < x_grid.size(); ++i) seq.values(n, i) = b_n(x_grid(i));
  }
  finish(seq);
  warn_negative(seq);
  return seq;
}

Reconstruction reconstruct(const SchoenbergSeq& seq, std::optional<double> x, double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("reconstruct: theta must lie in [0, pi]");
  }
  const GegenbauerBasis basis(seq.d_sphere, seq.n_max);
  const Eigen::VectorXd n_values = basis.evaluate(std::cos(theta));
  if (!seq.tabulated()) {
    if (x) throw DomainError("reconstruct: scalar sequence takes no x");
    return {seq.coeffs.dot(n_values), seq.residual_mass};
  }
  if (!x) throw DomainError("reconstruct: tabulated sequence requires x");
  double value = 0.0;
  for (int n = 0; n <= seq.n_max; ++n) {
    const double b = (*x == 0.0) ? seq.at_zero(n)
                                 : MonotoneCubic(seq.x_grid, seq.values.row(n).transpose())(*x);
    value += b * n_values(n);
  }
  return {value, seq.residual_mass};
}

double sphere_surface(int k) {
  if (k < 1) throw DomainError("sphere_surface: dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / gamma_fn(0.5 * k);
}

double partial_fourier(const ProductModel& phi, double x, double w,
                       const std::function<double(double)>& decay, const QuadratureConfig& cfg) {
  if (phi.second() != SecondFactor::Euclidean) {
    throw DomainError("partial_fourier: model second factor must be Euclidean");
  }
  if (!(w >= 0.0)) throw DomainError("partial_fourier: w must be >= 0");
  const int dp = phi.second_dim();
  const double surface = sphere_surface(dp);
  const OmegaKernel kernel(dp);
  auto integrand = [&](double r) {
    return phi(x, r) * kernel(w * r) * std::pow(r, dp - 1);
  };
  auto envelope = [&](double r) { return decay(r) * std::pow(r, dp - 1); };
  return surface * integrate_semi_infinite(integrand, envelope, w, cfg);
}

double inverse_partial_fourier(const std::function<double(double, double)>& phi_w, double x,
                               double y, int d_prime, const std::function<double(double)>& decay,
                               const QuadratureConfig& cfg) {
  if (d_prime < 1) throw DomainError("inverse_partial_fourier: d' must be >= 1");
  if (!(y >= 0.0)) throw DomainError("inverse_partial_fourier: y must be >= 0");
  const double surface = sphere_surface(d_prime);
  const OmegaKernel kernel(d_prime);
  auto integrand = [&](double w) {
    return phi_w(x, w) * kernel(w * y) * std::pow(w, d_prime - 1);
  };
  auto envelope = [&](double w) { return decay(w) * std::pow(w, d_prime - 1); };
  return std::pow(2.0 * std::numbers::pi, -d_prime) * surface *
         integrate_semi_infinite(integrand, envelope, y, cfg);
}

}  // namespace turnband
