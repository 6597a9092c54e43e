#include "turnband/turning_bands.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "turnband/errors.hpp"

namespace turnband {

namespace {

void require_target(int d) {
  if (d < 2) {
    throw DomainError("turning bands: target dimension d >= 2 is required (got " +
                      std::to_string(d) + "); d = 1 is the identity walk");
  }
}

void require_normalized(double origin_value, const std::string& name) {
  if (std::fabs(origin_value - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "turning bands: source " << name << " must equal 1 at the origin, got " << origin_value;
    throw DomainError(msg.str());
  }
}

double apply(const RadialProfile& source, int d, double x, const QuadratureConfig& cfg) {
  if (!source.contains(x)) {
    std::ostringstream msg;
    msg << "turning bands: x = " << x << " outside the domain of " << source.name();
    throw DomainError(msg.str());
  }
  if (x == 0.0) return source(0.0);
  return integrate_tb([&](double u) { return source(u); }, x, d, cfg);
}

void require_line_source(const ProductModel& phi, SecondFactor expected) {
  if (phi.first_dim() != 1) throw DomainError("turning bands: source must be radial on the line");
  if (phi.second() != expected) {
    throw DomainError(expected == SecondFactor::Euclidean
                          ? "tb_product_euclidean: source second factor must be Euclidean"
                          : "tb_product_sphere: source second factor must be a sphere");
  }
}

}  // namespace

double tb_radial(const RadialProfile& phi1, int d, double x, const QuadratureConfig& cfg) {
  require_target(d);
  if (phi1.dim() != 1) throw DomainError("tb_radial: source must be radial on the line");
  require_normalized(phi1(0.0), phi1.name());
  return apply(phi1, d, x, cfg);
}

double tb_product_euclidean(const ProductModel& phi, int d, double x, double t,
                            const QuadratureConfig& cfg) {
  require_target(d);
  require_line_source(phi, SecondFactor::Euclidean);
  require_normalized(phi(0.0, 0.0), phi.name());
  if (!phi.contains(0.0, t)) throw DomainError("tb_product_euclidean: lag outside the domain");
  return apply(phi.slice(t), d, x, cfg);
}

double tb_product_sphere(const ProductModel& psi, int d, double x, double theta,
                         const QuadratureConfig& cfg) {
  require_target(d);
  require_line_source(psi, SecondFactor::Sphere);
  require_normalized(psi(0.0, 0.0), psi.name());
  if (!psi.contains(0.0, theta)) throw DomainError("tb_product_sphere: angle outside [0, pi]");
  return apply(psi.slice(theta), d, x, cfg);
}

RadialProfile turning_bands(const RadialProfile& phi1, int d, const QuadratureConfig& cfg) {
  require_target(d);
  if (phi1.dim() != 1) throw DomainError("turning_bands: source must be radial on the line");
  require_normalized(phi1(0.0), phi1.name());
  return RadialProfile([phi1, d, cfg](double x) { return apply(phi1, d, x, cfg); },
                       phi1.domain(), d, "tb" + std::to_string(d) + "(" + phi1.name() + ")");
}

ProductModel turning_bands(const ProductModel& phi, int d, const QuadratureConfig& cfg) {
  require_target(d);
  require_line_source(phi, phi.second());
  require_normalized(phi(0.0, 0.0), phi.name());
  return ProductModel(
      [phi, d, cfg](double x, double s) { return apply(phi.slice(s), d, x, cfg); },
      phi.first_domain(), d, phi.second(), phi.second_dim(),
      "tb" + std::to_string(d) + "(" + phi.name() + ")");
}

}  // namespace turnband
