#include "turnband/profiles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "turnband/errors.hpp"

namespace turnband {

RadialProfile::RadialProfile(Function fn, ArgumentDomain domain, int dim, std::string name)
    : fn_(std::move(fn)), domain_(domain), dim_(dim), name_(std::move(name)) {
  if (dim_ < 1) throw DomainError("RadialProfile: dimension must be >= 1");
}

bool RadialProfile::contains(double x) const {
  if (!(x >= 0.0) || !std::isfinite(x)) return false;
  return domain_ == ArgumentDomain::Full || x < 1.0;
}

double RadialProfile::operator()(double x) const {
  if (!contains(x)) {
    std::ostringstream msg;
    msg << name_ << ": argument " << x << " outside "
        << (domain_ == ArgumentDomain::Ball ? "[0, 1)" : "[0, inf)");
    throw DomainError(msg.str());
  }
  return fn_(x);
}

ProductModel::ProductModel(Function fn, ArgumentDomain first_domain, int first_dim,
                           SecondFactor second, int second_dim, std::string name)
    : fn_(std::move(fn)),
      first_domain_(first_domain),
      first_dim_(first_dim),
      second_(second),
      second_dim_(second_dim),
      name_(std::move(name)) {
  if (first_dim_ < 1 || second_dim_ < 1) {
    throw DomainError("ProductModel: factor dimensions must be >= 1");
  }
}

bool ProductModel::contains(double x, double s) const {
  if (!(x >= 0.0) || !std::isfinite(x) || !(s >= 0.0) || !std::isfinite(s)) return false;
  if (first_domain_ == ArgumentDomain::Ball && x >= 1.0) return false;
  if (second_ == SecondFactor::Sphere && s > std::numbers::pi) return false;
  return true;
}

double ProductModel::operator()(double x, double s) const {
  if (!contains(x, s)) {
    std::ostringstream msg;
    msg << name_ << ": argument (" << x << ", " << s << ") outside "
        << (first_domain_ == ArgumentDomain::Ball ? "[0, 1)" : "[0, inf)") << " x "
        << (second_ == SecondFactor::Sphere ? "[0, pi]" : "[0, inf)");
    throw DomainError(msg.str());
  }
  return fn_(x, s);
}

RadialProfile ProductModel::slice(double s) const {
  auto fn = fn_;
  return RadialProfile([fn, s](double u) { return fn(u, s); }, first_domain_, first_dim_,
                       name_ + "|slice");
}

}  // namespace turnband
