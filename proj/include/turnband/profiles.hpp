#pragma once

#include <functional>
#include <string>

namespace turnband {

/// Where the first (radial) argument of a model lives: the open interval
/// [0, 1) of pairwise distances in a ball of radius 1/2, or all of [0, inf).
enum class ArgumentDomain { Ball, Full };

/// Kind of the second factor of a product space.
enum class SecondFactor { Euclidean, Sphere };

/// A real function of one nonnegative argument with a declared domain and
/// the dimension of the space it is radial in.
class RadialProfile {
 public:
  using Function = std::function<double(double)>;

  RadialProfile(Function fn, ArgumentDomain domain, int dim, std::string name);

  double operator()(double x) const;

  ArgumentDomain domain() const { return domain_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  bool contains(double x) const;

 private:
  Function fn_;
  ArgumentDomain domain_;
  int dim_;
  std::string name_;
};

/// A real function of (x, s) on a product space: x is the radial distance in
/// the first factor (ball or Euclidean space of dimension first_dim); s is a
/// Euclidean lag or a geodesic angle in [0, pi] on the sphere S^{second_dim}.
class ProductModel {
 public:
  using Function = std::function<double(double, double)>;

  ProductModel(Function fn, ArgumentDomain first_domain, int first_dim, SecondFactor second,
               int second_dim, std::string name);

  double operator()(double x, double s) const;

  ArgumentDomain first_domain() const { return first_domain_; }
  int first_dim() const { return first_dim_; }
  SecondFactor second() const { return second_; }
  int second_dim() const { return second_dim_; }
  const std::string& name() const { return name_; }
  bool contains(double x, double s) const;

  /// The slice u -> model(u, s) as a profile on the first factor.
  RadialProfile slice(double s) const;

 private:
  Function fn_;
  ArgumentDomain first_domain_;
  int first_dim_;
  SecondFactor second_;
  int second_dim_;
  std::string name_;
};

}  // namespace turnband
