#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "turnband/model_spec.hpp"
#include "turnband/schoenberg.hpp"

namespace turnband {

/// One factor of a sampling space. Balls have radius 1/2, so pairwise
/// distances stay in [0, 1); Euclidean factors are the box [-h, h]^dim;
/// spheres are S^dim in R^{dim+1} with the geodesic metric.
struct FactorSpec {
  enum class Kind { Ball, Euclidean, Sphere };

  Kind kind = Kind::Ball;
  int dim = 1;
  double half_width = 0.5;

  int ambient_dim() const { return kind == Kind::Sphere ? dim + 1 : dim; }
  std::string describe() const;

  static FactorSpec ball(int d) { return {Kind::Ball, d, 0.5}; }
  static FactorSpec euclidean(int d, double half_width) { return {Kind::Euclidean, d, half_width}; }
  static FactorSpec sphere(int d) { return {Kind::Sphere, d, 1.0}; }
};

struct SpaceSpec {
  FactorSpec first;
  std::optional<FactorSpec> second;

  std::string describe() const;
};

/// `ball(d)`, `euclidean(d,h)`, `sphere(d)`, optionally joined by `*`,
/// e.g. `ball(3)*sphere(1)`.
SpaceSpec parse_space_spec(std::string_view text);

/// Sampled locations; row i of `first` and `second` is point i.
struct PointSet {
  SpaceSpec space;
  Eigen::MatrixXd first;
  Eigen::MatrixXd second;

  Eigen::Index size() const { return first.rows(); }
};

PointSet sample_points(const SpaceSpec& space, int n, std::uint64_t seed);

/// Euclidean distance or geodesic angle (arccos of the clamped inner
/// product) between two rows.
double factor_distance(const FactorSpec& factor, const Eigen::Ref<const Eigen::RowVectorXd>& a,
                       const Eigen::Ref<const Eigen::RowVectorXd>& b);

/// Gram matrix of a model over a point set. Radial profiles use the first
/// factor only; product models require both factors.
Eigen::MatrixXd gram(const AnyModel& model, const PointSet& points);
/// Cross Gram matrix between two point sets on the same space.
Eigen::MatrixXd gram(const AnyModel& model, const PointSet& rows, const PointSet& cols);

/// Extreme eigenvalues of a symmetric matrix from a full deterministic
/// decomposition (Householder tridiagonalization + implicit symmetric QR).
std::pair<double, double> min_max_eig(const Eigen::MatrixXd& m);

inline constexpr double kDefaultPdTol = 1e-8;
inline constexpr int kDefaultPdPoints = 40;

struct ValidationReport {
  std::string model;
  std::string space;
  int n_points = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultPdTol;
  double min_eig = 0;
  double max_eig = 0;
  double relative_floor = 0;
  bool pass = false;
};

/// Verdict on an assembled Gram matrix: pass iff min_eig >= -tol max_eig.
ValidationReport check_gram(const Eigen::MatrixXd& g, double tol);

ValidationReport check_pd(const AnyModel& model, const SpaceSpec& space, int n = kDefaultPdPoints,
                          std::uint64_t seed = 0, double tol = kDefaultPdTol);

/// All coefficients at the origin >= -tol and sum + residual_mass = 1
/// within 1e-6.
bool check_coeffs(const SchoenbergSeq& seq, double tol);

std::string model_name(const AnyModel& model);

}  // namespace turnband
