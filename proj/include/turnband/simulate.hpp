#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "turnband/profiles.hpp"

namespace turnband {

/// Regular grid on [x_min, x_max] x [y_min, y_max] at a list of times.
/// Points are ordered row-major in (time, y, x): index (k ny + j) nx + i.
struct GridSpec {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = -2.0;
  double y_max = 2.0;
  int nx = 41;
  int ny = 41;
  std::vector<double> times{0.0, 1.0, 2.0};
  int max_dim = 4096;

  static constexpr int kDefaultMaxDim = 4096;
  static constexpr int kFigure1MaxDim = 8192;

  /// 41 x 41 points on [-2, 2]^2 at t = 0, 1, 2 with the cap lifted to 8192.
  static GridSpec figure1();

  int spatial_size() const { return nx * ny; }
  int size() const { return nx * ny * static_cast<int>(times.size()); }
  double x(int i) const;
  double y(int j) const;
  double dx() const;
  double dy() const;

  /// Throws DomainError on empty or inverted ranges, non-finite times,
  /// duplicate times, or a total size above max_dim.
  void check() const;
};

/// Covariance over all (time, y, x) grid points:
/// entry = model(|s_a - s_b|, |t_a - t_b|). Entries are shared between index
/// pairs with the same offset, so each distinct (offset, lag) is evaluated once.
Eigen::MatrixXd assemble_cov(const ProductModel& model, const GridSpec& grid);

struct CholeskyResult {
  Eigen::MatrixXd L;
  double jitter_used = 0.0;
};

inline constexpr double kJitterStart = 1e-12;
inline constexpr double kJitterFactor = 10.0;
inline constexpr double kJitterMax = 1e-6;

/// L L^T = m + jitter I. The factorization is tried without jitter first,
/// then with jitter_start, jitter_start * factor, ... up to jitter_max.
/// ConvergenceError reports the most negative pivot on failure.
CholeskyResult cholesky_jitter(const Eigen::MatrixXd& m, double jitter_start = kJitterStart,
                               double jitter_factor = kJitterFactor,
                               double jitter_max = kJitterMax);

struct FieldRealization {
  GridSpec grid;
  std::uint64_t seed = 0;
  double jitter_used = 0.0;
  /// One column per realization, rows in grid order.
  Eigen::MatrixXd values;

  int n_realizations() const { return static_cast<int>(values.cols()); }
  double value(int k, int j, int i, int r) const;
};

/// Column r is L g_r with g_r the first n draws of sub-stream r of `seed`.
FieldRealization sample_field(const Eigen::MatrixXd& L, std::uint64_t seed, int n_realizations);

/// Full pipeline: assemble, factor, sample.
FieldRealization simulate(const ProductModel& model, const GridSpec& grid, std::uint64_t seed,
                          int n_realizations);

/// Unbiased sample covariance across realizations (columns).
Eigen::MatrixXd empirical_cov(const FieldRealization& field);
Eigen::MatrixXd empirical_cov(const Eigen::MatrixXd& values);

}  // namespace turnband
