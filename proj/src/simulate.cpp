#include "turnband/simulate.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "turnband/errors.hpp"
#include "turnband/random.hpp"

namespace turnband {

namespace {

// Unblocked scan of m + jitter I: returns the first non-positive pivot, or
// the smallest pivot when the factorization goes through.
double worst_pivot(const Eigen::MatrixXd& m, double jitter) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd a = m;
  a.diagonal().array() += jitter;
  double worst = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pivot = a(k, k) - a.row(k).head(k).squaredNorm();
    worst = std::min(worst, pivot);
    if (!(pivot > 0.0)) return pivot;
    const double root = std::sqrt(pivot);
    a(k, k) = root;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      a(i, k) = (a(i, k) - a.row(i).head(k).dot(a.row(k).head(k))) / root;
    }
  }
  return worst;
}

bool try_llt(const Eigen::MatrixXd& m, double jitter, Eigen::MatrixXd& L) {
  Eigen::MatrixXd a = m;
  if (jitter > 0.0) a.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) return false;
  L = llt.matrixL();
  return L.allFinite();
}

}  // namespace

GridSpec GridSpec::figure1() {
  GridSpec g;
  g.max_dim = kFigure1MaxDim;
  return g;
}

double GridSpec::dx() const { return nx > 1 ? (x_max - x_min) / (nx - 1) : 0.0; }
double GridSpec::dy() const { return ny > 1 ? (y_max - y_min) / (ny - 1) : 0.0; }

double GridSpec::x(int i) const { return nx > 1 ? x_min + i * dx() : x_min; }
double GridSpec::y(int j) const { return ny > 1 ? y_min + j * dy() : y_min; }

void GridSpec::check() const {
  if (nx < 1 || ny < 1) throw DomainError("grid: nx and ny must be >= 1");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max)) {
    throw DomainError("grid: ranges must be finite");
  }
  if ((nx > 1 && !(x_max > x_min)) || (ny > 1 && !(y_max > y_min))) {
    throw DomainError("grid: ranges must satisfy min < max");
  }
  if (times.empty()) throw DomainError("grid: at least one time is required");
  for (std::size_t a = 0; a < times.size(); ++a) {
    if (!std::isfinite(times[a])) throw DomainError("grid: times must be finite");
    for (std::size_t b = 0; b < a; ++b) {
      if (times[a] == times[b]) throw DomainError("grid: duplicate time");
    }
  }
  const long long total = static_cast<long long>(nx) * ny * static_cast<long long>(times.size());
  if (total > max_dim) {
    std::ostringstream msg;
    msg << "grid: " << total << " points exceed the matrix dimension cap " << max_dim;
    throw DomainError(msg.str());
  }
}

Eigen::MatrixXd assemble_cov(const ProductModel& model, const GridSpec& grid) {
  grid.check();
  if (model.second() != SecondFactor::Euclidean || model.second_dim() != 1) {
    throw DomainError("assemble_cov: model must act on space x linear time");
  }
  const int nx = grid.nx;
  const int ny = grid.ny;
  const int nt = static_cast<int>(grid.times.size());
  const int ns = grid.spatial_size();
  const double hx = grid.dx();
  const double hy = grid.dy();

  std::vector<double> lags;
  for (double a : grid.times) {
    for (double b : grid.times) lags.push_back(std::fabs(a - b));
  }
  std::sort(lags.begin(), lags.end());
  lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
  auto lag_index = [&](int ka, int kb) {
    const double lag = std::fabs(grid.times[ka] - grid.times[kb]);
    return static_cast<int>(std::lower_bound(lags.begin(), lags.end(), lag) - lags.begin());
  };

  // table(di, dj, lag) over non-negative offsets
  const int nl = static_cast<int>(lags.size());
  std::vector<double> table(static_cast<std::size_t>(nx) * ny * nl);
  for (int l = 0; l < nl; ++l) {
    for (int dj = 0; dj < ny; ++dj) {
      for (int di = 0; di < nx; ++di) {
        const double r = std::hypot(di * hx, dj * hy);
        table[(static_cast<std::size_t>(l) * ny + dj) * nx + di] = model(r, lags[l]);
      }
    }
  }

  const int n = grid.size();
  Eigen::MatrixXd cov(n, n);
  for (int ka = 0; ka < nt; ++ka) {
    for (int kb = 0; kb < nt; ++kb) {
      const int l = lag_index(ka, kb);
      for (int a = 0; a < ns; ++a) {
        const int ia = a % nx;
        const int ja = a / nx;
        for (int b = 0; b < ns; ++b) {
          const int di = std::abs(ia - b % nx);
          const int dj = std::abs(ja - b / nx);
          cov(ka * ns + a, kb * ns + b) = table[(static_cast<std::size_t>(l) * ny + dj) * nx + di];
        }
      }
    }
  }
  return cov;
}

CholeskyResult cholesky_jitter(const Eigen::MatrixXd& m, double jitter_start, double jitter_factor,
                               double jitter_max) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("cholesky_jitter: matrix must be square");
  if (!(jitter_start > 0.0) || !(jitter_factor > 1.0) || !(jitter_max >= jitter_start)) {
    throw DomainError("cholesky_jitter: need 0 < jitter_start <= jitter_max and factor > 1");
  }
  const double scale = m.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) throw DomainError("cholesky_jitter: matrix has non-finite entries");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1e-300)) {
    throw DomainError("cholesky_jitter: matrix is not symmetric");
  }

  CholeskyResult result;
  if (try_llt(m, 0.0, result.L)) return result;
  double last = 0.0;
  for (double jitter = jitter_start; jitter <= jitter_max * (1.0 + 1e-12); jitter *= jitter_factor) {
    last = jitter;
    if (try_llt(m, jitter, result.L)) {
      result.jitter_used = jitter;
      return result;
    }
  }
  std::ostringstream msg;
  msg << "cholesky_jitter: factorization failed at jitter " << last
      << "; most negative pivot " << worst_pivot(m, last);
  throw ConvergenceError(msg.str(), last);
}

double FieldRealization::value(int k, int j, int i, int r) const {
  return values((k * grid.ny + j) * grid.nx + i, r);
}

FieldRealization sample_field(const Eigen::MatrixXd& L, std::uint64_t seed, int n_realizations) {
  if (n_realizations < 1) throw DomainError("sample_field: n_realizations must be >= 1");
  if (L.rows() != L.cols()) throw DomainError("sample_field: L must be square");
  const Eigen::Index n = L.rows();
  Eigen::MatrixXd draws(n, n_realizations);
  for (int r = 0; r < n_realizations; ++r) {
    draws.col(r) = gaussian_draws(seed, static_cast<std::uint64_t>(r), n);
  }
  FieldRealization field;
  field.seed = seed;
  field.values = L.triangularView<Eigen::Lower>() * draws;
  return field;
}

FieldRealization simulate(const ProductModel& model, const GridSpec& grid, std::uint64_t seed,
                          int n_realizations) {
  const CholeskyResult chol = cholesky_jitter(assemble_cov(model, grid));
  FieldRealization field = sample_field(chol.L, seed, n_realizations);
  field.grid = grid;
  field.jitter_used = chol.jitter_used;
  if (!field.values.allFinite()) throw ConvergenceError("simulate: non-finite field values", 0.0);
  return field;
}

Eigen::MatrixXd empirical_cov(const Eigen::MatrixXd& values) {
  if (values.cols() < 2) throw DomainError("empirical_cov: need at least 2 realizations");
  const Eigen::VectorXd mean = values.rowwise().mean();
  const Eigen::MatrixXd centered = values.colwise() - mean;
  return centered * centered.transpose() / static_cast<double>(values.cols() - 1);
}

Eigen::MatrixXd empirical_cov(const FieldRealization& field) { return empirical_cov(field.values); }

}  // namespace turnband
