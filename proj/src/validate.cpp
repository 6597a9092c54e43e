#include "turnband/validate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "turnband/errors.hpp"
#include "turnband/random.hpp"

namespace turnband {

namespace {

FactorSpec parse_factor(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') {
    throw ParseError("malformed space factor '" + text + "' (expected kind(args))");
  }
  const std::string kind = text.substr(0, open);
  std::vector<double> args;
  std::stringstream inner(text.substr(open + 1, text.size() - open - 2));
  std::string item;
  while (std::getline(inner, item, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("invalid number '" + item + "' in space factor '" + text + "'");
    }
  }
  auto dim = [&](double v) {
    if (v != std::floor(v) || v < 1) throw ParseError("dimension must be a positive integer in '" + text + "'");
    return static_cast<int>(v);
  };
  if (kind == "ball") {
    if (args.size() != 1) throw ParseError("ball takes one argument: ball(d)");
    return FactorSpec::ball(dim(args[0]));
  }
  if (kind == "sphere") {
    if (args.size() != 1) throw ParseError("sphere takes one argument: sphere(d)");
    return FactorSpec::sphere(dim(args[0]));
  }
  if (kind == "euclidean") {
    if (args.size() != 2) throw ParseError("euclidean takes two arguments: euclidean(d,halfwidth)");
    if (!(args[1] > 0.0)) throw DomainError("euclidean: half width must be > 0");
    return FactorSpec::euclidean(dim(args[0]), args[1]);
  }
  throw ParseError("unknown space factor '" + kind + "'");
}

Eigen::MatrixXd sample_factor(const FactorSpec& factor, int n, NormalStream& rng) {
  Eigen::MatrixXd pts(n, factor.ambient_dim());
  for (int i = 0; i < n; ++i) {
    switch (factor.kind) {
      case FactorSpec::Kind::Euclidean:
        for (int k = 0; k < factor.dim; ++k) {
          pts(i, k) = factor.half_width * (2.0 * rng.uniform() - 1.0);
        }
        break;
      case FactorSpec::Kind::Sphere:
      case FactorSpec::Kind::Ball: {
        Eigen::RowVectorXd g(factor.ambient_dim());
        double norm = 0.0;
        do {
          for (Eigen::Index k = 0; k < g.size(); ++k) g(k) = rng.next();
          norm = g.norm();
        } while (norm == 0.0);
        g /= norm;
        if (factor.kind == FactorSpec::Kind::Ball) {
          // radius r = R U^{1/d} gives the uniform law on the ball; U < 1 keeps r < R
          g *= 0.5 * std::pow(rng.uniform(), 1.0 / factor.dim);
        }
        pts.row(i) = g;
        break;
      }
    }
  }
  return pts;
}

void check_factor_fit(const FactorSpec& space_factor, const Eigen::MatrixXd& coords) {
  if (coords.cols() != space_factor.ambient_dim()) {
    throw DomainError("gram: point coordinates do not match the space");
  }
}

}  // namespace

std::string FactorSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Ball:
      out << "ball(" << dim << ")";
      break;
    case Kind::Sphere:
      out << "sphere(" << dim << ")";
      break;
    case Kind::Euclidean:
      out << "euclidean(" << dim << "," << half_width << ")";
      break;
  }
  return out.str();
}

std::string SpaceSpec::describe() const {
  return second ? first.describe() + "*" + second->describe() : first.describe();
}

SpaceSpec parse_space_spec(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty space specification");
  const auto star = s.find('*');
  SpaceSpec space;
  space.first = parse_factor(s.substr(0, star));
  if (star != std::string::npos) {
    const std::string rest = s.substr(star + 1);
    if (rest.find('*') != std::string::npos) throw ParseError("at most two space factors");
    space.second = parse_factor(rest);
    if (space.second->kind == FactorSpec::Kind::Ball) {
      throw ParseError("second factor must be euclidean or sphere");
    }
  }
  return space;
}

PointSet sample_points(const SpaceSpec& space, int n, std::uint64_t seed) {
  if (n < 2) throw DomainError("sample_points: n must be >= 2");
  PointSet points;
  points.space = space;
  NormalStream first_rng(seed, kPointStreamBase);
  points.first = sample_factor(space.first, n, first_rng);
  if (space.second) {
    NormalStream second_rng(seed, kPointStreamBase + 1);
    points.second = sample_factor(*space.second, n, second_rng);
  }
  return points;
}

double factor_distance(const FactorSpec& factor, const Eigen::Ref<const Eigen::RowVectorXd>& a,
                       const Eigen::Ref<const Eigen::RowVectorXd>& b) {
  if (factor.kind == FactorSpec::Kind::Sphere) {
    return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  }
  return (a - b).norm();
}

Eigen::MatrixXd gram(const AnyModel& model, const PointSet& rows, const PointSet& cols) {
  check_factor_fit(rows.space.first, rows.first);
  check_factor_fit(cols.space.first, cols.first);
  const bool product = std::holds_alternative<ProductModel>(model);
  if (product) {
    if (!rows.space.second || !cols.space.second) {
      throw DomainError("gram: product model needs a product space");
    }
    const auto& pm = std::get<ProductModel>(model);
    const bool sphere_space = rows.space.second->kind == FactorSpec::Kind::Sphere;
    if (sphere_space != (pm.second() == SecondFactor::Sphere)) {
      throw DomainError("gram: second factor of the space does not match the model");
    }
  }
  const FactorSpec& f1 = rows.space.first;
  Eigen::MatrixXd g(rows.size(), cols.size());
  for (Eigen::Index i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < cols.size(); ++j) {
      const double x = factor_distance(f1, rows.first.row(i), cols.first.row(j));
      if (product) {
        const double s = factor_distance(*rows.space.second, rows.second.row(i), cols.second.row(j));
        g(i, j) = std::get<ProductModel>(model)(x, s);
      } else {
        g(i, j) = std::get<RadialProfile>(model)(x);
      }
    }
  }
  return g;
}

Eigen::MatrixXd gram(const AnyModel& model, const PointSet& points) {
  check_factor_fit(points.space.first, points.first);
  const bool product = std::holds_alternative<ProductModel>(model);
  if (product && !points.space.second) throw DomainError("gram: product model needs a product space");
  if (product) {
    const bool sphere_space = points.space.second->kind == FactorSpec::Kind::Sphere;
    if (sphere_space != (std::get<ProductModel>(model).second() == SecondFactor::Sphere)) {
      throw DomainError("gram: second factor of the space does not match the model");
    }
  }
  const Eigen::Index n = points.size();
  const FactorSpec& f1 = points.space.first;
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double x = (i == j) ? 0.0 : factor_distance(f1, points.first.row(i), points.first.row(j));
      double v = 0.0;
      if (product) {
        const double s = (i == j) ? 0.0
                                  : factor_distance(*points.space.second, points.second.row(i),
                                                    points.second.row(j));
        v = std::get<ProductModel>(model)(x, s);
      } else {
        v = std::get<RadialProfile>(model)(x);
      }
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

std::pair<double, double> min_max_eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("min_max_eig: matrix must be square");
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1e-300)) {
    throw DomainError("min_max_eig: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("min_max_eig: eigen-solver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

ValidationReport check_gram(const Eigen::MatrixXd& g, double tol) {
  if (!(tol >= 0.0)) throw DomainError("check: tol must be >= 0");
  ValidationReport report;
  report.n_points = static_cast<int>(g.rows());
  report.tol = tol;
  std::tie(report.min_eig, report.max_eig) = min_max_eig(g);
  report.relative_floor = report.max_eig != 0.0 ? report.min_eig / report.max_eig : 0.0;
  report.pass = report.min_eig >= -tol * report.max_eig;
  return report;
}

ValidationReport check_pd(const AnyModel& model, const SpaceSpec& space, int n, std::uint64_t seed,
                          double tol) {
  const PointSet points = sample_points(space, n, seed);
  ValidationReport report = check_gram(gram(model, points), tol);
  report.model = model_name(model);
  report.space = space.describe();
  report.seed = seed;
  return report;
}

bool check_coeffs(const SchoenbergSeq& seq, double tol) {
  const Eigen::VectorXd& origin = seq.origin_coeffs();
  if (origin.size() == 0) return false;
  if (origin.minCoeff() < -tol) return false;
  if (seq.residual_mass < -tol) return false;
  return std::fabs(origin.sum() + seq.residual_mass - 1.0) <= 1e-6;
}

std::string model_name(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.name(); }, model);
}

}  // namespace turnband
