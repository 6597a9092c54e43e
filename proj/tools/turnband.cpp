#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "turnband/errors.hpp"
#include "turnband/model_spec.hpp"
#include "turnband/models.hpp"
#include "turnband/schoenberg.hpp"
#include "turnband/serialize.hpp"
#include "turnband/simulate.hpp"
#include "turnband/turning_bands.hpp"
#include "turnband/validate.hpp"

using namespace turnband;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kIoError = 1, kParse = 2, kDomain = 3, kNumeric = 4, kValidationFail = 5 };

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  int quad_nodes = 64;
  std::optional<double> tol;
};

void add_global_options(CLI::App* cmd, GlobalOptions& g, const std::string& default_format,
                        const std::string& tol_help) {
  g.format = default_format;
  cmd->add_option("--seed", g.seed, "Seed for point sampling and field draws")
      ->envname("TURNBAND_SEED")
      ->capture_default_str();
  cmd->add_option("--out", g.out,
                  "Output file; a manifest <out>.manifest.json is written beside it "
                  "(default: standard output, no manifest)");
  cmd->add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--quad-nodes", g.quad_nodes, "Gauss-Legendre nodes per quadrature panel")
      ->check(CLI::Range(2, 1024))
      ->capture_default_str();
  cmd->add_option("--tol", g.tol, tol_help);
}

QuadratureConfig quad_config(const GlobalOptions& g) {
  QuadratureConfig cfg;
  cfg.nodes = g.quad_nodes;
  if (g.tol) {
    cfg.abs_tol = *g.tol;
    cfg.rel_tol = *g.tol;
  }
  cfg.check();
  return cfg;
}

json artifact_entry(const std::string& path, const std::string& content,
                    const std::optional<std::string>& value_column) {
  json entry;
  entry["path"] = path;
  entry["bytes"] = content.size();
  if (value_column) {
    entry["checksums"] = to_json(csv_checksums(content, *value_column));
    entry["checksums"]["column"] = *value_column;
  } else {
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << fnv1a64(content);
    entry["fnv1a64"] = hex.str();
  }
  return entry;
}

void write_manifest(const std::string& out, const std::string& subcommand, const json& config,
                    const json& artifacts) {
  json manifest = {{"tool", "turnband"},
                   {"version", kVersion},
                   {"subcommand", subcommand},
                   {"config", config},
                   {"artifacts", artifacts}};
  write_file_atomic(manifest_path(out), manifest.dump(2) + "\n");
}

/// Writes `content` to --out (with manifest) or to stdout.
void emit(const GlobalOptions& g, const std::string& subcommand, const json& config,
          const std::string& content, const std::optional<std::string>& value_column) {
  if (g.out.empty()) {
    std::cout << content;
    return;
  }
  write_file_atomic(g.out, content);
  write_manifest(g.out, subcommand, config,
                 json::array({artifact_entry(g.out, content, value_column)}));
}

json base_config(const GlobalOptions& g) {
  json c = {{"seed", g.seed}, {"out", g.out}, {"format", g.format}, {"quad_nodes", g.quad_nodes}};
  c["tol"] = g.tol ? json(*g.tol) : json(nullptr);
  return c;
}

struct Row {
  double x;
  std::optional<double> s;
  double value;
};

std::string render_rows(const std::vector<Row>& rows, const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"x", r.x}, {"s", r.s ? json(*r.s) : json(nullptr)}, {"value", r.value}});
    }
    return arr.dump(2) + "\n";
  }
  std::string out = "x,s,value\n";
  for (const auto& r : rows) {
    out += format_double(r.x) + "," + (r.s ? format_double(*r.s) : std::string()) + "," +
           format_double(r.value) + "\n";
  }
  return out;
}

/// Evaluates fn over the x list (radial) or the x by s product (product models).
template <typename Radial, typename Product>
std::vector<Row> tabulate(const AnyModel& model, const std::vector<double>& xs,
                          const std::vector<double>& ss, Radial radial, Product product) {
  std::vector<Row> rows;
  if (std::holds_alternative<RadialProfile>(model)) {
    if (!ss.empty()) {
      throw ParseError("model '" + model_name(model) + "' is radial and takes no --t/--theta");
    }
    for (double x : xs) rows.push_back({x, std::nullopt, radial(std::get<RadialProfile>(model), x)});
    return rows;
  }
  if (ss.empty()) throw ParseError("model '" + model_name(model) + "' needs --t or --theta");
  for (double x : xs) {
    for (double s : ss) rows.push_back({x, s, product(std::get<ProductModel>(model), x, s)});
  }
  return rows;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("invalid number '" + item + "' in " + flag);
    }
  }
  if (out.empty()) throw ParseError(flag + " needs at least one value");
  return out;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
  const auto v = parse_double_list(text, flag);
  if (v.size() != 2) throw ParseError(flag + " takes two values: min,max");
  return {v[0], v[1]};
}

int run(int argc, char** argv) {
  CLI::App app{"turnband: positive definite functions on product spaces, turning bands "
               "operators, Schoenberg analysis, validation and Gaussian field simulation.\n"
               "Exit codes: 0 ok, 1 I/O error, 2 parse error, 3 domain error, 4 numerical failure, "
               "5 validation failed."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  const std::string quad_tol_help = "Quadrature absolute and relative tolerance (default 1e-10 / 1e-9)";

  // eval
  GlobalOptions eval_g;
  std::string eval_model;
  std::string eval_x;
  std::string eval_s;
  auto* eval = app.add_subcommand("eval", "Evaluate a model on a list of arguments; rows x,s,value");
  eval->add_option("--model", eval_model, "Model spec, e.g. hbar or ball_linear:d=3,alpha=1")->required();
  eval->add_option("--x", eval_x, "Comma-separated first-factor distances")->required();
  eval->add_option("--t,--theta", eval_s,
                   "Comma-separated time lags or geodesic angles (product models only)");
  add_global_options(eval, eval_g, "csv", quad_tol_help);

  // tb
  GlobalOptions tb_g;
  std::string tb_model;
  int tb_dim = 0;
  std::string tb_x;
  std::string tb_s;
  auto* tb = app.add_subcommand("tb", "Apply the turning bands operator from dimension 1 to --dim");
  tb->add_option("--model", tb_model, "Model spec of a dimension-1 source, e.g. triangle:alpha=1")->required();
  tb->add_option("--dim", tb_dim, "Target dimension d >= 2")->required();
  tb->add_option("--x", tb_x, "Comma-separated distances in R^d")->required();
  tb->add_option("--t,--theta", tb_s, "Comma-separated time lags or geodesic angles (product models only)");
  add_global_options(tb, tb_g, "csv", quad_tol_help);

  // schoenberg
  GlobalOptions sb_g;
  std::string sb_psi;
  std::string sb_model;
  int sb_dim = 1;
  int sb_n_max = kDefaultSchoenbergTerms;
  std::string sb_x_grid;
  auto* sb = app.add_subcommand("schoenberg", "Schoenberg coefficients of a function on a sphere");
  auto* psi_opt = sb->add_option("--psi", sb_psi,
                                 "Function of the geodesic angle: cos, raised_cos, raised_cos_sq, "
                                 "cos_affine(a), exp(rate)");
  auto* sb_model_opt = sb->add_option("--model", sb_model,
                                      "Product model spec with a circular second factor; "
                                      "coefficients are tabulated over --x-grid");
  psi_opt->excludes(sb_model_opt);
  sb->add_option("--dim-sphere", sb_dim, "Sphere dimension d' for --psi")->capture_default_str();
  sb->add_option("--n-max", sb_n_max, "Highest mode")->capture_default_str();
  sb->add_option("--x-grid", sb_x_grid, "Comma-separated first-factor distances for --model");
  add_global_options(sb, sb_g, "json", quad_tol_help);

  // validate
  GlobalOptions val_g;
  std::string val_model;
  std::string val_space;
  int val_n = kDefaultPdPoints;
  auto* val = app.add_subcommand("validate", "Empirical positive-definiteness check on random points; exit 5 on failure");
  val->add_option("--model", val_model, "Model spec")->required();
  val->add_option("--space", val_space,
                  "Space spec: ball(d), euclidean(d,halfwidth), sphere(d), optionally joined "
                  "by '*', e.g. ball(3)*euclidean(1,2)")
      ->required();
  val->add_option("--n", val_n, "Number of sampled points")->capture_default_str();
  add_global_options(val, val_g, "json", "Relative eigenvalue tolerance: pass iff min_eig >= -tol max_eig (default 1e-8)");

  // simulate
  GlobalOptions sim_g;
  std::string sim_model = "hd:d=2";
  std::string sim_preset;
  std::string sim_x_range;
  std::string sim_y_range;
  int sim_nx = 0;
  int sim_ny = 0;
  std::string sim_times;
  int sim_realizations = 1;
  int sim_max_dim = 0;
  bool sim_unit_circle = false;
  auto* sim = app.add_subcommand(
      "simulate",
      "Gaussian random field on a (time, y, x) grid by Cholesky decomposition; writes a CSV "
      "(time,y,x,value,realization_index), a JSON sidecar <out minus .csv>.json and a manifest");
  sim->add_option("--model", sim_model, "Space-time model spec with linear time")->capture_default_str();
  sim->add_option("--preset", sim_preset,
                  "figure1: 41x41 grid on [-2,2]^2 at t = 0,1,2, cap 8192, unit circle flag set")
      ->check(CLI::IsMember({"figure1"}));
  sim->add_option("--x-range", sim_x_range, "min,max of x (default -2,2)");
  sim->add_option("--y-range", sim_y_range, "min,max of y (default -2,2)");
  sim->add_option("--nx", sim_nx, "Grid points along x (default 41)");
  sim->add_option("--ny", sim_ny, "Grid points along y (default 41)");
  sim->add_option("--times", sim_times, "Comma-separated time instants (default 0,1,2)");
  sim->add_option("--realizations", sim_realizations, "Number of independent realizations")->capture_default_str();
  sim->add_option("--max-dim", sim_max_dim, "Cap on the covariance dimension (default 4096, 8192 with the preset)");
  sim->add_flag("--unit-circle", sim_unit_circle, "Set the unit circle flag in the sidecar");
  add_global_options(sim, sim_g, "csv", quad_tol_help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*eval) {
      const QuadratureConfig cfg = quad_config(eval_g);
      const AnyModel model = parse_model_spec(eval_model, cfg);
      const auto xs = parse_double_list(eval_x, "--x");
      const auto ss = eval_s.empty() ? std::vector<double>{} : parse_double_list(eval_s, "--t");
      const auto rows = tabulate(
          model, xs, ss, [](const RadialProfile& m, double x) { return m(x); },
          [](const ProductModel& m, double x, double s) { return m(x, s); });
      json config = base_config(eval_g);
      config.update({{"model", eval_model}, {"x", xs}, {"s", ss}});
      emit(eval_g, "eval", config, render_rows(rows, eval_g.format),
           eval_g.format == "csv" ? std::optional<std::string>("value") : std::nullopt);
      return kOk;
    }

    if (*tb) {
      const QuadratureConfig cfg = quad_config(tb_g);
      if (tb_dim < 2) throw DomainError("tb: target dimension d >= 2 is required, got " + std::to_string(tb_dim));
      const AnyModel model = parse_model_spec(tb_model, cfg);
      const auto xs = parse_double_list(tb_x, "--x");
      const auto ss = tb_s.empty() ? std::vector<double>{} : parse_double_list(tb_s, "--t");
      const int d = tb_dim;
      const auto rows = tabulate(
          model, xs, ss, [&](const RadialProfile& m, double x) { return tb_radial(m, d, x, cfg); },
          [&](const ProductModel& m, double x, double s) {
            return m.second() == SecondFactor::Sphere ? tb_product_sphere(m, d, x, s, cfg)
                                                      : tb_product_euclidean(m, d, x, s, cfg);
          });
      json config = base_config(tb_g);
      config.update({{"model", tb_model}, {"dim", tb_dim}, {"x", xs}, {"s", ss}});
      emit(tb_g, "tb", config, render_rows(rows, tb_g.format),
           tb_g.format == "csv" ? std::optional<std::string>("value") : std::nullopt);
      return kOk;
    }

    if (*sb) {
      const QuadratureConfig cfg = quad_config(sb_g);
      SchoenbergSeq seq;
      json config = base_config(sb_g);
      if (!sb_psi.empty()) {
        seq = sphere_coeffs(parse_psi_spec(sb_psi), sb_dim, sb_n_max, cfg);
        config.update({{"psi", sb_psi}, {"dim_sphere", sb_dim}, {"n_max", sb_n_max}});
      } else if (!sb_model.empty()) {
        const AnyModel model = parse_model_spec(sb_model, cfg);
        if (!std::holds_alternative<ProductModel>(model)) {
          throw DomainError("schoenberg: --model must be a product model on a sphere factor");
        }
        const auto grid = parse_double_list(sb_x_grid.empty() ? "0,0.25,0.5,0.75" : sb_x_grid, "--x-grid");
        seq = product_sphere_coeffs(std::get<ProductModel>(model), sb_n_max,
                                    Eigen::Map<const Eigen::VectorXd>(grid.data(), grid.size()), cfg);
        config.update({{"model", sb_model}, {"n_max", sb_n_max}, {"x_grid", grid}});
      } else {
        throw ParseError("schoenberg: one of --psi or --model is required");
      }
      std::string content;
      if (sb_g.format == "json") {
        content = to_json(seq).dump(2) + "\n";
      } else {
        if (seq.tabulated()) throw ParseError("schoenberg: csv output needs --psi; use --format json");
        content = "n,coeff\n";
        for (Eigen::Index n = 0; n < seq.coeffs.size(); ++n) {
          content += std::to_string(n) + "," + format_double(seq.coeffs(n)) + "\n";
        }
      }
      emit(sb_g, "schoenberg", config, content,
           sb_g.format == "csv" ? std::optional<std::string>("coeff") : std::nullopt);
      return kOk;
    }

    if (*val) {
      const double tol = val_g.tol.value_or(kDefaultPdTol);
      GlobalOptions quad_g = val_g;
      quad_g.tol.reset();
      const AnyModel model = parse_model_spec(val_model, quad_config(quad_g));
      const SpaceSpec space = parse_space_spec(val_space);
      const ValidationReport report = check_pd(model, space, val_n, val_g.seed, tol);
      std::string content;
      if (val_g.format == "json") {
        content = to_json(report).dump(2) + "\n";
      } else {
        content = "model,space,n_points,seed,tol,min_eig,max_eig,relative_floor,verdict\n\"" +
                  report.model + "\",\"" + report.space + "\"," + std::to_string(report.n_points) +
                  "," + std::to_string(report.seed) + "," + format_double(report.tol) + "," +
                  format_double(report.min_eig) + "," + format_double(report.max_eig) + "," +
                  format_double(report.relative_floor) + "," + (report.pass ? "pass" : "fail") + "\n";
      }
      json config = base_config(val_g);
      config.update({{"model", val_model}, {"space", val_space}, {"n", val_n}, {"tol", tol}});
      emit(val_g, "validate", config, content, std::nullopt);
      return report.pass ? kOk : kValidationFail;
    }

    if (*sim) {
      if (sim_g.format != "csv") throw ParseError("simulate: only --format csv is supported");
      if (sim_g.out.empty()) throw ParseError("simulate: --out is required");
      const QuadratureConfig cfg = quad_config(sim_g);
      const bool preset = sim_preset == "figure1";
      GridSpec grid = preset ? GridSpec::figure1() : GridSpec{};
      if (!sim_x_range.empty()) std::tie(grid.x_min, grid.x_max) = parse_range(sim_x_range, "--x-range");
      if (!sim_y_range.empty()) std::tie(grid.y_min, grid.y_max) = parse_range(sim_y_range, "--y-range");
      if (sim->count("--nx")) grid.nx = sim_nx;
      if (sim->count("--ny")) grid.ny = sim_ny;
      if (!sim_times.empty()) grid.times = parse_double_list(sim_times, "--times");
      if (sim->count("--max-dim")) grid.max_dim = sim_max_dim;
      const AnyModel model = parse_model_spec(sim_model, cfg);
      if (!std::holds_alternative<ProductModel>(model)) {
        throw DomainError("simulate: model must be a space-time product model");
      }
      const FieldRealization field =
          simulate(std::get<ProductModel>(model), grid, sim_g.seed, sim_realizations);
      const bool unit_circle = preset || sim_unit_circle;

      const std::string csv = field_csv(field);
      std::string sidecar_path = sim_g.out;
      if (sidecar_path.size() > 4 && sidecar_path.substr(sidecar_path.size() - 4) == ".csv") {
        sidecar_path.resize(sidecar_path.size() - 4);
      }
      sidecar_path += ".json";
      const std::string sidecar = field_sidecar(field, model_name(model), unit_circle).dump(2) + "\n";
      write_file_atomic(sim_g.out, csv);
      write_file_atomic(sidecar_path, sidecar);

      json config = base_config(sim_g);
      config.update({{"model", sim_model},
                     {"preset", sim_preset},
                     {"grid", to_json(grid)},
                     {"realizations", sim_realizations},
                     {"unit_circle", unit_circle},
                     {"jitter_used", field.jitter_used}});
      write_manifest(sim_g.out, "simulate", config,
                     json::array({artifact_entry(sim_g.out, csv, std::string("value")),
                                  artifact_entry(sidecar_path, sidecar, std::nullopt)}));
      std::cerr << "wrote " << field.grid.size() * field.n_realizations() << " rows to " << sim_g.out
                << " (jitter " << field.jitter_used << ")\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
