// Copyright 2026 The disavg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "disavg/cli/app.hpp"

#include "disavg/anderson_analytics.hpp"
#include "disavg/brownian_bridge.hpp"
#include "disavg/dyson_series.hpp"
#include "disavg/errors.hpp"
#include "disavg/quadrature.hpp"
#include "disavg/sampling_oracle.hpp"
#include "disavg/stochastic_propagator.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

namespace disavg::cli {
namespace {

using json = nlohmann::json;

struct Options {
  int sites = 30;
  double gamma = 1.0;
  double t_max = 10.0;
  int t_points = 512;
  std::int64_t samples = 10000;
  int n_steps = 256;
  int quad_nodes = 64;
  std::uint64_t seed = 0;
  std::string out;
  bool deterministic = false;
  std::vector<std::string> methods;

  // subcommand specific
  std::string window = "gaussian";
  double width = 0.0;
  std::vector<int> ells;
  double t = 1.0;
  std::string model = "anderson";
  std::int64_t paths = 100000;
  int bridge_steps = 256;
  std::vector<int> step_list{16, 64, 256, 1024};
};

// One output column group: values with optional standard errors.
struct Column {
  std::string name;
  Eigen::ArrayXcd values;
  Eigen::ArrayXd stderr_re;
  Eigen::ArrayXd stderr_im;
};

struct Table {
  std::string key = "t";
  Eigen::ArrayXd grid;
  std::vector<Column> columns;
  bool complex_values = true;
};

struct Outcome {
  Table table;
  json summary = json::object();
  int exit_code = kExitOk;
  std::optional<json> report;  // written instead of a table
};

DisorderedHamiltonian two_level_model(double gamma) {
  OperatorMatrix h0(2, 2);
  h0 << 0.0, 1.0, 1.0, 0.0;
  OperatorMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, -1.0;
  return DisorderedHamiltonian(h0, {d}, gamma);
}

DisorderedHamiltonian make_model(const Options& o) {
  if (o.model == "two-level") return two_level_model(o.gamma);
  return build_anderson(o.sites, o.gamma);
}

Column deterministic_column(std::string name, const Eigen::ArrayXd& grid, const std::function<Complex(double)>& f) {
  Column c{std::move(name), Eigen::ArrayXcd(grid.size()), Eigen::ArrayXd::Zero(grid.size()),
           Eigen::ArrayXd::Zero(grid.size())};
  for (Eigen::Index k = 0; k < grid.size(); ++k) c.values(k) = f(grid(k));
  return c;
}

Column series_column(std::string name, const TimeSeries& s) {
  return {std::move(name), s.values, s.stderr_re, s.stderr_im};
}

// (1/N) tr of a propagator estimate, with the standard error of the trace
// bounded by the root-sum-square of the diagonal errors.
Column trace_column(std::string name, const Eigen::ArrayXd& grid, const std::function<MatrixEstimate(double)>& f) {
  Column c{std::move(name), Eigen::ArrayXcd(grid.size()), Eigen::ArrayXd(grid.size()), Eigen::ArrayXd(grid.size())};
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const MatrixEstimate e = f(grid(k));
    const double n = static_cast<double>(e.mean.rows());
    c.values(k) = e.mean.trace() / n;
    c.stderr_re(k) = e.stderr_re.diagonal().norm() / n;
    c.stderr_im(k) = e.stderr_im.diagonal().norm() / n;
  }
  return c;
}

TimeSeries trace_series(const std::string& method, const Options& o, const Eigen::ArrayXd& grid) {
  const DisorderedHamiltonian model = build_anderson(o.sites, o.gamma);
  if (method == "sample") return estimate_trace_x(model, grid, o.samples, o.seed);
  TimeSeries s;
  s.t_grid = grid;
  s.values.resize(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double t = grid(k);
    if (method == "closed2") {
      s.values(k) = x_second_order(t, o.gamma);
    } else if (method == "closed0") {
      s.values(k) = x0_closed(t, o.gamma);
    } else if (method == "diffusive") {
      s.values(k) = x0_closed(t, o.gamma, o.sites);
    } else if (method == "second-order") {
      s.values(k) = second_order_propagator(model, t, o.quad_nodes).trace() / static_cast<double>(o.sites);
    } else {
      throw InvalidInput("unknown method " + method);
    }
  }
  return s;
}

Outcome run_trace_x(const Options& o) {
  Outcome r;
  r.table.grid = uniform_grid(o.t_max, o.t_points);
  for (const auto& m : o.methods) {
    if (m == "stochastic") {
      const DisorderedHamiltonian model = build_anderson(o.sites, o.gamma);
      r.table.columns.push_back(trace_column(m, r.table.grid, [&](double t) {
        return estimate_S_stochastic(model, t, o.n_steps, o.samples, o.seed);
      }));
    } else {
      r.table.columns.push_back(series_column(m, trace_series(m, o, r.table.grid)));
    }
  }
  return r;
}

DosWindow parse_window(const std::string& w) {
  if (w == "hann") return DosWindow::hann;
  if (w == "none") return DosWindow::none;
  return DosWindow::gaussian;
}

Outcome run_dos(const Options& o) {
  Outcome r;
  r.table.key = "omega";
  r.table.complex_values = false;
  const Eigen::ArrayXd grid = uniform_grid(o.t_max, o.t_points);
  for (const auto& m : o.methods) {
    const SpectrumResult dos = dos_from_timeseries(trace_series(m, o, grid), parse_window(o.window), o.width, o.gamma);
    if (r.table.grid.size() == 0) r.table.grid = dos.omega_grid;
    r.table.columns.push_back({m, dos.dos.cast<Complex>(), Eigen::ArrayXd(), Eigen::ArrayXd()});
  }
  return r;
}

Outcome run_sff(const Options& o) {
  Outcome r;
  r.table.grid = uniform_grid(o.t_max, o.t_points);
  const DisorderedHamiltonian model = build_anderson(o.sites, o.gamma);
  for (const auto& m : o.methods) {
    if (m == "sample") {
      r.table.columns.push_back(series_column(m, estimate_sff(model, r.table.grid, o.samples, o.seed)));
    } else if (m == "diffusive") {
      r.table.columns.push_back(
          deterministic_column(m, r.table.grid, [&](double t) { return Complex(sff_diffusive(o.sites, t, o.gamma)); }));
    } else {
      r.table.columns.push_back(deterministic_column(
          m, r.table.grid, [&](double t) { return Complex(std::norm(x0_closed(t, 0.0, o.sites))); }));
    }
  }
  return r;
}

Outcome run_otoc(const Options& o) {
  Outcome r;
  r.table.grid = uniform_grid(o.t_max, o.t_points);
  std::vector<int> ells = o.ells;
  if (ells.empty()) {
    for (int l = 1; l <= o.sites; ++l) ells.push_back(l);
  }
  for (int ell : ells) {
    r.table.columns.push_back(deterministic_column("ell" + std::to_string(ell), r.table.grid,
                                                   [&](double t) { return otoc_diffusive(o.sites, t, o.gamma, ell); }));
  }
  return r;
}

// Reference E_x[e^{itH}] for a single disorder term by Gauss-Hermite quadrature.
OperatorMatrix quadrature_propagator(const DisorderedHamiltonian& model, double t, int nodes) {
  if (model.terms() != 1) throw InvalidInput("quadrature reference needs a single disorder term");
  const QuadratureRule rule = gauss_hermite(nodes);
  OperatorMatrix acc = OperatorMatrix::Zero(model.dim(), model.dim());
  const double norm = std::sqrt(std::acos(-1.0));
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    RealVector x(1);
    x(0) = std::sqrt(2.0) * model.gamma() * rule.nodes(k);
    acc += (rule.weights(k) / norm) * exp_i_hermitian(sample_hamiltonian(model, x), t);
  }
  return acc;
}

Outcome run_propagator(const Options& o) {
  Outcome r;
  r.table.key = "entry";
  const DisorderedHamiltonian model = make_model(o);
  const Eigen::Index dim = model.dim();
  r.table.grid = Eigen::ArrayXd::LinSpaced(dim * dim, 0.0, static_cast<double>(dim * dim - 1));
  auto flatten = [&](const std::string& name, const MatrixEstimate& e) {
    Column c{name, Eigen::ArrayXcd(dim * dim), Eigen::ArrayXd(dim * dim), Eigen::ArrayXd(dim * dim)};
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) {
        c.values(i * dim + j) = e.mean(i, j);
        c.stderr_re(i * dim + j) = e.stderr_re(i, j);
        c.stderr_im(i * dim + j) = e.stderr_im(i, j);
      }
    return c;
  };
  auto exact = [&](const OperatorMatrix& m) {
    return MatrixEstimate{m, Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim), 0, o.seed};
  };
  for (const auto& m : o.methods) {
    if (m == "sample") {
      r.table.columns.push_back(flatten(m, estimate_propagator(model, o.t, o.samples, o.seed)));
    } else if (m == "stochastic") {
      r.table.columns.push_back(flatten(m, estimate_S_stochastic(model, o.t, o.n_steps, o.samples, o.seed)));
    } else if (m == "sde") {
      r.table.columns.push_back(flatten(m, estimate_S_sde(model, o.t, o.n_steps, o.samples, o.seed)));
    } else if (m == "diffusive") {
      r.table.columns.push_back(flatten(m, exact(diffusive_propagator(model, o.t))));
    } else if (m == "second-order") {
      r.table.columns.push_back(flatten(m, exact(second_order_propagator(model, o.t, o.quad_nodes))));
    } else {
      r.table.columns.push_back(flatten(m, exact(quadrature_propagator(model, o.t, o.quad_nodes))));
    }
  }
  r.summary["dim"] = dim;
  r.summary["layout"] = "entry = row * dim + col";
  return r;
}

Outcome run_bridge_check(const Options& o) {
  Outcome r;
  std::vector<int> indices;
  for (int k = 1; k <= 10; ++k) indices.push_back(std::max(1, static_cast<int>(std::lround(k * o.bridge_steps / 11.0))));
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  const auto checks = empirical_bridge_covariance(o.bridge_steps, o.paths, o.seed, indices);
  json entries = json::array();
  double worst = 0.0;
  for (const auto& c : checks) {
    worst = std::max(worst, std::abs(c.z_score()));
    entries.push_back({{"j", c.j}, {"jp", c.jp}, {"empirical", c.empirical}, {"exact", c.exact},
                       {"stderr", c.stderr}, {"z", c.z_score()}});
  }
  json report;
  report["covariance"] = entries;
  report["max_abs_z"] = worst;
  report["threshold_z"] = 4.0;
  if (o.bridge_steps >= 2 && o.bridge_steps <= 512) {
    const PathMatrixReport m = path_matrix_checks(o.bridge_steps);
    report["path_matrix"] = {{"eigenvalue_deviation", m.eigenvalue_deviation},
                             {"determinant_deviation", m.determinant_deviation},
                             {"inverse_deviation", m.inverse_deviation},
                             {"eigenvector_deviation", m.eigenvector_deviation}};
  }
  report["passed"] = worst <= 4.0;
  r.report = report;
  r.exit_code = worst <= 4.0 ? kExitOk : kExitCheckFailed;
  return r;
}

Outcome run_convergence(const Options& o) {
  Outcome r;
  r.table.key = "n";
  r.table.complex_values = false;
  const DisorderedHamiltonian model = make_model(o);
  const OperatorMatrix reference = model.terms() == 1 ? quadrature_propagator(model, o.t, o.quad_nodes)
                                                      : estimate_propagator(model, o.t, o.samples, o.seed + 1).mean;
  const auto count = static_cast<Eigen::Index>(o.step_list.size());
  r.table.grid.resize(count);
  Column bias{"bias", Eigen::ArrayXcd(count), Eigen::ArrayXd(count), Eigen::ArrayXd(count)};
  Column noise{"stderr_norm", Eigen::ArrayXcd(count), Eigen::ArrayXd(), Eigen::ArrayXd()};
  for (Eigen::Index k = 0; k < count; ++k) {
    const int n = o.step_list[static_cast<std::size_t>(k)];
    const MatrixEstimate e = estimate_S_stochastic(model, o.t, n, o.paths, o.seed);
    r.table.grid(k) = n;
    bias.values(k) = (e.mean - reference).norm();
    noise.values(k) = std::hypot(e.stderr_re.norm(), e.stderr_im.norm());
  }
  bias.stderr_re = Eigen::ArrayXd();
  bias.stderr_im = Eigen::ArrayXd();
  // Least-squares slope of -log(bias) against log(n).
  if (count >= 2) {
    const Eigen::ArrayXd x = r.table.grid.log();
    const Eigen::ArrayXd y = bias.values.real().log();
    const double xm = x.mean();
    const double ym = y.mean();
    r.summary["fitted_exponent"] = -((x - xm) * (y - ym)).sum() / (x - xm).square().sum();
  }
  r.table.columns = {bias, noise};
  return r;
}

std::string now_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_table(std::ostream& os, const Table& table) {
  os << table.key;
  for (const auto& c : table.columns) {
    if (table.complex_values) {
      os << ',' << c.name << "_re," << c.name << "_im," << c.name << "_stderr_re," << c.name << "_stderr_im";
    } else {
      os << ',' << c.name;
    }
  }
  os << '\n';
  for (Eigen::Index k = 0; k < table.grid.size(); ++k) {
    os << format_number(table.grid(k));
    for (const auto& c : table.columns) {
      if (table.complex_values) {
        const bool has_err = c.stderr_re.size() == c.values.size();
        os << ',' << format_number(c.values(k).real()) << ',' << format_number(c.values(k).imag()) << ','
           << format_number(has_err ? c.stderr_re(k) : 0.0) << ',' << format_number(has_err ? c.stderr_im(k) : 0.0);
      } else {
        os << ',' << format_number(c.values(k).real());
      }
    }
    os << '\n';
  }
}

json config_json(const std::string& command, const Options& o) {
  json c;
  c["command"] = command;
  c["N"] = o.sites;
  c["gamma"] = o.gamma;
  c["t_max"] = o.t_max;
  c["t_points"] = o.t_points;
  c["samples"] = o.samples;
  c["n_steps"] = o.n_steps;
  c["quad_nodes"] = o.quad_nodes;
  c["seed"] = o.seed;
  c["methods"] = o.methods;
  if (command == "dos") {
    c["window"] = o.window;
    c["width"] = o.width;
  }
  if (command == "otoc") c["ell"] = o.ells;
  if (command == "propagator" || command == "convergence") {
    c["t"] = o.t;
    c["model"] = o.model;
  }
  if (command == "bridge-check" || command == "convergence") c["paths"] = o.paths;
  if (command == "bridge-check") c["n"] = o.bridge_steps;
  if (command == "convergence") c["n_list"] = o.step_list;
  return c;
}

json metadata(const std::string& command, const Options& o) {
  const json config = config_json(command, o);
  json meta;
  meta["tool"] = "disavg";
  meta["version"] = "0.1.0";
  meta["config"] = config;
  meta["seed"] = o.seed;
  meta["input_hash"] = git_blob_sha1(config.dump());
  if (!o.deterministic) meta["created"] = now_utc();
  return meta;
}

void add_model_options(CLI::App* sub, Options& o) {
  sub->add_option("--N", o.sites, "chain length")->check(CLI::Range(2, 100000))->capture_default_str();
  sub->add_option("--gamma", o.gamma, "disorder standard deviation")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

void add_grid_options(CLI::App* sub, Options& o) {
  sub->add_option("--t-max", o.t_max, "last time point")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--t-points", o.t_points, "number of time points")->check(CLI::Range(2, 1 << 24))
      ->capture_default_str();
}

void add_run_options(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
  sub->add_option("--out", o.out, "CSV output path; a .json sidecar is written next to it");
  sub->add_flag("--deterministic", o.deterministic, "omit the timestamp from metadata");
}

using MethodDefaults = std::map<std::string, std::vector<std::string>>;

// Defaults are applied after parsing when --method is absent.
void add_methods(CLI::App* sub, Options& o, MethodDefaults& registry, const std::vector<std::string>& allowed,
                 const std::vector<std::string>& defaults) {
  registry[sub->get_name()] = defaults;
  std::string help = "comma separated methods (default:";
  for (const auto& d : defaults) help += " " + d;
  sub->add_option("--method", o.methods, help + ")")->delimiter(',')->check(CLI::IsMember(allowed));
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string git_blob_sha1(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), header.data(), header.size()) != 1 ||
      EVP_DigestUpdate(ctx.get(), content.data(), content.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw std::runtime_error("SHA-1 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Disorder-averaged quantum dynamics: sampling, stochastic and Dyson-series estimators"};
  app.require_subcommand(1);
  Options o;
  MethodDefaults defaults;

  auto* trace = app.add_subcommand("trace-x", "averaged trace X(t) = (1/N) E[tr e^{itH}] of the Anderson chain");
  add_model_options(trace, o);
  add_grid_options(trace, o);
  add_methods(trace, o, defaults, {"sample", "closed2", "closed0", "diffusive", "second-order", "stochastic"},
              {"sample", "closed2"});
  trace->add_option("--samples", o.samples, "disorder samples or bridge paths")->check(CLI::Range(2L, 1L << 40))
      ->capture_default_str();
  trace->add_option("--n-steps", o.n_steps, "bridge slices")->check(CLI::PositiveNumber)->capture_default_str();
  trace->add_option("--quad-nodes", o.quad_nodes, "Gauss-Legendre nodes")->check(CLI::Range(2, 4096))
      ->capture_default_str();
  add_run_options(trace, o);

  auto* dos = app.add_subcommand("dos", "density of states from the Fourier transform of X(t)");
  add_model_options(dos, o);
  add_grid_options(dos, o);
  add_methods(dos, o, defaults, {"sample", "closed2", "closed0", "diffusive", "second-order"}, {"closed2"});
  dos->add_option("--samples", o.samples, "disorder samples")->check(CLI::Range(2L, 1L << 40))->capture_default_str();
  dos->add_option("--quad-nodes", o.quad_nodes, "Gauss-Legendre nodes")->check(CLI::Range(2, 4096))
      ->capture_default_str();
  dos->add_option("--window", o.window, "time window")->check(CLI::IsMember({"gaussian", "hann", "none"}))
      ->capture_default_str();
  dos->add_option("--width", o.width, "Gaussian smoothing width in energy (0 selects 6/t-max)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_run_options(dos, o);

  auto* sff = app.add_subcommand("sff", "spectral form factor (1/N^2) E[|tr e^{itH}|^2]");
  add_model_options(sff, o);
  add_grid_options(sff, o);
  add_methods(sff, o, defaults, {"sample", "diffusive", "unperturbed"}, {"sample", "diffusive", "unperturbed"});
  sff->add_option("--samples", o.samples, "disorder samples")->check(CLI::Range(2L, 1L << 40))->capture_default_str();
  add_run_options(sff, o);

  auto* otoc = app.add_subcommand("otoc", "diffusive out-of-time-order amplitude");
  add_model_options(otoc, o);
  add_grid_options(otoc, o);
  otoc->add_option("--ell", o.ells, "observation sites, 1-based (default: all)")->delimiter(',');
  add_run_options(otoc, o);

  auto* prop = app.add_subcommand("propagator", "averaged propagator S(t) entry by entry");
  add_model_options(prop, o);
  prop->add_option("--model", o.model, "anderson or two-level")->check(CLI::IsMember({"anderson", "two-level"}))
      ->capture_default_str();
  prop->add_option("--t", o.t, "time")->capture_default_str();
  add_methods(prop, o, defaults, {"sample", "stochastic", "sde", "diffusive", "second-order", "quadrature"},
              {"sample", "stochastic"});
  prop->add_option("--samples", o.samples, "disorder samples or bridge paths")->check(CLI::Range(2L, 1L << 40))
      ->capture_default_str();
  prop->add_option("--n-steps", o.n_steps, "bridge slices")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  prop->add_option("--quad-nodes", o.quad_nodes, "quadrature nodes")->check(CLI::Range(2, 4096))
      ->capture_default_str();
  add_run_options(prop, o);

  auto* bridge = app.add_subcommand("bridge-check", "statistical self-test of the bridge sampler");
  bridge->add_option("--n", o.bridge_steps, "bridge slices")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  bridge->add_option("--paths", o.paths, "sampled paths")->check(CLI::Range(2L, 1L << 40))->capture_default_str();
  add_run_options(bridge, o);

  auto* conv = app.add_subcommand("convergence", "bias of the bridge-product estimator against slice count");
  add_model_options(conv, o);
  conv->add_option("--model", o.model, "anderson or two-level")->check(CLI::IsMember({"anderson", "two-level"}));
  conv->add_option("--t", o.t, "time")->capture_default_str();
  conv->add_option("--n-list", o.step_list, "slice counts")->delimiter(',')->check(CLI::PositiveNumber);
  conv->add_option("--paths", o.paths, "bridge paths per slice count")->check(CLI::Range(2L, 1L << 40))
      ->capture_default_str();
  conv->add_option("--samples", o.samples, "reference samples for multi-term models")
      ->check(CLI::Range(2L, 1L << 40));
  conv->add_option("--quad-nodes", o.quad_nodes, "quadrature nodes")->check(CLI::Range(2, 4096));
  add_run_options(conv, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  if (command == "convergence" && chosen->count("--model") == 0) o.model = "two-level";
  if (o.methods.empty()) {
    const auto it = defaults.find(command);
    if (it != defaults.end()) o.methods = it->second;
  }

  try {
    Outcome result;
    if (command == "trace-x") result = run_trace_x(o);
    else if (command == "dos") result = run_dos(o);
    else if (command == "sff") result = run_sff(o);
    else if (command == "otoc") result = run_otoc(o);
    else if (command == "propagator") result = run_propagator(o);
    else if (command == "bridge-check") result = run_bridge_check(o);
    else result = run_convergence(o);

    json meta = metadata(command, o);
    if (!result.summary.empty()) meta["summary"] = result.summary;

    if (result.report) {
      json doc = meta;
      doc["report"] = *result.report;
      if (o.out.empty()) {
        out << doc.dump(2) << '\n';
      } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw InvalidInput("cannot open " + o.out);
        file << doc.dump(2) << '\n';
      }
      return result.exit_code;
    }

    if (o.out.empty()) {
      write_table(out, result.table);
    } else {
      std::ofstream csv(o.out, std::ios::binary);
      if (!csv) throw InvalidInput("cannot open " + o.out);
      write_table(csv, result.table);
      meta["outputs"] = {{"csv", o.out}};
      std::ofstream sidecar(o.out + ".json", std::ios::binary);
      sidecar << meta.dump(2) << '\n';
    }
    return result.exit_code;
  } catch (const ConvergenceError& e) {
    err << "error: numerical convergence failure in " << command << ": " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace disavg::cli
