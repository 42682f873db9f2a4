#include "cli.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "combed/angle.hpp"
#include "combed/catalog.hpp"
#include "combed/classify.hpp"
#include "combed/disk.hpp"
#include "combed/error.hpp"
#include "combed/io.hpp"
#include "combed/realfilter.hpp"
#include "combed/rescale.hpp"
#include "combed/spectrum.hpp"

namespace combed::cli {

namespace {

constexpr std::size_t default_comb_grid = 2048;
constexpr std::size_t default_eval_grid = 256;
constexpr std::size_t default_fourier_terms = 1024;

struct CommandConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string catalog;
  std::string method;
  std::string base;
  std::optional<std::size_t> n;
  std::optional<std::size_t> grid;
  std::optional<double> eps;
  std::optional<double> rho;
  std::optional<double> tol;
  std::optional<double> theta0;
  std::optional<double> c;
  std::optional<int> order;
  std::vector<double> eps_schedule;
  std::vector<double> rho_schedule;
  std::vector<double> domain;
  std::vector<std::string> params;
};

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::domain, message); }

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

// Checks every numeric option before any computation starts.
void validate(const CommandConfig& cfg) {
  if (cfg.input.empty() == cfg.catalog.empty()) invalid("exactly one of --input and --catalog is required");
  if (cfg.n && *cfg.n < 1) invalid("--n must be >= 1");
  if (cfg.grid && *cfg.grid < 2) invalid("--grid must be >= 2");
  if (cfg.grid && cfg.subcommand == "classify" && *cfg.grid < 16) invalid("--grid must be >= 16 for classify");
  if (cfg.eps && !(*cfg.eps > 0.0 && *cfg.eps <= pi)) invalid("--eps must lie in (0, pi]");
  if (cfg.tol && !(*cfg.tol > 0.0)) invalid("--tol must be positive");
  if (cfg.rho && !(*cfg.rho >= 0.0 && *cfg.rho < 1.0)) invalid("--rho must lie in [0, 1)");
  if (cfg.rho && !cfg.rho_schedule.empty()) invalid("--rho and --rho-schedule are exclusive");
  if (!cfg.eps_schedule.empty()) {
    if (cfg.eps_schedule.size() < 3) invalid("--eps-schedule needs at least 3 entries");
    for (double e : cfg.eps_schedule) {
      if (!(e > 0.0 && e <= pi)) invalid("--eps-schedule entries must lie in (0, pi]");
    }
    if (!strictly_decreasing(cfg.eps_schedule)) invalid("--eps-schedule must be strictly decreasing");
  }
  if (!cfg.rho_schedule.empty()) {
    for (double r : cfg.rho_schedule) {
      if (!(r > 0.0 && r < 1.0)) invalid("--rho-schedule entries must lie in (0, 1)");
    }
    for (std::size_t i = 1; i < cfg.rho_schedule.size(); ++i) {
      if (!(cfg.rho_schedule[i] > cfg.rho_schedule[i - 1])) {
        invalid("--rho-schedule must be strictly increasing");
      }
    }
  }
  if (!cfg.domain.empty() && !(cfg.domain.size() == 2 && cfg.domain[0] < cfg.domain[1])) {
    invalid("--domain must be a,b with a < b");
  }
  if (cfg.theta0 && !(*cfg.theta0 >= -pi && *cfg.theta0 <= pi)) invalid("--theta0 must lie in [-pi, pi]");
  if (!cfg.method.empty()) {
    const bool known = cfg.subcommand == "filter"
                           ? (cfg.method == "kernel" || cfg.method == "multiplier")
                           : (cfg.method == "filter-limit" || cfg.method == "fourier" || cfg.method == "disk");
    if (!known) invalid("unknown --method '" + cfg.method + "'");
  }
}

std::optional<std::array<double, 2>> domain_of(const CommandConfig& cfg) {
  if (cfg.domain.empty()) return std::nullopt;
  return std::array<double, 2>{cfg.domain[0], cfg.domain[1]};
}

Params catalog_params(const CommandConfig& cfg) {
  Params p;
  if (cfg.theta0) p["theta0"] = *cfg.theta0;
  if (cfg.order) p["order"] = *cfg.order;
  if (cfg.c) p["c"] = *cfg.c;
  for (const auto& kv : cfg.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::bad_params, "--param expects key=value, got '" + kv + "'");
    }
    const std::string value = kv.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw Error(ErrorKind::bad_params, "--param value '" + value + "' is not a number");
    }
    p[kv.substr(0, eq)] = v;
  }
  return p;
}

CatalogEntry catalog_entry(const CommandConfig& cfg) {
  Params p = catalog_params(cfg);
  if (cfg.catalog == "spiked" && !cfg.base.empty()) {
    const double point = p.contains("point") ? p.at("point") : 0.0;
    std::optional<double> value;
    if (p.contains("value")) value = p.at("value");
    p.erase("point");
    p.erase("value");
    const CatalogEntry base = make(cfg.base, p);
    if (!base.evaluator) throw Error(ErrorKind::bad_params, "--base entry has no pointwise evaluator");
    return make_spiked(base, point, value ? *value : (*base.evaluator)(point) + 1.0);
  }
  if (!cfg.base.empty()) throw Error(ErrorKind::bad_params, "--base applies to --catalog spiked only");
  return make(cfg.catalog, p);
}

bool looks_like_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

// An input file is either a coefficient JSON or a grid CSV.
struct Input {
  std::optional<CoefficientSequence> coefficients;
  std::optional<GridFunction> grid;
};

Input load_input(const CommandConfig& cfg) {
  const std::string text = read_text_file(cfg.input);
  if (looks_like_json(text)) {
    if (!cfg.domain.empty()) throw Error(ErrorKind::bad_params, "--domain applies to grid inputs");
    return {read_coefficients_json(text), std::nullopt};
  }
  return {std::nullopt, load_grid(cfg.input, domain_of(cfg))};
}

void emit(const CommandConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_text_file(cfg.output, text);
  }
}

void emit_grid(const CommandConfig& cfg, std::ostream& out, GridFunction grid) {
  if (auto d = domain_of(cfg)) grid.set_domain(d);
  if (cfg.output.empty()) {
    out << write_grid_csv(grid);
  } else {
    save_grid(grid, cfg.output);
  }
}

std::vector<double> eps_schedule_of(const CommandConfig& cfg) {
  return cfg.eps_schedule.empty() ? default_eps_schedule() : cfg.eps_schedule;
}

std::vector<double> delta_schedule_of(const CommandConfig& cfg) {
  if (cfg.rho_schedule.empty()) return default_delta_schedule();
  std::vector<double> deltas;
  for (double r : cfg.rho_schedule) deltas.push_back(1.0 - r);
  return deltas;
}

SpectrumOptions spectrum_options(const CommandConfig& cfg) {
  SpectrumOptions options;
  if (cfg.tol) options.tolerance = *cfg.tol;
  return options;
}

int cmd_spectrum(const CommandConfig& cfg, std::ostream& out) {
  const std::size_t n = cfg.n.value_or(default_truncation);
  CoefficientSequence c;
  if (!cfg.catalog.empty()) {
    c = catalog_entry(cfg).coefficients(n);
  } else {
    const Input in = load_input(cfg);
    if (in.coefficients) throw Error(ErrorKind::bad_params, "spectrum expects a grid CSV or --catalog");
    c = compute_coefficients(interpolate(*in.grid), n, spectrum_options(cfg)).coefficients;
  }
  emit(cfg, out, write_coefficients_json(c));
  return exit_ok;
}

int cmd_filter(const CommandConfig& cfg, std::ostream& out) {
  if (!cfg.eps) throw Error(ErrorKind::domain, "filter requires --eps");
  const double eps = *cfg.eps;
  std::optional<CoefficientSequence> c;
  std::optional<GridFunction> grid;
  if (!cfg.catalog.empty()) {
    c = catalog_entry(cfg).coefficients(cfg.n.value_or(default_truncation));
  } else {
    Input in = load_input(cfg);
    c = std::move(in.coefficients);
    grid = std::move(in.grid);
  }
  if (c) {
    if (cfg.method == "kernel") {
      throw Error(ErrorKind::bad_params, "kernel filtering needs a grid input; use --method multiplier");
    }
    emit(cfg, out, write_coefficients_json(multiplier_filter(*c, eps)));
  } else {
    if (cfg.method == "multiplier") {
      throw Error(ErrorKind::bad_params, "multiplier filtering needs coefficients; use --method kernel");
    }
    emit_grid(cfg, out, kernel_filter_grid(*grid, eps));
  }
  return exit_ok;
}

std::string coefficient_report(const CoefficientVerdict& verdict) {
  std::string text = "{\n  \"overall\": \"" + std::string(to_string(verdict.overall)) + "\",\n";
  text += "  \"certificate\": [";
  for (std::size_t i = 0; i < verdict.certificate.size(); ++i) {
    const auto& s = verdict.certificate[i];
    text += i ? ",\n" : "\n";
    text += "    {\"k\": " + std::to_string(s.k) + ", \"eps\": " + format_number(s.eps) +
            ", \"multiplier\": " + format_number(s.multiplier) + "}";
  }
  return text + (verdict.certificate.empty() ? "]" : "\n  ]") + "\n}\n";
}

int cmd_classify(const CommandConfig& cfg, std::ostream& out) {
  const auto schedule = eps_schedule_of(cfg);
  const double tol = cfg.tol.value_or(default_classification_tolerance);
  if (!cfg.catalog.empty()) {
    const CatalogEntry entry = catalog_entry(cfg);
    if (!entry.evaluator) {
      emit(cfg, out, coefficient_report(classify_coefficients(entry.coefficients(cfg.n.value_or(default_truncation)))));
      return exit_ok;
    }
    emit(cfg, out, write_report_json(classify_pointwise(*entry.evaluator, cfg.grid.value_or(64), schedule, tol)));
    return exit_ok;
  }
  const Input in = load_input(cfg);
  if (in.coefficients) {
    emit(cfg, out, coefficient_report(classify_coefficients(*in.coefficients)));
    return exit_ok;
  }
  if (cfg.grid && *cfg.grid != in.grid->size()) {
    throw Error(ErrorKind::bad_params, "--grid must match the node count of the input grid");
  }
  emit(cfg, out, write_report_json(classify_pointwise(*in.grid, schedule, tol)));
  return exit_ok;
}

int cmd_comb(const CommandConfig& cfg, std::ostream& out) {
  const std::string method = cfg.method.empty() ? "filter-limit" : cfg.method;
  std::optional<EvaluatorFunction> f;
  std::optional<CoefficientSequence> c;
  std::size_t n_grid = cfg.grid.value_or(default_comb_grid);
  if (!cfg.catalog.empty()) {
    const CatalogEntry entry = catalog_entry(cfg);
    f = entry.evaluator;
    if (method == "disk") c = entry.coefficients(cfg.n.value_or(default_truncation));
  } else {
    Input in = load_input(cfg);
    c = std::move(in.coefficients);
    if (in.grid) {
      if (!cfg.grid) n_grid = in.grid->size();
      f = interpolate(*in.grid);
    }
  }
  if (method == "disk") {
    if (!c) c = compute_coefficients(*f, cfg.n.value_or(default_truncation), spectrum_options(cfg)).coefficients;
    emit_grid(cfg, out, comb_by_disk(*c, n_grid, delta_schedule_of(cfg)));
    return exit_ok;
  }
  if (!f) throw Error(ErrorKind::bad_params, "method '" + method + "' needs a pointwise input (grid or catalog)");
  if (method == "fourier") {
    FourierCombOptions options;
    if (cfg.tol) options.tolerance = *cfg.tol;
    const FourierComb result = comb_by_fourier(*f, cfg.n.value_or(default_fourier_terms), n_grid, options);
    emit_grid(cfg, out, result.grid);
    return exit_ok;
  }
  emit_grid(cfg, out, comb_by_filter_limit(*f, n_grid, eps_schedule_of(cfg)));
  return exit_ok;
}

int cmd_eval(const CommandConfig& cfg, std::ostream& out) {
  CoefficientSequence c;
  if (!cfg.catalog.empty()) {
    c = catalog_entry(cfg).coefficients(cfg.n.value_or(default_truncation));
  } else {
    const Input in = load_input(cfg);
    if (!in.coefficients) throw Error(ErrorKind::bad_params, "eval expects a coefficient JSON or --catalog");
    c = *in.coefficients;
  }
  const std::size_t n_grid = cfg.grid.value_or(default_eval_grid);
  if (!cfg.rho) {
    GridFunction grid = comb_by_disk(c, n_grid, delta_schedule_of(cfg));
    grid.set_note("boundary value");
    emit_grid(cfg, out, std::move(grid));
    return exit_ok;
  }
  const auto w = InnerAnalyticFunction::from_sequence(c);
  std::vector<double> values(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double theta = -pi + two_pi * static_cast<double>(i) / static_cast<double>(n_grid);
    values[i] = c.a0() + eval(w, {*cfg.rho, theta}).real();
  }
  std::ostringstream note;
  note << "disk restriction rho=" << format_number(*cfg.rho);
  emit_grid(cfg, out, GridFunction(std::move(values), std::vector<bool>(n_grid, true), {}, note.str()));
  return exit_ok;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_integrable_input:
    case ErrorKind::quadrature_failure:
    case ErrorKind::no_convergence:
    case ErrorKind::divergence_detected:
    case ErrorKind::undefined_here:
      return exit_numeric;
    default:
      return exit_usage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combed generalized functions on the unit circle", "combed"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  CommandConfig cfg;

  const auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Grid CSV (with optional <csv>.json sidecar) or coefficient JSON");
    sub->add_option("--catalog", cfg.catalog, "Built-in entry name");
    sub->add_option("--theta0", cfg.theta0, "Catalog parameter theta0");
    sub->add_option("--order", cfg.order, "Catalog parameter order (delta_derivative)");
    sub->add_option("--c", cfg.c, "Catalog parameter c (constant)");
    sub->add_option("--param", cfg.params, "Catalog parameter key=value (repeatable)");
    sub->add_option("--base", cfg.base, "Base entry for --catalog spiked");
    sub->add_option("--output", cfg.output, "Output path (stdout when omitted)");
    sub->add_option("--domain", cfg.domain, "Physical interval a,b for grids")->delimiter(',')->expected(2);
  };

  auto* spectrum = app.add_subcommand("spectrum", "Fourier coefficients of a grid or catalog entry");
  add_input(spectrum);
  spectrum->add_option("--n", cfg.n, "Truncation order N");
  spectrum->add_option("--tol", cfg.tol, "Quadrature tolerance");

  auto* filter = app.add_subcommand("filter", "First-order low-pass filter");
  add_input(filter);
  filter->add_option("--eps", cfg.eps, "Filter half-width in (0, pi]");
  filter->add_option("--method", cfg.method, "kernel | multiplier");
  filter->add_option("--n", cfg.n, "Truncation order for catalog input");

  auto* classify = app.add_subcommand("classify", "Combed/ragged classification report");
  add_input(classify);
  classify->add_option("--eps-schedule", cfg.eps_schedule, "Comma list of decreasing eps")->delimiter(',');
  classify->add_option("--tol", cfg.tol, "Classification tolerance");
  classify->add_option("--grid", cfg.grid, "Node count for catalog input");
  classify->add_option("--n", cfg.n, "Truncation order for coefficient certificates");

  auto* comb = app.add_subcommand("comb", "Combed representative on a grid");
  add_input(comb);
  comb->add_option("--method", cfg.method, "filter-limit | fourier | disk");
  comb->add_option("--grid", cfg.grid, "Output node count");
  comb->add_option("--n", cfg.n, "Series truncation (fourier, disk)");
  comb->add_option("--eps-schedule", cfg.eps_schedule, "Comma list of decreasing eps")->delimiter(',');
  comb->add_option("--rho-schedule", cfg.rho_schedule, "Comma list of increasing rho (disk)")->delimiter(',');
  comb->add_option("--tol", cfg.tol, "Fourier convergence tolerance");

  auto* evaluate = app.add_subcommand("eval", "Evaluate a coefficient set on the circle or inside the disk");
  add_input(evaluate);
  evaluate->add_option("--rho", cfg.rho, "Radius in [0, 1) for the disk restriction");
  evaluate->add_option("--rho-schedule", cfg.rho_schedule, "Comma list of increasing rho for the boundary limit")
      ->delimiter(',');
  evaluate->add_option("--grid", cfg.grid, "Output node count");
  evaluate->add_option("--n", cfg.n, "Truncation order for catalog input");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  for (auto* sub : {spectrum, filter, classify, comb, evaluate}) {
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  }

  try {
    validate(cfg);
    if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.subcommand == "filter") return cmd_filter(cfg, out);
    if (cfg.subcommand == "classify") return cmd_classify(cfg, out);
    if (cfg.subcommand == "comb") return cmd_comb(cfg, out);
    return cmd_eval(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace combed::cli
