#include "kinkfield/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "kinkfield/background.hpp"
#include "kinkfield/errors.hpp"
#include "kinkfield/observables.hpp"
#include "kinkfield/residuals.hpp"
#include "kinkfield/serialize.hpp"
#include "kinkfield/stability.hpp"

namespace kinkfield::cli {
namespace {

json echo(const RunConfig& c, const ModelParams& p, const std::string& command) {
  return {{"command", command},
          {"kappa", c.kappa},
          {"lambda", c.lambda},
          {"C", c.C},
          {"x1", c.x1},
          {"x_min", c.x_min.value_or(c.x1 - 10.0 / p.b())},
          {"x_max", c.x_max.value_or(c.x1 + 10.0 / p.b())},
          {"n", c.n},
          {"fd_order", c.fd_order},
          {"tol", c.tol},
          {"t_span", c.t_span},
          {"dt", c.dt},
          {"epsilon", c.epsilon},
          {"probes", c.probes},
          {"format", c.format}};
}

void load_config_file(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw DomainError("--config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError("--config: " + std::string(e.what()));
  }
  try {
    if (j.contains("kappa")) c.kappa = j["kappa"].get<double>();
    if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
    if (j.contains("C")) c.C = j["C"].get<double>();
    if (j.contains("x1")) c.x1 = j["x1"].get<double>();
    if (j.contains("x_min")) c.x_min = j["x_min"].get<double>();
    if (j.contains("x_max")) c.x_max = j["x_max"].get<double>();
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("fd_order")) c.fd_order = j["fd_order"].get<int>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("t_span")) c.t_span = j["t_span"].get<double>();
    if (j.contains("dt")) c.dt = j["dt"].get<double>();
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (j.contains("probes")) c.probes = j["probes"].get<std::vector<double>>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
  } catch (const json::exception& e) {
    throw DomainError("--config: " + std::string(e.what()));
  }
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("--out: cannot write '" + tmp.string() + "'");
    f << content;
    if (!f.flush()) throw DomainError("--out: write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Context {
  RunConfig config;
  ModelParams params;
  std::string command;

  double x_min() const { return config.x_min.value_or(config.x1 - 10.0 / params.b()); }
  double x_max() const { return config.x_max.value_or(config.x1 + 10.0 / params.b()); }
  bool csv(const std::string& fallback) const {
    return (config.format.empty() ? fallback : config.format) == "csv";
  }
};

int cmd_profile(const Context& ctx, std::ostream& out) {
  const auto profile = sample_profile(ctx.params, ctx.x_min(), ctx.x_max(), ctx.config.n);
  if (ctx.csv("csv")) {
    write_profile_csv(out, profile);
  } else {
    out << dump({{"config", echo(ctx.config, ctx.params, ctx.command)},
                 {"profile", to_json(profile)}});
  }
  return kSuccess;
}

int cmd_verify(const Context& ctx, std::ostream& out) {
  const auto report = verify(ctx.params, ctx.x_min(), ctx.x_max(), ctx.config.n,
                             ctx.config.fd_order, ctx.config.tol);
  if (ctx.csv("json")) {
    write_residual_csv(out, report);
  } else {
    json j = {{"config", echo(ctx.config, ctx.params, ctx.command)}};
    const json body = to_json(report);
    for (const auto& [key, value] : body.items()) j[key] = value;
    out << dump(j);
  }
  return report.pass ? kSuccess : kInternalError;
}

int cmd_energy(const Context& ctx, std::ostream& out) {
  if (ctx.csv("json")) {
    write_density_csv(out, sample_profile(ctx.params, ctx.x_min(), ctx.x_max(), ctx.config.n));
    return kSuccess;
  }
  const auto report = total_energy(ctx.params, ctx.config.tol);
  out << dump({{"config", echo(ctx.config, ctx.params, ctx.command)},
               {"energy", to_json(report)}});
  return kSuccess;
}

int cmd_charge(const Context& ctx, std::ostream& out) {
  if (ctx.csv("json")) {
    write_density_csv(out, sample_profile(ctx.params, ctx.x_min(), ctx.x_max(), ctx.config.n));
    return kSuccess;
  }
  const auto total = total_charge(ctx.params, ctx.config.tol);
  if (!total.converged) throw QuadratureError("total charge quadrature did not converge");
  const auto left = half_charge(ctx.params, HalfLine::Left, ctx.config.tol);
  const auto right = half_charge(ctx.params, HalfLine::Right, ctx.config.tol);
  const double cancellation =
      std::abs(left.value + right.value) / std::max(std::abs(left.value), std::abs(right.value));
  out << dump({{"config", echo(ctx.config, ctx.params, ctx.command)},
               {"charge",
                {{"total", to_json(total)},
                 {"half_left", to_json(left)},
                 {"half_right", to_json(right)},
                 {"half_cancellation", cancellation}}}});
  return kSuccess;
}

int cmd_witness(const Context& ctx, std::ostream& out) {
  const auto w = indefiniteness_witness(ctx.params, ctx.config.n);
  if (ctx.csv("json")) {
    out << "x,xi_plus,a1_minus\n";
    char line[96];
    for (std::size_t i = 0; i < w.pert_plus.grid.size(); ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", w.pert_plus.grid[i],
                    w.pert_plus.xi[i], w.pert_minus.a1[i]);
      out << line;
    }
  } else {
    out << dump({{"config", echo(ctx.config, ctx.params, ctx.command)},
                 {"witness", to_json(w)}});
  }
  return kSuccess;
}

int cmd_growth(const Context& ctx, std::ostream& out) {
  if (ctx.config.probes.empty()) throw DomainError("--probe: at least one probe location needed");
  auto initial = Perturbation::zeros(ctx.config.probes);
  for (double& a : initial.a1) a = ctx.config.epsilon;
  EvolutionOptions options;
  options.t_span = ctx.config.t_span;
  options.dt = ctx.config.dt;
  const auto evolution = evolve_a1(ctx.params, initial, options);

  if (ctx.csv("json")) {
    write_evolution_csv(out, evolution);
    return kSuccess;
  }
  json fits = json::array();
  for (std::size_t j = 0; j < evolution.x.size(); ++j) {
    auto fit = to_json(growth_rate(evolution.t, evolution.a1[j], evolution.x[j], ctx.params));
    fit["overflowed"] = static_cast<bool>(evolution.overflowed[j]);
    fits.push_back(fit);
  }
  out << dump({{"config", echo(ctx.config, ctx.params, ctx.command)}, {"growth", fits}});
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact kink solution of the Einstein-Maxwell-scalar system: verification, "
               "observables and linear stability",
               "kinkfield"};
  app.require_subcommand(1, 1);

  RunConfig flags;
  std::string config_path;
  std::string out_path;
  double x_min = 0.0;
  double x_max = 0.0;

  auto opt = [&](const std::string& name, auto& target, const std::string& help) {
    return app.add_option(name, target, help);
  };
  opt("--kappa", flags.kappa, "Einstein gravitational constant (>= 0, 0 = flat)");
  opt("--lambda", flags.lambda, "selfcoupling (> kappa/2)");
  opt("--C", flags.C, "scalar charge (nonzero)");
  opt("--x1", flags.x1, "kink center");
  opt("--x-min", x_min, "grid start (default x1 - 10/b)");
  opt("--x-max", x_max, "grid end (default x1 + 10/b)");
  opt("--n", flags.n, "grid points")->check(CLI::Range(3, 100000000));
  opt("--fd-order", flags.fd_order, "finite-difference accuracy order (even)");
  opt("--tol", flags.tol, "tolerance")->check(CLI::PositiveNumber);
  opt("--t-span", flags.t_span, "stability evolution time span");
  opt("--dt", flags.dt, "stability time step");
  opt("--epsilon", flags.epsilon, "initial a1 amplitude for growth runs");
  opt("--probe", flags.probes, "probe x locations for growth runs")->expected(1, -1);
  opt("--format", flags.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", config_path, "JSON RunConfig; explicit flags override it");
  app.add_option("--out", out_path, "write output to this path instead of stdout");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"profile", "sample the background solution"},
      {"verify", "finite-difference residuals of all field equations and first integrals"},
      {"energy", "total field energy by two quadrature routes and the closed form"},
      {"charge", "total and half-line charges"},
      {"stability-witness", "sign-indefiniteness witness of the second variation (kappa = 0)"},
      {"stability-growth", "exponential growth of the a1 mode at probe points"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }

  try {
    Context ctx{};
    ctx.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) load_config_file(config_path, ctx.config);

    // Explicit flags override the config file.
    auto set = [&](const char* name, auto& target, const auto& value) {
      if (app.get_option(name)->count() > 0) target = value;
    };
    set("--kappa", ctx.config.kappa, flags.kappa);
    set("--lambda", ctx.config.lambda, flags.lambda);
    set("--C", ctx.config.C, flags.C);
    set("--x1", ctx.config.x1, flags.x1);
    if (app.get_option("--x-min")->count() > 0) ctx.config.x_min = x_min;
    if (app.get_option("--x-max")->count() > 0) ctx.config.x_max = x_max;
    set("--n", ctx.config.n, flags.n);
    set("--fd-order", ctx.config.fd_order, flags.fd_order);
    set("--tol", ctx.config.tol, flags.tol);
    set("--t-span", ctx.config.t_span, flags.t_span);
    set("--dt", ctx.config.dt, flags.dt);
    set("--epsilon", ctx.config.epsilon, flags.epsilon);
    set("--probe", ctx.config.probes, flags.probes);
    set("--format", ctx.config.format, flags.format);
    if (!ctx.config.format.empty() && ctx.config.format != "csv" && ctx.config.format != "json") {
      throw DomainError("--format: expected csv or json");
    }

    ctx.params = derive_params(ctx.config.kappa, ctx.config.lambda, ctx.config.C, ctx.config.x1);

    std::ostringstream buffer;
    int code = kSuccess;
    const auto& cmd = ctx.command;
    if (cmd == "profile") code = cmd_profile(ctx, buffer);
    else if (cmd == "verify") code = cmd_verify(ctx, buffer);
    else if (cmd == "energy") code = cmd_energy(ctx, buffer);
    else if (cmd == "charge") code = cmd_charge(ctx, buffer);
    else if (cmd == "stability-witness") code = cmd_witness(ctx, buffer);
    else code = cmd_growth(ctx, buffer);

    if (out_path.empty()) {
      out << buffer.str();
    } else {
      write_atomically(out_path, buffer.str());
    }
    return code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const QuadratureError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const FitError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace kinkfield::cli
