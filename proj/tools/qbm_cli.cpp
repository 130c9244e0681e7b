// qbm: MSD of a charged quantum Brownian particle in a magnetic field.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbm/analysis.hpp"
#include "qbm/error.hpp"
#include "qbm/figures.hpp"
#include "qbm/io.hpp"
#include "qbm/selftest.hpp"
#include "qbm/series.hpp"
#include "qbm/simulate.hpp"

namespace {

using namespace qbm;

enum Exit { kOk = 0, kSelftestFail = 1, kConfigError = 2, kConvergence = 3, kFlip = 4 };

struct ParamOptions {
  std::string kernel = "ohmic";
  double tau = 0.1;
  double gamma = 1.0;
  std::optional<double> omega_c;
  std::optional<double> omega_th;
  double mass = 1.0;
  double hbar = 1.0;
  std::optional<double> charge;
  std::optional<double> field;
  std::optional<double> temperature;
  double light_speed = 1.0;
  double k_boltzmann = 1.0;
};

struct GridOptions {
  std::optional<double> t_start;
  double t_end = 10.0;
  std::size_t n_points = 256;
  std::string spacing = "linear";
};

struct QuadOptions {
  std::string mode = "full";
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::size_t max_subdivisions = 5000;
};

struct OutputOptions {
  std::string path = "-";
  std::string format = "csv";
};

void add_params(CLI::App* app, ParamOptions& o) {
  app->add_option("--kernel", o.kernel, "Memory kernel: ohmic or srt")->capture_default_str();
  app->add_option("--tau", o.tau, "Relaxation time of the srt kernel")->capture_default_str();
  app->add_option("--gamma", o.gamma, "Friction rate")->capture_default_str();
  app->add_option("--omega-c", o.omega_c, "Cyclotron frequency (default 0)");
  app->add_option("--omega-th", o.omega_th, "Thermal frequency 2 k_B T / hbar (default 1)");
  app->add_option("--mass", o.mass)->capture_default_str();
  app->add_option("--hbar", o.hbar)->capture_default_str();
  auto* g = app->add_option_group("physical", "Derive omega_c = qB/(mc) and Omega_th = 2kT/hbar");
  g->add_option("--charge", o.charge);
  g->add_option("--field", o.field);
  g->add_option("--temperature", o.temperature);
  g->add_option("--light-speed", o.light_speed)->capture_default_str();
  g->add_option("--k-boltzmann", o.k_boltzmann)->capture_default_str();
}

void add_grid(CLI::App* app, GridOptions& o) {
  app->add_option("--t-start", o.t_start, "First time (default 0; 0.01 for low_t)");
  app->add_option("--t-end", o.t_end)->capture_default_str();
  app->add_option("--n-points", o.n_points)->capture_default_str();
  app->add_option("--spacing", o.spacing, "linear or log")->capture_default_str();
}

void add_quad(CLI::App* app, QuadOptions& o) {
  app->add_option("--mode", o.mode, "Thermal weight for quadrature: full, high_t, low_t")
      ->capture_default_str();
  app->add_option("--rel-tol", o.rel_tol)->capture_default_str();
  app->add_option("--abs-tol", o.abs_tol)->capture_default_str();
  app->add_option("--max-subdivisions", o.max_subdivisions)->capture_default_str();
}

void add_output(CLI::App* app, OutputOptions& o) {
  app->add_option("-o,--output", o.path, "Output file, - for stdout")->capture_default_str();
  app->add_option("--format", o.format, "csv or json")->capture_default_str();
}

ReducedParams resolve_params(const ParamOptions& o) {
  const bool physical = o.charge || o.field || o.temperature;
  if (physical && (o.omega_c || o.omega_th)) {
    throw ConfigError("give either --omega-c/--omega-th or --charge/--field/--temperature");
  }
  try {
    if (physical) {
      PhysicalInputs in;
      in.charge = o.charge.value_or(0.0);
      in.field = o.field.value_or(0.0);
      in.temperature = o.temperature.value_or(0.0);
      in.mass = o.mass;
      in.light_speed = o.light_speed;
      in.hbar = o.hbar;
      in.k_boltzmann = o.k_boltzmann;
      in.gamma = o.gamma;
      return derive_reduced(in);
    }
    return ReducedParams(o.gamma, o.omega_c.value_or(0.0), o.omega_th.value_or(1.0), o.mass,
                         o.hbar);
  } catch (const InvariantError& e) {
    throw ConfigError(e.what());
  }
}

KernelModel resolve_kernel(const ParamOptions& o) {
  try {
    if (o.kernel == "ohmic") return make_ohmic(o.gamma);
    if (o.kernel == "srt") return make_single_relaxation(o.gamma, o.tau);
  } catch (const InvariantError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown kernel '" + o.kernel + "' (expected ohmic or srt)");
}

std::vector<double> resolve_grid(const GridOptions& g, double t_start) {
  if (g.spacing == "linear") return linear_grid(t_start, g.t_end, g.n_points);
  if (g.spacing == "log") return log_grid(t_start, g.t_end, g.n_points);
  throw ConfigError("unknown spacing '" + g.spacing + "' (expected linear or log)");
}

std::string quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t'\"\\$") == std::string::npos) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

// Command line that reproduces the resolved run.
std::string rerun_line(const std::string& sub, const ParamsEcho& flags) {
  std::string cmd = "qbm " + sub;
  for (const auto& [k, v] : flags) cmd += " --" + k + " " + quote(v);
  return cmd;
}

std::string flag_name(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

// Flattens a JSON config into "--key value" arguments. Nested objects are
// merged; output.path maps to --output.
void json_to_args(const nlohmann::json& j, const std::string& parent,
                  std::vector<std::string>& args) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      json_to_args(value, key, args);
      continue;
    }
    std::string name = key;
    if (parent == "output" && key == "path") name = "output";
    if (parent == "kernel" && key == "type") name = "kernel";
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number_integer()) {
      text = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      text = format_double(value.get<double>());
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) text += ',';
        text += value[i].is_number() ? format_double(value[i].get<double>())
                                     : value[i].get<std::string>();
      }
    } else {
      throw ConfigError("config key '" + key + "' has an unsupported type");
    }
    args.push_back("--" + flag_name(name));
    args.push_back(text);
  }
}

// Config file values go first so command-line flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> in(argv + 1, argv + argc);
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == "--config") {
      if (i + 1 >= in.size()) throw ConfigError("--config needs a file");
      path = in[++i];
    } else if (in[i].rfind("--config=", 0) == 0) {
      path = in[i].substr(9);
    } else {
      rest.push_back(in[i]);
    }
  }
  if (!path) return rest;
  std::ifstream f(*path);
  if (!f) throw ConfigError("cannot read config '" + *path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + *path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config '" + *path + "' must hold a JSON object");
  if (rest.empty()) throw ConfigError("a subcommand is required");
  std::vector<std::string> out{rest.front()};
  json_to_args(j, "", out);
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

ParamsEcho param_flags(const SeriesRequest& rq, const ParamOptions& o) {
  ParamsEcho f{{"route", to_string(rq.route)}, {"kernel", o.kernel}};
  if (o.kernel == "srt") f.emplace_back("tau", format_double(o.tau));
  f.emplace_back("gamma", format_double(rq.params.gamma()));
  f.emplace_back("omega-c", format_double(rq.params.omega_c()));
  f.emplace_back("omega-th", format_double(rq.params.omega_th()));
  f.emplace_back("mass", format_double(rq.params.mass()));
  f.emplace_back("hbar", format_double(rq.params.hbar()));
  if (rq.route == Route::quadrature) f.emplace_back("mode", to_string(rq.mode));
  if (rq.route == Route::quadrature || rq.route == Route::exact) {
    f.emplace_back("rel-tol", format_double(rq.settings.rel_tol));
    f.emplace_back("abs-tol", format_double(rq.settings.abs_tol));
    f.emplace_back("max-subdivisions", std::to_string(rq.settings.max_subdivisions));
  }
  return f;
}

SeriesRequest build_request(const std::string& route, const ParamOptions& p, const QuadOptions& q) {
  SeriesRequest rq;
  rq.route = parse_route(route);
  rq.params = resolve_params(p);
  rq.kernel = resolve_kernel(p);
  rq.mode = parse_temperature_mode(q.mode);
  rq.settings = {q.rel_tol, q.abs_tol, q.max_subdivisions};
  return rq;
}

int run_compute(const std::string& route, const ParamOptions& p, const QuadOptions& q,
                const GridOptions& g, const OutputOptions& out) {
  const auto format = parse_format(out.format);
  const auto rq = build_request(route, p, q);
  if (rq.route == Route::simulate) throw ConfigError("use the simulate subcommand");
  const double t_start = g.t_start.value_or(rq.route == Route::low_t ? 0.01 : 0.0);
  const auto times = resolve_grid(g, t_start);
  auto s = evaluate_series(rq, times);
  s.params_echo.emplace_back("t_start", format_double(t_start));
  s.params_echo.emplace_back("t_end", format_double(g.t_end));
  s.params_echo.emplace_back("n_points", std::to_string(g.n_points));
  s.params_echo.emplace_back("spacing", g.spacing);
  auto flags = param_flags(rq, p);
  flags.emplace_back("t-start", format_double(t_start));
  flags.emplace_back("t-end", format_double(g.t_end));
  flags.emplace_back("n-points", std::to_string(g.n_points));
  flags.emplace_back("spacing", g.spacing);
  flags.emplace_back("format", out.format);
  flags.emplace_back("output", out.path);
  s.params_echo.emplace_back("command", rerun_line("compute", flags));
  write_series(out.path, format, s);
  return kOk;
}

int run_figure(int id, const OutputOptions& out) {
  const auto format = parse_format(out.format);
  auto s = figure_series(id);
  s.params_echo.emplace_back(
      "command", rerun_line("figure " + std::to_string(id),
                            {{"format", out.format}, {"output", out.path}}));
  write_series(out.path, format, s);
  return kOk;
}

std::vector<double> parse_grid_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad omega_c grid value '" + item + "'");
    }
  }
  return out;
}

struct SweepOptions {
  std::string route = "high_t";
  std::string grid;
  double grid_start = 0.05;
  double grid_end = 20.0;
  std::size_t grid_n = 16;
  std::string grid_spacing = "log";
  double prominence = kDefaultProminence;
};

int run_sweep(const SweepOptions& sw, const ParamOptions& p, const QuadOptions& q,
              const GridOptions& g, const OutputOptions& out) {
  auto rq = build_request(sw.route, p, q);
  const double t_start = g.t_start.value_or(rq.route == Route::low_t ? 0.01 : 0.0);
  std::vector<double> grid;
  if (!sw.grid.empty()) {
    grid = parse_grid_list(sw.grid);
  } else if (sw.grid_n == 1) {
    grid = {sw.grid_start};
  } else if (sw.grid_spacing == "log") {
    grid = log_grid(sw.grid_start, sw.grid_end, sw.grid_n);
  } else if (sw.grid_spacing == "linear") {
    grid = linear_grid(sw.grid_start, sw.grid_end, sw.grid_n);
  } else {
    throw ConfigError("unknown grid spacing '" + sw.grid_spacing + "'");
  }
  if (grid.empty()) throw ConfigError("empty omega_c grid");
  if (!(sw.prominence > 0.0)) throw ConfigError("prominence must be > 0");

  const auto scan = scan_transition(rq, grid, t_start, g.t_end, g.n_points, sw.prominence);

  std::ostringstream os;
  auto echo = describe_request(rq);
  echo.erase(std::remove_if(echo.begin(), echo.end(),
                            [](const auto& kv) { return kv.first == "omega_c"; }),
             echo.end());
  for (const auto& [k, v] : echo) os << "# " << k << '=' << v << '\n';
  os << "# t_start=" << format_double(t_start) << '\n';
  os << "# t_end=" << format_double(g.t_end) << '\n';
  os << "# n_points=" << g.n_points << '\n';
  os << "# prominence=" << format_double(sw.prominence) << '\n';
  std::string grid_text;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) grid_text += ',';
    grid_text += format_double(grid[i]);
  }
  auto flags = param_flags(rq, p);
  flags.erase(std::remove_if(flags.begin(), flags.end(),
                             [](const auto& kv) { return kv.first == "omega-c"; }),
              flags.end());
  flags.emplace_back("grid", grid_text);
  flags.emplace_back("prominence", format_double(sw.prominence));
  flags.emplace_back("t-start", format_double(t_start));
  flags.emplace_back("t-end", format_double(g.t_end));
  flags.emplace_back("n-points", std::to_string(g.n_points));
  flags.emplace_back("output", out.path);
  os << "# command=" << rerun_line("sweep", flags) << '\n';
  os << "omega_c,verdict,n_maxima,first_max_time\n";
  bool monotonic_before = false;
  for (const auto& pt : scan.points) {
    os << format_value(pt.omega_c) << ',' << to_string(pt.classification.verdict) << ','
       << pt.classification.n_local_maxima << ',';
    if (pt.classification.first_max_time) os << format_value(*pt.classification.first_max_time);
    os << '\n';
    if (pt.classification.verdict == Verdict::monotonic) monotonic_before = true;
  }
  if (scan.transition && monotonic_before) {
    os << "# flip omega_c=" << format_value(*scan.transition) << '\n';
  }
  if (out.path == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + out.path + "' for writing");
    f << os.str();
  }
  return kOk;
}

struct SimOptions {
  std::optional<double> dt;
  double t_end = 20.0;
  std::size_t n_particles = 1000;
  std::uint64_t seed = 1;
  std::size_t n_records = 201;
  std::optional<double> vx0;
  std::optional<double> vy0;
};

int run_simulate(const SimOptions& so, const ParamOptions& p, const OutputOptions& out) {
  const auto format = parse_format(out.format);
  if (p.kernel != "ohmic") throw ConfigError("the simulator supports the ohmic kernel only");
  SimConfig cfg;
  cfg.params = resolve_params(p);
  cfg.dt = so.dt.value_or(0.01 / std::max(cfg.params.gamma(), cfg.params.omega_c()));
  if (!(cfg.dt > 0.0) || !(so.t_end > 0.0)) throw ConfigError("dt and t_end must be > 0");
  cfg.n_steps = static_cast<std::size_t>(std::llround(so.t_end / cfg.dt));
  cfg.n_particles = so.n_particles;
  cfg.seed = so.seed;
  if (so.n_records < 2) throw ConfigError("n_records must be >= 2");
  cfg.record_stride = std::max<std::size_t>(1, cfg.n_steps / (so.n_records - 1));
  if (so.vx0 || so.vy0) cfg.initial_velocity = Vec2{so.vx0.value_or(0.0), so.vy0.value_or(0.0)};
  const auto stats = run_ensemble(cfg);

  MsdSeries s;
  s.route = Route::simulate;
  s.times = stats.times;
  s.values = stats.msd_mean;
  s.flags.assign(s.times.size(), PointFlag::none);
  s.params_echo = {{"route", "simulate"},
                   {"kernel", "ohmic"},
                   {"gamma", format_double(cfg.params.gamma())},
                   {"omega_c", format_double(cfg.params.omega_c())},
                   {"omega_th", format_double(cfg.params.omega_th())},
                   {"mass", format_double(cfg.params.mass())},
                   {"hbar", format_double(cfg.params.hbar())},
                   {"dt", format_double(cfg.dt)},
                   {"n_steps", std::to_string(cfg.n_steps)},
                   {"record_stride", std::to_string(cfg.record_stride)},
                   {"n_particles", std::to_string(cfg.n_particles)},
                   {"seed", std::to_string(cfg.seed)}};
  ParamsEcho flags{{"gamma", format_double(cfg.params.gamma())},
                  {"omega-c", format_double(cfg.params.omega_c())},
                  {"omega-th", format_double(cfg.params.omega_th())},
                  {"mass", format_double(cfg.params.mass())},
                  {"hbar", format_double(cfg.params.hbar())},
                  {"dt", format_double(cfg.dt)},
                  {"t-end", format_double(so.t_end)},
                  {"n-particles", std::to_string(cfg.n_particles)},
                  {"seed", std::to_string(cfg.seed)},
                  {"n-records", std::to_string(so.n_records)}};
  if (cfg.initial_velocity) {
    s.params_echo.emplace_back("vx0", format_double((*cfg.initial_velocity)[0]));
    s.params_echo.emplace_back("vy0", format_double((*cfg.initial_velocity)[1]));
    flags.emplace_back("vx0", format_double((*cfg.initial_velocity)[0]));
    flags.emplace_back("vy0", format_double((*cfg.initial_velocity)[1]));
  }
  flags.emplace_back("format", out.format);
  flags.emplace_back("output", out.path);
  s.params_echo.emplace_back("command", rerun_line("simulate", flags));
  write_series(out.path, format, s);
  return kOk;
}

int run_selftest_cmd(const std::string& fault) {
  SelftestHooks hooks;
  if (fault == "lerch") {
    hooks = faulty_lerch_hooks();
  } else if (!fault.empty()) {
    throw ConfigError("unknown fault '" + fault + "'");
  }
  const auto report = run_selftest(hooks);
  std::cout << report.text();
  return report.passed() ? kOk : kSelftestFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-square displacement of a charged quantum Brownian particle in a magnetic field"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "qbm 1.0.0");

  ParamOptions params;
  GridOptions grid;
  QuadOptions quad;
  OutputOptions output;

  std::string route = "exact";
  auto* compute = app.add_subcommand("compute", "Compute one MSD series");
  compute->add_option("--route", route, "exact, quadrature, high_t or low_t")
      ->capture_default_str();
  add_params(compute, params);
  add_quad(compute, quad);
  add_grid(compute, grid);
  add_output(compute, output);

  int figure_id = 0;
  auto* figure = app.add_subcommand("figure", "Emit the data of one figure (1..8)");
  figure->add_option("id", figure_id, "Figure number")->required();
  add_output(figure, output);

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Classify the MSD along an omega_c grid");
  sweep->add_option("--route", sweep_opts.route, "exact, quadrature, high_t or low_t")
      ->capture_default_str();
  sweep->add_option("--grid", sweep_opts.grid, "Comma-separated omega_c values");
  sweep->add_option("--grid-start", sweep_opts.grid_start)->capture_default_str();
  sweep->add_option("--grid-end", sweep_opts.grid_end)->capture_default_str();
  sweep->add_option("--grid-n", sweep_opts.grid_n)->capture_default_str();
  sweep->add_option("--grid-spacing", sweep_opts.grid_spacing)->capture_default_str();
  sweep->add_option("--prominence", sweep_opts.prominence, "Relative prominence of a maximum")
      ->capture_default_str();
  GridOptions sweep_grid;
  sweep_grid.n_points = 1024;
  add_params(sweep, params);
  add_quad(sweep, quad);
  add_grid(sweep, sweep_grid);
  add_output(sweep, output);

  SimOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Classical Langevin ensemble MSD");
  add_params(simulate, params);
  simulate->add_option("--dt", sim_opts.dt, "Time step (default 0.01 / max(gamma, omega_c))");
  simulate->add_option("--t-end", sim_opts.t_end)->capture_default_str();
  simulate->add_option("--n-particles", sim_opts.n_particles)->capture_default_str();
  simulate->add_option("--seed", sim_opts.seed)->capture_default_str();
  simulate->add_option("--n-records", sim_opts.n_records)->capture_default_str();
  simulate->add_option("--vx0", sim_opts.vx0, "Fixed initial velocity, x");
  simulate->add_option("--vy0", sim_opts.vy0, "Fixed initial velocity, y");
  add_output(simulate, output);

  std::string fault;
  auto* selftest = app.add_subcommand("selftest", "Run the oracle and identity suite");
  selftest->add_option("--inject-fault", fault)->group("");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "qbm: config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*compute) return run_compute(route, params, quad, grid, output);
    if (*figure) return run_figure(figure_id, output);
    if (*sweep) return run_sweep(sweep_opts, params, quad, sweep_grid, output);
    if (*simulate) return run_simulate(sim_opts, params, output);
    if (*selftest) return run_selftest_cmd(fault);
  } catch (const ConvergenceError& e) {
    std::cerr << "qbm: convergence error: " << e.what() << " (achieved " << e.achieved_error()
              << ", requested " << e.requested_error() << ")\n";
    return kConvergence;
  } catch (const NonMonotoneFlip& e) {
    std::cerr << "qbm: non-monotone flip: " << e.what() << '\n';
    return kFlip;
  } catch (const Error& e) {
    std::cerr << "qbm: config error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
