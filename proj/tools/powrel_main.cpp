// Command-line front end: evaluate reliability quantities at a point, emit
// plot-ready grids as CSV, run Monte Carlo simulations, and cross-verify the
// quadrature results against simulation.
//
// Exit codes: 0 ok, 2 input/config error, 3 domain/numerical error,
// 4 verification failure.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "powrel/config.hpp"
#include "powrel/montecarlo.hpp"
#include "powrel/reliability.hpp"

namespace {

using nlohmann::ordered_json;
using namespace powrel;

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + out_path);
  out << text;
}

enum class Quantity {
  Physical,
  JointSurvival,
  JointPdf,
  MinConcomitantSurvival,
  OperationalReliability,
  ResidualCdf,
  ResidualPdf,
  Mrl,
};

const std::vector<std::pair<std::string, Quantity>> kQuantityNames = {
    {"physical", Quantity::Physical},
    {"joint_survival", Quantity::JointSurvival},
    {"joint_pdf", Quantity::JointPdf},
    {"min_concomitant_survival", Quantity::MinConcomitantSurvival},
    {"operational_reliability", Quantity::OperationalReliability},
    {"residual_cdf", Quantity::ResidualCdf},
    {"residual_pdf", Quantity::ResidualPdf},
    {"mrl", Quantity::Mrl},
};

Quantity parse_quantity(const std::string& name) {
  for (const auto& [text, q] : kQuantityNames) {
    if (text == name) return q;
  }
  std::string known;
  for (const auto& [text, q] : kQuantityNames) {
    known += known.empty() ? text : ", " + text;
  }
  throw ConfigError("unknown quantity '" + name + "' (one of: " + known + ")");
}

bool needs_x(Quantity q) {
  return q == Quantity::ResidualCdf || q == Quantity::ResidualPdf;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;  // grid points, >= 2

  double at(int i) const {
    return lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  }
};

Range parse_range(const std::string& text, const char* what) {
  Range r;
  char colon1 = 0;
  char colon2 = 0;
  std::istringstream in(text);
  if (!(in >> r.lo >> colon1 >> r.hi >> colon2 >> r.steps) || colon1 != ':' ||
      colon2 != ':' || !(in >> std::ws).eof()) {
    throw ConfigError(std::string(what) + ": expected lo:hi:steps");
  }
  if (r.steps < 2 || !(r.lo <= r.hi)) {
    throw ConfigError(std::string(what) +
                      ": requires lo <= hi and steps >= 2");
  }
  return r;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (values.empty()) throw ConfigError(std::string(what) + ": empty list");
  return values;
}

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  QuadratureConfig quad;
  ThresholdConvention convention = ThresholdConvention::PaperLiteral;
  std::string convention_name = "paper";
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "model config file (JSON)")
      ->required();
  cmd->add_option("--rel-tol", args->quad.rel_tol,
                  "quadrature relative tolerance");
  cmd->add_option("--abs-tol", args->quad.abs_tol,
                  "quadrature absolute tolerance");
  cmd->add_option("--convention", args->convention_name,
                  "residual-life threshold convention: paper | inspection");
  cmd->add_option("--out", args->out_path,
                  "write output to a file instead of stdout");
}

void finish_common(CommonArgs* args) {
  if (args->convention_name == "paper") {
    args->convention = ThresholdConvention::PaperLiteral;
  } else if (args->convention_name == "inspection") {
    args->convention = ThresholdConvention::InspectionTime;
  } else {
    throw ConfigError("--convention must be 'paper' or 'inspection'");
  }
}

// runs body(i) for i in [0,count); point order in the output never depends on
// the scheduling
template <class Fn>
void parallel_for(int count, int threads, Fn&& body) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double eval_quantity(const SystemModel& m, Quantity q, double t, double s,
                     std::optional<double> x, ThresholdConvention conv,
                     const QuadratureConfig& cfg) {
  switch (q) {
    case Quantity::Physical:
      return physical_reliability(m, t);
    case Quantity::JointSurvival:
      return joint_survival(m, {t, s}, cfg);
    case Quantity::JointPdf:
      return joint_pdf(m, t, s);
    case Quantity::MinConcomitantSurvival:
      return min_concomitant_survival(m, s, cfg);
    case Quantity::OperationalReliability:
      return operational_reliability(m, {t, s}, cfg);
    case Quantity::ResidualCdf:
    case Quantity::ResidualPdf: {
      if (!x) throw ConfigError("residual quantities require -x");
      return q == Quantity::ResidualCdf
                 ? residual_life_cdf(m, t, s, *x, conv, cfg)
                 : residual_life_pdf(m, t, s, *x, conv, cfg);
    }
    case Quantity::Mrl:
      return mean_residual_life(m, t, s, conv, cfg);
  }
  throw ConfigError("unhandled quantity");
}

// ---------------------------------------------------------------- eval ----

int run_eval(const CommonArgs& args, const std::string& quantity_name,
             double t, double s, std::optional<double> x) {
  const SystemModel model = load_model_file(args.config_path);
  const Quantity q = parse_quantity(quantity_name);

  ordered_json record;
  record["quantity"] = quantity_name;
  record["t"] = t;
  record["s"] = s;
  if (needs_x(q) && x) record["x"] = *x;
  if (needs_x(q) || q == Quantity::Mrl) {
    record["convention"] = args.convention_name;
  }
  record["value"] =
      eval_quantity(model, q, t, s, x, args.convention, args.quad);
  write_output(record.dump() + "\n", args.out_path);
  return 0;
}

// ---------------------------------------------------------------- grid ----

int run_grid(const CommonArgs& args, const std::string& quantity_name,
             const std::string& t_range_text, const std::string& s_range_text,
             const std::string& s_list_text, const std::string& x_range_text,
             double fixed_t, double fixed_s, int threads) {
  const SystemModel model = load_model_file(args.config_path);
  const Quantity q = parse_quantity(quantity_name);

  // one (t,s,x) request per output row, in final row order
  struct GridPoint {
    double t;
    double s;
    std::optional<double> x;
  };
  std::vector<GridPoint> points;
  std::string header;

  if (q == Quantity::Physical) {
    const Range tr = parse_range(t_range_text, "--t-range");
    header = "t,value";
    for (int i = 0; i < tr.steps; ++i) {
      points.push_back({tr.at(i), 0.0, std::nullopt});
    }
  } else if (q == Quantity::MinConcomitantSurvival) {
    if (s_range_text.empty()) {
      throw ConfigError("grid min_concomitant_survival requires --s-range");
    }
    const Range sr = parse_range(s_range_text, "--s-range");
    header = "s,value";
    for (int i = 0; i < sr.steps; ++i) {
      points.push_back({0.0, sr.at(i), std::nullopt});
    }
  } else if (needs_x(q)) {
    if (x_range_text.empty()) {
      throw ConfigError(
          "grid residual quantities require --x-range (with -t, -s fixed)");
    }
    const Range xr = parse_range(x_range_text, "--x-range");
    header = "x,value";
    for (int i = 0; i < xr.steps; ++i) {
      points.push_back({fixed_t, fixed_s, xr.at(i)});
    }
  } else {
    const Range tr = parse_range(t_range_text, "--t-range");
    std::vector<double> s_values;
    if (!s_list_text.empty()) {
      s_values = parse_list(s_list_text, "--s-list");
      std::sort(s_values.begin(), s_values.end());
    } else if (!s_range_text.empty()) {
      const Range sr = parse_range(s_range_text, "--s-range");
      for (int i = 0; i < sr.steps; ++i) s_values.push_back(sr.at(i));
    } else {
      throw ConfigError("grid requires --s-range or --s-list");
    }
    header = "t,s,value";
    for (const double s : s_values) {
      for (int i = 0; i < tr.steps; ++i) {
        points.push_back({tr.at(i), s, std::nullopt});
      }
    }
  }

  std::vector<double> values(points.size());
  parallel_for(static_cast<int>(points.size()), threads, [&](int i) {
    const GridPoint& p = points[i];
    values[i] = eval_quantity(model, q, p.t, p.s, p.x, args.convention,
                              args.quad);
  });

  std::string csv = header + "\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const GridPoint& p = points[i];
    if (q == Quantity::Physical) {
      csv += fmt_double(p.t);
    } else if (q == Quantity::MinConcomitantSurvival) {
      csv += fmt_double(p.s);
    } else if (needs_x(q)) {
      csv += fmt_double(*p.x);
    } else {
      csv += fmt_double(p.t) + "," + fmt_double(p.s);
    }
    csv += "," + fmt_double(values[i]) + "\n";
  }
  write_output(csv, args.out_path);
  return 0;
}

// ------------------------------------------------------------ simulate ----

int run_simulate(const CommonArgs& args, const std::string& quantity_name,
                 double t, double s, std::optional<double> x,
                 std::int64_t samples, std::uint64_t seed, int threads) {
  const SystemModel model = load_model_file(args.config_path);
  const Quantity q = parse_quantity(quantity_name);

  Estimate est;
  switch (q) {
    case Quantity::Physical:
      est = estimate_joint_survival(model, {t, 0.0}, samples, seed, threads);
      break;
    case Quantity::JointSurvival:
      est = estimate_joint_survival(model, {t, s}, samples, seed, threads);
      break;
    case Quantity::MinConcomitantSurvival:
      est = estimate_joint_survival(model, {0.0, s}, samples, seed, threads);
      break;
    case Quantity::OperationalReliability:
      est = estimate_operational_reliability(model, {t, s}, samples, seed,
                                             threads);
      break;
    case Quantity::ResidualCdf:
      if (!x) throw ConfigError("simulate residual_cdf requires -x");
      est = estimate_residual_life_cdf(model, t, s, *x, args.convention,
                                       samples, seed, threads);
      break;
    case Quantity::Mrl:
      est = estimate_mrl(model, t, s, args.convention, samples, seed, threads);
      break;
    default:
      throw ConfigError("quantity '" + quantity_name + "' has no simulator");
  }

  ordered_json record;
  record["quantity"] = quantity_name;
  record["t"] = t;
  record["s"] = s;
  if (x && needs_x(q)) record["x"] = *x;
  if (needs_x(q) || q == Quantity::Mrl) {
    record["convention"] = args.convention_name;
  }
  record["value"] = est.value;
  record["std_error"] = est.std_error;
  record["n_samples"] = est.n_samples;
  record["seed"] = seed;
  write_output(record.dump() + "\n", args.out_path);
  return 0;
}

// -------------------------------------------------------------- verify ----

struct VerifyPoint {
  double t;
  double s;
  double x;
};

std::vector<VerifyPoint> default_points(const SystemModel& m) {
  // quantile-anchored points: healthy event probabilities for any of the
  // supported marginals
  const double tp[5] = {0.10, 0.25, 0.40, 0.55, 0.70};
  const double wq[5] = {0.30, 0.45, 0.60, 0.50, 0.35};
  const double iqr = quantile(m.lifetime, 0.75) - quantile(m.lifetime, 0.25);
  std::vector<VerifyPoint> pts;
  for (int i = 0; i < 5; ++i) {
    const double t = quantile(m.lifetime, tp[i]);
    const double s = quantile(m.power, wq[i]) * phi(m.decay, t);
    pts.push_back({t, s, t + std::max(0.4 * iqr, 1e-3)});
  }
  return pts;
}

std::vector<VerifyPoint> parse_points(const std::string& text,
                                      const SystemModel& m) {
  if (text.empty()) return default_points(m);
  const double iqr = quantile(m.lifetime, 0.75) - quantile(m.lifetime, 0.25);
  std::vector<VerifyPoint> pts;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("--points: expected t:s pairs separated by commas");
    }
    try {
      const double t = std::stod(item.substr(0, colon));
      const double s = std::stod(item.substr(colon + 1));
      pts.push_back({t, s, t + std::max(0.4 * iqr, 1e-3)});
    } catch (const std::exception&) {
      throw ConfigError("--points: bad pair '" + item + "'");
    }
  }
  if (pts.empty()) throw ConfigError("--points: empty list");
  return pts;
}

double z_score(double analytic, const Estimate& est) {
  const double diff = est.value - analytic;
  if (est.std_error > 0.0) return diff / est.std_error;
  if (diff == 0.0) return 0.0;
  return diff * static_cast<double>(est.n_samples);  // against 1/N resolution
}

int run_verify(const CommonArgs& args, const std::string& points_text,
               std::int64_t samples, std::uint64_t seed, int threads) {
  const SystemModel model = load_model_file(args.config_path);
  const std::vector<VerifyPoint> points = parse_points(points_text, model);

  const RandomStream rng(seed, "verify");
  const SampleBatch batch(model, samples, rng, threads);

  ordered_json report;
  report["command"] = "verify";
  report["model"] = to_json(model);
  report["convention"] = args.convention_name;
  report["samples"] = samples;
  report["seed"] = seed;

  bool all_pass = true;
  double max_abs_z = 0.0;
  ordered_json checks = ordered_json::array();

  auto add_check = [&](const char* name, const VerifyPoint& pt,
                       std::optional<double> x, double analytic,
                       const Estimate& est) {
    const double z = z_score(analytic, est);
    const bool pass = std::fabs(z) <= 3.0;
    all_pass = all_pass && pass;
    max_abs_z = std::max(max_abs_z, std::fabs(z));
    ordered_json row;
    row["quantity"] = name;
    row["t"] = pt.t;
    row["s"] = pt.s;
    if (x) row["x"] = *x;
    row["analytic"] = analytic;
    row["estimate"] = est.value;
    row["std_error"] = est.std_error;
    row["z"] = z;
    row["pass"] = pass;
    checks.push_back(row);
  };

  for (const VerifyPoint& pt : points) {
    const EvalPoint ep{pt.t, pt.s};
    add_check("joint_survival", pt, std::nullopt,
              joint_survival(model, ep, args.quad),
              batch_joint_survival(batch, model, ep));
    add_check("min_concomitant_survival", pt, std::nullopt,
              min_concomitant_survival(model, pt.s, args.quad),
              batch_min_concomitant_survival(batch, model, pt.s));
    add_check("operational_reliability", pt, std::nullopt,
              operational_reliability(model, ep, args.quad),
              batch_operational_reliability(batch, model, ep));
    add_check("residual_cdf", pt, pt.x,
              residual_life_cdf(model, pt.t, pt.s, pt.x, args.convention,
                                args.quad),
              batch_residual_life_cdf(batch, model, pt.t, pt.s, pt.x,
                                      args.convention));
    add_check("mrl", pt, std::nullopt,
              mean_residual_life(model, pt.t, pt.s, args.convention,
                                 args.quad),
              batch_mrl(batch, model, pt.t, pt.s, args.convention));
  }

  const double mass = joint_pdf_total_mass(model, args.quad);
  const double mass_err = std::fabs(mass - 1.0);
  const bool mass_pass = mass_err <= 1e-6;
  all_pass = all_pass && mass_pass;

  report["checks"] = checks;
  report["normalization"] = {{"integral", mass},
                             {"abs_error_vs_one", mass_err},
                             {"tolerance", 1e-6},
                             {"pass", mass_pass}};
  report["max_abs_z"] = max_abs_z;
  report["pass"] = all_pass;

  write_output(report.dump(2) + "\n", args.out_path);
  return all_pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(n-r+1)-out-of-n power-system reliability calculator"};
  app.require_subcommand(1);

  CommonArgs eval_args;
  std::string eval_quantity_name;
  double eval_t = 0.0;
  double eval_s = 0.0;
  std::optional<double> eval_x;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate one quantity at a point");
  add_common(eval_cmd, &eval_args);
  eval_cmd->add_option("--quantity", eval_quantity_name)->required();
  eval_cmd->add_option("-t", eval_t, "inspection time");
  eval_cmd->add_option("-s", eval_s, "demanded power level");
  eval_cmd->add_option("-x", eval_x, "residual-life evaluation point (> t)");

  CommonArgs grid_args;
  std::string grid_quantity_name;
  std::string grid_t_range;
  std::string grid_s_range;
  std::string grid_s_list;
  std::string grid_x_range;
  double grid_t = 0.0;
  double grid_s = 0.0;
  int grid_threads = 1;
  CLI::App* grid_cmd =
      app.add_subcommand("grid", "emit a CSV grid of one quantity");
  add_common(grid_cmd, &grid_args);
  grid_cmd->add_option("--quantity", grid_quantity_name)->required();
  grid_cmd->add_option("--t-range", grid_t_range, "lo:hi:steps");
  grid_cmd->add_option("--s-range", grid_s_range, "lo:hi:steps");
  grid_cmd->add_option("--s-list", grid_s_list, "comma-separated s values");
  grid_cmd->add_option("--x-range", grid_x_range,
                       "lo:hi:steps (residual quantities)");
  grid_cmd->add_option("-t", grid_t, "fixed t for residual quantities");
  grid_cmd->add_option("-s", grid_s, "fixed s for residual quantities");
  grid_cmd->add_option("--threads", grid_threads, "worker threads");

  CommonArgs sim_args;
  std::string sim_quantity_name;
  double sim_t = 0.0;
  double sim_s = 0.0;
  std::optional<double> sim_x;
  std::int64_t sim_samples = 1000000;
  std::uint64_t sim_seed = 1;
  int sim_threads = 1;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo estimate of one quantity");
  add_common(sim_cmd, &sim_args);
  sim_cmd->add_option("--quantity", sim_quantity_name)->required();
  sim_cmd->add_option("-t", sim_t, "inspection time");
  sim_cmd->add_option("-s", sim_s, "demanded power level");
  sim_cmd->add_option("-x", sim_x, "residual-life evaluation point (> t)");
  sim_cmd->add_option("--samples", sim_samples, "number of draws");
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--threads", sim_threads, "worker threads");

  CommonArgs verify_args;
  std::string verify_points;
  std::int64_t verify_samples = 1000000;
  std::uint64_t verify_seed = 1;
  int verify_threads = 1;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify",
      "cross-check quadrature against Monte Carlo (exit 4 on failure)");
  add_common(verify_cmd, &verify_args);
  verify_cmd->add_option("--points", verify_points,
                         "t:s pairs, comma separated (default: auto)");
  verify_cmd->add_option("--samples", verify_samples, "number of draws");
  verify_cmd->add_option("--seed", verify_seed, "RNG seed");
  verify_cmd->add_option("--threads", verify_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (eval_cmd->parsed()) {
      finish_common(&eval_args);
      return run_eval(eval_args, eval_quantity_name, eval_t, eval_s, eval_x);
    }
    if (grid_cmd->parsed()) {
      finish_common(&grid_args);
      return run_grid(grid_args, grid_quantity_name, grid_t_range,
                      grid_s_range, grid_s_list, grid_x_range, grid_t, grid_s,
                      grid_threads);
    }
    if (sim_cmd->parsed()) {
      finish_common(&sim_args);
      return run_simulate(sim_args, sim_quantity_name, sim_t, sim_s, sim_x,
                          sim_samples, sim_seed, sim_threads);
    }
    if (verify_cmd->parsed()) {
      finish_common(&verify_args);
      return run_verify(verify_args, verify_points, verify_samples,
                        verify_seed, verify_threads);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConditioningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << " (best estimate "
              << e.best_estimate << ", error estimate " << e.error_estimate
              << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
