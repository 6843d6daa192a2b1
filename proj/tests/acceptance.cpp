// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "powrel/montecarlo.hpp"
#include "powrel/reliability.hpp"
#include "powrel/special_functions.hpp"

using namespace powrel;

namespace {

const SystemModel kExample1{6, 3, Exponential{1.0}, ParetoLomax{2.0, 1.0},
                            Independence{}, NoDecay{}};
const SystemModel kExample1b{10, 7, Exponential{1.0}, ParetoLomax{2.0, 1.0},
                             Independence{}, NoDecay{}};
const SystemModel kExample2{10, 4, Exponential{1.0}, Uniform{2.0, 5.0},
                            Fgm{1.0}, NoDecay{}};
const SystemModel kExample3{10, 6, Exponential{1.0}, Exponential{1.0},
                            Independence{}, ExponentialDecay{1.0}};
const SystemModel kFigure4{6, 5, Exponential{1.0}, Exponential{1.0}, Fgm{1.0},
                           ExponentialDecay{1.0}};

int failures = 0;

void report(int index, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("criterion %2d: %s  %s (%s)\n", index, pass ? "PASS" : "FAIL",
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double ipow(double x, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= x;
  return acc;
}

double example1_joint_pdf(int n, int r, double t, double s) {
  return 2.0 * n * (n - r + 1) * binom_coeff(n - 1, r - 1) *
         std::pow(1.0 - std::exp(-t), r - 1) * std::exp(-(n - r + 1) * t) /
         std::pow(s + 1.0, 3 + 2 * (n - r));
}

// --------------------------------------------------------------------------
// 1. closed-form joint pdf on 10x10 grids for (n,r) in {(6,3),(10,7)}
void criterion_closed_form_pdf() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& m : {kExample1, kExample1b}) {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const double t = 0.1 + 0.25 * i;
        const double s = 0.3 * j;
        const double expected = example1_joint_pdf(m.n, m.r, t, s);
        const double got = joint_pdf(m, t, s);
        worst = std::max(worst, std::fabs(got - expected) / expected);
      }
    }
  }
  const double elapsed = seconds_since(start);
  report(1, worst <= 1e-8 && elapsed < 1.0, "closed-form joint pdf grids",
         "max rel err " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

// --------------------------------------------------------------------------
// 2. joint pdf normalization for both Lomax-power models and the FGM model
void criterion_normalization() {
  const auto start = std::chrono::steady_clock::now();
  QuadratureConfig cfg;
  double worst = 0.0;
  for (const auto& m : {kExample1, kExample1b, kExample2}) {
    worst = std::max(worst, std::fabs(joint_pdf_total_mass(m, cfg) - 1.0));
  }
  const double elapsed = seconds_since(start);
  report(2, worst <= 1e-6 && elapsed < 10.0, "joint pdf normalization",
         "max |mass-1| " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

// --------------------------------------------------------------------------
// 3. zero power level reduces the joint survival to the physical reliability
void criterion_reduction() {
  double worst = 0.0;
  for (const auto& m : {kExample1, kExample2, kExample3}) {
    for (int i = 0; i < 50; ++i) {
      const double t = 3.0 * i / 49.0;
      worst = std::max(worst, std::fabs(joint_survival_fixed(m, t, 0.0) -
                                        physical_reliability(m, t)));
    }
  }
  report(3, worst <= 1e-10, "reduction at zero power level",
         "max abs err " + fmt(worst));
}

// --------------------------------------------------------------------------
// 4. independence factorization with the decayed threshold (corrected form)
void criterion_factorization() {
  double worst = 0.0;
  const int power_count = kExample3.n - kExample3.r + 1;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double t = 2.0 * i / 19.0;
      const double s = 2.0 * j / 19.0;
      const double q = joint_survival(kExample3, {t, s});
      const double factored =
          ipow(survival(kExample3.power, s * std::exp(t)), power_count) *
          physical_reliability(kExample3, t);
      worst = std::max(worst, std::fabs(q - factored));
    }
  }
  report(4, worst <= 1e-10, "independence factorization",
         "max abs err " + fmt(worst));
}

// --------------------------------------------------------------------------
// 5. Monte Carlo oracle equivalence at a million draws per model
struct OracleCheck {
  std::string name;
  double analytic;
  std::function<Estimate(const SampleBatch&)> estimate;
};

void criterion_oracle() {
  const auto start = std::chrono::steady_clock::now();
  struct ModelPoints {
    const SystemModel* model;
    const char* name;
    std::vector<EvalPoint> points;
  };
  const std::vector<ModelPoints> cases = {
      {&kExample1, "example1",
       {{0.2, 0.2}, {0.3, 0.5}, {0.5, 0.3}, {0.7, 0.5}, {1.0, 1.0}}},
      {&kExample2, "example2",
       {{0.2, 2.2}, {0.3, 2.8}, {0.5, 2.5}, {0.7, 3.2}, {1.0, 2.4}}},
      {&kExample3, "example3",
       {{0.1, 0.3}, {0.25, 0.25}, {0.3, 0.5}, {0.5, 0.5}, {0.75, 0.3}}},
  };
  const std::int64_t n = 1000000;
  const std::uint64_t seeds[2] = {20260809, 424243};
  const auto conv = ThresholdConvention::PaperLiteral;

  double worst_z = 0.0;
  std::string worst_name;
  bool pass = true;

  for (const auto& mc : cases) {
    const SystemModel& m = *mc.model;
    std::vector<OracleCheck> checks;
    for (const EvalPoint& p : mc.points) {
      const double x = p.t + 0.5;
      checks.push_back({"joint_survival", joint_survival(m, p),
                        [&m, p](const SampleBatch& b) {
                          return batch_joint_survival(b, m, p);
                        }});
      checks.push_back({"min_concomitant_survival",
                        min_concomitant_survival(m, p.s),
                        [&m, p](const SampleBatch& b) {
                          return batch_min_concomitant_survival(b, m, p.s);
                        }});
      checks.push_back({"operational_reliability",
                        operational_reliability(m, p),
                        [&m, p](const SampleBatch& b) {
                          return batch_operational_reliability(b, m, p);
                        }});
      checks.push_back({"residual_cdf",
                        residual_life_cdf(m, p.t, p.s, x, conv),
                        [&m, p, x](const SampleBatch& b) {
                          return batch_residual_life_cdf(b, m, p.t, p.s, x,
                                                         conv);
                        }});
      checks.push_back({"mrl", mean_residual_life(m, p.t, p.s, conv),
                        [&m, p](const SampleBatch& b) {
                          return batch_mrl(b, m, p.t, p.s, conv);
                        }});
    }

    std::vector<double> z(checks.size(), 0.0);
    std::vector<bool> ok(checks.size(), false);
    for (int attempt = 0; attempt < 2; ++attempt) {
      const RandomStream rng(seeds[attempt], "acceptance_oracle");
      const SampleBatch batch(m, n, rng);
      bool any_bad = false;
      for (std::size_t k = 0; k < checks.size(); ++k) {
        if (attempt > 0 && ok[k]) continue;
        const Estimate e = checks[k].estimate(batch);
        z[k] = e.std_error > 0.0
                   ? (e.value - checks[k].analytic) / e.std_error
                   : (e.value == checks[k].analytic ? 0.0 : 1e9);
        ok[k] = std::fabs(z[k]) <= 3.0;
        any_bad = any_bad || !ok[k];
      }
      if (!any_bad) break;
    }
    for (std::size_t k = 0; k < checks.size(); ++k) {
      if (std::fabs(z[k]) > std::fabs(worst_z)) {
        worst_z = z[k];
        worst_name = std::string(mc.name) + "/" + checks[k].name;
      }
      pass = pass && ok[k];
    }
  }
  const double elapsed = seconds_since(start);
  report(5, pass && elapsed < 60.0, "Monte Carlo oracle equivalence",
         "worst z " + fmt(worst_z) + " at " +
             (worst_name.empty() ? "-" : worst_name) + ", " + fmt(elapsed) +
             " s");
}

// --------------------------------------------------------------------------
// 6. finite-difference mixed partial matches the joint pdf
void criterion_mixed_partial() {
  const double h = 1e-4;
  double worst = 0.0;
  for (const auto& m : {kExample1, kExample2}) {
    const double s_lo = support_lo(m.power);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const double t = 0.4 + 0.3 * i;
        const double s = s_lo + 0.3 + 0.55 * j;
        auto q = [&](double a, double b) {
          return joint_survival_fixed(m, a, b);
        };
        const double fd = (q(t + h, s + h) - q(t + h, s - h) -
                           q(t - h, s + h) + q(t - h, s - h)) /
                          (4.0 * h * h);
        const double exact = joint_pdf(m, t, s);
        worst = std::max(worst, std::fabs(fd - exact) / std::fabs(exact));
      }
    }
  }
  report(6, worst <= 1e-5, "mixed-partial consistency",
         "max rel err " + fmt(worst));
}

// --------------------------------------------------------------------------
// 7. residual-life density: unit mass and agreement with the cdf derivative
void criterion_residual_law() {
  QuadratureConfig cfg;
  double worst_mass = 0.0;
  double worst_fd = 0.0;
  for (auto conv : {ThresholdConvention::PaperLiteral,
                    ThresholdConvention::InspectionTime}) {
    for (double t : {0.25, 0.5, 1.0}) {
      for (double s : {0.0, 0.5, 1.0}) {
        double hi = t + 4.0;
        while (residual_life_cdf(kExample3, t, s, hi, conv) < 1.0 - 1e-10) {
          hi *= 2.0;
        }
        const double mass =
            integrate(
                [&](double x) {
                  return residual_life_pdf(kExample3, t, s, x, conv);
                },
                t + 1e-13, hi, cfg)
                .value;
        worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));

        const double fd_h = 1e-5;
        for (double dx : {0.3, 0.8, 1.6}) {
          const double x = t + dx;
          const double fd =
              (residual_life_cdf(kExample3, t, s, x + fd_h, conv) -
               residual_life_cdf(kExample3, t, s, x - fd_h, conv)) /
              (2.0 * fd_h);
          const double exact = residual_life_pdf(kExample3, t, s, x, conv);
          worst_fd = std::max(worst_fd, std::fabs(fd - exact));
        }
      }
    }
  }
  report(7, worst_mass <= 1e-6 && worst_fd <= 1e-6, "residual-life law",
         "max |mass-1| " + fmt(worst_mass) + ", max fd err " + fmt(worst_fd));
}

// --------------------------------------------------------------------------
// 8. closed-form mean-residual-life anchors
void criterion_mrl_anchors() {
  const SystemModel one{1, 1, Exponential{1.0}, Exponential{1.0},
                        Independence{}, NoDecay{}};
  const SystemModel two{2, 2, Exponential{1.0}, Exponential{1.0},
                        Independence{}, NoDecay{}};
  double worst = 0.0;
  for (double t : {0.0, 1.0, 5.0}) {
    worst = std::max(
        worst, std::fabs(mean_residual_life(
                   one, t, 0.0, ThresholdConvention::PaperLiteral) -
                         1.0));
  }
  worst = std::max(
      worst, std::fabs(mean_residual_life(
                 two, 0.0, 0.0, ThresholdConvention::PaperLiteral) -
                       1.5));
  report(8, worst <= 1e-8, "mean-residual-life anchors",
         "max abs err " + fmt(worst));
}

// --------------------------------------------------------------------------
// 9. operational-reliability curve family: shape and ordering
void criterion_curve_family() {
  const std::vector<double> s_values = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
  const int steps = 100;
  std::vector<std::vector<double>> curves;
  bool pass = true;
  for (const double s : s_values) {
    std::vector<double> curve(steps);
    for (int i = 0; i < steps; ++i) {
      const double t = 2.5 * i / (steps - 1);
      curve[i] = operational_reliability(kFigure4, {t, s});
    }
    if (curve[0] != 1.0) pass = false;
    for (int i = 1; i < steps; ++i) {
      if (curve[i] > curve[i - 1] + 1e-12) pass = false;
    }
    curves.push_back(std::move(curve));
  }
  for (std::size_t k = 1; k < curves.size(); ++k) {
    for (int i = 1; i < steps; ++i) {  // t > 0 only
      if (curves[k][i] > curves[k - 1][i] + 1e-12) pass = false;
    }
  }
  report(9, pass, "operational-reliability curve family",
         "6 curves, 100-point grid");
}

// --------------------------------------------------------------------------
// 10. byte-identical verification reports across runs and worker counts
void criterion_determinism() {
  const std::string cli = POWREL_CLI_PATH;
  const std::string config = std::string(POWREL_CONFIG_DIR) + "/example3.json";
  auto run = [&](const std::string& extra, const std::string& out) {
    const std::string cmd = cli + " verify --config " + config +
                            " --samples 200000 --seed 7 " + extra + " --out " +
                            out + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const bool ok1 = run("", "acceptance_verify_1.json");
  const bool ok2 = run("", "acceptance_verify_2.json");
  const bool ok3 = run("--threads 4", "acceptance_verify_3.json");
  const std::string r1 = slurp("acceptance_verify_1.json");
  const std::string r2 = slurp("acceptance_verify_2.json");
  const std::string r3 = slurp("acceptance_verify_3.json");
  std::remove("acceptance_verify_1.json");
  std::remove("acceptance_verify_2.json");
  std::remove("acceptance_verify_3.json");
  const bool pass =
      ok1 && ok2 && ok3 && !r1.empty() && r1 == r2 && r1 == r3;
  report(10, pass, "deterministic verification reports",
         ok1 ? (r1 == r3 ? "identical across runs and 4 workers"
                         : "worker count changed the bytes")
             : "verify run failed");
}

}  // namespace

int main() {
  criterion_closed_form_pdf();
  criterion_normalization();
  criterion_reduction();
  criterion_factorization();
  criterion_oracle();
  criterion_mixed_partial();
  criterion_residual_law();
  criterion_mrl_anchors();
  criterion_curve_family();
  criterion_determinism();
  std::printf("%s: %d/10 criteria passed\n", failures == 0 ? "PASS" : "FAIL",
              10 - failures);
  return failures;
}
