#include "powrel/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace powrel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  return h;
}

// stable insertion sort by lifetime; n is small
void sort_by_lifetime(std::pair<double, double>* buf, int n) {
  for (int j = 1; j < n; ++j) {
    const auto key = buf[j];
    int k = j - 1;
    while (k >= 0 && buf[k].first > key.first) {
      buf[k + 1] = buf[k];
      --k;
    }
    buf[k + 1] = key;
  }
}

template <class Lifetime, class Power, class Copula>
void generate_range(const Lifetime& lt, const Power& pw, const Copula& cp,
                    int n, int r, const RandomStream& rng, std::int64_t lo,
                    std::int64_t hi, DrawSummary* out) {
  std::vector<std::pair<double, double>> buf(n);
  const std::uint64_t stride = 2ull * static_cast<std::uint64_t>(n);
  for (std::int64_t i = lo; i < hi; ++i) {
    std::uint64_t c = static_cast<std::uint64_t>(i) * stride;
    for (int j = 0; j < n; ++j) {
      const double u = rng.uniform01(c++);
      const double p = rng.uniform01(c++);
      const double v = conditional_quantile(cp, u, p);
      buf[j] = {quantile(lt, u), quantile(pw, v)};
    }
    sort_by_lifetime(buf.data(), n);
    double weakest = buf[r - 1].second;
    for (int j = r; j < n; ++j) weakest = std::min(weakest, buf[j].second);
    out[i] = {buf[r - 1].first, weakest};
  }
}

double binomial_std_error(double p, std::int64_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

// std error of the ratio n_inner/n_outer when the inner event implies the
// outer one (delta method on the same draws).
double nested_ratio_std_error(std::int64_t n_inner, std::int64_t n_outer,
                              std::int64_t n) {
  const double pa = static_cast<double>(n_inner) / static_cast<double>(n);
  const double pb = static_cast<double>(n_outer) / static_cast<double>(n);
  const double var = pa * (pb - pa) / (pb * pb * pb) / static_cast<double>(n);
  return std::sqrt(std::max(0.0, var));
}

void require_samples(std::int64_t n_samples) {
  if (n_samples < 1) {
    throw DomainError("montecarlo: n_samples must be >= 1");
  }
}

// largest x for which a draw with the given weakest raw power keeps the
// decayed-power condition (weakest * phi(x) > s) alive
double power_cap(const SystemModel& m, double s, double weakest) {
  if (weakest <= 0.0) return -kInf;
  if (s == 0.0) return kInf;
  return time_above(m.decay, s / weakest);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::string_view tag)
    : base_(mix64(seed ^ mix64(fnv1a(tag)))) {}

double RandomStream::uniform01(std::uint64_t counter) const {
  const std::uint64_t z = mix64(base_ + (counter + 1) * kGamma);
  return (static_cast<double>(z >> 11) + 0.5) * 0x1p-53;
}

std::pair<double, double> sample_pair(const SystemModel& m,
                                      const RandomStream& rng,
                                      std::uint64_t pair_index) {
  const double u = rng.uniform01(2 * pair_index);
  const double p = rng.uniform01(2 * pair_index + 1);
  const double v = conditional_quantile(m.copula, u, p);
  return {quantile(m.lifetime, u), quantile(m.power, v)};
}

SystemDraw draw_system(const SystemModel& m, const RandomStream& rng,
                       std::uint64_t draw_index) {
  std::vector<std::pair<double, double>> buf(m.n);
  for (int j = 0; j < m.n; ++j) {
    buf[j] = sample_pair(m, rng,
                         draw_index * static_cast<std::uint64_t>(m.n) + j);
  }
  sort_by_lifetime(buf.data(), m.n);
  SystemDraw draw;
  draw.lifetimes.reserve(m.n);
  draw.concomitant_powers.reserve(m.n);
  for (const auto& [x, w] : buf) {
    draw.lifetimes.push_back(x);
    draw.concomitant_powers.push_back(w);
  }
  return draw;
}

SampleBatch::SampleBatch(const SystemModel& m, std::int64_t n_draws,
                         const RandomStream& rng, int threads) {
  require_samples(n_draws);
  summaries_.resize(n_draws);
  DrawSummary* out = summaries_.data();

  auto run = [&](std::int64_t lo, std::int64_t hi) {
    std::visit(
        [&](const auto& lt, const auto& pw, const auto& cp) {
          generate_range(lt, pw, cp, m.n, m.r, rng, lo, hi, out);
        },
        m.lifetime, m.power, m.copula);
  };

  threads = std::max(1, threads);
  if (threads == 1 || n_draws < 4096) {
    run(0, n_draws);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::int64_t chunk = (n_draws + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(n_draws, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back(run, lo, hi);
  }
  for (auto& th : workers) th.join();
}

std::int64_t SampleBatch::count_exceeding(double t, double w) const {
  std::int64_t count = 0;
  for (const auto& d : summaries_) {
    count += (d.system_lifetime > t && d.weakest_power > w) ? 1 : 0;
  }
  return count;
}

Estimate batch_joint_survival(const SampleBatch& b, const SystemModel& m,
                              const EvalPoint& p) {
  const double w = threshold(m.decay, p.s, p.t);
  const std::int64_t hits =
      std::isinf(w) ? 0 : b.count_exceeding(p.t, w);
  const double frac = static_cast<double>(hits) / b.size();
  return {frac, binomial_std_error(frac, b.size()), b.size()};
}

Estimate batch_min_concomitant_survival(const SampleBatch& b,
                                        const SystemModel&, double s) {
  const std::int64_t hits = b.count_exceeding(0.0, s);
  const double frac = static_cast<double>(hits) / b.size();
  return {frac, binomial_std_error(frac, b.size()), b.size()};
}

Estimate batch_operational_reliability(const SampleBatch& b,
                                       const SystemModel& m,
                                       const EvalPoint& p) {
  const std::int64_t outer = b.count_exceeding(0.0, p.s);
  if (outer == 0) {
    throw ConditioningError("estimate_operational_reliability: no draws "
                            "satisfy the power condition");
  }
  const double w = threshold(m.decay, p.s, p.t);
  const std::int64_t inner = std::isinf(w) ? 0 : b.count_exceeding(p.t, w);
  const double ratio = static_cast<double>(inner) / outer;
  return {ratio, nested_ratio_std_error(inner, outer, b.size()), b.size()};
}

Estimate batch_residual_life_cdf(const SampleBatch& b, const SystemModel& m,
                                 double t, double s, double x,
                                 ThresholdConvention conv) {
  if (!(x > t)) throw DomainError("estimate_residual_life_cdf: requires x > t");
  double w_at_t;
  double w_at_x;
  if (conv == ThresholdConvention::InspectionTime) {
    w_at_t = w_at_x = threshold(m.decay, s, t);
  } else {
    w_at_t = threshold(m.decay, s, t);
    w_at_x = threshold(m.decay, s, x);
  }
  const std::int64_t outer =
      std::isinf(w_at_t) ? 0 : b.count_exceeding(t, w_at_t);
  if (outer == 0) {
    throw ConditioningError(
        "estimate_residual_life_cdf: conditioning event has no draws");
  }
  const std::int64_t inner =
      std::isinf(w_at_x) ? 0 : b.count_exceeding(x, w_at_x);
  const double ratio = static_cast<double>(inner) / outer;
  return {1.0 - ratio, nested_ratio_std_error(inner, outer, b.size()),
          b.size()};
}

Estimate batch_mrl(const SampleBatch& b, const SystemModel& m, double t,
                   double s, ThresholdConvention conv) {
  const std::int64_t n = b.size();

  if (conv == ThresholdConvention::InspectionTime) {
    const double w0 = threshold(m.decay, s, t);
    std::int64_t accepted = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    if (!std::isinf(w0)) {
      for (const auto& d : b.summaries()) {
        if (d.system_lifetime > t && d.weakest_power > w0) {
          const double g = d.system_lifetime - t;
          ++accepted;
          sum += g;
          sum_sq += g * g;
        }
      }
    }
    if (accepted == 0) {
      throw ConditioningError("estimate_mrl: conditioning event has no draws");
    }
    const double mean = sum / accepted;
    double se = 0.0;
    if (accepted > 1) {
      const double var =
          std::max(0.0, (sum_sq - accepted * mean * mean) / (accepted - 1));
      se = std::sqrt(var / accepted);
    }
    return {mean, se, n};
  }

  // Running-threshold convention: the event at scan point x is
  // {system_lifetime > x, weakest_power * phi(x) > s}, equivalent to
  // x < min(system_lifetime, power_cap). The empirical survival curve of that
  // minimum is integrated on a geometric grid from t until fewer than 10
  // draws remain above it.
  std::vector<double> event_end(n);
  {
    const auto& sums = b.summaries();
    for (std::int64_t i = 0; i < n; ++i) {
      event_end[i] = std::min(sums[i].system_lifetime,
                              power_cap(m, s, sums[i].weakest_power));
    }
  }
  std::sort(event_end.begin(), event_end.end());

  auto count_above = [&](double x) -> std::int64_t {
    return event_end.end() -
           std::upper_bound(event_end.begin(), event_end.end(), x);
  };

  const std::int64_t at_t = count_above(t);
  if (at_t == 0) {
    throw ConditioningError("estimate_mrl: conditioning event has no draws");
  }
  const double q_t = static_cast<double>(at_t) / n;

  const double span = std::max(event_end[n - std::min<std::int64_t>(10, n)] - t,
                               1e-6);
  double dx = span / 1000.0;
  double x = t;
  double q_prev = q_t;
  double se_prev = binomial_std_error(q_t, n);
  double integral = 0.0;
  double integral_se = 0.0;
  for (int step = 0; step < 4000; ++step) {
    const double width = dx;
    x += dx;
    dx *= 1.02;
    const std::int64_t hits = count_above(x);
    const double q = static_cast<double>(hits) / n;
    const double se = binomial_std_error(q, n);
    integral += 0.5 * width * (q_prev + q);
    integral_se += 0.5 * width * (se_prev + se);
    q_prev = q;
    se_prev = se;
    if (hits < 10) break;
  }
  const double mrl = integral / q_t;
  const double se_qt = binomial_std_error(q_t, n);
  const double se = (integral_se + mrl * se_qt) / q_t;
  return {mrl, se, n};
}

Estimate estimate_joint_survival(const SystemModel& m, const EvalPoint& p,
                                 std::int64_t n_samples, std::uint64_t seed,
                                 int threads) {
  require_samples(n_samples);
  const RandomStream rng(seed, "joint_survival");
  return batch_joint_survival(SampleBatch(m, n_samples, rng, threads), m, p);
}

Estimate estimate_operational_reliability(const SystemModel& m,
                                          const EvalPoint& p,
                                          std::int64_t n_samples,
                                          std::uint64_t seed, int threads) {
  require_samples(n_samples);
  const RandomStream rng(seed, "operational_reliability");
  return batch_operational_reliability(SampleBatch(m, n_samples, rng, threads),
                                       m, p);
}

Estimate estimate_residual_life_cdf(const SystemModel& m, double t, double s,
                                    double x, ThresholdConvention conv,
                                    std::int64_t n_samples, std::uint64_t seed,
                                    int threads) {
  require_samples(n_samples);
  const RandomStream rng(seed, "residual_life_cdf");
  return batch_residual_life_cdf(SampleBatch(m, n_samples, rng, threads), m, t,
                                 s, x, conv);
}

Estimate estimate_mrl(const SystemModel& m, double t, double s,
                      ThresholdConvention conv, std::int64_t n_samples,
                      std::uint64_t seed, int threads) {
  require_samples(n_samples);
  const RandomStream rng(seed, "mrl");
  return batch_mrl(SampleBatch(m, n_samples, rng, threads), m, t, s, conv);
}

}  // namespace powrel
