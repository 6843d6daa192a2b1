#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "powrel/system_model.hpp"

namespace powrel {

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
};

struct SystemDraw {
  std::vector<double> lifetimes;           // nondecreasing
  std::vector<double> concomitant_powers;  // power paired with lifetimes[i]
};

/// Counter-addressable uniform stream (the SplitMix64 output function): the
/// k-th variate is a pure function of (seed, tag, k). Draws are therefore
/// reproducible and independent of how work is sharded across threads.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::string_view tag);

  /// k-th uniform variate, strictly inside (0,1).
  double uniform01(std::uint64_t counter) const;

 private:
  std::uint64_t base_;
};

/// One (lifetime, power) pair with the model's joint law, by conditional
/// inversion of the copula. Pair p consumes counters 2p and 2p+1.
std::pair<double, double> sample_pair(const SystemModel& m,
                                      const RandomStream& rng,
                                      std::uint64_t pair_index);

/// n component pairs (pair indices n*draw_index ..), sorted by lifetime with
/// powers carried along; ties keep the original component order.
SystemDraw draw_system(const SystemModel& m, const RandomStream& rng,
                       std::uint64_t draw_index);

/// Per-draw sufficient statistics for every survival-type estimate.
struct DrawSummary {
  double system_lifetime;  // r-th smallest lifetime
  double weakest_power;    // min concomitant power over ranks r..n
};

/// N draw summaries from one stream. Generation may shard across threads;
/// summary i depends only on (model, stream, i), so the batch is bit-identical
/// for any thread count.
class SampleBatch {
 public:
  SampleBatch(const SystemModel& m, std::int64_t n_draws,
              const RandomStream& rng, int threads = 1);

  std::int64_t size() const {
    return static_cast<std::int64_t>(summaries_.size());
  }
  const std::vector<DrawSummary>& summaries() const { return summaries_; }

  /// #draws with system_lifetime > t and weakest_power > w.
  std::int64_t count_exceeding(double t, double w) const;

 private:
  std::vector<DrawSummary> summaries_;
};

// Estimators over an existing batch. Ratio-type quantities reuse the same
// draws for numerator and denominator with delta-method standard errors.
Estimate batch_joint_survival(const SampleBatch& b, const SystemModel& m,
                              const EvalPoint& p);
Estimate batch_min_concomitant_survival(const SampleBatch& b,
                                        const SystemModel& m, double s);
Estimate batch_operational_reliability(const SampleBatch& b,
                                       const SystemModel& m,
                                       const EvalPoint& p);
Estimate batch_residual_life_cdf(const SampleBatch& b, const SystemModel& m,
                                 double t, double s, double x,
                                 ThresholdConvention conv);
Estimate batch_mrl(const SampleBatch& b, const SystemModel& m, double t,
                   double s, ThresholdConvention conv);

// One-call estimators; each derives its own stream from (seed, operation tag).
Estimate estimate_joint_survival(const SystemModel& m, const EvalPoint& p,
                                 std::int64_t n_samples, std::uint64_t seed,
                                 int threads = 1);
Estimate estimate_operational_reliability(const SystemModel& m,
                                          const EvalPoint& p,
                                          std::int64_t n_samples,
                                          std::uint64_t seed, int threads = 1);
Estimate estimate_residual_life_cdf(const SystemModel& m, double t, double s,
                                    double x, ThresholdConvention conv,
                                    std::int64_t n_samples, std::uint64_t seed,
                                    int threads = 1);
Estimate estimate_mrl(const SystemModel& m, double t, double s,
                      ThresholdConvention conv, std::int64_t n_samples,
                      std::uint64_t seed, int threads = 1);

}  // namespace powrel
