#ifndef SRLAB_FUZZ_HPP
#define SRLAB_FUZZ_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "srlab/matrix.hpp"
#include "srlab/schatten.hpp"
#include "srlab/theorems.hpp"

namespace srlab {

struct FuzzConfig {
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  int dims_max = 20;
  std::vector<SampleKind> distributions = {
      SampleKind::gaussian, SampleKind::psd_gram, SampleKind::prescribed_spectrum,
      SampleKind::rank1_psd, SampleKind::orthogonal_projector};
  std::vector<PExponent> p_grid = {PExponent::finite(1.0), PExponent::finite(1.5),
                                   PExponent::finite(2.0), PExponent::finite(3.0),
                                   PExponent::finite(10.0), PExponent::infinity()};
  std::vector<std::string> checks = checker_names();
  // 0 = SRLAB_THREADS if set, else the hardware concurrency.
  unsigned parallelism = 0;

  void validate() const;
};

struct CheckAggregate {
  std::uint64_t total_count = 0;
  std::uint64_t applicable_count = 0;
  std::uint64_t pass_count = 0;
  double min_slack = 0.0;
  std::uint64_t argmin_instance_seed = 0;
  bool has_min = false;
};

struct FuzzFailure {
  std::uint64_t trial_index = 0;
  std::uint64_t trial_seed = 0;
  CheckReport report;
};

struct RunReport {
  FuzzConfig config;
  std::map<std::string, CheckAggregate> checks;
  std::vector<FuzzFailure> failures;
  double wall_time = 0.0;  // seconds

  std::uint64_t failure_count() const { return failures.size(); }
};

// Per-trial seed: a SplitMix64 scramble of seed and trial index, so trials
// can run in any order.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index);

// Samples the inputs of one trial from `seed` and runs every configured
// checker across the p-grid. Re-running with a failure's trial_seed
// reproduces its inputs exactly.
std::vector<CheckReport> run_trial(const FuzzConfig& config, std::uint64_t seed);

// Resolves the worker count from the config and SRLAB_THREADS.
unsigned resolve_parallelism(unsigned requested);

RunReport run_fuzz(const FuzzConfig& config);

}  // namespace srlab

#endif  // SRLAB_FUZZ_HPP
