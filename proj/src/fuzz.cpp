#include "srlab/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace srlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Inputs for one trial, all derived from a single seeded generator.
class TrialSampler {
 public:
  TrialSampler(const FuzzConfig& config, std::uint64_t seed)
      : config_(config), rng_(seed) {
    field_ = coin(0.25) ? ScalarField::complex : ScalarField::real;
  }

  std::uint64_t sub_seed() { return rng_(); }
  int dim() { return std::uniform_int_distribution<int>(1, config_.dims_max)(rng_); }
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  SampleKind pick_kind() {
    const auto& kinds = config_.distributions;
    return kinds[static_cast<std::size_t>(between(0, static_cast<int>(kinds.size()) - 1))];
  }

  // Descending spectrum of length k: random decay over up to six orders of
  // magnitude, an overall scale in [1e-3, 1e3], and sometimes a zero tail.
  std::vector<double> random_spectrum(int k) {
    const double scale = std::pow(10.0, uniform(-3.0, 3.0));
    const double span = uniform(0.0, 6.0);
    std::vector<double> s(static_cast<std::size_t>(k));
    for (double& v : s) v = scale * std::pow(10.0, -uniform(0.0, span));
    std::sort(s.begin(), s.end(), std::greater<>());
    s.front() = scale;
    if (k > 1 && coin(0.3)) {
      const int rank = between(1, k - 1);
      std::fill(s.begin() + rank, s.end(), 0.0);
    }
    return s;
  }

  Matrix general(SampleKind kind, int m, int n) {
    SampleSpec spec;
    spec.kind = kind;
    spec.m = m;
    spec.n = n;
    spec.field = field_;
    spec.seed = sub_seed();
    switch (kind) {
      case SampleKind::gaussian:
        break;
      case SampleKind::psd_gram:
        spec.m = dim();
        break;
      case SampleKind::prescribed_spectrum:
        spec.spectrum = random_spectrum(std::min(m, n));
        break;
      case SampleKind::rank1_psd:
        spec.m = n;
        break;
      case SampleKind::orthogonal_projector:
        spec.m = n;
        spec.rank = between(1, n);
        break;
    }
    return sample(spec);
  }

  Matrix psd(SampleKind kind, int n) {
    switch (kind) {
      case SampleKind::gaussian:
      case SampleKind::psd_gram:
        return general(SampleKind::psd_gram, n, n);
      case SampleKind::prescribed_spectrum: {
        const std::vector<double> s = random_spectrum(n);
        const Matrix q = haar_unitary(n, sub_seed(), field_);
        const Matrix d = Matrix::diagonal(s);
        return hermitian_part(matmul(matmul(q, d), conj_transpose(q)));
      }
      case SampleKind::rank1_psd:
      case SampleKind::orthogonal_projector:
        return general(kind, n, n);
    }
    throw Error("unhandled sample kind");
  }

  Matrix rank1(int n) { return general(SampleKind::rank1_psd, n, n); }

  // Square matrix with condition number at most 1e4.
  Matrix nonsingular(int m) {
    std::vector<double> s(static_cast<std::size_t>(m));
    const double span = uniform(0.0, 4.0);
    for (double& v : s) v = std::pow(10.0, -uniform(0.0, span));
    std::sort(s.begin(), s.end(), std::greater<>());
    SampleSpec spec;
    spec.kind = SampleKind::prescribed_spectrum;
    spec.m = m;
    spec.n = m;
    spec.field = field_;
    spec.seed = sub_seed();
    spec.spectrum = s;
    return sample(spec);
  }

  // E with |E|_2 = eps |A|_2, PSD when requested.
  Matrix perturbation(const Matrix& a, bool psd_direction, double eps) {
    const Matrix base = psd_direction
                            ? psd(pick_kind(), static_cast<int>(a.rows()))
                            : general(SampleKind::gaussian, static_cast<int>(a.rows()),
                                      static_cast<int>(a.cols()));
    const double nb = two_norm(base);
    const double na = two_norm(a);
    if (nb == 0.0 || na == 0.0) return scale(base, 0.0);
    return psd_direction ? hermitian_part(scale(base, eps * na / nb))
                         : scale(base, eps * na / nb);
  }

 private:
  const FuzzConfig& config_;
  std::mt19937_64 rng_;
  ScalarField field_;
};

bool wants(const FuzzConfig& config, const std::string& name) {
  return std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

}  // namespace

void FuzzConfig::validate() const {
  if (trials < 1) throw Error("fuzz: trials must be >= 1");
  if (dims_max < 1) throw Error("fuzz: dims_max must be >= 1");
  if (p_grid.empty()) throw Error("fuzz: p_grid must not be empty");
  if (distributions.empty()) throw Error("fuzz: at least one distribution is required");
  if (checks.empty()) throw Error("fuzz: at least one check is required");
  const auto& known = checker_names();
  for (const auto& c : checks) {
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      throw Error("fuzz: unknown check '" + c + "'");
    }
  }
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
  return splitmix64(seed ^ splitmix64(trial_index));
}

std::vector<CheckReport> run_trial(const FuzzConfig& config, std::uint64_t seed) {
  TrialSampler s(config, seed);
  const SampleKind kind = s.pick_kind();
  const int m = s.dim();
  const int n = s.dim();

  // Every input is drawn up front, in a fixed order, so the set of enabled
  // checks does not change what a given seed produces.
  const Matrix general = s.general(kind, m, n);
  const SampleKind other_kind = s.pick_kind();
  const int other_m = s.dim();
  const int other_n = s.dim();
  const Matrix other = s.general(other_kind, other_m, other_n);
  const Matrix psd_a = s.psd(kind, n);
  const Matrix psd_b = s.psd(s.pick_kind(), n);
  const Matrix rank1 = s.rank1(n);
  const Matrix nonsingular = s.nonsingular(static_cast<int>(general.rows()));
  const double eps = s.uniform(0.0, 0.95);
  const bool psd_pair = s.coin(0.5);
  const Matrix& pert_base = psd_pair ? psd_a : general;
  const Matrix pert = s.perturbation(pert_base, psd_pair, eps);
  const int split = n > 1 ? s.between(1, n - 1) : 1;
  const int drop = general.cols() > 1 ? s.between(0, static_cast<int>(general.cols()) - 1) : 0;

  const std::span<const PExponent> ps(config.p_grid);
  std::vector<CheckReport> out;
  if (wants(config, "check_weyl")) out.push_back(check_weyl(psd_a, psd_b));
  if (wants(config, "check_intdim_subadditive")) {
    out.push_back(check_intdim_subadditive(psd_a, psd_b));
  }
  if (wants(config, "check_sum_subadditivity_proot")) {
    append(out, check_sum_subadditivity_proot(psd_a, psd_b, ps));
  }
  if (wants(config, "check_rank1_addition")) append(out, check_rank1_addition(psd_a, rank1, ps));
  if (wants(config, "check_product_kappa")) {
    append(out, check_product_kappa(nonsingular, general, ps));
  }
  if (wants(config, "check_cross_product")) append(out, check_cross_product(general, ps));
  if (wants(config, "check_perturbation")) append(out, check_perturbation(pert_base, pert, ps));
  if (wants(config, "check_block_diag_sr")) out.push_back(check_block_diag_sr(general, other));
  if (wants(config, "check_block_intdim")) out.push_back(check_block_intdim(psd_a, split));
  if (wants(config, "check_deletion")) out.push_back(check_deletion(general, drop));
  if (wants(config, "check_cholesky_intdim")) out.push_back(check_cholesky_intdim(psd_a));
  return out;
}

unsigned resolve_parallelism(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SRLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunReport run_fuzz(const FuzzConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t trials = config.trials;
  std::vector<std::vector<CheckReport>> results(trials);
  std::atomic<std::uint64_t> next{0};
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_parallelism(config.parallelism), trials));

  auto work = [&]() {
    for (std::uint64_t i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
      results[i] = run_trial(config, trial_seed(config.seed, i));
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  // Reduction in trial order, independent of completion order.
  RunReport report;
  report.config = config;
  for (const auto& name : config.checks) report.checks[name];
  for (std::uint64_t i = 0; i < trials; ++i) {
    const std::uint64_t seed = trial_seed(config.seed, i);
    for (CheckReport& r : results[i]) {
      CheckAggregate& agg = report.checks[r.name];
      ++agg.total_count;
      if (!r.preconditions_met) continue;
      ++agg.applicable_count;
      if (r.holds) ++agg.pass_count;
      if (!agg.has_min || r.slack < agg.min_slack) {
        agg.min_slack = r.slack;
        agg.argmin_instance_seed = seed;
        agg.has_min = true;
      }
      if (!r.holds) report.failures.push_back({i, seed, std::move(r)});
    }
    results[i].clear();
    results[i].shrink_to_fit();
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace srlab
