#include "srlab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace srlab {

namespace {

constexpr double kGuard = 1e-12;
// Computed violations must clear this relative margin so that round-off at a
// boundary point cannot register as a violation.
constexpr double kViolationMargin = 1e-12;

// a > b with a relative guard band.
bool exceeds(long double a, long double b) {
  return a - b > static_cast<long double>(kGuard) * std::max(1.0L, std::fabs(b));
}

bool clearly_greater(double a, double b) {
  return a - b > kViolationMargin * std::max({1.0, std::abs(a), std::abs(b)});
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

Matrix diag(const std::vector<double>& d) { return Matrix::diagonal(d); }

// intdim for Hermitian PSD input, else the 1-stable rank, which agrees with
// intdim for PSD matrices and is unchanged by the unitary rotations below.
double intdim_or_sr1(const Matrix& a, const Tolerances& tol) {
  if (a.square() && is_psd(a, tol)) return intrinsic_dimension(a, tol).value;
  return p_stable_rank(a, PExponent::finite(1.0)).value;
}

double sr(const Matrix& a) { return stable_rank(a).value; }

// Q A Q* for a seeded Haar unitary Q; preserves Hermitian PSD structure.
Matrix conjugate(const Matrix& a, std::uint64_t seed, ScalarField field) {
  const Matrix q = haar_unitary(a.rows(), seed, field);
  return hermitian_part(matmul(matmul(q, a), conj_transpose(q)));
}

}  // namespace

const Matrix& FamilyInstance::matrix(const std::string& key) const {
  const auto it = matrices.find(key);
  if (it == matrices.end()) throw Error("family instance has no matrix '" + key + "'");
  return it->second;
}

double FamilyInstance::max_relative_error() const {
  double worst = 0.0;
  for (const auto& [key, value] : predicted) {
    const auto it = computed.find(key);
    if (it == computed.end()) continue;
    worst = std::max(worst, std::abs(it->second - value) / std::max(1.0, std::abs(value)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Threshold predicates

bool deletion_sr_threshold(int n, double alpha) {
  // alpha > sqrt((n-1)/(n-2))  <=>  alpha^2 (n-2) > n-1
  const long double a = alpha;
  return a > 0 && exceeds(a * a * (n - 2), static_cast<long double>(n - 1));
}

bool deletion_intdim_threshold(int n, double alpha) {
  const long double a = alpha;
  return exceeds(a * (n - 2), static_cast<long double>(n - 1));
}

bool sum_violation_threshold(int n, double alpha) {
  // alpha^2 > 5(n-1)/(n-3)
  const long double a = alpha;
  return exceeds(a * a * (n - 3), 5.0L * (n - 1));
}

bool rank1_drop_threshold(int n, double beta) {
  // beta > (n-1)/(n-3)
  return exceeds(static_cast<long double>(beta) * (n - 3), static_cast<long double>(n - 1));
}

bool product_violation_threshold(double alpha) {
  return std::abs(static_cast<long double>(alpha) - 1.0L) > kGuard;
}

// ---------------------------------------------------------------------------
// Families

FamilyInstance geometric_decay(int n, double ratio, const FamilyOptions& opt) {
  require(n >= 1, "geometric_decay: n must be >= 1");
  require(ratio > 0.0 && ratio <= 1.0, "geometric_decay: ratio must lie in (0, 1]");
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j)] = std::pow(ratio, j);
  Matrix a = diag(d);
  if (opt.rotate_seed) {
    const Matrix u = haar_unitary(n, *opt.rotate_seed, opt.field);
    const Matrix v = haar_unitary(n, *opt.rotate_seed + 1, opt.field);
    a = matmul(matmul(u, a), conj_transpose(v));
  }
  FamilyInstance f;
  f.name = "geometric_decay";
  f.params = {{"n", n}, {"ratio", ratio}};
  const double r2 = ratio * ratio;
  const double limit = ratio < 1.0 ? 1.0 / (1.0 - r2) : static_cast<double>(n);
  f.predicted["sr_A"] = ratio < 1.0 ? (1.0 - std::pow(r2, n)) / (1.0 - r2) : n;
  f.predicted["numerical_rank"] = n;
  f.predicted["sr_limit"] = limit;
  f.computed["sr_A"] = sr(a);
  f.computed["numerical_rank"] = static_cast<double>(numerical_rank(a, opt.rank_tol));
  f.thresholds["sr_below_limit"] = f.predicted["sr_A"] <= limit;
  f.threshold_met = f.thresholds["sr_below_limit"];
  f.violation = false;
  if (ratio == 0.5) {
    f.predicted["sr_one_minus_1_over_n"] = (4.0 / 3.0) * (1.0 - 1.0 / n);
    f.notes =
        "For ratio 1/2 the closed form is sr = (4/3)(1 - 4^-n) (geometric series). The "
        "expression (4/3)(1 - 1/n) does not match it for any n and is listed only for "
        "comparison as sr_one_minus_1_over_n; both are bounded by 4/3.";
  }
  f.matrices.emplace("A", std::move(a));
  return f;
}

FamilyInstance deletion_family(int n, double alpha, const FamilyOptions& opt) {
  require(n >= 3, "deletion_family: n must be >= 3");
  require(alpha >= 1.0 && std::isfinite(alpha), "deletion_family: alpha must be >= 1");
  std::vector<double> d(static_cast<std::size_t>(n), 1.0);
  d.back() = alpha;
  Matrix a = diag(d);
  Matrix a_hat = delete_column(a, n - 1);
  Matrix a_hat_rowcol = delete_row_and_column(a, n - 1);
  if (opt.rotate_seed) {
    const Matrix u = haar_unitary(n, *opt.rotate_seed, opt.field);
    a = matmul(u, a);
    a_hat = matmul(u, a_hat);
  }
  FamilyInstance f;
  f.name = "deletion_family";
  f.params = {{"n", n}, {"alpha", alpha}};
  const double m = n - 1;
  f.predicted = {{"sr_A", 1.0 + m / (alpha * alpha)},
                 {"sr_A_hat", m},
                 {"intdim_A", 1.0 + m / alpha},
                 {"intdim_A_hat", m}};
  f.computed = {{"sr_A", sr(a)},
                {"sr_A_hat", sr(a_hat)},
                {"intdim_A", intdim_or_sr1(a, opt.tol)},
                {"intdim_A_hat", intdim_or_sr1(a_hat_rowcol, opt.tol)}};
  f.thresholds = {{"sr", deletion_sr_threshold(n, alpha)},
                  {"intdim", deletion_intdim_threshold(n, alpha)}};
  f.threshold_met = f.thresholds["sr"];
  f.violation = clearly_greater(f.computed["sr_A_hat"], f.computed["sr_A"]);
  f.computed["violation_intdim"] =
      clearly_greater(f.computed["intdim_A_hat"], f.computed["intdim_A"]) ? 1.0 : 0.0;
  f.notes = "A_hat deletes the trailing column; A_hat_rowcol deletes the trailing row and column.";
  f.matrices.emplace("A", std::move(a));
  f.matrices.emplace("A_hat", std::move(a_hat));
  f.matrices.emplace("A_hat_rowcol", std::move(a_hat_rowcol));
  return f;
}

FamilyInstance sum_violation_family(int n, double alpha, const FamilyOptions& opt) {
  require(n >= 4, "sum_violation_family: n must be >= 4");
  require(std::abs(alpha) >= 2.0 && std::isfinite(alpha),
          "sum_violation_family: |alpha| must be >= 2");
  std::vector<double> da(static_cast<std::size_t>(n), 2.0);
  std::vector<double> db(static_cast<std::size_t>(n), -1.0);
  da.front() = alpha;
  db.front() = -alpha;
  Matrix a = diag(da);
  Matrix b = diag(db);
  if (opt.rotate_seed) {
    a = conjugate(a, *opt.rotate_seed, opt.field);
    b = conjugate(b, *opt.rotate_seed, opt.field);
  }
  Matrix s = add(a, b);
  FamilyInstance f;
  f.name = "sum_violation_family";
  f.params = {{"n", n}, {"alpha", alpha}};
  const double m = n - 1;
  const double a2 = alpha * alpha;
  f.predicted = {{"sr_A", 1.0 + 4.0 * m / a2},
                 {"sr_B", 1.0 + m / a2},
                 {"sr_sum", m},
                 {"lambda_min_B", std::min(-alpha, -1.0)}};
  f.computed = {{"sr_A", sr(a)},
                {"sr_B", sr(b)},
                {"sr_sum", sr(s)},
                {"lambda_min_B", hermitian_eigenvalues(b, opt.tol).smallest()}};
  f.thresholds = {{"sr", sum_violation_threshold(n, alpha)}};
  f.threshold_met = f.thresholds["sr"];
  f.violation =
      clearly_greater(f.computed["sr_sum"], f.computed["sr_A"] + f.computed["sr_B"]);
  f.notes = "A and B are not both positive semi-definite, so the PSD sum bound does not apply.";
  f.matrices.emplace("A", std::move(a));
  f.matrices.emplace("B", std::move(b));
  f.matrices.emplace("A_plus_B", std::move(s));
  return f;
}

FamilyInstance rank1_drop_family(int n, double beta, const FamilyOptions& opt) {
  require(n >= 4, "rank1_drop_family: n must be >= 4");
  require(beta >= 1.0 && std::isfinite(beta), "rank1_drop_family: beta must be >= 1");
  std::vector<double> da(static_cast<std::size_t>(n), 1.0);
  std::vector<double> db(static_cast<std::size_t>(n), 0.0);
  da.front() = 0.0;
  db.front() = beta;
  Matrix a = diag(da);
  Matrix b = diag(db);
  if (opt.rotate_seed) {
    a = conjugate(a, *opt.rotate_seed, opt.field);
    b = conjugate(b, *opt.rotate_seed, opt.field);
  }
  Matrix s = hermitian_part(add(a, b));
  FamilyInstance f;
  f.name = "rank1_drop_family";
  f.params = {{"n", n}, {"beta", beta}};
  const double m = n - 1;
  f.predicted = {{"intdim_A", m},
                 {"intdim_B", 1.0},
                 {"intdim_sum", 1.0 + m / beta},
                 {"intdim_drop", m - (1.0 + m / beta)},
                 {"rank_B", 1.0}};
  const double id_a = intrinsic_dimension(a, opt.tol).value;
  const double id_s = intrinsic_dimension(s, opt.tol).value;
  f.computed = {{"intdim_A", id_a},
                {"intdim_B", intrinsic_dimension(b, opt.tol).value},
                {"intdim_sum", id_s},
                {"intdim_drop", id_a - id_s},
                {"rank_B", static_cast<double>(numerical_rank(b, opt.rank_tol))}};
  f.thresholds = {{"intdim", rank1_drop_threshold(n, beta)}};
  f.threshold_met = f.thresholds["intdim"];
  f.violation = clearly_greater(id_a - id_s, 1.0);
  f.matrices.emplace("A", std::move(a));
  f.matrices.emplace("B", std::move(b));
  f.matrices.emplace("A_plus_B", std::move(s));
  return f;
}

FamilyInstance product_violation_family(int n, double alpha, const FamilyOptions& opt) {
  require(n >= 2, "product_violation_family: n must be >= 2");
  require(alpha > 0.0 && std::isfinite(alpha), "product_violation_family: alpha must be > 0");
  std::vector<double> da(static_cast<std::size_t>(n), 1.0);
  std::vector<double> db(static_cast<std::size_t>(n), 1.0);
  da.back() = alpha;
  db.back() = 1.0 / alpha;
  Matrix a = diag(da);
  Matrix b = diag(db);
  if (opt.rotate_seed) {
    const Matrix u = haar_unitary(n, *opt.rotate_seed, opt.field);
    const Matrix w = haar_unitary(n, *opt.rotate_seed + 1, opt.field);
    const Matrix v = haar_unitary(n, *opt.rotate_seed + 2, opt.field);
    a = matmul(matmul(u, a), conj_transpose(w));
    b = matmul(matmul(w, b), conj_transpose(v));
  }
  Matrix ab = matmul(a, b);
  FamilyInstance f;
  f.name = "product_violation_family";
  f.params = {{"n", n}, {"alpha", alpha}};
  const double m = n - 1;
  const double a2 = alpha * alpha;
  f.predicted = {{"sr_A", (m + a2) / std::max(1.0, a2)},
                 {"sr_B", (m + 1.0 / a2) / std::max(1.0, 1.0 / a2)},
                 {"sr_AB", n},
                 {"intdim_A", (m + alpha) / std::max(1.0, alpha)},
                 {"intdim_B", (m + 1.0 / alpha) / std::max(1.0, 1.0 / alpha)},
                 {"intdim_AB", n}};
  f.computed = {{"sr_A", sr(a)},
                {"sr_B", sr(b)},
                {"sr_AB", sr(ab)},
                {"intdim_A", intdim_or_sr1(a, opt.tol)},
                {"intdim_B", intdim_or_sr1(b, opt.tol)},
                {"intdim_AB", intdim_or_sr1(ab, opt.tol)}};
  f.thresholds = {{"sr", product_violation_threshold(alpha)},
                  {"intdim", product_violation_threshold(alpha)}};
  f.threshold_met = f.thresholds["sr"];
  f.violation = clearly_greater(f.computed["sr_AB"],
                                std::max(f.computed["sr_A"], f.computed["sr_B"]));
  f.computed["violation_intdim"] =
      clearly_greater(f.computed["intdim_AB"],
                      std::max(f.computed["intdim_A"], f.computed["intdim_B"]))
          ? 1.0
          : 0.0;
  f.notes = "For alpha < 1 the roles of A and B swap; the violation occurs for every alpha != 1.";
  f.matrices.emplace("A", std::move(a));
  f.matrices.emplace("B", std::move(b));
  f.matrices.emplace("AB", std::move(ab));
  return f;
}

FamilyInstance cross_gap_family(int n, double alpha, const FamilyOptions& opt) {
  require(n >= 2, "cross_gap_family: n must be >= 2");
  require(alpha > 0.0 && alpha <= 1.0, "cross_gap_family: alpha must lie in (0, 1]");
  std::vector<double> d(static_cast<std::size_t>(n), alpha);
  d.front() = 1.0;
  Matrix a = diag(d);
  if (opt.rotate_seed) a = conjugate(a, *opt.rotate_seed, opt.field);
  Matrix g = hermitian_part(matmul(conj_transpose(a), a));
  FamilyInstance f;
  f.name = "cross_gap_family";
  f.params = {{"n", n}, {"alpha", alpha}};
  const double m = n - 1;
  f.predicted = {{"sr_A", 1.0 + m * alpha * alpha},
                 {"sr_AstarA", 1.0 + m * std::pow(alpha, 4)},
                 {"intdim_A", 1.0 + m * alpha},
                 {"intdim_AstarA", 1.0 + m * alpha * alpha}};
  f.computed = {{"sr_A", sr(a)},
                {"sr_AstarA", sr(g)},
                {"intdim_A", intrinsic_dimension(a, opt.tol).value},
                {"intdim_AstarA", intrinsic_dimension(g, opt.tol).value}};
  f.thresholds = {{"strict_gap", alpha < 1.0}};
  f.threshold_met = alpha < 1.0;
  f.violation = clearly_greater(f.computed["sr_A"], f.computed["sr_AstarA"]);
  f.matrices.emplace("A", std::move(a));
  f.matrices.emplace("AstarA", std::move(g));
  return f;
}

FamilyInstance maximizer_multiplier(const Matrix& a, double rtol) {
  require(a.square(), "maximizer_multiplier: A must be square");
  const Svd dec = svd(a);
  const auto r = numerical_rank(dec.sigma, rtol);
  require(r >= 1, "maximizer_multiplier: A must be non-zero");
  const Eigen::Index n = a.rows();
  Eigen::VectorXcd scale = Eigen::VectorXcd::Ones(n);
  for (std::size_t j = 0; j < r; ++j) {
    scale(static_cast<Eigen::Index>(j)) = 1.0 / dec.sigma.values[j];
  }
  const ScalarField field = a.field();
  DenseComplex bm = dec.v * scale.asDiagonal();
  Matrix b = field == ScalarField::real ? Matrix(DenseReal(bm.real())) : Matrix(bm, field);
  Matrix ab = matmul(a, b);
  FamilyInstance f;
  f.name = "maximizer_multiplier";
  f.params = {{"n", n}, {"rank", static_cast<double>(r)}, {"rtol", rtol}};
  f.predicted = {{"sr_AB", static_cast<double>(r)}};
  f.computed = {{"sr_A", sr(a)}, {"sr_AB", sr(ab)}};
  f.thresholds = {{"sr_A_at_most_sr_AB", true}};
  f.threshold_met = true;
  f.violation = clearly_greater(f.computed["sr_A"], f.computed["sr_AB"]);
  f.matrices.emplace("A", a);
  f.matrices.emplace("B", std::move(b));
  f.matrices.emplace("AB", std::move(ab));
  return f;
}

FamilyInstance minimizer_multiplier(const Matrix& a, double alpha, double rtol) {
  require(a.square(), "minimizer_multiplier: A must be square");
  require(alpha > 0.0 && alpha <= 1.0, "minimizer_multiplier: alpha must lie in (0, 1]");
  const Svd dec = svd(a);
  const auto r = numerical_rank(dec.sigma, rtol);
  require(r >= 2, "minimizer_multiplier: A must have rank >= 2");
  const Eigen::Index n = a.rows();
  Eigen::VectorXcd scale = Eigen::VectorXcd::Ones(n);
  scale(0) = 1.0 / dec.sigma.values[0];
  for (std::size_t j = 1; j < r; ++j) {
    scale(static_cast<Eigen::Index>(j)) = alpha / dec.sigma.values[j];
  }
  DenseComplex bm = dec.v * scale.asDiagonal();
  Matrix b = a.is_real() ? Matrix(DenseReal(bm.real())) : Matrix(bm, a.field());
  Matrix ab = matmul(a, b);
  FamilyInstance f;
  f.name = "minimizer_multiplier";
  f.params = {{"n", n}, {"alpha", alpha}, {"rank", static_cast<double>(r)}, {"rtol", rtol}};
  f.predicted = {{"sr_AB", 1.0 + static_cast<double>(r - 1) * alpha * alpha}};
  f.computed = {{"sr_A", sr(a)}, {"sr_AB", sr(ab)}};
  f.thresholds = {{"alpha_below_one", alpha < 1.0}};
  f.threshold_met = alpha < 1.0;
  f.violation = false;
  f.matrices.emplace("A", a);
  f.matrices.emplace("B", std::move(b));
  f.matrices.emplace("AB", std::move(ab));
  return f;
}

namespace {

FamilyInstance congruence(const Matrix& a, std::optional<double> alpha, double rtol,
                          const Tolerances& tol) {
  const std::string name = alpha ? "congruence_minimizer" : "congruence_maximizer";
  require(a.square(), name + ": A must be square");
  if (!is_psd(a, tol)) throw PreconditionError(name + ": A must be PSD", 0.0);
  const HermitianEigen eig = hermitian_eigen(a, tol);
  Spectrum lambda = eig.lambda;
  for (double& v : lambda.values) v = std::max(v, 0.0);
  lambda.kind = SpectrumKind::singular;
  const auto r = numerical_rank(lambda, rtol);
  require(r >= (alpha ? 2u : 1u), name + (alpha ? ": A must have rank >= 2" : ": A must be non-zero"));
  const Eigen::Index n = a.rows();
  Eigen::VectorXcd scale = Eigen::VectorXcd::Ones(n);
  for (std::size_t j = 0; j < r; ++j) {
    const double weight = (alpha && j > 0) ? *alpha : 1.0;
    scale(static_cast<Eigen::Index>(j)) = std::sqrt(weight / lambda.values[j]);
  }
  DenseComplex bm = eig.vectors * scale.asDiagonal() * eig.vectors.adjoint();
  Matrix b = a.is_real() ? hermitian_part(Matrix(DenseReal(bm.real())))
                         : hermitian_part(Matrix(bm, a.field()));
  Matrix bab = hermitian_part(matmul(matmul(conj_transpose(b), a), b));
  FamilyInstance f;
  f.name = name;
  f.params = {{"n", n}, {"rank", static_cast<double>(r)}, {"rtol", rtol}};
  const double rr = static_cast<double>(r);
  if (alpha) {
    f.params["alpha"] = *alpha;
    f.predicted = {{"intdim_BstarAB", 1.0 + (rr - 1.0) * *alpha}};
    f.thresholds = {{"alpha_below_one", *alpha < 1.0}};
    f.threshold_met = *alpha < 1.0;
  } else {
    f.predicted = {{"intdim_BstarAB", rr}};
    f.thresholds = {{"intdim_A_at_most_r", true}};
    f.threshold_met = true;
  }
  f.computed = {{"intdim_A", intrinsic_dimension(a, tol).value},
                {"intdim_BstarAB", intrinsic_dimension(bab, tol).value}};
  f.violation = false;
  f.matrices.emplace("A", a);
  f.matrices.emplace("B", std::move(b));
  f.matrices.emplace("BstarAB", std::move(bab));
  return f;
}

}  // namespace

FamilyInstance congruence_maximizer(const Matrix& a, double rtol, const Tolerances& tol) {
  return congruence(a, std::nullopt, rtol, tol);
}

FamilyInstance congruence_minimizer(const Matrix& a, double alpha, double rtol,
                                    const Tolerances& tol) {
  require(alpha > 0.0 && alpha <= 1.0, "congruence_minimizer: alpha must lie in (0, 1]");
  return congruence(a, alpha, rtol, tol);
}

const char* to_string(EqualityKind kind) {
  switch (kind) {
    case EqualityKind::rank1: return "rank1";
    case EqualityKind::scaled_unitary: return "scaled_unitary";
    case EqualityKind::flat_spectrum: return "flat_spectrum";
    case EqualityKind::projector: return "projector";
  }
  return "unknown";
}

EqualityKind equality_kind_from_string(const std::string& name) {
  for (EqualityKind k : {EqualityKind::rank1, EqualityKind::scaled_unitary,
                         EqualityKind::flat_spectrum, EqualityKind::projector}) {
    if (name == to_string(k)) return k;
  }
  throw Error("unknown equality case: " + name);
}

FamilyInstance equality_cases(EqualityKind kind, int n, const PExponent& p, int r,
                              std::uint64_t seed) {
  require(n >= 1, "equality_cases: n must be >= 1");
  SampleSpec spec;
  spec.m = n;
  spec.n = n;
  spec.seed = seed;
  int rank = 1;
  Matrix a = Matrix::identity(n);
  switch (kind) {
    case EqualityKind::rank1: {
      spec.kind = SampleKind::prescribed_spectrum;
      spec.spectrum = std::vector<double>{1.7};
      a = sample(spec);
      break;
    }
    case EqualityKind::scaled_unitary:
      a = scale(haar_unitary(n, seed), 3.0);
      rank = n;
      break;
    case EqualityKind::flat_spectrum:
      require(r >= 1 && r <= n, "equality_cases: need 1 <= r <= n");
      spec.kind = SampleKind::prescribed_spectrum;
      spec.spectrum = std::vector<double>(static_cast<std::size_t>(r), 2.5);
      a = sample(spec);
      rank = r;
      break;
    case EqualityKind::projector:
      require(r >= 1 && r <= n, "equality_cases: need 1 <= r <= n");
      spec.kind = SampleKind::orthogonal_projector;
      spec.rank = r;
      a = sample(spec);
      rank = r;
      break;
  }
  FamilyInstance f;
  f.name = std::string("equality_") + to_string(kind);
  f.params = {{"n", n}, {"r", rank}};
  f.p = p;
  // sr_inf is identically 1; every other exponent reproduces the rank.
  f.predicted = {{"sr_p", p.is_infinity() ? 1.0 : static_cast<double>(rank)},
                 {"rank", static_cast<double>(rank)}};
  f.computed = {{"sr_p", p_stable_rank(a, p).value},
                {"rank", static_cast<double>(numerical_rank(a))}};
  if (kind == EqualityKind::projector) {
    f.predicted["trace"] = rank;
    f.computed["trace"] = trace(a).real();
  }
  f.thresholds = {{"equality", true}};
  f.threshold_met = true;
  f.matrices.emplace("A", std::move(a));
  return f;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "geometric_decay",          "deletion_family",  "sum_violation_family",
      "rank1_drop_family",        "product_violation_family", "cross_gap_family"};
  return names;
}

FamilyInstance make_family(const std::string& name, const std::map<std::string, double>& params,
                           const FamilyOptions& opt) {
  auto get = [&](const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw Error(name + ": missing parameter '" + key + "'");
    return it->second;
  };
  auto get_n = [&]() {
    const double n = get("n");
    if (n != std::floor(n) || n < 1 || n > 1e6) throw Error(name + ": n must be a positive integer");
    return static_cast<int>(n);
  };
  if (name == "geometric_decay") return geometric_decay(get_n(), get("ratio"), opt);
  if (name == "deletion_family") return deletion_family(get_n(), get("alpha"), opt);
  if (name == "sum_violation_family") return sum_violation_family(get_n(), get("alpha"), opt);
  if (name == "rank1_drop_family") return rank1_drop_family(get_n(), get("beta"), opt);
  if (name == "product_violation_family") {
    return product_violation_family(get_n(), get("alpha"), opt);
  }
  if (name == "cross_gap_family") return cross_gap_family(get_n(), get("alpha"), opt);
  throw Error("unknown family: " + name);
}

}  // namespace srlab
