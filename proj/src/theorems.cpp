#include "srlab/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace srlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Side {
  std::string name;
  double lhs;
  double rhs;
};

double magnitude(double lhs, double rhs) {
  double m = 1.0;
  if (std::isfinite(lhs)) m = std::max(m, std::abs(lhs));
  if (std::isfinite(rhs)) m = std::max(m, std::abs(rhs));
  return m;
}

double side_slack(const Side& s) {
  if (s.rhs == kInf || s.lhs == -kInf) return kInf;
  return s.rhs - s.lhs;
}

CheckReport finish(std::string name, const std::vector<Side>& sides,
                   std::map<std::string, double> details) {
  CheckReport r;
  r.name = std::move(name);
  r.details = std::move(details);
  const Side* binding = &sides.front();
  double worst = side_slack(*binding) / magnitude(binding->lhs, binding->rhs);
  for (const Side& s : sides) {
    const double slack = side_slack(s);
    if (sides.size() > 1) r.details["slack_" + s.name] = slack;
    const double normalized = slack / magnitude(s.lhs, s.rhs);
    if (normalized < worst) {
      worst = normalized;
      binding = &s;
    }
  }
  r.lhs = binding->lhs;
  r.rhs = binding->rhs;
  r.slack = side_slack(*binding);
  r.holds = r.slack >= -kSlackTol * magnitude(r.lhs, r.rhs);
  if (sides.size() > 1) r.note = "binding side: " + binding->name;
  return r;
}

CheckReport not_applicable(std::string name, std::string why,
                           std::map<std::string, double> details = {}) {
  CheckReport r;
  r.name = std::move(name);
  r.preconditions_met = false;
  r.holds = true;
  r.slack = 0.0;
  r.note = std::move(why);
  r.details = std::move(details);
  return r;
}

// Singular spectrum of a matrix together with its PSD classification. For
// PSD input the spectrum comes from the (cheaper) Hermitian eigensolver.
struct Analysis {
  Spectrum singular;
  bool psd = false;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double trace = 0.0;
};

Analysis analyze(const Matrix& a, const Tolerances& tol, bool want_psd) {
  Analysis out;
  if (want_psd && a.square() && is_hermitian(a, tol)) {
    Spectrum lambda = hermitian_eigenvalues(a, tol);
    out.lambda_max = lambda.largest();
    out.lambda_min = lambda.smallest();
    out.psd = out.lambda_min >= -tol.psd_negativity * std::max(1.0, out.lambda_max);
    out.trace = trace(a).real();
    if (out.psd) {
      for (double& v : lambda.values) v = std::max(v, 0.0);
      lambda.kind = SpectrumKind::singular;
      out.singular = std::move(lambda);
      return out;
    }
  }
  out.singular = singular_values(a);
  return out;
}

double intdim_of(const Analysis& a) {
  const double norm = a.singular.largest();
  return norm == 0.0 ? 0.0 : a.trace / norm;
}

// trace / two-norm without a PSD test; used on principal blocks of a PSD
// matrix, which inherit semi-definiteness.
double trace_over_norm(const Matrix& a) {
  const double norm = two_norm(a);
  return norm == 0.0 ? 0.0 : trace(a).real() / norm;
}

bool same_shape(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

std::vector<PExponent> single(const PExponent& p) { return {p}; }

std::string p_note(const PExponent& p) { return "p = " + p.to_string(); }

void put_p(std::map<std::string, double>& d, const PExponent& p) { d["p"] = p.value(); }

}  // namespace

std::string CheckReport::status() const {
  if (!preconditions_met) return "not-applicable";
  return holds ? "holds" : "fails";
}

const std::vector<std::string>& checker_names() {
  static const std::vector<std::string> names = {
      "check_weyl",           "check_intdim_subadditive", "check_sum_subadditivity_proot",
      "check_rank1_addition", "check_product_kappa",      "check_cross_product",
      "check_perturbation",   "check_block_diag_sr",      "check_block_intdim",
      "check_deletion",       "check_cholesky_intdim"};
  return names;
}

bool checker_uses_p(const std::string& name) {
  return name == "check_sum_subadditivity_proot" || name == "check_rank1_addition" ||
         name == "check_product_kappa" || name == "check_cross_product" ||
         name == "check_perturbation";
}

// ---------------------------------------------------------------------------

CheckReport check_weyl(const Matrix& a, const Matrix& b, const CheckOptions& opt) {
  const std::string name = "check_weyl";
  if (!a.square() || !same_shape(a, b)) return not_applicable(name, "A and B must be n x n");
  const Analysis ea = analyze(a, opt.tol, true);
  const Analysis eb = analyze(b, opt.tol, true);
  if (!ea.psd || !eb.psd) {
    return not_applicable(name, "A and B must be Hermitian positive semi-definite",
                          {{"lambda_min_A", ea.lambda_min}, {"lambda_min_B", eb.lambda_min}});
  }
  const Spectrum sum = hermitian_eigenvalues(add(a, b), opt.tol);
  const double l1_sum = sum.largest();
  const double l1_a = ea.lambda_max;
  const double ln_b = eb.lambda_min;
  return finish(name,
                {{"upper", l1_a + ln_b, l1_sum}, {"lower", l1_a, l1_a + ln_b}},
                {{"lambda1_sum", l1_sum}, {"lambda1_A", l1_a}, {"lambda_n_B", ln_b}});
}

CheckReport check_intdim_subadditive(const Matrix& a, const Matrix& b,
                                     const CheckOptions& opt) {
  const std::string name = "check_intdim_subadditive";
  if (!a.square() || !same_shape(a, b)) return not_applicable(name, "A and B must be n x n");
  const Analysis ea = analyze(a, opt.tol, true);
  const Analysis eb = analyze(b, opt.tol, true);
  if (!ea.psd || !eb.psd) return not_applicable(name, "A and B must be PSD");
  if (ea.lambda_max <= 0.0 || eb.lambda_max <= 0.0) {
    return not_applicable(name, "A and B must be non-zero");
  }
  const Analysis es = analyze(add(a, b), opt.tol, true);
  const double id_a = intdim_of(ea);
  const double id_b = intdim_of(eb);
  const double id_s = intdim_of(es);
  return finish(name, {{"sum", id_s, id_a + id_b}},
                {{"intdim_A", id_a}, {"intdim_B", id_b}, {"intdim_sum", id_s}});
}

std::vector<CheckReport> check_sum_subadditivity_proot(const Matrix& a, const Matrix& b,
                                                       std::span<const PExponent> ps,
                                                       const CheckOptions& opt) {
  const std::string name = "check_sum_subadditivity_proot";
  std::vector<CheckReport> out;
  auto all_na = [&](const std::string& why) {
    for (const PExponent& p : ps) {
      std::map<std::string, double> d;
      put_p(d, p);
      out.push_back(not_applicable(name, why, d));
    }
    return out;
  };
  if (!a.square() || !same_shape(a, b)) return all_na("A and B must be n x n");
  const Analysis ea = analyze(a, opt.tol, true);
  const Analysis eb = analyze(b, opt.tol, true);
  if (!ea.psd || !eb.psd) return all_na("A and B must be PSD");
  if (ea.lambda_max <= 0.0 || eb.lambda_max <= 0.0) return all_na("A and B must be non-zero");
  const Analysis es = analyze(add(a, b), opt.tol, true);
  for (const PExponent& p : ps) {
    std::map<std::string, double> d;
    put_p(d, p);
    if (!p.is_finite() || p.value() < 1.0) {
      out.push_back(not_applicable(name, "requires finite p >= 1", d));
      continue;
    }
    const double ra = p_stable_rank_root(ea.singular, p);
    const double rb = p_stable_rank_root(eb.singular, p);
    const double rs = p_stable_rank_root(es.singular, p);
    d["root_A"] = ra;
    d["root_B"] = rb;
    d["root_sum"] = rs;
    CheckReport r = finish(name, {{"sum", rs, ra + rb}}, d);
    r.note = p_note(p);
    out.push_back(std::move(r));
  }
  return out;
}

CheckReport check_sum_subadditivity_proot(const Matrix& a, const Matrix& b,
                                          const PExponent& p, const CheckOptions& opt) {
  return check_sum_subadditivity_proot(a, b, single(p), opt).front();
}

std::vector<CheckReport> check_rank1_addition(const Matrix& a, const Matrix& b,
                                              std::span<const PExponent> ps,
                                              const CheckOptions& opt) {
  const std::string name = "check_rank1_addition";
  std::vector<CheckReport> out;
  auto all_na = [&](const std::string& why, std::map<std::string, double> extra = {}) {
    for (const PExponent& p : ps) {
      std::map<std::string, double> d = extra;
      put_p(d, p);
      out.push_back(not_applicable(name, why, d));
    }
    return out;
  };
  if (!a.square() || !same_shape(a, b)) return all_na("A and B must be n x n");
  const Analysis ea = analyze(a, opt.tol, true);
  const Analysis eb = analyze(b, opt.tol, true);
  if (!ea.psd || !eb.psd) return all_na("A and B must be PSD");
  const auto rank_b = numerical_rank(eb.singular, opt.rank_tol);
  if (rank_b != 1) {
    return all_na("B must have rank one", {{"rank_B", static_cast<double>(rank_b)}});
  }
  const Analysis es = analyze(add(a, b), opt.tol, true);
  for (const PExponent& p : ps) {
    std::map<std::string, double> d;
    put_p(d, p);
    if (!p.is_norm()) {
      out.push_back(not_applicable(name, "requires p >= 1", d));
      continue;
    }
    const double ra = p_stable_rank_root(ea.singular, p);
    const double rs = p_stable_rank_root(es.singular, p);
    d["root_A"] = ra;
    d["root_sum"] = rs;
    d["rank_B"] = 1.0;
    if (p.is_finite() && p.value() == 1.0) {
      d["intdim_A"] = intdim_of(ea);
      d["intdim_sum"] = intdim_of(es);
    }
    CheckReport r = finish(name, {{"increase", rs - ra, 1.0}}, d);
    r.note = p_note(p);
    out.push_back(std::move(r));
  }
  return out;
}

CheckReport check_rank1_addition(const Matrix& a, const Matrix& b, const PExponent& p,
                                 const CheckOptions& opt) {
  return check_rank1_addition(a, b, single(p), opt).front();
}

std::vector<CheckReport> check_product_kappa(const Matrix& a, const Matrix& b,
                                             std::span<const PExponent> ps,
                                             const CheckOptions& opt) {
  const std::string name = "check_product_kappa";
  std::vector<CheckReport> out;
  auto all_na = [&](const std::string& why, std::map<std::string, double> extra = {}) {
    for (const PExponent& p : ps) {
      std::map<std::string, double> d = extra;
      put_p(d, p);
      out.push_back(not_applicable(name, why, d));
    }
    return out;
  };
  if (!a.square() || a.cols() != b.rows()) {
    return all_na("A must be m x m and B must have m rows");
  }
  const Spectrum sa = singular_values(a);
  const auto rank_a = numerical_rank(sa, opt.rank_tol);
  if (rank_a != static_cast<std::size_t>(a.rows())) {
    return all_na("A is numerically singular", {{"rank_A", static_cast<double>(rank_a)}});
  }
  const double kappa = sa.largest() / sa.smallest();
  const Spectrum sb = singular_values(b);
  const Spectrum sab = singular_values(matmul(a, b));
  for (const PExponent& p : ps) {
    std::map<std::string, double> d;
    put_p(d, p);
    d["kappa"] = kappa;
    if (!p.is_finite() || p.value() < 1.0) {
      out.push_back(not_applicable(name, "requires finite p >= 1", d));
      continue;
    }
    const double kp = pth_power(kappa, p);
    const double sr_b = p_stable_rank_value(sb, p);
    const double sr_ab = p_stable_rank_value(sab, p);
    const double lower = sr_b / kp;
    const double upper = kp * sr_b;
    d["sr_B"] = sr_b;
    d["sr_AB"] = sr_ab;
    d["lower"] = lower;
    d["upper"] = upper;
    CheckReport r = finish(name, {{"lower", lower, sr_ab}, {"upper", sr_ab, upper}}, d);
    r.note = p_note(p) + "; " + r.note;
    out.push_back(std::move(r));
  }
  return out;
}

CheckReport check_product_kappa(const Matrix& a, const Matrix& b, const PExponent& p,
                                const CheckOptions& opt) {
  return check_product_kappa(a, b, single(p), opt).front();
}

std::vector<CheckReport> check_cross_product(const Matrix& a, std::span<const PExponent> ps,
                                             const CheckOptions& opt) {
  const std::string name = "check_cross_product";
  std::vector<CheckReport> out;
  const Matrix ah = conj_transpose(a);
  const Spectrum sa = singular_values(a);
  const Analysis g1 = analyze(hermitian_part(matmul(ah, a)), opt.tol, true);
  const Analysis g2 = analyze(hermitian_part(matmul(a, ah)), opt.tol, true);
  for (const PExponent& p : ps) {
    std::map<std::string, double> d;
    put_p(d, p);
    if (!p.is_norm()) {
      out.push_back(not_applicable(name, "requires p >= 1", d));
      continue;
    }
    const double sr_a = p_stable_rank_value(sa, p);
    const double sr_a2p = p_stable_rank_value(sa, p.doubled());
    const double sr_g1 = p_stable_rank_value(g1.singular, p);
    const double sr_g2 = p_stable_rank_value(g2.singular, p);
    d["sr_A"] = sr_a;
    d["sr_2p_A"] = sr_a2p;
    d["sr_AstarA"] = sr_g1;
    d["sr_AAstar"] = sr_g2;
    CheckReport r = finish(name,
                           {{"AstarA", sr_g1, sr_a},
                            {"AAstar", sr_g2, sr_a},
                            {"identity_upper", sr_g1, sr_a2p},
                            {"identity_lower", sr_a2p, sr_g1}},
                           d);
    r.note = p_note(p) + "; " + r.note;
    out.push_back(std::move(r));
  }
  return out;
}

CheckReport check_cross_product(const Matrix& a, const PExponent& p, const CheckOptions& opt) {
  return check_cross_product(a, single(p), opt).front();
}

std::vector<CheckReport> check_perturbation(const Matrix& a, const Matrix& e,
                                            std::span<const PExponent> ps,
                                            const CheckOptions& opt) {
  const std::string name = "check_perturbation";
  std::vector<CheckReport> out;
  auto all_na = [&](const std::string& why, std::map<std::string, double> extra = {}) {
    for (const PExponent& p : ps) {
      std::map<std::string, double> d = extra;
      put_p(d, p);
      out.push_back(not_applicable(name, why, d));
    }
    return out;
  };
  if (!same_shape(a, e)) return all_na("A and E must have the same shape");
  const Analysis ea = analyze(a, opt.tol, true);
  const Analysis ee = analyze(e, opt.tol, true);
  const double norm_a = ea.singular.largest();
  if (norm_a == 0.0) return all_na("A must be non-zero");
  const double eps = ee.singular.largest() / norm_a;
  if (!(eps < 1.0)) return all_na("requires epsilon = |E|_2/|A|_2 < 1", {{"epsilon", eps}});
  const bool psd_pair = ea.psd && ee.psd;
  const auto rank_e = numerical_rank(ee.singular, opt.rank_tol);
  const Analysis es = analyze(add(a, e), opt.tol, psd_pair);
  const auto n = static_cast<double>(a.rows());
  for (const PExponent& p : ps) {
    std::map<std::string, double> d;
    put_p(d, p);
    d["epsilon"] = eps;
    d["rank_E"] = static_cast<double>(rank_e);
    d["psd_pair"] = psd_pair ? 1.0 : 0.0;
    if (!p.is_norm()) {
      out.push_back(not_applicable(name, "requires p >= 1 (triangle inequality)", d));
      continue;
    }
    const double root_a = p_stable_rank_root(ea.singular, p);
    const double actual = p_stable_rank_root(es.singular, p);
    const double root_r = rank_e == 0 ? 0.0 : pth_root(static_cast<double>(rank_e), p);
    const double general_lower = (root_a - root_r * eps) / (1.0 + eps);
    const double general_upper = (root_a + root_r * eps) / (1.0 - eps);
    d["root_A"] = root_a;
    d["actual"] = actual;
    d["general_lower"] = general_lower;
    d["general_upper"] = general_upper;
    std::vector<Side> sides = {{"general_lower", general_lower, actual},
                               {"general_upper", actual, general_upper}};
    if (psd_pair) {
      const double psd_lower = root_a / (1.0 + eps);
      const double psd_upper = root_a + root_r * eps;
      d["psd_lower"] = psd_lower;
      d["psd_upper"] = psd_upper;
      sides.push_back({"psd_lower", psd_lower, actual});
      sides.push_back({"psd_upper", actual, psd_upper});
      if (p.is_finite() && p.value() == 1.0) {
        // Intrinsic-dimension form, with n in place of rank(E).
        d["intdim_lower_n"] = (root_a - n * eps) / (1.0 + eps);
        d["intdim_upper_n"] = root_a + n * eps;
      }
    }
    CheckReport r = finish(name, sides, d);
    r.note = p_note(p) + "; " + r.note;
    out.push_back(std::move(r));
  }
  return out;
}

CheckReport check_perturbation(const Matrix& a, const Matrix& e, const PExponent& p,
                               const CheckOptions& opt) {
  return check_perturbation(a, e, single(p), opt).front();
}

CheckReport check_block_diag_sr(const Matrix& a11, const Matrix& a22, const CheckOptions&) {
  const double sr11 = stable_rank(a11).value;
  const double sr22 = stable_rank(a22).value;
  const double sr = stable_rank(block_diagonal(a11, a22)).value;
  return finish("check_block_diag_sr",
                {{"lower", std::min(sr11, sr22), sr}, {"upper", sr, sr11 + sr22}},
                {{"sr_A11", sr11}, {"sr_A22", sr22}, {"sr_A", sr}});
}

CheckReport check_block_intdim(const Matrix& a, Eigen::Index k, const CheckOptions& opt) {
  const std::string name = "check_block_intdim";
  if (!a.square()) return not_applicable(name, "A must be square");
  const Eigen::Index n = a.rows();
  if (k < 1 || k >= n) return not_applicable(name, "split index must satisfy 1 <= k < n");
  const Analysis ea = analyze(a, opt.tol, true);
  if (!ea.psd) return not_applicable(name, "A must be PSD", {{"lambda_min", ea.lambda_min}});
  const double id_a = intdim_of(ea);
  const double id_11 = trace_over_norm(submatrix(a, 0, 0, k, k));
  const double id_22 = trace_over_norm(submatrix(a, k, k, n - k, n - k));
  return finish(name, {{"blocks", id_a, id_11 + id_22}},
                {{"k", static_cast<double>(k)},
                 {"intdim_A", id_a},
                 {"intdim_A11", id_11},
                 {"intdim_A22", id_22}});
}

CheckReport check_deletion(const Matrix& a, Eigen::Index drop_col, const CheckOptions& opt) {
  const std::string name = "check_deletion";
  if (a.cols() < 2) return not_applicable(name, "A must have at least two columns");
  if (drop_col < 0 || drop_col >= a.cols()) return not_applicable(name, "column out of range");
  const Matrix reduced = delete_column(a, drop_col);
  const Spectrum sa = singular_values(a);
  const Spectrum sr = singular_values(reduced);
  // One absolute cutoff for both matrices: singular values interlace, so the
  // count of the reduced matrix cannot exceed that of A at a shared cutoff.
  const double cutoff = opt.rank_tol * sa.largest();
  auto count = [cutoff](const Spectrum& s) {
    return static_cast<double>(
        std::count_if(s.values.begin(), s.values.end(), [cutoff](double v) { return v > cutoff; }));
  };
  const double rank_a = count(sa);
  const double rank_r = count(sr);
  const double sr_a = p_stable_rank_value(sa, PExponent::finite(2.0));
  const double sr_r = p_stable_rank_value(sr, PExponent::finite(2.0));
  std::map<std::string, double> d = {{"drop_col", static_cast<double>(drop_col)},
                                     {"rank_A", rank_a},
                                     {"rank_A_hat", rank_r},
                                     {"sr_A", sr_a},
                                     {"sr_A_hat", sr_r},
                                     {"sr_increase", sr_r - sr_a}};
  if (a.square() && a.rows() >= 2 && is_psd(a, opt.tol)) {
    const Matrix principal = delete_row_and_column(a, drop_col);
    const double id_a = intrinsic_dimension(a, opt.tol).value;
    const double id_r = trace_over_norm(principal);
    d["intdim_A"] = id_a;
    d["intdim_A_hat"] = id_r;
    d["intdim_increase"] = id_r - id_a;
  }
  return finish(name, {{"rank", rank_r, rank_a}}, d);
}

// ---------------------------------------------------------------------------

PivotedCholesky pivoted_cholesky(const Matrix& a, const Tolerances& tol) {
  if (!a.square()) throw ShapeError("pivoted_cholesky: matrix must be square");
  if (!is_hermitian(a, tol)) {
    const double asym = hermitian_asymmetry(a);
    throw PreconditionError("pivoted_cholesky: matrix is not Hermitian", asym);
  }
  const Eigen::Index n = a.rows();
  DenseComplex work = a.entries();
  DenseComplex l = DenseComplex::Zero(n, n);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  const double threshold =
      tol.psd_negativity * std::max(0.0, work.trace().real()) / static_cast<double>(n);

  Eigen::Index k = 0;
  for (; k < n; ++k) {
    Eigen::Index pivot = k;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      if (work(j, j).real() > work(pivot, pivot).real()) pivot = j;
    }
    const double d = work(pivot, pivot).real();
    if (d <= threshold) {
      for (Eigen::Index j = k; j < n; ++j) {
        if (work(j, j).real() < -threshold) {
          std::ostringstream msg;
          msg << "pivoted_cholesky: breakdown at step " << k << ", pivot "
              << work(j, j).real() << " (matrix is indefinite)";
          throw DecompositionError(msg.str());
        }
      }
      break;
    }
    if (pivot != k) {
      work.row(k).swap(work.row(pivot));
      work.col(k).swap(work.col(pivot));
      l.row(k).swap(l.row(pivot));
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(pivot)]);
    }
    const double root = std::sqrt(d);
    l(k, k) = root;
    for (Eigen::Index i = k + 1; i < n; ++i) l(i, k) = work(i, k) / root;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      for (Eigen::Index i = k + 1; i < n; ++i) {
        work(i, j) -= l(i, k) * std::conj(l(j, k));
      }
    }
  }
  PivotedCholesky out{a.is_real() ? Matrix(DenseReal(l.real())) : Matrix(l, ScalarField::complex),
                      std::move(perm), k};
  return out;
}

CheckReport check_cholesky_intdim(const Matrix& a, const CheckOptions& opt) {
  const std::string name = "check_cholesky_intdim";
  if (!a.square()) return not_applicable(name, "A must be square");
  const Analysis ea = analyze(a, opt.tol, true);
  if (!ea.psd) return not_applicable(name, "A must be PSD", {{"lambda_min", ea.lambda_min}});
  const PivotedCholesky chol = pivoted_cholesky(a, opt.tol);
  const Spectrum sl = singular_values(chol.factor);
  const double id_a = intdim_of(ea);
  const double sr1_l = p_stable_rank_value(sl, PExponent::finite(1.0));
  const double sr2_l = p_stable_rank_value(sl, PExponent::finite(2.0));
  const double norm_l = sl.largest();
  std::map<std::string, double> d = {
      {"intdim_A", id_a},
      {"sr1_L", sr1_l},
      {"sr_L", sr2_l},
      {"trace_L_over_norm", norm_l == 0.0 ? 0.0 : trace(chol.factor).real() / norm_l},
      {"rank", static_cast<double>(chol.rank)}};
  for (std::size_t i = 0; i < chol.perm.size(); ++i) {
    d["perm_" + std::to_string(i)] = static_cast<double>(chol.perm[i]);
  }
  return finish(name, {{"factor", id_a, sr1_l}}, d);
}

}  // namespace srlab
