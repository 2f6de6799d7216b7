#include "srlab/ranks.hpp"

#include <cmath>
#include <sstream>

namespace srlab {

const char* to_string(RankDefinition def) {
  switch (def) {
    case RankDefinition::p_stable: return "p_stable";
    case RankDefinition::stable: return "stable";
    case RankDefinition::intrinsic_dimension: return "intrinsic_dimension";
    case RankDefinition::numerical_rank: return "numerical_rank";
  }
  return "unknown";
}

std::size_t numerical_rank(const Spectrum& s, double rtol) {
  if (!(rtol > 0.0 && rtol < 1.0)) throw Error("numerical_rank: rtol must lie in (0, 1)");
  const double cutoff = rtol * s.largest();
  std::size_t count = 0;
  for (double v : s.values) {
    if (v > cutoff) ++count;
  }
  return count;
}

std::size_t numerical_rank(const Matrix& a, double rtol) {
  return numerical_rank(singular_values(a), rtol);
}

double p_stable_rank_value(const Spectrum& s, const PExponent& p, double rank_tol) {
  const double top = s.largest();
  if (top == 0.0) return 0.0;
  if (p.is_zero()) return static_cast<double>(numerical_rank(s, rank_tol));
  if (p.is_infinity()) return 1.0;
  const double exponent = p.value();
  double sum = 0.0;
  for (auto it = s.values.rbegin(); it != s.values.rend(); ++it) {
    sum += std::pow(*it / top, exponent);
  }
  return sum;
}

double p_stable_rank_root(const Spectrum& s, const PExponent& p) {
  if (p.is_zero()) throw Error("p_stable_rank_root: p = 0 has no root");
  return pth_root(p_stable_rank_value(s, p), p);
}

RankResult p_stable_rank(const Matrix& a, const PExponent& p, double rank_tol) {
  RankResult out;
  out.spectrum_used = singular_values(a);
  out.value = p_stable_rank_value(out.spectrum_used, p, rank_tol);
  out.p = p;
  out.definition = p.is_zero() ? RankDefinition::numerical_rank : RankDefinition::p_stable;
  out.quasi_norm = p.is_quasi();
  return out;
}

RankResult stable_rank(const Matrix& a) {
  RankResult out = p_stable_rank(a, PExponent::finite(2.0));
  out.definition = RankDefinition::stable;
  return out;
}

RankResult intrinsic_dimension(const Matrix& a, const Tolerances& tol) {
  if (!a.square()) throw ShapeError("intrinsic_dimension: matrix must be square");
  if (!is_hermitian(a, tol)) {
    const double asym = hermitian_asymmetry(a);
    std::ostringstream msg;
    msg << "intrinsic_dimension: matrix is not Hermitian (max |A - A*| = " << asym << ")";
    throw PreconditionError(msg.str(), asym);
  }
  Spectrum lambda = hermitian_eigenvalues(a, tol);
  const double lmax = lambda.largest();
  const double lmin = lambda.smallest();
  if (lmin < -tol.psd_negativity * std::max(1.0, lmax)) {
    std::ostringstream msg;
    msg << "intrinsic_dimension: matrix is not positive semi-definite (lambda_min = "
        << lmin << ")";
    throw PreconditionError(msg.str(), lmin);
  }
  RankResult out;
  out.p = PExponent::finite(1.0);
  out.definition = RankDefinition::intrinsic_dimension;
  // For PSD input the eigenvalues are the singular values.
  for (double& v : lambda.values) v = std::max(v, 0.0);
  lambda.kind = SpectrumKind::singular;
  const double norm = lambda.largest();
  out.value = norm == 0.0 ? 0.0 : trace(a).real() / norm;
  out.spectrum_used = std::move(lambda);
  return out;
}

}  // namespace srlab
