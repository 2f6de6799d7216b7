#ifndef SRLAB_THEOREMS_HPP
#define SRLAB_THEOREMS_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "srlab/matrix.hpp"
#include "srlab/ranks.hpp"
#include "srlab/schatten.hpp"

namespace srlab {

// Relative slack tolerance shared by every checker.
inline constexpr double kSlackTol = 1e-10;

// Outcome of one inequality instance.
//
// For two-sided or chained bounds, lhs/rhs/slack describe the binding side
// (the one with the smallest slack relative to its magnitude) and every
// side's slack is listed in `details` as "slack_<side>". A report is said to
// hold iff slack >= -kSlackTol * max(1, |lhs|, |rhs|). When the
// preconditions are not met, `holds` is meaningless and the status is
// "not-applicable".
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = true;
  bool preconditions_met = true;
  std::map<std::string, double> details;
  std::string note;

  // "holds", "fails" or "not-applicable".
  std::string status() const;
  bool failed() const { return preconditions_met && !holds; }
};

// Names of all checkers, in canonical order.
const std::vector<std::string>& checker_names();
// Whether the checker's outcome depends on the exponent p.
bool checker_uses_p(const std::string& name);

struct CheckOptions {
  Tolerances tol;
  double rank_tol = kDefaultRankTol;
};

// lambda_1(A+B) >= lambda_1(A) + lambda_n(B) >= lambda_1(A) for PSD A, B.
CheckReport check_weyl(const Matrix& a, const Matrix& b, const CheckOptions& opt = {});

// intdim(A+B) <= intdim(A) + intdim(B) for non-zero PSD A, B.
CheckReport check_intdim_subadditive(const Matrix& a, const Matrix& b,
                                     const CheckOptions& opt = {});

// sr_p(A+B)^(1/p) <= sr_p(A)^(1/p) + sr_p(B)^(1/p), non-zero PSD A, B, finite p >= 1.
CheckReport check_sum_subadditivity_proot(const Matrix& a, const Matrix& b,
                                          const PExponent& p, const CheckOptions& opt = {});
std::vector<CheckReport> check_sum_subadditivity_proot(const Matrix& a, const Matrix& b,
                                                       std::span<const PExponent> ps,
                                                       const CheckOptions& opt = {});

// sr_p(A+B)^(1/p) - sr_p(A)^(1/p) <= 1 for PSD A and PSD B of rank one.
CheckReport check_rank1_addition(const Matrix& a, const Matrix& b, const PExponent& p,
                                 const CheckOptions& opt = {});
std::vector<CheckReport> check_rank1_addition(const Matrix& a, const Matrix& b,
                                              std::span<const PExponent> ps,
                                              const CheckOptions& opt = {});

// sr_p(B)/kappa^p <= sr_p(AB) <= kappa^p sr_p(B) for nonsingular square A.
CheckReport check_product_kappa(const Matrix& a, const Matrix& b, const PExponent& p,
                                const CheckOptions& opt = {});
std::vector<CheckReport> check_product_kappa(const Matrix& a, const Matrix& b,
                                             std::span<const PExponent> ps,
                                             const CheckOptions& opt = {});

// sr_p(A*A) <= sr_p(A), sr_p(AA*) <= sr_p(A), and sr_p(A*A) = sr_2p(A).
CheckReport check_cross_product(const Matrix& a, const PExponent& p,
                                const CheckOptions& opt = {});
std::vector<CheckReport> check_cross_product(const Matrix& a, std::span<const PExponent> ps,
                                             const CheckOptions& opt = {});

// Two-sided conditioning bounds for sr_p(A+E)^(1/p), plus the sharper pair
// when A and E are both PSD.
CheckReport check_perturbation(const Matrix& a, const Matrix& e, const PExponent& p,
                               const CheckOptions& opt = {});
std::vector<CheckReport> check_perturbation(const Matrix& a, const Matrix& e,
                                            std::span<const PExponent> ps,
                                            const CheckOptions& opt = {});

// min(sr(A11), sr(A22)) <= sr(diag(A11, A22)) <= sr(A11) + sr(A22).
CheckReport check_block_diag_sr(const Matrix& a11, const Matrix& a22,
                                const CheckOptions& opt = {});

// intdim(A) <= intdim(A11) + intdim(A22) for PSD A split after row/column k.
CheckReport check_block_intdim(const Matrix& a, Eigen::Index k, const CheckOptions& opt = {});

// rank(A without column) <= rank(A). The stable rank and intrinsic
// dimension of the reduced matrix are reported in details, not asserted.
CheckReport check_deletion(const Matrix& a, Eigen::Index drop_col,
                           const CheckOptions& opt = {});

// Diagonally pivoted Cholesky P* A P = L L* of a PSD matrix.
struct PivotedCholesky {
  Matrix factor;                    // n x n lower triangular, trailing columns zero
  std::vector<Eigen::Index> perm;   // (P* A P)(i, j) = A(perm[i], perm[j])
  Eigen::Index rank = 0;
};

// Stops once the largest remaining pivot is <= psd_negativity * trace(A)/n.
// Throws DecompositionError if a remaining pivot is below the negative of
// that threshold (indefinite input).
PivotedCholesky pivoted_cholesky(const Matrix& a, const Tolerances& tol = {});

// intdim(A) <= sr_1(L) for the pivoted Cholesky factor L of PSD A.
CheckReport check_cholesky_intdim(const Matrix& a, const CheckOptions& opt = {});

}  // namespace srlab

#endif  // SRLAB_THEOREMS_HPP
