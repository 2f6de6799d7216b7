#ifndef SRLAB_GALLERY_HPP
#define SRLAB_GALLERY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srlab/matrix.hpp"
#include "srlab/ranks.hpp"
#include "srlab/schatten.hpp"

namespace srlab {

// One member of a parameterized example family: explicit dense matrices,
// the closed-form values the family predicts, the same quantities computed
// numerically from the matrices, and the family's threshold predicates.
struct FamilyInstance {
  std::string name;
  std::map<std::string, Matrix> matrices;
  std::map<std::string, double> params;
  std::optional<PExponent> p;
  std::map<std::string, double> predicted;
  std::map<std::string, double> computed;
  // Named threshold predicates evaluated from the parameters alone.
  std::map<std::string, bool> thresholds;
  // The family's primary threshold predicate.
  bool threshold_met = false;
  // Whether the advertised violation is observed in `computed`.
  bool violation = false;
  std::string notes;

  const Matrix& matrix(const std::string& key) const;
  // Largest |computed - predicted| / max(1, |predicted|) over shared keys.
  double max_relative_error() const;
};

// Optional seeded unitary rotation applied to a family's matrices so they
// stop being diagonal while every predicted value is preserved.
struct FamilyOptions {
  std::optional<std::uint64_t> rotate_seed;
  ScalarField field = ScalarField::real;
  Tolerances tol;
  double rank_tol = kDefaultRankTol;
};

// sigma_j = ratio^(j-1), j = 1..n.
FamilyInstance geometric_decay(int n, double ratio, const FamilyOptions& opt = {});

// A = diag(I_{n-1}, alpha); deleting its last column (or last row and
// column) raises the stable rank / intrinsic dimension past the threshold.
FamilyInstance deletion_family(int n, double alpha, const FamilyOptions& opt = {});

// A = diag(alpha, 2 I_{n-1}), B = diag(-alpha, -I_{n-1}).
FamilyInstance sum_violation_family(int n, double alpha, const FamilyOptions& opt = {});

// A = diag(0, I_{n-1}), B = diag(beta, 0).
FamilyInstance rank1_drop_family(int n, double beta, const FamilyOptions& opt = {});

// A = diag(I_{n-1}, alpha), B = diag(I_{n-1}, 1/alpha), AB = I.
FamilyInstance product_violation_family(int n, double alpha, const FamilyOptions& opt = {});

// B such that sr(AB) reaches rank(A).
FamilyInstance maximizer_multiplier(const Matrix& a, double rtol = kDefaultRankTol);
// B such that sr(AB) = 1 + (r-1) alpha^2.
FamilyInstance minimizer_multiplier(const Matrix& a, double alpha,
                                    double rtol = kDefaultRankTol);
// Congruence B*AB of PSD A with intdim = rank(A).
FamilyInstance congruence_maximizer(const Matrix& a, double rtol = kDefaultRankTol,
                                    const Tolerances& tol = {});
// Congruence B*AB of PSD A with intdim = 1 + (r-1) alpha.
FamilyInstance congruence_minimizer(const Matrix& a, double alpha,
                                    double rtol = kDefaultRankTol, const Tolerances& tol = {});

// A = diag(1, alpha I_{n-1}) against its cross product A*A.
FamilyInstance cross_gap_family(int n, double alpha, const FamilyOptions& opt = {});

enum class EqualityKind { rank1, scaled_unitary, flat_spectrum, projector };

const char* to_string(EqualityKind kind);
EqualityKind equality_kind_from_string(const std::string& name);

// A matrix with sr_p(A) = rank(A). `r` is the rank for flat_spectrum and
// projector and is ignored otherwise.
FamilyInstance equality_cases(EqualityKind kind, int n, const PExponent& p, int r = 1,
                              std::uint64_t seed = 0);

// Threshold predicates. Each compares cross-multiplied expressions in long
// double so the boundary itself evaluates to false.
bool deletion_sr_threshold(int n, double alpha);
bool deletion_intdim_threshold(int n, double alpha);
bool sum_violation_threshold(int n, double alpha);
bool rank1_drop_threshold(int n, double beta);
bool product_violation_threshold(double alpha);

// Names accepted by make_family.
const std::vector<std::string>& family_names();

// Builds a parameterized family by name. Recognised params: n, alpha, beta,
// ratio. Throws Error on invalid parameters.
FamilyInstance make_family(const std::string& name, const std::map<std::string, double>& params,
                           const FamilyOptions& opt = {});

}  // namespace srlab

#endif  // SRLAB_GALLERY_HPP
