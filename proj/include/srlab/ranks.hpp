#ifndef SRLAB_RANKS_HPP
#define SRLAB_RANKS_HPP

#include "srlab/matrix.hpp"
#include "srlab/schatten.hpp"

namespace srlab {

inline constexpr double kDefaultRankTol = 1e-10;

enum class RankDefinition { p_stable, stable, intrinsic_dimension, numerical_rank };

const char* to_string(RankDefinition def);

struct RankResult {
  double value = 0.0;
  PExponent p = PExponent::finite(2.0);
  Spectrum spectrum_used;
  RankDefinition definition = RankDefinition::p_stable;
  // Set for 0 < p < 1, where ||.||_p is only a quasi-norm.
  bool quasi_norm = false;
};

// Number of singular values strictly above rtol * sigma_1.
std::size_t numerical_rank(const Spectrum& s, double rtol = kDefaultRankTol);
std::size_t numerical_rank(const Matrix& a, double rtol = kDefaultRankTol);

// sum_j (sigma_j / sigma_1)^p. 1 for p = inf, the numerical rank (at
// `rank_tol`) for p = 0, and 0 for the zero matrix.
double p_stable_rank_value(const Spectrum& s, const PExponent& p,
                           double rank_tol = kDefaultRankTol);
// sr_p(A)^(1/p) = ||A||_p / ||A||_2.
double p_stable_rank_root(const Spectrum& s, const PExponent& p);

RankResult p_stable_rank(const Matrix& a, const PExponent& p,
                         double rank_tol = kDefaultRankTol);
RankResult stable_rank(const Matrix& a);

// trace(A) / ||A||_2 for Hermitian PSD A; 0 for the zero matrix.
// Throws PreconditionError carrying lambda_min for non-PSD input.
RankResult intrinsic_dimension(const Matrix& a, const Tolerances& tol = {});

}  // namespace srlab

#endif  // SRLAB_RANKS_HPP
