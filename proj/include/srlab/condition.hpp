#ifndef SRLAB_CONDITION_HPP
#define SRLAB_CONDITION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srlab/matrix.hpp"
#include "srlab/schatten.hpp"
#include "srlab/theorems.hpp"

namespace srlab {

enum class PerturbationKind { gaussian, psd };

PerturbationKind perturbation_kind_from_string(const std::string& name);
const char* to_string(PerturbationKind kind);

// One row of a conditioning sweep: bounds on sr_p(A+E)^(1/p) at one
// relative perturbation size epsilon = |E|_2 / |A|_2.
struct ConditionRow {
  double epsilon = 0.0;
  CheckReport report;  // check_perturbation on (A, E)
};

// A single perturbation direction E0 with |E0|_2 = 1 is sampled from `seed`
// and scaled to E = epsilon |A|_2 E0 for every requested epsilon. psd
// perturbations require square A.
std::vector<ConditionRow> condition_sweep(const Matrix& a, PerturbationKind kind,
                                          std::span<const double> epsilons, const PExponent& p,
                                          std::uint64_t seed, const CheckOptions& opt = {});

}  // namespace srlab

#endif  // SRLAB_CONDITION_HPP
