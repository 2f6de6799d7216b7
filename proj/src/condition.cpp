#include "srlab/condition.hpp"

namespace srlab {

PerturbationKind perturbation_kind_from_string(const std::string& name) {
  if (name == "gaussian") return PerturbationKind::gaussian;
  if (name == "psd") return PerturbationKind::psd;
  throw Error("unknown perturbation kind: " + name);
}

const char* to_string(PerturbationKind kind) {
  return kind == PerturbationKind::gaussian ? "gaussian" : "psd";
}

std::vector<ConditionRow> condition_sweep(const Matrix& a, PerturbationKind kind,
                                          std::span<const double> epsilons, const PExponent& p,
                                          std::uint64_t seed, const CheckOptions& opt) {
  SampleSpec spec;
  spec.m = a.rows();
  spec.n = a.cols();
  spec.seed = seed;
  spec.field = a.field();
  if (kind == PerturbationKind::psd) {
    if (!a.square()) throw ShapeError("psd perturbations require a square matrix");
    spec.kind = SampleKind::psd_gram;
  }
  const Matrix base = sample(spec);
  const double base_norm = two_norm(base);
  const double norm_a = two_norm(a);
  std::vector<ConditionRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (!(eps >= 0.0)) throw Error("epsilon must be non-negative");
    if (eps >= 1.0) {
      CheckReport na;
      na.name = "check_perturbation";
      na.preconditions_met = false;
      na.note = "requires epsilon = |E|_2/|A|_2 < 1";
      na.details = {{"epsilon", eps}, {"p", p.value()}};
      rows.push_back({eps, std::move(na)});
      continue;
    }
    const Matrix e = scale(base, eps * norm_a / base_norm);
    rows.push_back({eps, check_perturbation(a, e, p, opt)});
  }
  return rows;
}

}  // namespace srlab
