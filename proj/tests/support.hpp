#ifndef SRLAB_TESTS_SUPPORT_HPP
#define SRLAB_TESTS_SUPPORT_HPP

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "srlab/matrix.hpp"
#include "srlab/schatten.hpp"

namespace srlab::test {

// Hand-rolled generators for property tests. Every generator draws from the
// caller's engine so a failing case is reproducible from the loop seed.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int dim(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  bool coin() { return std::bernoulli_distribution(0.5)(rng); }
  std::uint64_t seed() { return rng(); }
  ScalarField field() { return coin() ? ScalarField::real : ScalarField::complex; }

  Matrix gaussian(int m, int n, ScalarField f) {
    SampleSpec s;
    s.m = m;
    s.n = n;
    s.seed = seed();
    s.field = f;
    return sample(s);
  }

  std::vector<double> spectrum(int k) {
    std::vector<double> s(static_cast<std::size_t>(k));
    const double top = std::pow(10.0, uniform(-2.0, 2.0));
    for (double& v : s) v = top * std::pow(10.0, -uniform(0.0, 4.0));
    std::sort(s.begin(), s.end(), std::greater<>());
    s.front() = top;
    return s;
  }

  Matrix with_spectrum(int m, int n, const std::vector<double>& s, ScalarField f) {
    SampleSpec spec;
    spec.kind = SampleKind::prescribed_spectrum;
    spec.m = m;
    spec.n = n;
    spec.spectrum = s;
    spec.seed = seed();
    spec.field = f;
    return sample(spec);
  }

  // Random matrix with a random decaying spectrum, sometimes rank deficient.
  Matrix general(int m, int n, ScalarField f) {
    auto s = spectrum(std::min(m, n));
    if (s.size() > 1 && coin()) {
      const auto keep = static_cast<std::size_t>(dim(1, static_cast<int>(s.size()) - 1));
      std::fill(s.begin() + static_cast<std::ptrdiff_t>(keep), s.end(), 0.0);
    }
    return with_spectrum(m, n, s, f);
  }

  Matrix psd(int n, ScalarField f) {
    const Matrix x = general(n, n, f);
    return hermitian_part(matmul(conj_transpose(x), x));
  }

  Matrix rank1_psd(int n, ScalarField f) {
    SampleSpec s;
    s.kind = SampleKind::rank1_psd;
    s.m = n;
    s.n = n;
    s.seed = seed();
    s.field = f;
    return sample(s);
  }

  PExponent p_norm() {
    static const double grid[] = {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 10.0};
    const int i = dim(0, 7);
    if (i == 7) return PExponent::infinity();
    return PExponent::finite(grid[i]);
  }
};

// Singular values by a divide-and-conquer SVD, independent of the library's
// decomposition path.
inline std::vector<double> oracle_singular_values(const Matrix& a) {
  Eigen::BDCSVD<DenseComplex> svd(a.entries());
  const Eigen::VectorXd s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// sum_j (s_j / s_1)^p straight from the definition.
inline double oracle_sr(const std::vector<double>& s, double p) {
  if (s.empty() || s.front() == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : s) sum += std::pow(v / s.front(), p);
  return sum;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace srlab::test

#endif  // SRLAB_TESTS_SUPPORT_HPP
