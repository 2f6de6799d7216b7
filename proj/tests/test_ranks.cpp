#include <cmath>
#include <vector>

#include "doctest.h"
#include "srlab/ranks.hpp"
#include "support.hpp"

using namespace srlab;
using srlab::test::Gen;

namespace {

Matrix diag(std::vector<double> d) { return Matrix::diagonal(d); }

}  // namespace

TEST_CASE("p-stable rank examples") {
  for (double p : {0.5, 1.0, 2.0, 3.0, 10.0}) {
    CHECK(p_stable_rank(Matrix::identity(6), PExponent::finite(p)).value == doctest::Approx(6.0));
  }
  SampleSpec spec;
  spec.kind = SampleKind::rank1_psd;
  spec.m = spec.n = 5;
  spec.seed = 1;
  const Matrix r1 = sample(spec);
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    // Round-off singular values of size eps contribute eps^p.
    const double tol = p < 1 ? 1e-6 : 1e-12;
    CHECK(std::abs(p_stable_rank(r1, PExponent::finite(p)).value - 1.0) <= tol);
    CHECK(p_stable_rank(diag({0, 2, 0}), PExponent::finite(p)).value == 1.0);
  }
  spec.kind = SampleKind::orthogonal_projector;
  spec.rank = 3;
  spec.m = spec.n = 6;
  const Matrix proj = sample(spec);
  for (double p : {1.0, 2.0, 5.0}) {
    CHECK(p_stable_rank(proj, PExponent::finite(p)).value == doctest::Approx(3.0).epsilon(1e-12));
  }
  // 1 + (n-1)/alpha^2 at n = 5, alpha = 2.
  CHECK(p_stable_rank(diag({1, 1, 1, 1, 2}), PExponent::finite(2.0)).value ==
        doctest::Approx(2.0).epsilon(1e-14));

  const RankResult q = p_stable_rank(Matrix::identity(2), PExponent::finite(0.5));
  CHECK(q.quasi_norm);
  CHECK_FALSE(p_stable_rank(Matrix::identity(2), PExponent::finite(1.0)).quasi_norm);
}

TEST_CASE("stable rank examples") {
  const Matrix u = scale(haar_unitary(7, 5, ScalarField::complex), 2.5);
  CHECK(stable_rank(u).value == doctest::Approx(7.0).epsilon(1e-12));
  std::vector<double> geo(10);
  for (int j = 0; j < 10; ++j) geo[static_cast<std::size_t>(j)] = std::ldexp(1.0, -j);
  CHECK(stable_rank(diag(geo)).value ==
        doctest::Approx((4.0 / 3.0) * (1.0 - std::pow(4.0, -10))).epsilon(1e-15));
  CHECK(stable_rank(Matrix::zero(3, 4)).value == 0.0);
  CHECK(stable_rank(Matrix::zero(3, 4)).definition == RankDefinition::stable);
}

TEST_CASE("degenerate exponents") {
  const Matrix a = diag({5, 1, 1e-14, 0});
  CHECK(p_stable_rank(a, PExponent::infinity()).value == 1.0);
  CHECK(p_stable_rank(a, PExponent::zero()).value == 2.0);
  CHECK(p_stable_rank(Matrix::zero(2, 2), PExponent::infinity()).value == 0.0);
  CHECK(p_stable_rank(Matrix::zero(2, 2), PExponent::zero()).value == 0.0);
  CHECK(p_stable_rank(Matrix::zero(2, 2), PExponent::finite(1.0)).value == 0.0);
}

TEST_CASE("intrinsic dimension") {
  CHECK(intrinsic_dimension(scale(Matrix::identity(4), 3.0)).value == doctest::Approx(4.0));
  CHECK(intrinsic_dimension(diag({2.5, 0, 0})).value == doctest::Approx(1.0));
  CHECK(intrinsic_dimension(diag({3, 1, 1, 1, 1})).value == doctest::Approx(1.0 + 4.0 / 3.0));
  CHECK(intrinsic_dimension(Matrix::zero(3, 3)).value == 0.0);
  try {
    intrinsic_dimension(diag({1, -0.25}));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(e.measure() == doctest::Approx(-0.25));
    CHECK(std::string(e.what()).find("lambda_min") != std::string::npos);
  }
  const double r[] = {1, 1, 0, 1};
  CHECK_THROWS_AS(intrinsic_dimension(Matrix::from_rows(2, 2, r)), PreconditionError);
  CHECK_THROWS_AS(intrinsic_dimension(Matrix::zero(2, 3)), ShapeError);
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(Matrix::identity(5)) == 5);
  CHECK(numerical_rank(diag({1, 1e-14}), 1e-10) == 1);
  CHECK(numerical_rank(diag({1, 0.5, 0}), 1e-10) == 2);
  CHECK(numerical_rank(Matrix::zero(2, 2)) == 0);
  CHECK_THROWS(numerical_rank(Matrix::identity(2), 0.0));
  CHECK_THROWS(numerical_rank(Matrix::identity(2), 1.5));
}

TEST_CASE("property: p-stable rank matches the oracle and its invariants") {
  Gen g(4242);
  for (int t = 0; t < 200; ++t) {
    const int m = g.dim(1, 12), n = g.dim(1, 12);
    const ScalarField f = g.field();
    const Matrix a = g.general(m, n, f);
    const auto sv = srlab::test::oracle_singular_values(a);
    const auto rank = static_cast<double>(numerical_rank(a));

    // Round-off singular values count for about eps^p each, which matters
    // only for p < 1.
    double prev = rank + 1e-6;
    for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 10.0}) {
      const PExponent e = PExponent::finite(p);
      const double v = p_stable_rank(a, e).value;
      CHECK(srlab::test::rel_err(v, srlab::test::oracle_sr(sv, p)) <= (p < 1 ? 1e-6 : 1e-10));
      // 1 <= sr_p <= rank, non-increasing in p.
      CHECK(v >= 1.0 - 1e-12);
      CHECK(v <= prev * (1 + 1e-12));
      prev = v;
      CHECK(srlab::test::rel_err(p_stable_rank(scale(a, g.uniform(0.01, 100.0)), e).value, v) <=
            (p < 1 ? 1e-6 : 1e-11));
      const Matrix u = haar_unitary(m, g.seed(), f);
      const Matrix w = haar_unitary(n, g.seed(), f);
      CHECK(srlab::test::rel_err(p_stable_rank(matmul(matmul(u, a), w), e).value, v) <=
            (p < 1 ? 1e-6 : 1e-9));
      CHECK(srlab::test::rel_err(p_stable_rank(conj_transpose(a), e).value, v) <=
            (p < 1 ? 1e-6 : 1e-10));
    }
    CHECK(p_stable_rank(a, PExponent::infinity()).value == 1.0);
    CHECK(p_stable_rank(a, PExponent::zero()).value == rank);
    const double fro = a.entries().norm();
    const double two = two_norm(a);
    CHECK(srlab::test::rel_err(stable_rank(a).value, fro * fro / (two * two)) <= 1e-12);
  }
}

TEST_CASE("property: intrinsic dimension equals the 1-stable rank on PSD input") {
  Gen g(99);
  for (int t = 0; t < 100; ++t) {
    const int n = g.dim(1, 12);
    const Matrix a = g.psd(n, g.field());
    const double id = intrinsic_dimension(a).value;
    CHECK(srlab::test::rel_err(id, p_stable_rank(a, PExponent::finite(1.0)).value) <= 1e-9);
    CHECK(srlab::test::rel_err(id, trace(a).real() / two_norm(a)) <= 1e-11);
    CHECK(id <= static_cast<double>(numerical_rank(a)) + 1e-9);
  }
}
