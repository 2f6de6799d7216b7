#include <cmath>
#include <vector>

#include "doctest.h"
#include "srlab/theorems.hpp"
#include "support.hpp"

using namespace srlab;
using srlab::test::Gen;

namespace {

Matrix diag(std::vector<double> d) { return Matrix::diagonal(d); }

const PExponent p1 = PExponent::finite(1.0);
const PExponent p2 = PExponent::finite(2.0);

void expect_holds(const CheckReport& r) {
  INFO(r.name << " lhs=" << r.lhs << " rhs=" << r.rhs << " slack=" << r.slack << " " << r.note);
  CHECK(r.preconditions_met);
  CHECK(r.holds);
  CHECK(r.status() == "holds");
}

void expect_na(const CheckReport& r) {
  INFO(r.name << " " << r.note);
  CHECK_FALSE(r.preconditions_met);
  CHECK(r.status() == "not-applicable");
  CHECK_FALSE(r.failed());
}

double detail(const CheckReport& r, const std::string& key) {
  const auto it = r.details.find(key);
  REQUIRE(it != r.details.end());
  return it->second;
}

}  // namespace

TEST_CASE("checker registry") {
  const auto& names = checker_names();
  CHECK(names.size() == 11);
  CHECK(names.front() == "check_weyl");
  CHECK(checker_uses_p("check_perturbation"));
  CHECK_FALSE(checker_uses_p("check_weyl"));
}

TEST_CASE("weyl monotonicity") {
  const CheckReport r = check_weyl(Matrix::identity(3), Matrix::identity(3));
  expect_holds(r);
  CHECK(detail(r, "lambda1_sum") == doctest::Approx(2.0));
  CHECK(detail(r, "slack_upper") == doctest::Approx(0.0));
  const Matrix a = diag({3, 1, 2});
  const CheckReport z = check_weyl(a, Matrix::zero(3, 3));
  expect_holds(z);
  CHECK(detail(z, "slack_upper") == doctest::Approx(0.0));
  CHECK(detail(z, "slack_lower") == doctest::Approx(0.0));
  expect_na(check_weyl(diag({1, -1}), Matrix::identity(2)));
  expect_na(check_weyl(Matrix::identity(2), Matrix::identity(3)));

  Gen g(8);
  expect_holds(check_weyl(g.psd(8, ScalarField::real), g.psd(8, ScalarField::real)));
}

TEST_CASE("intrinsic dimension subadditivity") {
  const CheckReport r = check_intdim_subadditive(Matrix::identity(4), Matrix::identity(4));
  expect_holds(r);
  CHECK(r.lhs == doctest::Approx(4.0));
  CHECK(r.rhs == doctest::Approx(8.0));
  const CheckReport split = check_intdim_subadditive(diag({1, 1, 0, 0, 0}), diag({0, 0, 1, 1, 1}));
  expect_holds(split);
  CHECK(split.lhs == doctest::Approx(5.0));
  CHECK(split.slack == doctest::Approx(0.0).epsilon(1e-14));
  expect_na(check_intdim_subadditive(Matrix::zero(2, 2), Matrix::identity(2)));
  expect_na(check_intdim_subadditive(diag({1, -2}), Matrix::identity(2)));
}

TEST_CASE("sum subadditivity of p-th roots") {
  const Matrix a = diag({2, 1, 0.5});
  const CheckReport same = check_sum_subadditivity_proot(a, a, PExponent::finite(3.0));
  expect_holds(same);
  CHECK(same.lhs == doctest::Approx(same.rhs / 2.0));
  const CheckReport r = check_sum_subadditivity_proot(diag({1, 0}), diag({0, 1}), p2);
  expect_holds(r);
  CHECK(r.lhs == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.rhs == doctest::Approx(2.0));
  // The sum-violation pair is not PSD.
  expect_na(check_sum_subadditivity_proot(diag({4, 2, 2, 2, 2}), diag({-4, -1, -1, -1, -1}), p2));
  expect_na(check_sum_subadditivity_proot(a, a, PExponent::finite(0.5)));
  expect_na(check_sum_subadditivity_proot(a, a, PExponent::infinity()));
}

TEST_CASE("rank-one addition") {
  const Matrix b = diag({0, 0, 1});
  const CheckReport zero = check_rank1_addition(Matrix::zero(3, 3), b, p2);
  expect_holds(zero);
  CHECK(zero.lhs == doctest::Approx(1.0));
  CHECK(zero.slack == doctest::Approx(0.0));

  // A = diag(0, I_4), B = diag(3, 0, 0, 0, 0), p = 1: the intrinsic dimension
  // drops by 4 - 7/3 = 5/3, which exceeds 1, while the increase is negative.
  const CheckReport drop = check_rank1_addition(diag({0, 1, 1, 1, 1}), diag({3, 0, 0, 0, 0}), p1);
  expect_holds(drop);
  CHECK(drop.lhs == doctest::Approx(7.0 / 3.0 - 4.0).epsilon(1e-14));
  CHECK(-drop.lhs > 1.0);

  expect_na(check_rank1_addition(Matrix::identity(3), diag({1, 1, 0}), p2));
  expect_na(check_rank1_addition(Matrix::identity(3), diag({1, 0, 0}), PExponent::finite(0.5)));
  expect_holds(check_rank1_addition(Matrix::identity(3), diag({1, 0, 0}), PExponent::infinity()));
}

TEST_CASE("product bounds with the condition number") {
  Gen g(3);
  const Matrix b = g.gaussian(4, 6, ScalarField::complex);
  for (const PExponent& p : {p1, p2, PExponent::finite(3.0)}) {
    const CheckReport r = check_product_kappa(haar_unitary(4, 17, ScalarField::complex), b, p);
    expect_holds(r);
    CHECK(std::abs(r.slack) <= 1e-10 * std::max(1.0, std::abs(r.rhs)));
    CHECK(detail(r, "kappa") == doctest::Approx(1.0));
    const CheckReport s = check_product_kappa(scale(Matrix::identity(4), 7.0), b, p);
    expect_holds(s);
    CHECK(std::abs(s.slack) <= 1e-10 * std::max(1.0, std::abs(s.rhs)));
  }
  expect_holds(check_product_kappa(g.general(5, 5, ScalarField::real), g.gaussian(5, 3, ScalarField::real), p2));
  expect_na(check_product_kappa(diag({1, 0}), Matrix::identity(2), p2));
  expect_na(check_product_kappa(Matrix::identity(2), Matrix::identity(3), p2));
  expect_na(check_product_kappa(Matrix::identity(2), Matrix::identity(2), PExponent::infinity()));
}

TEST_CASE("cross product") {
  SampleSpec spec;
  spec.kind = SampleKind::orthogonal_projector;
  spec.m = spec.n = 5;
  spec.rank = 2;
  const CheckReport proj = check_cross_product(sample(spec), p2);
  expect_holds(proj);
  CHECK(detail(proj, "slack_AstarA") == doctest::Approx(0.0).epsilon(1e-12));

  const CheckReport gap = check_cross_product(diag({1, 0.5, 0.5}), p2);
  expect_holds(gap);
  CHECK(detail(gap, "slack_AstarA") == doctest::Approx(1.5 - 1.125));

  Gen g(10);
  for (const PExponent& p : {p1, p2, PExponent::finite(10.0), PExponent::infinity()}) {
    expect_holds(check_cross_product(g.general(6, 4, ScalarField::complex), p));
  }
  expect_na(check_cross_product(Matrix::identity(2), PExponent::finite(0.5)));
  expect_na(check_cross_product(Matrix::identity(2), PExponent::zero()));
}

TEST_CASE("perturbation bounds") {
  Gen g(12);
  const Matrix a = g.psd(5, ScalarField::real);
  const CheckReport zero = check_perturbation(a, Matrix::zero(5, 5), p2);
  expect_holds(zero);
  const double root = detail(zero, "root_A");
  CHECK(detail(zero, "general_lower") == doctest::Approx(root));
  CHECK(detail(zero, "general_upper") == doctest::Approx(root));
  CHECK(detail(zero, "actual") == doctest::Approx(root));

  const double alpha = 0.3;
  const CheckReport scaled = check_perturbation(a, scale(a, alpha), p2);
  expect_holds(scaled);
  CHECK(detail(scaled, "psd_pair") == 1.0);
  CHECK(detail(scaled, "slack_psd_lower") ==
        doctest::Approx((1.0 - 1.0 / (1.0 + alpha)) * root).epsilon(1e-10));

  // PSD pair at epsilon = 0.1, p = 1: the sharper pair is reported and is
  // at least as tight as the general pair.
  const Matrix e0 = g.psd(5, ScalarField::real);
  const Matrix e = scale(e0, 0.1 * two_norm(a) / two_norm(e0));
  const CheckReport r = check_perturbation(a, e, p1);
  expect_holds(r);
  CHECK(detail(r, "epsilon") == doctest::Approx(0.1));
  CHECK(detail(r, "psd_lower") >= detail(r, "general_lower"));
  CHECK(detail(r, "psd_upper") <= detail(r, "general_upper"));
  CHECK(r.details.count("intdim_lower_n") == 1);

  expect_na(check_perturbation(Matrix::zero(2, 2), Matrix::identity(2), p2));
  expect_na(check_perturbation(Matrix::identity(2), scale(Matrix::identity(2), 1.0), p2));
  expect_na(check_perturbation(Matrix::identity(2), Matrix::zero(2, 3), p2));
  expect_na(check_perturbation(Matrix::identity(2), Matrix::zero(2, 2), PExponent::finite(0.5)));
}

TEST_CASE("block diagonal stable rank") {
  const CheckReport same = check_block_diag_sr(Matrix::identity(3), Matrix::identity(3));
  expect_holds(same);
  CHECK(detail(same, "sr_A") == doctest::Approx(6.0));
  CHECK(detail(same, "slack_upper") == doctest::Approx(0.0));
  const CheckReport r = check_block_diag_sr(Matrix::identity(2), diag({3}));
  expect_holds(r);
  CHECK(detail(r, "sr_A") == doctest::Approx(11.0 / 9.0));
  CHECK(detail(r, "slack_lower") == doctest::Approx(2.0 / 9.0));
  CHECK(detail(r, "slack_upper") == doctest::Approx(3.0 - 11.0 / 9.0));
}

TEST_CASE("block intrinsic dimension") {
  for (int k = 1; k < 5; ++k) {
    const CheckReport r = check_block_intdim(Matrix::identity(5), k);
    expect_holds(r);
    CHECK(r.slack == doctest::Approx(0.0));
  }
  const CheckReport bd = check_block_intdim(block_diagonal(diag({2, 1}), diag({4})), 2);
  expect_holds(bd);
  CHECK(bd.lhs == doctest::Approx(7.0 / 4.0));
  CHECK(bd.rhs == doctest::Approx(1.5 + 1.0));
  expect_na(check_block_intdim(Matrix::identity(3), 0));
  expect_na(check_block_intdim(Matrix::identity(3), 3));
  expect_na(check_block_intdim(diag({1, -1, 1}), 1));
}

TEST_CASE("deletion") {
  const Matrix a = diag({1, 1, 1, 1, 2});
  const CheckReport r = check_deletion(a, 4);
  expect_holds(r);
  CHECK(detail(r, "sr_A") == doctest::Approx(2.0));
  CHECK(detail(r, "sr_A_hat") == doctest::Approx(4.0));
  CHECK(detail(r, "rank_A_hat") == 4.0);

  const double rows[] = {1, 0, 2, 0, 0, 3};
  const Matrix z = Matrix::from_rows(2, 3, rows);
  const CheckReport zc = check_deletion(z, 1);
  expect_holds(zc);
  CHECK(detail(zc, "sr_increase") == doctest::Approx(0.0).epsilon(1e-14));
  expect_na(check_deletion(Matrix::identity(1), 0));
  expect_na(check_deletion(Matrix::identity(3), 3));
}

TEST_CASE("pivoted cholesky") {
  Gen g(55);
  for (int t = 0; t < 30; ++t) {
    const int n = g.dim(1, 10);
    const Matrix a = g.psd(n, g.field());
    const PivotedCholesky c = pivoted_cholesky(a);
    REQUIRE(c.perm.size() == static_cast<std::size_t>(n));
    DenseComplex pap(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) pap(i, j) = a(c.perm[static_cast<std::size_t>(i)], c.perm[static_cast<std::size_t>(j)]);
    }
    const DenseComplex l = c.factor.entries();
    CHECK((l * l.adjoint() - pap).norm() <= 1e-9 * std::max(1.0, pap.norm()));
    CHECK(l.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm() == 0.0);
    // Diagonal pivoting keeps the diagonal of L non-increasing.
    for (int i = 1; i < c.rank; ++i) CHECK(std::abs(l(i, i)) <= std::abs(l(i - 1, i - 1)) * (1 + 1e-12));
  }
  CHECK_THROWS_AS(pivoted_cholesky(diag({1, -1})), DecompositionError);
  const double r[] = {1, 1, 0, 1};
  CHECK_THROWS_AS(pivoted_cholesky(Matrix::from_rows(2, 2, r)), PreconditionError);
}

TEST_CASE("cholesky intrinsic dimension") {
  const CheckReport id = check_cholesky_intdim(Matrix::identity(4));
  expect_holds(id);
  CHECK(id.slack == doctest::Approx(0.0));
  const double alpha = 0.5;
  const CheckReport r = check_cholesky_intdim(diag({1, alpha * alpha, alpha * alpha, alpha * alpha}));
  expect_holds(r);
  CHECK(r.lhs == doctest::Approx(1.0 + 3.0 * alpha * alpha));
  CHECK(r.rhs == doctest::Approx(1.0 + 3.0 * alpha));
  CHECK(detail(r, "sr_L") == doctest::Approx(r.lhs));
  expect_na(check_cholesky_intdim(diag({1, -1})));
}

TEST_CASE("report status strings") {
  CheckReport r;
  r.holds = false;
  CHECK(r.status() == "fails");
  CHECK(r.failed());
  r.preconditions_met = false;
  CHECK(r.status() == "not-applicable");
  CHECK_FALSE(r.failed());
}

TEST_CASE("property: every checker holds on random inputs") {
  Gen g(2024);
  const std::vector<PExponent> ps = {p1, PExponent::finite(1.5), p2, PExponent::finite(3.0),
                                     PExponent::finite(10.0), PExponent::infinity()};
  for (int t = 0; t < 150; ++t) {
    const int n = g.dim(1, 10), m = g.dim(1, 10);
    const ScalarField f = g.field();
    const Matrix a = g.psd(n, f);
    const Matrix b = g.psd(n, f);
    const Matrix gen = g.general(m, n, f);
    auto no_failure = [](const CheckReport& r) {
      INFO(r.name << " lhs=" << r.lhs << " rhs=" << r.rhs << " slack=" << r.slack << " " << r.note);
      CHECK_FALSE(r.failed());
    };
    no_failure(check_weyl(a, b));
    no_failure(check_intdim_subadditive(a, b));
    for (const auto& r : check_sum_subadditivity_proot(a, b, ps)) no_failure(r);
    for (const auto& r : check_rank1_addition(a, g.rank1_psd(n, f), ps)) no_failure(r);
    for (const auto& r : check_cross_product(gen, ps)) no_failure(r);
    const Matrix sq = g.with_spectrum(m, m, [&] {
      auto s = g.spectrum(m);
      for (double& v : s) v = std::max(v, s.front() * 1e-3);
      return s;
    }(), f);
    for (const auto& r : check_product_kappa(sq, gen, ps)) no_failure(r);
    const Matrix e = scale(g.gaussian(m, n, f), g.uniform(0.0, 0.9) * two_norm(gen) /
                                                    two_norm(g.gaussian(m, n, f)));
    for (const auto& r : check_perturbation(gen, e, ps)) no_failure(r);
    no_failure(check_block_diag_sr(gen, g.general(g.dim(1, 6), g.dim(1, 6), f)));
    if (n > 1) no_failure(check_block_intdim(a, g.dim(1, n - 1)));
    if (n > 1) no_failure(check_deletion(gen, g.dim(0, n - 1)));
    no_failure(check_cholesky_intdim(a));
  }
}

TEST_CASE("property: grid overloads agree with single-exponent calls") {
  Gen g(31);
  const std::vector<PExponent> ps = {p1, p2, PExponent::finite(3.0), PExponent::infinity()};
  for (int t = 0; t < 20; ++t) {
    const int n = g.dim(2, 8);
    const Matrix a = g.psd(n, ScalarField::real);
    const Matrix b = g.psd(n, ScalarField::real);
    const auto grid = check_sum_subadditivity_proot(a, b, ps);
    const auto cross = check_cross_product(b, ps);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const CheckReport single = check_sum_subadditivity_proot(a, b, ps[i]);
      CHECK(single.slack == grid[i].slack);
      CHECK(single.preconditions_met == grid[i].preconditions_met);
      CHECK(check_cross_product(b, ps[i]).slack == cross[i].slack);
    }
  }
}
