#include "srlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace srlab {

namespace {

ScalarField join(ScalarField a, ScalarField b) {
  return (a == ScalarField::real && b == ScalarField::real) ? ScalarField::real
                                                            : ScalarField::complex;
}

Spectrum make_spectrum(std::vector<double> values, SpectrumKind kind,
                       Eigen::Index rows, Eigen::Index cols) {
  std::sort(values.begin(), values.end(), std::greater<>());
  if (kind == SpectrumKind::singular) {
    for (double& v : values) {
      if (!std::isfinite(v)) throw DecompositionError("SVD produced a non-finite singular value");
      v = std::max(v, 0.0);
    }
  }
  return Spectrum{std::move(values), kind, rows, cols};
}

template <typename Vec>
std::vector<double> to_vector(const Vec& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
  return out;
}

// Reverses the ascending output of the Eigen solver into descending order,
// permuting eigenvector columns to match.
template <typename Solver>
HermitianEigen descending(const Solver& solver, Eigen::Index n) {
  if (solver.info() != Eigen::Success) {
    throw DecompositionError("Hermitian eigensolver did not converge");
  }
  HermitianEigen out;
  std::vector<double> values(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    values[static_cast<std::size_t>(j)] = solver.eigenvalues()(n - 1 - j);
    out.vectors.col(j) = solver.eigenvectors().col(n - 1 - j).template cast<Complex>();
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DecompositionError("eigensolver produced a non-finite value");
  }
  out.lambda = Spectrum{std::move(values), SpectrumKind::hermitian_eigen, n, n};
  return out;
}

void require_square(const Matrix& a, const char* op) {
  if (!a.square()) {
    std::ostringstream msg;
    msg << op << ": matrix must be square, got " << a.rows() << "x" << a.cols();
    throw ShapeError(msg.str());
  }
}

DenseComplex gaussian_matrix(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng,
                             ScalarField field) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseComplex g(m, n);
  // Column-major fill so the draw order is fixed by the layout, not by Eigen.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (field == ScalarField::real) {
        g(i, j) = Complex(normal(rng), 0.0);
      } else {
        const double re = normal(rng);
        const double im = normal(rng);
        g(i, j) = Complex(re, im) / std::sqrt(2.0);
      }
    }
  }
  return g;
}

DenseComplex haar(Eigen::Index n, std::mt19937_64& rng, ScalarField field) {
  const DenseComplex g = gaussian_matrix(n, n, rng, field);
  Eigen::HouseholderQR<DenseComplex> qr(g);
  DenseComplex q = qr.householderQ() * DenseComplex::Identity(n, n);
  const DenseComplex& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  if (field == ScalarField::real) q = q.real().cast<Complex>();
  return q;
}

}  // namespace

const char* to_string(ScalarField field) {
  return field == ScalarField::real ? "real" : "complex";
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(DenseComplex entries, ScalarField field)
    : data_(std::move(entries)), field_(field) {
  if (data_.rows() <= 0 || data_.cols() <= 0) {
    throw ShapeError("matrix dimensions must be positive");
  }
  for (Eigen::Index j = 0; j < data_.cols(); ++j) {
    for (Eigen::Index i = 0; i < data_.rows(); ++i) {
      const Complex z = data_(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream msg;
        msg << "non-finite matrix entry at (" << i << ", " << j << ")";
        throw Error(msg.str());
      }
      if (field_ == ScalarField::real && z.imag() != 0.0) {
        throw Error("real matrix has an entry with non-zero imaginary part");
      }
    }
  }
}

Matrix::Matrix(const DenseReal& entries)
    : Matrix(entries.cast<Complex>(), ScalarField::real) {}

Matrix Matrix::zero(Eigen::Index rows, Eigen::Index cols, ScalarField field) {
  return Matrix(DenseComplex::Zero(rows, cols), field);
}

Matrix Matrix::identity(Eigen::Index n) {
  return Matrix(DenseComplex::Identity(n, n), ScalarField::real);
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  DenseComplex d = DenseComplex::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = diag[static_cast<std::size_t>(i)];
  return Matrix(std::move(d), ScalarField::real);
}

Matrix Matrix::from_rows(Eigen::Index rows, Eigen::Index cols,
                         std::span<const double> row_major) {
  if (rows <= 0 || cols <= 0 ||
      static_cast<std::size_t>(rows * cols) != row_major.size()) {
    throw ShapeError("from_rows: entry count does not match dimensions");
  }
  DenseComplex d(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      d(i, j) = row_major[static_cast<std::size_t>(i * cols + j)];
    }
  }
  return Matrix(std::move(d), ScalarField::real);
}

double Matrix::max_abs() const { return data_.cwiseAbs().maxCoeff(); }

void Tolerances::validate() const {
  for (double t : {rel_spectral, hermitian_asym, psd_negativity}) {
    if (!(t > 0.0 && t < 1.0)) throw Error("tolerances must lie in (0, 1)");
  }
}

// ---------------------------------------------------------------------------
// Decompositions

Spectrum singular_values(const Matrix& a) {
  if (a.is_real()) {
    Eigen::JacobiSVD<DenseReal> solver(a.real_entries());
    return make_spectrum(to_vector(solver.singularValues()), SpectrumKind::singular,
                         a.rows(), a.cols());
  }
  Eigen::JacobiSVD<DenseComplex> solver(a.entries());
  return make_spectrum(to_vector(solver.singularValues()), SpectrumKind::singular,
                       a.rows(), a.cols());
}

Svd svd(const Matrix& a) {
  Svd out;
  if (a.is_real()) {
    Eigen::JacobiSVD<DenseReal> solver(a.real_entries(),
                                       Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u = solver.matrixU().cast<Complex>();
    out.v = solver.matrixV().cast<Complex>();
    out.sigma = make_spectrum(to_vector(solver.singularValues()), SpectrumKind::singular,
                              a.rows(), a.cols());
  } else {
    Eigen::JacobiSVD<DenseComplex> solver(a.entries(),
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u = solver.matrixU();
    out.v = solver.matrixV();
    out.sigma = make_spectrum(to_vector(solver.singularValues()), SpectrumKind::singular,
                              a.rows(), a.cols());
  }
  // Eigen already returns singular values in decreasing order, so the columns
  // of U and V line up with the sorted spectrum.
  return out;
}

double hermitian_asymmetry(const Matrix& a) {
  require_square(a, "hermitian_asymmetry");
  return (a.entries() - a.entries().adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, const Tolerances& tol) {
  require_square(a, "is_hermitian");
  return hermitian_asymmetry(a) <= tol.hermitian_asym * std::max(1.0, a.max_abs());
}

HermitianEigen hermitian_eigen(const Matrix& a, const Tolerances& tol) {
  require_square(a, "hermitian_eigen");
  if (!is_hermitian(a, tol)) {
    const double asym = hermitian_asymmetry(a);
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |A - A*| = " << asym;
    throw PreconditionError(msg.str(), asym);
  }
  if (a.is_real()) {
    Eigen::SelfAdjointEigenSolver<DenseReal> solver(a.real_entries());
    return descending(solver, a.rows());
  }
  Eigen::SelfAdjointEigenSolver<DenseComplex> solver(a.entries());
  return descending(solver, a.rows());
}

Spectrum hermitian_eigenvalues(const Matrix& a, const Tolerances& tol) {
  require_square(a, "hermitian_eigenvalues");
  if (!is_hermitian(a, tol)) {
    const double asym = hermitian_asymmetry(a);
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |A - A*| = " << asym;
    throw PreconditionError(msg.str(), asym);
  }
  if (a.is_real()) {
    Eigen::SelfAdjointEigenSolver<DenseReal> solver(a.real_entries(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw DecompositionError("Hermitian eigensolver did not converge");
    }
    return make_spectrum(to_vector(solver.eigenvalues()), SpectrumKind::hermitian_eigen,
                         a.rows(), a.cols());
  }
  Eigen::SelfAdjointEigenSolver<DenseComplex> solver(a.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw DecompositionError("Hermitian eigensolver did not converge");
  }
  return make_spectrum(to_vector(solver.eigenvalues()), SpectrumKind::hermitian_eigen,
                       a.rows(), a.cols());
}

bool is_psd(const Matrix& a, const Tolerances& tol) {
  require_square(a, "is_psd");
  if (!is_hermitian(a, tol)) return false;
  const Spectrum lambda = hermitian_eigenvalues(a, tol);
  return lambda.smallest() >= -tol.psd_negativity * std::max(1.0, lambda.largest());
}

// ---------------------------------------------------------------------------
// Elementary operations

double two_norm(const Matrix& a) { return singular_values(a).largest(); }

Complex trace(const Matrix& a) {
  require_square(a, "trace");
  return a.entries().trace();
}

Matrix conj_transpose(const Matrix& a) {
  return Matrix(a.entries().adjoint(), a.field());
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matmul: shape mismatch " << a.rows() << "x" << a.cols() << " * "
        << b.rows() << "x" << b.cols();
    throw ShapeError(msg.str());
  }
  if (a.is_real() && b.is_real()) {
    return Matrix(DenseReal(a.real_entries() * b.real_entries()));
  }
  return Matrix(a.entries() * b.entries(), ScalarField::complex);
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("add: shape mismatch");
  }
  return Matrix(a.entries() + b.entries(), join(a.field(), b.field()));
}

Matrix scale(const Matrix& a, Complex alpha) {
  const ScalarField field =
      (a.is_real() && alpha.imag() == 0.0) ? ScalarField::real : ScalarField::complex;
  return Matrix(a.entries() * alpha, field);
}

Matrix hermitian_part(const Matrix& a) {
  require_square(a, "hermitian_part");
  DenseComplex h = (a.entries() + a.entries().adjoint()) * 0.5;
  // Force an exactly real diagonal so the result is bitwise Hermitian.
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
  return Matrix(std::move(h), a.field());
}

Matrix block_diagonal(const Matrix& a11, const Matrix& a22) {
  DenseComplex d = DenseComplex::Zero(a11.rows() + a22.rows(), a11.cols() + a22.cols());
  d.topLeftCorner(a11.rows(), a11.cols()) = a11.entries();
  d.bottomRightCorner(a22.rows(), a22.cols()) = a22.entries();
  return Matrix(std::move(d), join(a11.field(), a22.field()));
}

Matrix submatrix(const Matrix& a, Eigen::Index row, Eigen::Index col,
                 Eigen::Index rows, Eigen::Index cols) {
  if (row < 0 || col < 0 || rows <= 0 || cols <= 0 || row + rows > a.rows() ||
      col + cols > a.cols()) {
    throw ShapeError("submatrix: block out of range");
  }
  return Matrix(a.entries().block(row, col, rows, cols), a.field());
}

Matrix delete_column(const Matrix& a, Eigen::Index col) {
  if (a.cols() < 2) throw ShapeError("delete_column: need at least two columns");
  if (col < 0 || col >= a.cols()) throw ShapeError("delete_column: index out of range");
  DenseComplex d(a.rows(), a.cols() - 1);
  d.leftCols(col) = a.entries().leftCols(col);
  d.rightCols(a.cols() - 1 - col) = a.entries().rightCols(a.cols() - 1 - col);
  return Matrix(std::move(d), a.field());
}

Matrix delete_row_and_column(const Matrix& a, Eigen::Index index) {
  require_square(a, "delete_row_and_column");
  if (a.rows() < 2) throw ShapeError("delete_row_and_column: need n >= 2");
  if (index < 0 || index >= a.rows()) {
    throw ShapeError("delete_row_and_column: index out of range");
  }
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i != index) keep.push_back(i);
  }
  DenseComplex d(n - 1, n - 1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          a.entries()(keep[i], keep[j]);
    }
  }
  return Matrix(std::move(d), a.field());
}

Matrix psd_sqrt(const Matrix& a, const Tolerances& tol) {
  const HermitianEigen eig = hermitian_eigen(a, tol);
  const double lmax = eig.lambda.largest();
  if (eig.lambda.smallest() < -tol.psd_negativity * std::max(1.0, lmax)) {
    throw PreconditionError("psd_sqrt: matrix is not positive semi-definite",
                            eig.lambda.smallest());
  }
  Eigen::VectorXd roots(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    roots(i) = std::sqrt(std::max(eig.lambda.values[static_cast<std::size_t>(i)], 0.0));
  }
  const DenseComplex r =
      eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  if (a.is_real()) return hermitian_part(Matrix(DenseReal(r.real())));
  return hermitian_part(Matrix(r, ScalarField::complex));
}

// ---------------------------------------------------------------------------
// Sampling

const char* to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::gaussian: return "gaussian";
    case SampleKind::psd_gram: return "psd_gram";
    case SampleKind::prescribed_spectrum: return "prescribed_spectrum";
    case SampleKind::rank1_psd: return "rank1_psd";
    case SampleKind::orthogonal_projector: return "orthogonal_projector";
  }
  return "unknown";
}

SampleKind sample_kind_from_string(const std::string& name) {
  for (SampleKind k : {SampleKind::gaussian, SampleKind::psd_gram,
                       SampleKind::prescribed_spectrum, SampleKind::rank1_psd,
                       SampleKind::orthogonal_projector}) {
    if (name == to_string(k)) return k;
  }
  throw Error("unknown sample kind: " + name);
}

void SampleSpec::validate() const {
  if (m <= 0 || n <= 0) throw ShapeError("sample: dimensions must be positive");
  switch (kind) {
    case SampleKind::prescribed_spectrum: {
      if (!spectrum) throw Error("sample: prescribed_spectrum requires a spectrum");
      const auto& s = *spectrum;
      if (s.size() > static_cast<std::size_t>(std::min(m, n))) {
        throw Error("sample: spectrum longer than min(m, n)");
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] >= 0.0) || !std::isfinite(s[i])) {
          throw Error("sample: spectrum values must be finite and non-negative");
        }
        if (i > 0 && s[i] > s[i - 1]) throw Error("sample: spectrum must be descending");
      }
      break;
    }
    case SampleKind::orthogonal_projector:
      if (m != n) throw ShapeError("sample: projector must be square");
      if (!rank || *rank < 1 || *rank > n) {
        throw Error("sample: projector rank must lie in [1, n]");
      }
      break;
    case SampleKind::rank1_psd:
      if (m != n) throw ShapeError("sample: rank1_psd must be square");
      break;
    default:
      break;
  }
}

Matrix haar_unitary(Eigen::Index n, std::uint64_t seed, ScalarField field) {
  if (n <= 0) throw ShapeError("haar_unitary: n must be positive");
  std::mt19937_64 rng(seed);
  return Matrix(haar(n, rng, field), field);
}

Matrix sample(const SampleSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const ScalarField field = spec.field;
  switch (spec.kind) {
    case SampleKind::gaussian:
      return Matrix(gaussian_matrix(spec.m, spec.n, rng, field), field);
    case SampleKind::psd_gram: {
      const DenseComplex x = gaussian_matrix(spec.m, spec.n, rng, field);
      const DenseComplex g = x.adjoint() * x / static_cast<double>(spec.n);
      return hermitian_part(Matrix(g, field));
    }
    case SampleKind::prescribed_spectrum: {
      const DenseComplex u = haar(spec.m, rng, field);
      const DenseComplex v = haar(spec.n, rng, field);
      const auto& s = *spec.spectrum;
      DenseComplex a = DenseComplex::Zero(spec.m, spec.n);
      for (std::size_t k = 0; k < s.size(); ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        a += s[k] * u.col(kk) * v.col(kk).adjoint();
      }
      return Matrix(std::move(a), field);
    }
    case SampleKind::rank1_psd: {
      const DenseComplex v = gaussian_matrix(spec.n, 1, rng, field);
      return hermitian_part(Matrix(DenseComplex(v * v.adjoint()), field));
    }
    case SampleKind::orthogonal_projector: {
      const DenseComplex q = haar(spec.n, rng, field).leftCols(*spec.rank);
      return hermitian_part(Matrix(DenseComplex(q * q.adjoint()), field));
    }
  }
  throw Error("sample: unhandled kind");
}

}  // namespace srlab
