#ifndef SRLAB_MATRIX_HPP
#define SRLAB_MATRIX_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace srlab {

using Complex = std::complex<double>;
using DenseComplex = Eigen::MatrixXcd;
using DenseReal = Eigen::MatrixXd;

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes don't match, a matrix isn't square, an argument is out of range.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// The input violates an operation precondition (not Hermitian, not PSD, ...).
// `measure` carries the offending quantity, e.g. the asymmetry or lambda_min.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double measure)
      : Error(what), measure_(measure) {}
  double measure() const noexcept { return measure_; }

 private:
  double measure_;
};

// A decomposition did not converge or broke down.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

enum class ScalarField { real, complex };

const char* to_string(ScalarField field);

// Dense rectangular matrix over R or C. Entries are always held in complex
// storage; the field tag lets real inputs take real-arithmetic paths in the
// decompositions. Immutable after construction.
class Matrix {
 public:
  // Throws ShapeError for empty dimensions, Error for non-finite entries.
  explicit Matrix(DenseComplex entries, ScalarField field = ScalarField::complex);
  explicit Matrix(const DenseReal& entries);

  static Matrix zero(Eigen::Index rows, Eigen::Index cols,
                     ScalarField field = ScalarField::real);
  static Matrix identity(Eigen::Index n);
  static Matrix diagonal(std::span<const double> diag);
  // Row-major real entries.
  static Matrix from_rows(Eigen::Index rows, Eigen::Index cols,
                          std::span<const double> row_major);

  Eigen::Index rows() const noexcept { return data_.rows(); }
  Eigen::Index cols() const noexcept { return data_.cols(); }
  bool square() const noexcept { return rows() == cols(); }
  ScalarField field() const noexcept { return field_; }
  bool is_real() const noexcept { return field_ == ScalarField::real; }

  const DenseComplex& entries() const noexcept { return data_; }
  DenseReal real_entries() const { return data_.real(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }

  // Largest entry magnitude.
  double max_abs() const;

 private:
  DenseComplex data_;
  ScalarField field_;
};

enum class SpectrumKind { singular, hermitian_eigen };

// Descending singular values or Hermitian eigenvalues of a matrix.
struct Spectrum {
  std::vector<double> values;
  SpectrumKind kind = SpectrumKind::singular;
  Eigen::Index source_rows = 0;
  Eigen::Index source_cols = 0;

  double largest() const { return values.empty() ? 0.0 : values.front(); }
  double smallest() const { return values.empty() ? 0.0 : values.back(); }
};

struct Tolerances {
  double rel_spectral = 1e-10;
  double hermitian_asym = 1e-12;
  double psd_negativity = 1e-10;

  // Throws Error unless every field lies in (0, 1).
  void validate() const;
};

// Full singular value decomposition A = U diag(sigma) V*.
struct Svd {
  DenseComplex u;  // rows x rows
  Spectrum sigma;
  DenseComplex v;  // cols x cols
};

// Hermitian eigendecomposition A = V diag(lambda) V*, lambda descending.
struct HermitianEigen {
  Spectrum lambda;
  DenseComplex vectors;
};

Spectrum singular_values(const Matrix& a);
Svd svd(const Matrix& a);

bool is_hermitian(const Matrix& a, const Tolerances& tol = {});
bool is_psd(const Matrix& a, const Tolerances& tol = {});
// Largest entry of |A - A*|.
double hermitian_asymmetry(const Matrix& a);

// Throws PreconditionError naming the asymmetry for non-Hermitian input.
Spectrum hermitian_eigenvalues(const Matrix& a, const Tolerances& tol = {});
HermitianEigen hermitian_eigen(const Matrix& a, const Tolerances& tol = {});

double two_norm(const Matrix& a);
Complex trace(const Matrix& a);
Matrix conj_transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, Complex alpha);
// Exactly Hermitian (A + A*)/2; used after products that are Hermitian in
// exact arithmetic.
Matrix hermitian_part(const Matrix& a);
Matrix block_diagonal(const Matrix& a11, const Matrix& a22);
Matrix submatrix(const Matrix& a, Eigen::Index row, Eigen::Index col,
                 Eigen::Index rows, Eigen::Index cols);
Matrix delete_column(const Matrix& a, Eigen::Index col);
Matrix delete_row_and_column(const Matrix& a, Eigen::Index index);
// Principal square root of a PSD matrix via its eigendecomposition; tiny
// negative eigenvalues from round-off are clamped to zero.
Matrix psd_sqrt(const Matrix& a, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Seeded sampling

enum class SampleKind {
  gaussian,
  psd_gram,
  prescribed_spectrum,
  rank1_psd,
  orthogonal_projector
};

const char* to_string(SampleKind kind);
SampleKind sample_kind_from_string(const std::string& name);

struct SampleSpec {
  SampleKind kind = SampleKind::gaussian;
  Eigen::Index m = 1;
  Eigen::Index n = 1;
  std::optional<std::vector<double>> spectrum;  // prescribed_spectrum
  std::optional<Eigen::Index> rank;             // orthogonal_projector
  std::uint64_t seed = 0;
  ScalarField field = ScalarField::real;

  void validate() const;
};

// Deterministic in `spec`; identical specs give bit-identical matrices.
Matrix sample(const SampleSpec& spec);

// Haar-distributed unitary (orthogonal for the real field), from the QR
// factorization of a Gaussian matrix with the diagonal of R made positive.
Matrix haar_unitary(Eigen::Index n, std::uint64_t seed,
                    ScalarField field = ScalarField::real);

}  // namespace srlab

#endif  // SRLAB_MATRIX_HPP
