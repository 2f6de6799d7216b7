#ifndef SRLAB_SCHATTEN_HPP
#define SRLAB_SCHATTEN_HPP

#include <string>

#include "srlab/matrix.hpp"

namespace srlab {

// Schatten / stable-rank exponent p in (0, inf], plus the degenerate p = 0
// that turns the p-stable rank into a rank count.
class PExponent {
 public:
  enum class Kind { finite, infinity, zero };

  // Throws Error unless p > 0 and finite.
  static PExponent finite(double p);
  static PExponent infinity() { return PExponent(Kind::infinity, 0.0); }
  static PExponent zero() { return PExponent(Kind::zero, 0.0); }
  // Accepts "inf", "infinity", "0" and positive decimals.
  static PExponent parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_infinity() const noexcept { return kind_ == Kind::infinity; }
  bool is_zero() const noexcept { return kind_ == Kind::zero; }
  // Finite value; +inf for infinity, 0 for zero.
  double value() const noexcept;
  // Quasi-norm range 0 < p < 1, where the triangle inequality fails.
  bool is_quasi() const noexcept { return is_finite() && p_ < 1.0; }
  // p >= 1 or infinity.
  bool is_norm() const noexcept { return is_infinity() || (is_finite() && p_ >= 1.0); }

  // Doubles p; infinity and zero are fixed points.
  PExponent doubled() const;

  std::string to_string() const;

  friend bool operator==(const PExponent& a, const PExponent& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  PExponent(Kind kind, double p) : kind_(kind), p_(p) {}
  Kind kind_;
  double p_;
};

// x^(1/p) with the p = inf convention x^0 = 1 for x > 0 and 0 for x = 0.
double pth_root(double x, const PExponent& p);
// x^p with the p = inf convention: 1 if x == 1, +inf if x > 1, 0 if x < 1.
double pth_power(double x, const PExponent& p);

// (sum_j sigma_j^p)^(1/p), or sigma_1 for p = inf. Evaluated as
// sigma_1 * (sum_j (sigma_j / sigma_1)^p)^(1/p) so large p cannot overflow.
// Throws Error for p = 0 (use numerical_rank) and for non-singular spectra.
double schatten_norm_from_spectrum(const Spectrum& s, const PExponent& p);
double schatten_norm(const Matrix& a, const PExponent& p);

}  // namespace srlab

#endif  // SRLAB_SCHATTEN_HPP
