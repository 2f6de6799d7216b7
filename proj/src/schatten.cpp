#include "srlab/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace srlab {

PExponent PExponent::finite(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "exponent p must be positive and finite, got " << p;
    throw Error(msg.str());
  }
  return PExponent(Kind::finite, p);
}

PExponent PExponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "oo") {
    return infinity();
  }
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error("cannot parse exponent '" + text + "'");
  }
  if (used != text.size()) throw Error("cannot parse exponent '" + text + "'");
  if (std::isinf(p) && p > 0) return infinity();
  if (p == 0.0) return zero();
  return finite(p);
}

double PExponent::value() const noexcept {
  switch (kind_) {
    case Kind::finite: return p_;
    case Kind::infinity: return std::numeric_limits<double>::infinity();
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

PExponent PExponent::doubled() const {
  return is_finite() ? PExponent(Kind::finite, 2.0 * p_) : *this;
}

std::string PExponent::to_string() const {
  switch (kind_) {
    case Kind::infinity: return "inf";
    case Kind::zero: return "0";
    case Kind::finite: {
      std::ostringstream out;
      out.precision(17);
      out << p_;
      return out.str();
    }
  }
  return "?";
}

double pth_root(double x, const PExponent& p) {
  if (p.is_zero()) throw Error("pth_root: p = 0 has no root");
  if (p.is_infinity()) return x > 0.0 ? 1.0 : 0.0;
  return std::pow(x, 1.0 / p.value());
}

double pth_power(double x, const PExponent& p) {
  if (p.is_zero()) return 1.0;
  if (p.is_infinity()) {
    if (x == 1.0) return 1.0;
    return x > 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return std::pow(x, p.value());
}

double schatten_norm_from_spectrum(const Spectrum& s, const PExponent& p) {
  if (s.kind != SpectrumKind::singular) {
    throw Error("schatten_norm_from_spectrum: expected singular values");
  }
  if (p.is_zero()) {
    throw Error("Schatten p = 0 is a rank count, not a norm; use numerical_rank");
  }
  const double top = s.largest();
  if (top == 0.0) return 0.0;
  if (p.is_infinity()) return top;
  const double exponent = p.value();
  double sum = 0.0;
  // Smallest terms first.
  for (auto it = s.values.rbegin(); it != s.values.rend(); ++it) {
    sum += std::pow(*it / top, exponent);
  }
  return top * std::pow(sum, 1.0 / exponent);
}

double schatten_norm(const Matrix& a, const PExponent& p) {
  if (p.is_zero()) {
    throw Error("Schatten p = 0 is a rank count, not a norm; use numerical_rank");
  }
  return schatten_norm_from_spectrum(singular_values(a), p);
}

}  // namespace srlab
