#pragma once

#include <complex>
#include <initializer_list>
#include <limits>

namespace awscheme {

using cplx = std::complex<double>;

inline constexpr double eps = std::numeric_limits<double>::epsilon();

// Relative tolerance used to recognise a factor 1 - a q^k as an exact zero.
inline constexpr double zero_tol = 64 * eps;

class QBase {
 public:
  explicit QBase(double q);
  double value() const noexcept { return q_; }

 private:
  double q_;
};

struct SeriesResult {
  cplx value{1.0, 0.0};
  double abs_error = 0.0;
  int terms = 1;
  bool converged = true;
};

// Complex number stored as mantissa * 2^exponent, for products whose
// intermediate magnitudes leave the double range.
class Scaled {
 public:
  Scaled() = default;
  Scaled(cplx v) : m_(v) { normalize(); }  // NOLINT(google-explicit-constructor)
  Scaled(cplx mantissa, long exponent) : m_(mantissa), e_(exponent) { normalize(); }

  Scaled& operator*=(cplx f);
  Scaled& operator/=(cplx f);
  Scaled& operator*=(const Scaled& s);
  Scaled& operator/=(const Scaled& s);

  friend Scaled operator*(Scaled a, const Scaled& b) { return a *= b; }
  friend Scaled operator/(Scaled a, const Scaled& b) { return a /= b; }

  cplx mantissa() const noexcept { return m_; }
  long exponent() const noexcept { return e_; }
  bool is_zero() const noexcept { return m_ == cplx(0.0); }
  double log2_abs() const;
  // Value times 2^shift, overflowing to inf or underflowing to 0.
  cplx value(long shift = 0) const;

 private:
  void normalize();
  cplx m_{1.0, 0.0};
  long e_ = 0;
};

struct ProductResult {
  Scaled value;
  double rel_error = 0.0;
  int terms = 1;
  bool exact_zero = false;
};

// (a;q)_inf with the value kept in scaled form.
ProductResult qpoch_scaled(cplx a, QBase q);

// (num...; q)_inf / (den...; q)_inf in scaled form. Adds the relative error
// bound to rel; a vanishing denominator product is a pole error.
Scaled qpoch_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den, QBase q, double& rel);

SeriesResult qpoch(cplx a, QBase q, int n);
SeriesResult qpoch(cplx a, QBase q);
SeriesResult theta(cplx x, QBase q);
SeriesResult qpoch_sym(cplx c, cplx x, QBase q);

// True when 1 - w vanishes up to zero_tol.
bool is_unit(cplx w) noexcept;

// If w = q^n for an integer n (within zero_tol), stores n and returns true.
bool qpower_index(cplx w, QBase q, long& n);

}  // namespace awscheme
