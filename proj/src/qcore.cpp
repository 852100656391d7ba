#include "awscheme/qcore.hpp"

#include <cmath>
#include <string>

#include "awscheme/errors.hpp"

namespace awscheme {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::continuation: return "continuation";
    case ErrorKind::genericity: return "genericity";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::instability: return "instability";
    case ErrorKind::step: return "step";
    case ErrorKind::validation: return "validation";
    case ErrorKind::write: return "write";
  }
  return "unknown";
}

QBase::QBase(double q) : q_(q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::domain, "base q must satisfy 0 < q < 1, got " + std::to_string(q));
  }
}

void Scaled::normalize() {
  double mag = std::max(std::abs(m_.real()), std::abs(m_.imag()));
  if (mag == 0.0 || !std::isfinite(mag)) {
    if (mag == 0.0) e_ = 0;
    return;
  }
  int k = 0;
  std::frexp(mag, &k);
  m_ = cplx(std::scalbn(m_.real(), -k), std::scalbn(m_.imag(), -k));
  e_ += k;
}

Scaled& Scaled::operator*=(cplx f) {
  m_ *= f;
  normalize();
  return *this;
}

Scaled& Scaled::operator/=(cplx f) {
  m_ /= f;
  normalize();
  return *this;
}

Scaled& Scaled::operator*=(const Scaled& s) {
  m_ *= s.m_;
  e_ += s.e_;
  normalize();
  return *this;
}

Scaled& Scaled::operator/=(const Scaled& s) {
  m_ /= s.m_;
  e_ -= s.e_;
  normalize();
  return *this;
}

double Scaled::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log2(std::abs(m_)) + static_cast<double>(e_);
}

cplx Scaled::value(long shift) const {
  if (is_zero()) return 0.0;
  long e = e_ + shift;
  if (e > 4000) e = 4000;
  if (e < -4000) e = -4000;
  int ei = static_cast<int>(e);
  return {std::scalbn(m_.real(), ei), std::scalbn(m_.imag(), ei)};
}

bool is_unit(cplx w) noexcept { return std::abs(1.0 - w) <= zero_tol * std::max(1.0, std::abs(w)); }

bool qpower_index(cplx w, QBase q, long& n) {
  if (w == cplx(0.0)) return false;
  double lq = std::log(q.value());
  double x = std::log(std::abs(w)) / lq;
  if (std::abs(x) > 1e6) return false;
  long r = std::lround(x);
  cplx ratio = w / std::pow(q.value(), static_cast<double>(r));
  if (!is_unit(ratio)) return false;
  n = r;
  return true;
}

ProductResult qpoch_scaled(cplx a, QBase q) {
  ProductResult out;
  const double qv = q.value();
  const double stop = 1e-17;
  cplx aqk = a;
  int k = 0;
  while (std::abs(aqk) >= stop) {
    if (is_unit(aqk)) {
      out.value = Scaled(0.0);
      out.exact_zero = true;
      out.rel_error = 0.0;
      out.terms = k + 1;
      return out;
    }
    out.value *= (1.0 - aqk);
    aqk *= qv;
    ++k;
  }
  double tail = std::abs(aqk) / (1.0 - qv);
  out.terms = std::max(k, 1);
  out.rel_error = 1.01 * tail + 2.0 * (k + 1) * eps;
  return out;
}

Scaled qpoch_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den, QBase q, double& rel) {
  Scaled v;
  for (cplx p : den) {
    ProductResult pr = qpoch_scaled(p, q);
    if (pr.exact_zero) throw Error(ErrorKind::pole, "infinite product in a denominator vanishes");
    v /= pr.value;
    rel += pr.rel_error;
  }
  for (cplx p : num) {
    ProductResult pr = qpoch_scaled(p, q);
    if (pr.exact_zero) return Scaled(0.0);
    v *= pr.value;
    rel += pr.rel_error;
  }
  return v;
}

SeriesResult qpoch(cplx a, QBase q, int n) {
  if (n < 0) throw Error(ErrorKind::domain, "qpoch length must be nonnegative");
  SeriesResult r;
  cplx aqk = a;
  cplx v = 1.0;
  for (int k = 0; k < n; ++k) {
    if (is_unit(aqk)) {
      r.value = 0.0;
      r.abs_error = 0.0;
      r.terms = n;
      return r;
    }
    v *= (1.0 - aqk);
    aqk *= q.value();
  }
  r.value = v;
  r.abs_error = 2.0 * n * eps * std::abs(v);
  r.terms = std::max(n, 1);
  return r;
}

SeriesResult qpoch(cplx a, QBase q) {
  ProductResult p = qpoch_scaled(a, q);
  SeriesResult r;
  r.value = p.value.value();
  r.abs_error = p.rel_error * std::abs(r.value);
  r.terms = p.terms;
  return r;
}

SeriesResult theta(cplx x, QBase q) {
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "theta(x) requires x != 0");
  ProductResult p1 = qpoch_scaled(x, q);
  ProductResult p2 = qpoch_scaled(q.value() / x, q);
  SeriesResult r;
  r.terms = p1.terms + p2.terms;
  if (p1.exact_zero || p2.exact_zero) {
    r.value = 0.0;
    r.abs_error = 0.0;
    return r;
  }
  r.value = (p1.value * p2.value).value();
  r.abs_error = (p1.rel_error + p2.rel_error) * std::abs(r.value);
  return r;
}

SeriesResult qpoch_sym(cplx c, cplx x, QBase q) {
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "qpoch_sym(c, x) requires x != 0");
  ProductResult p1 = qpoch_scaled(c * x, q);
  ProductResult p2 = qpoch_scaled(c / x, q);
  SeriesResult r;
  r.terms = p1.terms + p2.terms;
  if (p1.exact_zero || p2.exact_zero) {
    r.value = 0.0;
    r.abs_error = 0.0;
    return r;
  }
  r.value = (p1.value * p2.value).value();
  r.abs_error = (p1.rel_error + p2.rel_error) * std::abs(r.value);
  return r;
}

}  // namespace awscheme
