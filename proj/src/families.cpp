#include "awscheme/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "awscheme/difference_ops.hpp"
#include "awscheme/errors.hpp"

namespace awscheme {

namespace {

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check(std::vector<std::string>& out, bool ok, const std::string& rule, std::initializer_list<std::pair<const char*, double>> vals) {
  if (ok) return;
  std::string msg = "requires " + rule + " (";
  bool first = true;
  for (const auto& [name, v] : vals) {
    if (!first) msg += ", ";
    msg += std::string(name) + "=" + fmt(v);
    first = false;
  }
  out.push_back(msg + ")");
}

void throw_first(const std::vector<std::string>& v, const char* what) {
  if (!v.empty()) throw Error(ErrorKind::validation, std::string(what) + " " + v.front());
}

SeriesResult finish(const Scaled& pre, double pre_rel, const SeriesResult& s) {
  SeriesResult r;
  cplx pv = pre.value();
  r.value = pv * s.value;
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) {
    throw Error(ErrorKind::instability, "value overflows double range");
  }
  r.abs_error = std::abs(pv) * s.abs_error + pre_rel * std::abs(r.value);
  r.terms = s.terms;
  r.converged = r.abs_error <= 1e-10 * std::max(std::abs(r.value), 1e-300);
  return r;
}

// Value c * delta^order under the perturbation gamma -> gamma (1 + delta).
// A factor 1 - u with u proportional to gamma^e and u = 1 contributes -e u
// and one order; with e = 0 it cannot be lifted and counts as a hard zero.
struct Ordered {
  Scaled value;
  int order = 0;
};

constexpr double lattice_tol = 1e-11;
constexpr int hard_zero = 1000;

void times_factor(Ordered& o, cplx u, int e, bool divide) {
  cplx f = 1.0 - u;
  int step = 0;
  if (std::abs(f) <= lattice_tol * std::max(1.0, std::abs(u))) {
    if (e == 0) {
      step = hard_zero;
      f = 1.0;
    } else {
      step = 1;
      f = -static_cast<double>(e) * u;
    }
  }
  if (divide) {
    o.value /= f;
    o.order -= step;
  } else {
    o.value *= f;
    o.order += step;
  }
}

void times_qpoch(Ordered& o, cplx u, int e, double q, bool divide) {
  for (int k = 0; std::abs(u) >= 1e-17; ++k) {
    times_factor(o, u, e, divide);
    u *= q;
    if (k > 100000) throw Error(ErrorKind::domain, "product length overflow");
  }
}

struct LatticeFactor {
  cplx u;
  int e;  // u is proportional to gamma^e
};

// pre * sum_m [(1 - w q^{2m})/(1 - w)] (num)_m / (q, den)_m z^m where pre is
// a ratio of infinite products. Prefactor zeros may meet vanishing series
// denominators on lattices of gamma; the limit keeps the terms of total
// order zero. The bracket is present only when well_poised is set.
SeriesResult lattice_series(const std::vector<LatticeFactor>& pre_num, const std::vector<LatticeFactor>& pre_den,
                            const std::vector<LatticeFactor>& num, const std::vector<LatticeFactor>& den, cplx z,
                            QBase base, const LatticeFactor* well_poised) {
  const double q = base.value();
  Ordered pre;
  for (const auto& f : pre_num) times_qpoch(pre, f.u, f.e, q, false);
  for (const auto& f : pre_den) times_qpoch(pre, f.u, f.e, q, true);
  Ordered ratio;
  if (well_poised) times_factor(ratio, well_poised->u, well_poised->e, true);

  Ordered term;
  cplx sum = 0.0;
  double abssum = 0.0;
  int small = 0;
  int m = 0;
  double qm = 1.0;
  for (;; ++m) {
    Ordered t = term;
    if (well_poised) {
      t.value *= ratio.value;
      t.order += ratio.order;
      times_factor(t, well_poised->u * qm * qm, well_poised->e, false);
    }
    const int total = pre.order + t.order;
    if (total < 0) throw Error(ErrorKind::pole, "function has a pole at this point");
    double mag = 0.0;
    if (total == 0) {
      cplx v = (t.value * pre.value).value();
      sum += v;
      mag = std::abs(v);
      abssum += mag;
    }
    // terms of positive order drop out of the limit and say nothing about convergence
    if (total == 0 && std::abs(z) * qm < 1.0 && mag <= 1e-17 * std::abs(sum)) {
      if (++small >= 3) break;
    } else if (total == 0) {
      small = 0;
    }
    if (m > 2000) {
      if (total > 0) break;
      throw Error(ErrorKind::divergence, "no convergence within 2000 terms");
    }
    for (const auto& f : num) times_factor(term, f.u * qm, f.e, false);
    times_factor(term, q * qm, 0, true);
    for (const auto& f : den) times_factor(term, f.u * qm, f.e, true);
    term.value *= z;
    qm *= q;
  }
  SeriesResult r;
  r.value = sum;
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
    throw Error(ErrorKind::instability, "value overflows double range");
  }
  r.abs_error = 64 * eps * abssum + 1e-17 * std::abs(sum);
  r.terms = m + 1;
  r.converged = r.abs_error <= 1e-10 * std::max(std::abs(sum), 1e-300);
  return r;
}

SeriesResult aw_series_lattice(const AWParams& p, cplx g, cplx x) {
  const double q = p.q.value();
  const AWParams dp = p.dual();
  const double at = dp.a, bt = dp.b, ct = dp.c, dt = dp.d;
  const cplx A = at * bt * ct * g / q;
  const LatticeFactor wp{A, 1};
  return lattice_series({{q * p.a * x * g / dt, 1}, {q * p.a * g / (dt * x), 1}},
                        {{at * bt * ct * g, 1}, {q * g / dt, 1}, {q * at / dt, 0}, {q * x / p.d, 0}, {q / (p.d * x), 0}},
                        {{A, 1}, {p.a * x, 0}, {p.a / x, 0}, {at * g, 1}, {bt * g, 1}, {ct * g, 1}},
                        {{A * q / (p.a * x), 1}, {A * q * x / p.a, 1}, {A * q / (at * g), 0}, {A * q / (bt * g), 0},
                         {A * q / (ct * g), 0}},
                        q / (dt * g), p.q, &wp);
}

// The 8W7 representation taken literally at the given spectral point.
SeriesResult aw_series(const AWParams& p, cplx g, cplx x) {
  const double q = p.q.value();
  const AWParams dp = p.dual();
  const double at = dp.a, bt = dp.b, ct = dp.c, dt = dp.d;
  if (g == cplx(0.0)) throw Error(ErrorKind::domain, "spectral point gamma must be nonzero");
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "geometric point x must be nonzero");
  if (!(std::abs(q / (dt * g)) < 1.0)) {
    throw Error(ErrorKind::continuation, "|q/(d~ gamma)| >= 1: outside the series region");
  }
  try {
    double rel = 0.0;
    Scaled pre = qpoch_ratio({q * p.a * x * g / dt, q * p.a * g / (dt * x)},
                             {at * bt * ct * g, q * g / dt, q * at / dt, q * x / p.d, q / (p.d * x)}, p.q, rel);
    SeriesResult w = w87(at * bt * ct * g / q, p.a * x, p.a / x, at * g, bt * g, ct * g, p.q, q / (dt * g));
    return finish(pre, rel, w);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::pole) throw;
    return aw_series_lattice(p, g, x);
  }
}

double log_distance(cplx v) { return std::abs(std::log(std::abs(v))); }

}  // namespace

AWParams AWParams::dual() const {
  const double qv = q.value();
  const double r = a * b * c * d / qv;
  if (!(r > 0.0)) throw Error(ErrorKind::domain, "dual parameters need abcd/q > 0");
  AWParams out;
  out.q = q;
  out.a = std::sqrt(r);
  out.b = a * b / out.a;
  out.c = a * c / out.a;
  out.d = a * d / out.a;
  out.t = 1.0 / (qv * a * d * t);
  return out;
}

std::vector<std::string> AWParams::violations() const {
  std::vector<std::string> v;
  const double qv = q.value();
  check(v, b > 0.0, "b > 0", {{"b", b}});
  check(v, c > 0.0, "c > 0", {{"c", c}});
  check(v, b <= a, "b <= a", {{"a", a}, {"b", b}});
  check(v, c <= a, "c <= a", {{"a", a}, {"c", c}});
  check(v, a < d / qv, "a < d/q", {{"a", a}, {"d", d}, {"q", qv}});
  check(v, b * d >= qv, "b*d >= q", {{"b", b}, {"d", d}, {"q", qv}});
  check(v, c * d >= qv, "c*d >= q", {{"c", c}, {"d", d}, {"q", qv}});
  check(v, a * b < 1.0, "a*b < 1", {{"a", a}, {"b", b}});
  check(v, a * c < 1.0, "a*c < 1", {{"a", a}, {"c", c}});
  check(v, t < 0.0, "t < 0", {{"t", t}});
  if (a * b * c * d > 0.0) {
    const double dt = dual().d;
    check(v, dt > qv, "d~ = ad/a~ > q", {{"d~", dt}, {"q", qv}});
  }
  return v;
}

void AWParams::validate() const { throw_first(violations(), "Askey-Wilson parameters:"); }

std::vector<std::string> AWBesselParams::violations() const {
  std::vector<std::string> v;
  check(v, b > 0.0, "b > 0", {{"b", b}});
  check(v, a > b, "a > b", {{"a", a}, {"b", b}});
  check(v, a * b < 1.0, "a*b < 1", {{"a", a}, {"b", b}});
  return v;
}

void AWBesselParams::validate() const { throw_first(violations(), "q-Bessel parameters:"); }

std::vector<std::string> QBesselParams::violations() const {
  std::vector<std::string> v;
  check(v, a > 0.0 && a < 1.0, "0 < a < 1", {{"a", a}});
  return v;
}

void QBesselParams::validate() const { throw_first(violations(), "q-Bessel parameters:"); }

std::vector<std::string> BigParams::violations() const {
  std::vector<std::string> v;
  check(v, b > 0.0, "b > 0", {{"b", b}});
  check(v, c > 0.0, "c > 0", {{"c", c}});
  check(v, a >= b, "a >= b", {{"a", a}, {"b", b}});
  check(v, a >= c, "a >= c", {{"a", a}, {"c", c}});
  check(v, a * b < 1.0, "a*b < 1", {{"a", a}, {"b", b}});
  check(v, a * c < 1.0, "a*c < 1", {{"a", a}, {"c", c}});
  check(v, b * c < 1.0, "b*c < 1", {{"b", b}, {"c", c}});
  check(v, z > 0.0, "z > 0", {{"z", z}});
  return v;
}

void BigParams::validate() const { throw_first(violations(), "big q-Jacobi parameters:"); }

std::vector<std::string> LittleParams::violations() const {
  std::vector<std::string> v;
  check(v, b > 0.0, "b > 0", {{"b", b}});
  check(v, a > b, "a > b", {{"a", a}, {"b", b}});
  check(v, a * b < 1.0, "a*b < 1", {{"a", a}, {"b", b}});
  check(v, y > 0.0, "y > 0", {{"y", y}});
  return v;
}

void LittleParams::validate() const { throw_first(violations(), "little q-Jacobi parameters:"); }

SeriesResult aw_function(const AWParams& params, cplx gamma, cplx x, AWRoute route) {
  // b and c enter symmetrically; a fixed order makes the symmetry exact
  AWParams p = params;
  if (p.b < p.c) std::swap(p.b, p.c);
  switch (route) {
    case AWRoute::series: return aw_series(p, gamma, x);
    case AWRoute::inverted: return aw_series(p, 1.0 / gamma, x);
    case AWRoute::dual: {
      if (x == cplx(0.0)) throw Error(ErrorKind::domain, "geometric point x must be nonzero");
      cplx xs = std::abs(x) >= 1.0 ? x : 1.0 / x;
      return aw_series(p.dual(), xs, gamma);
    }
    case AWRoute::automatic: break;
  }
  if (gamma == cplx(0.0)) throw Error(ErrorKind::domain, "spectral point gamma must be nonzero");
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "geometric point x must be nonzero");
  // The series is well conditioned when the spectral point is close to the
  // unit circle; duality lets x take that role instead.
  cplx gs = std::abs(gamma) >= 1.0 ? gamma : 1.0 / gamma;
  AWRoute first = log_distance(gamma) > log_distance(x) + 0.7 ? AWRoute::dual : AWRoute::series;
  AWRoute second = first == AWRoute::dual ? AWRoute::series : AWRoute::dual;
  try {
    return first == AWRoute::series ? aw_series(p, gs, x) : aw_function(p, gamma, x, AWRoute::dual);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::pole && e.kind() != ErrorKind::continuation) throw;
    return second == AWRoute::series ? aw_series(p, gs, x) : aw_function(p, gamma, x, AWRoute::dual);
  }
}

SeriesResult aw_polynomial(const AWParams& p, int n, cplx x) {
  if (n < 0) throw Error(ErrorKind::domain, "degree must be nonnegative");
  const QBase q = p.q;
  const double qv = q.value();
  const AWParams dp = p.dual();
  const double at = dp.a, bt = dp.b, ct = dp.c, dt = dp.d;
  const double qn = std::pow(qv, n);
  const double g = 1.0 / (at * qn);
  double rel = 0.0;
  // The x-dependent parts of the prefactor cancel against the (.;q)_n ratio.
  Scaled pre = qpoch_ratio({}, {at * bt * ct * g, qv * g / dt, qv * at / dt}, q, rel);
  cplx fin = qpoch(p.a * qv / (qn * p.d), q, n).value * qpoch(qv / (qn * p.a * p.d), q, n).value;
  PhiSpec s{{1.0 / qn, p.a * p.b * p.c * p.d * qn / qv, p.a * x, p.a / x},
            {p.a * p.b, p.a * p.c, p.a * p.d},
            qv,
            qv};
  SeriesResult phi = rphis(s);
  pre *= Scaled(fin);
  return finish(pre, rel + 4 * n * eps, phi);
}

SeriesResult aw_qbessel(const AWBesselParams& p, cplx gamma, cplx x) {
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "geometric point x must be nonzero");
  const double qv = p.q.value();
  return phi21(p.a * x, p.a / x, p.a * p.b, p.q, -qv * gamma / p.a).result;
}

SeriesResult big_jacobi_series(const BigParams& p, cplx gamma, cplx x) {
  if (gamma == cplx(0.0)) throw Error(ErrorKind::domain, "spectral point gamma must be nonzero");
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "geometric point x must be nonzero");
  PhiSpec s{{p.a * gamma, p.a / gamma, -1.0 / x}, {p.a * p.b, p.a * p.c}, p.q.value(), -p.b * p.c * x};
  return rphis(s);
}

SeriesResult big_jacobi(const BigParams& p, cplx gamma, cplx x) {
  constexpr double disc = 0.7;
  const double qv = p.q.value();
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "geometric point x must be nonzero");
  const bool terminating = terminating_length(p.a * gamma, qv) >= 0 || terminating_length(p.a / gamma, qv) >= 0 ||
                           terminating_length(-1.0 / x, qv) >= 0;
  if (terminating) return big_jacobi_series(p, gamma, x);
  // Far from the unit circle the direct series cancels catastrophically;
  // the transformed series has argument c/gamma instead.
  const cplx gs = std::abs(gamma) >= 1.0 ? gamma : 1.0 / gamma;
  if (std::abs(gs) >= 8.0) {
    const double a = p.a, b = p.b, c = p.c;
    return lattice_series({{c / gs, -1}, {-a * b * c * gs * x, 1}}, {{a * c, 0}, {-b * c * x, 0}},
                          {{a * gs, 1}, {b * gs, 1}, {-a * b * x, 0}}, {{a * b, 0}, {-a * b * c * gs * x, 1}}, c / gs, p.q,
                          nullptr);
  }
  const double bc = p.b * p.c;
  if (std::abs(bc * x) < disc) return big_jacobi_series(p, gamma, x);

  int k = 1;
  while (std::abs(bc * x) * std::pow(qv, k) >= disc) ++k;
  const OperatorSpec op = big_jacobi_operator(p);
  auto from_depth = [&](int depth) {
    cplx x0 = x * std::pow(qv, depth);
    cplx f0 = big_jacobi_series(p, gamma, x0).value;
    cplx f1 = big_jacobi_series(p, gamma, qv * x0).value;
    return continue_on_qline(op, gamma, x0, f0, f1, Direction::up, depth).back();
  };
  SeriesResult r;
  r.value = from_depth(k);
  // A second seed depth gives an empirical error estimate for the recurrence.
  cplx alt = from_depth(k + 1);
  r.abs_error = std::abs(r.value - alt) + 8 * k * eps * std::abs(r.value);
  r.terms = k;
  r.converged = r.abs_error <= 1e-10 * std::max(std::abs(r.value), 1e-300);
  return r;
}

SeriesResult big_jacobi_polynomial(const BigParams& p, int n, cplx x) {
  if (n < 0) throw Error(ErrorKind::domain, "degree must be nonnegative");
  // The terminating sum cancels by many orders of magnitude for moderate n,
  // so the derived parameters must not be rounded to double first.
  using R = boost::multiprecision::cpp_bin_float_50;
  using C = boost::multiprecision::cpp_complex_50;
  const R q = p.q.value(), a = p.a, b = p.b, c = p.c;
  const C xx(R(x.real()), R(x.imag()));
  const R qn = pow(q, n);
  auto poch = [&](const R& u, int len) {
    R r = 1;
    for (int k = 0; k < len; ++k) r *= 1 - u * pow(q, k);
    return r;
  };
  const R pre = poch(c / (qn * a), n) / poch(a * c, n);
  const C num2 = C(-a * b) * xx;
  C term = 1, sum = 1;
  R qm = 1;
  for (int m = 0; m < n; ++m) {
    C ratio = C((1 - qm / qn) * (1 - a * a * qn * qm)) * (C(1) - num2 * C(qm));
    ratio /= C((1 - a * b * qm) * (1 - q * a / c * qm) * (1 - q * qm));
    term *= ratio * C(q);
    sum += term;
    qm *= q;
  }
  const C v = sum * C(pre);
  SeriesResult r;
  r.value = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  r.abs_error = eps * std::abs(r.value);
  r.terms = n + 1;
  return r;
}

SeriesResult cdqh_poly(const BigParams& p, cplx gamma, int k) {
  if (k < 0) throw Error(ErrorKind::domain, "index must be nonnegative");
  if (gamma == cplx(0.0)) throw Error(ErrorKind::domain, "spectral point gamma must be nonzero");
  const double qv = p.q.value();
  PhiSpec s{{std::pow(qv, k), gamma / p.a, 1.0 / (p.a * gamma)},
            {1.0 / (p.a * p.b), 1.0 / (p.a * p.c)},
            1.0 / qv,
            1.0 / qv};
  return rphis(s);
}

SeriesResult big_qbessel(const QBesselParams& p, cplx gamma, cplx x) {
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "big q-Bessel function needs x != 0");
  return phi11(-1.0 / x, p.a, p.q, p.a * gamma * x).result;
}

SeriesResult q_laguerre(const QBesselParams& p, cplx gamma, int n) {
  const double qn = std::pow(p.q.value(), n);
  PhiSpec s{{1.0 / qn}, {p.a}, p.q.value(), -p.a * gamma * qn};
  return rphis(s);
}

CoefficientPair qbessel_coeff_pair(const QBesselParams& p, cplx gamma, int index) {
  if (gamma == cplx(0.0)) throw Error(ErrorKind::domain, "q-Bessel coefficient needs gamma != 0");
  const double qv = p.q.value();
  const double qp1 = std::pow(qv, index + 1);
  CoefficientPair out;
  out.first = phi11_as(Representation::direct, -p.a * gamma / qp1, p.a, p.q, qp1);
  double rel = 0.0;
  Scaled pre = qpoch_ratio({}, {p.a}, p.q, rel);
  ScaledSeries s = normalized_sum({-gamma}, qp1, p.a, 1, p.q);
  Scaled v = pre * s.value;
  out.second.value = v.value();
  out.second.abs_error = (rel + s.rel_error) * std::abs(out.second.value);
  out.second.terms = s.terms;
  out.second.converged = rel + s.rel_error <= 1e-12;
  double scale = std::max(std::abs(out.first.value), std::abs(out.second.value));
  out.rel_discrepancy = scale > 0.0 ? std::abs(out.first.value - out.second.value) / scale : 0.0;
  return out;
}

SeriesResult qbessel_coeff(const QBesselParams& p, cplx gamma, int index) {
  CoefficientPair pair = qbessel_coeff_pair(p, gamma, index);
  const SeriesResult& a = pair.first;
  const SeriesResult& b = pair.second;
  return a.abs_error <= b.abs_error ? a : b;
}

SeriesResult little_jacobi(const LittleParams& p, cplx gamma, cplx x) {
  if (gamma == cplx(0.0)) throw Error(ErrorKind::domain, "spectral point gamma must be nonzero");
  return phi21(p.a * gamma, p.a / gamma, p.a * p.b, p.q, -p.b * x).result;
}

SeriesResult little_jacobi_polynomial(const LittleParams& p, int n, cplx x) {
  const double qn = std::pow(p.q.value(), n);
  PhiSpec s{{1.0 / qn, p.a * p.a * qn}, {p.a * p.b}, p.q.value(), -p.b * x};
  return rphis(s);
}

SeriesResult little_qbessel(const QBesselParams& p, cplx gamma, cplx x) {
  return phi11(0.0, p.a, p.q, p.q.value() * gamma * x).result;
}

}  // namespace awscheme
