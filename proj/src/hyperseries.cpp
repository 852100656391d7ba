#include "awscheme/hyperseries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "awscheme/errors.hpp"

namespace awscheme {

namespace {

cplx ipow(cplx x, int n) {
  cplx r = 1.0;
  bool inv = n < 0;
  for (int k = std::abs(n); k > 0; --k) r *= x;
  return inv ? 1.0 / r : r;
}

double tail_bound(double last_abs, double ratio) {
  if (ratio >= 1.0) return last_abs;
  return last_abs * ratio / (1.0 - ratio);
}

bool accept(double abs_error, cplx value, double tolerance) {
  return abs_error <= tolerance * std::max(std::abs(value), 1e-300);
}

// Finite sums carry cancellation of order sum|t|/|sum|; extended precision
// accumulation keeps that away from the double rounding level.
SeriesResult terminating_sum(const PhiSpec& spec, long n) {
  using lcplx = std::complex<long double>;
  const lcplx b(spec.base.real(), spec.base.imag());
  const lcplx z(spec.argument.real(), spec.argument.imag());
  const int r = static_cast<int>(spec.numerator.size());
  const int s = static_cast<int>(spec.denominator.size());
  const int balance = 1 + s - r;
  lcplx term = 1.0L, sum = 1.0L, bm = 1.0L;
  long double abssum = 1.0L;
  for (long m = 0; m < n; ++m) {
    lcplx ratio = z;
    for (cplx p : spec.numerator) ratio *= (1.0L - lcplx(p.real(), p.imag()) * bm);
    for (cplx p : spec.denominator) {
      lcplx pb = lcplx(p.real(), p.imag()) * bm;
      if (is_unit(cplx(static_cast<double>(pb.real()), static_cast<double>(pb.imag())))) {
        throw Error(ErrorKind::pole, "denominator parameter vanishes at term " + std::to_string(m + 1));
      }
      ratio /= (1.0L - pb);
    }
    ratio /= (1.0L - bm * b);
    if (balance != 0) {
      lcplx f = 1.0L;
      for (int k = 0; k < std::abs(balance); ++k) f *= -bm;
      ratio = balance > 0 ? ratio * f : ratio / f;
    }
    bm *= b;
    term *= ratio;
    sum += term;
    abssum += std::abs(term);
  }
  SeriesResult out;
  out.value = cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  out.terms = static_cast<int>(n + 1);
  out.abs_error = (2 + r + s) * 1.1e-19 * static_cast<double>(abssum) + eps * std::abs(out.value);
  out.converged = accept(out.abs_error, out.value, spec.tolerance);
  return out;
}

}  // namespace

const char* to_string(Representation r) noexcept {
  switch (r) {
    case Representation::direct: return "direct";
    case Representation::heine1: return "heine1";
    case Representation::heine1_swapped: return "heine1_swapped";
    case Representation::heine2: return "heine2";
    case Representation::heine2_swapped: return "heine2_swapped";
    case Representation::heine3: return "heine3";
    case Representation::transformed: return "transformed";
  }
  return "unknown";
}

long terminating_length(cplx p, cplx base) {
  if (p == cplx(0.0)) return -1;
  double lb = std::log(std::abs(base));
  if (lb == 0.0) return is_unit(p) ? 0 : -1;
  double x = -std::log(std::abs(p)) / lb;
  if (x < -0.5 || x > 1e7) return -1;
  long n = std::lround(x);
  if (n < 0) return -1;
  return is_unit(p * std::pow(base, static_cast<double>(n))) ? n : -1;
}

SeriesResult rphis(const PhiSpec& spec) {
  const cplx b = spec.base;
  const cplx z = spec.argument;
  const int r = static_cast<int>(spec.numerator.size());
  const int s = static_cast<int>(spec.denominator.size());
  SeriesResult out;
  if (z == cplx(0.0)) return out;

  long nterm = -1;
  for (cplx p : spec.numerator) {
    long n = terminating_length(p, b);
    if (n >= 0 && (nterm < 0 || n < nterm)) nterm = n;
  }
  if (nterm < 0) {
    if (std::abs(b) >= 1.0) throw Error(ErrorKind::divergence, "non-terminating series with |base| >= 1");
    if (r > s + 1) throw Error(ErrorKind::divergence, "non-terminating series with r > s + 1");
    if (r == s + 1 && std::abs(z) >= 1.0) {
      throw Error(ErrorKind::divergence, "|argument| >= 1 outside the disc of convergence");
    }
  } else if (nterm >= spec.max_terms) {
    throw Error(ErrorKind::divergence, "terminating length exceeds max_terms");
  }

  if (nterm >= 0) return terminating_sum(spec, nterm);

  const int balance = 1 + s - r;
  cplx term = 1.0;
  cplx sum = 1.0;
  double abssum = 1.0;
  double ratio_abs = 0.0;
  cplx bm = 1.0;
  int small = 0;
  int m = 0;
  for (;; ++m) {
    if (m + 1 >= spec.max_terms) {
      throw Error(ErrorKind::divergence, "no convergence within " + std::to_string(spec.max_terms) + " terms");
    }
    cplx ratio = z;
    for (cplx p : spec.numerator) ratio *= (1.0 - p * bm);
    for (cplx p : spec.denominator) {
      if (is_unit(p * bm)) throw Error(ErrorKind::pole, "denominator parameter vanishes at term " + std::to_string(m + 1));
      ratio /= (1.0 - p * bm);
    }
    ratio /= (1.0 - bm * b);
    if (balance != 0) ratio *= ipow(-bm, balance);
    bm *= b;
    ratio_abs = std::abs(ratio);
    term *= ratio;
    sum += term;
    abssum += std::abs(term);
    if (std::abs(term) <= 0.25 * eps * std::abs(sum)) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
  }
  out.value = sum;
  out.terms = m + 1;
  double rho = ratio_abs;
  if (r == s + 1) rho = std::max(rho, std::abs(z));
  out.abs_error = tail_bound(std::abs(term), rho) + (2 + r + s) * eps * abssum;
  out.converged = accept(out.abs_error, out.value, spec.tolerance);
  return out;
}

SeriesResult w87(cplx a, cplx b, cplx c, cplx d, cplx e, cplx f, QBase q, cplx z, double tolerance) {
  const double qv = q.value();
  SeriesResult out;
  if (z == cplx(0.0)) return out;
  const cplx upper[5] = {b, c, d, e, f};
  long nterm = -1;
  for (cplx p : upper) {
    long n = terminating_length(p, qv);
    if (n >= 0 && (nterm < 0 || n < nterm)) nterm = n;
  }
  if (nterm < 0 && std::abs(z) >= 1.0) {
    throw Error(ErrorKind::divergence, "8W7 argument outside the unit disc and series does not terminate");
  }
  const cplx lower[5] = {a * qv / b, a * qv / c, a * qv / d, a * qv / e, a * qv / f};

  cplx u = 1.0;
  cplx sum = 1.0;
  double abssum = 1.0;
  double ratio_abs = 0.0;
  cplx last = 1.0;
  double qm1 = 1.0;  // q^{m-1}
  int small = 0;
  int m = 1;
  const int max_terms = 10000;
  for (;; ++m) {
    if (nterm >= 0 && m > nterm) break;
    if (m >= max_terms) throw Error(ErrorKind::divergence, "8W7 did not converge within 10000 terms");
    cplx factor = z;
    if (m > 1) factor *= (1.0 - a * qm1);
    for (cplx p : upper) factor *= (1.0 - p * qm1);
    for (cplx p : lower) {
      if (is_unit(p * qm1)) throw Error(ErrorKind::pole, "8W7 denominator vanishes at term " + std::to_string(m));
      factor /= (1.0 - p * qm1);
    }
    factor /= (1.0 - qm1 * qv);
    u *= factor;
    qm1 *= qv;
    // qm1 now holds q^m
    cplx t = u * (1.0 - a * qm1 * qm1);
    if (last != cplx(0.0)) ratio_abs = std::abs(t / last);
    last = t;
    sum += t;
    abssum += std::abs(t);
    if (nterm < 0) {
      if (std::abs(t) <= 0.25 * eps * std::abs(sum)) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
    }
  }
  out.value = sum;
  out.terms = m;
  double tail = 0.0;
  if (nterm < 0) tail = tail_bound(std::abs(last), std::max(ratio_abs, std::abs(z)));
  out.abs_error = tail + 14 * eps * abssum;
  out.converged = accept(out.abs_error, out.value, tolerance);
  return out;
}

ScaledSeries normalized_sum(const std::vector<cplx>& num, cplx y, cplx w, int balance, QBase q) {
  const double qv = q.value();
  // suffix products S_m = (y q^m; q)_inf
  std::vector<cplx> factors;
  cplx yq = y;
  const double stop = 1e-17;
  while (std::abs(yq) >= stop) {
    factors.push_back(is_unit(yq) ? cplx(0.0) : 1.0 - yq);
    yq *= qv;
    if (factors.size() > 100000) throw Error(ErrorKind::domain, "product length overflow");
  }
  const std::size_t J = factors.size();
  const double prod_tail = std::abs(yq) / (1.0 - qv);
  std::vector<Scaled> suffix(J + 1);
  for (std::size_t j = J; j-- > 0;) suffix[j] = suffix[j + 1] * Scaled(factors[j]);

  Scaled coef;
  long ref = 0;
  bool have_ref = false;
  cplx sum = 0.0;
  double abssum = 0.0;
  double ratio_abs = 0.0;
  double prev_abs = std::numeric_limits<double>::infinity();
  int small = 0;
  cplx qm = 1.0;
  int m = 0;
  const int max_terms = 10000;
  bool finished = false;
  for (; m < max_terms; ++m) {
    Scaled t = coef * suffix[std::min<std::size_t>(m, J)];
    if (!t.is_zero()) {
      if (!have_ref) {
        ref = t.exponent();
        have_ref = true;
      } else if (t.exponent() > ref) {
        long shift = ref - t.exponent();
        sum = Scaled(sum, shift).value();
        abssum = std::abs(Scaled(abssum, shift).value());
        ref = t.exponent();
      }
    }
    cplx tv = t.value(-ref);
    sum += tv;
    double ta = std::abs(tv);
    abssum += ta;
    if (static_cast<std::size_t>(m) >= J) {
      if (ta <= 0.25 * eps * std::abs(sum) && ta <= prev_abs) {
        if (++small >= 3) {
          finished = true;
          break;
        }
      } else {
        small = 0;
      }
    }
    prev_abs = ta;
    cplx ratio = w;
    for (cplx p : num) ratio *= (1.0 - p * qm);
    ratio /= (1.0 - qm * qv);
    if (balance != 0) ratio *= ipow(-qm, balance);
    ratio_abs = std::abs(ratio);
    coef *= ratio;
    qm *= qv;
  }
  if (!finished) throw Error(ErrorKind::divergence, "normalised series did not converge within 10000 terms");
  ScaledSeries out;
  out.value = Scaled(sum, ref);
  out.terms = m + 1;
  double mag = std::abs(sum);
  double tail = tail_bound(prev_abs, balance == 0 ? std::max(ratio_abs, std::abs(w)) : ratio_abs);
  if (mag > 0.0) {
    out.rel_error = prod_tail + (tail + (3 + num.size()) * eps * abssum) / mag;
  } else {
    out.rel_error = abssum > 0.0 ? 1.0 : 0.0;
  }
  return out;
}

namespace {

SeriesResult from_scaled(const Scaled& v, double rel_error, int terms) {
  SeriesResult r;
  r.value = v.value();
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) {
    throw Error(ErrorKind::instability, "value overflows double range");
  }
  r.abs_error = rel_error * std::abs(r.value);
  r.terms = terms;
  r.converged = rel_error <= 1e-12;
  return r;
}

bool phi21_terminates(cplx A, cplx B, QBase q) {
  return terminating_length(A, q.value()) >= 0 || terminating_length(B, q.value()) >= 0;
}

}  // namespace

SeriesResult phi21_as(Representation rep, cplx A, cplx B, cplx C, QBase q, cplx z) {
  switch (rep) {
    case Representation::direct: {
      PhiSpec s{{A, B}, {C}, q.value(), z};
      return rphis(s);
    }
    case Representation::heine1:
    case Representation::heine1_swapped: {
      cplx X = rep == Representation::heine1 ? A : B;
      cplx Y = rep == Representation::heine1 ? B : A;
      if (!(std::abs(Y) < 1.0)) throw Error(ErrorKind::divergence, "Heine form 1 needs |b| < 1");
      double rel = 0.0;
      Scaled pre = qpoch_ratio({Y}, {C, z}, q, rel);
      ScaledSeries s = normalized_sum({C / Y, z}, X * z, Y, 0, q);
      return from_scaled(pre * s.value, rel + s.rel_error, s.terms);
    }
    case Representation::heine2:
    case Representation::heine2_swapped: {
      cplx X = rep == Representation::heine2 ? A : B;
      cplx Y = rep == Representation::heine2 ? B : A;
      if (Y == cplx(0.0) || !(std::abs(C / Y) < 1.0)) throw Error(ErrorKind::divergence, "Heine form 2 needs |c/b| < 1");
      double rel = 0.0;
      Scaled pre = qpoch_ratio({C / Y}, {C, z}, q, rel);
      ScaledSeries s = normalized_sum({X * Y * z / C, Y}, Y * z, C / Y, 0, q);
      return from_scaled(pre * s.value, rel + s.rel_error, s.terms);
    }
    case Representation::heine3: {
      cplx w = A * B * z / C;
      if (!(std::abs(w) < 1.0) || A == cplx(0.0) || B == cplx(0.0)) {
        throw Error(ErrorKind::divergence, "Heine form 3 needs |abz/c| < 1");
      }
      double rel = 0.0;
      Scaled pre = qpoch_ratio({w}, {z}, q, rel);
      PhiSpec s{{C / A, C / B}, {C}, q.value(), w};
      SeriesResult inner = rphis(s);
      double irel = inner.value == cplx(0.0) ? 0.0 : inner.abs_error / std::abs(inner.value);
      return from_scaled(pre * Scaled(inner.value), rel + irel, inner.terms);
    }
    case Representation::transformed: break;
  }
  throw Error(ErrorKind::domain, "representation not available for 2phi1");
}

namespace {

double rel_of(const SeriesResult& r) {
  double mag = std::abs(r.value);
  return mag > 0.0 ? r.abs_error / mag : r.abs_error;
}

template <class Eval>
RepresentedResult pick_best(std::initializer_list<Representation> reps, Eval eval) {
  RepresentedResult best;
  bool have = false;
  std::string first_error;
  ErrorKind first_kind = ErrorKind::divergence;
  for (Representation rep : reps) {
    try {
      SeriesResult r = eval(rep);
      if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) continue;
      if (!have || rel_of(r) < rel_of(best.result)) {
        best.result = r;
        best.used = rep;
        have = true;
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::pole) throw;
      if (first_error.empty()) {
        first_error = e.what();
        first_kind = e.kind();
      }
    }
  }
  if (!have) throw Error(first_kind, "no representation applicable: " + first_error);
  return best;
}

}  // namespace

RepresentedResult phi21(cplx A, cplx B, cplx C, QBase q, cplx z) {
  if (z == cplx(0.0) || phi21_terminates(A, B, q)) {
    return {phi21_as(Representation::direct, A, B, C, q, z), Representation::direct};
  }
  if (std::abs(z) <= 0.5) {
    SeriesResult r = phi21_as(Representation::direct, A, B, C, q, z);
    if (rel_of(r) <= 1e-14) return {r, Representation::direct};
  }
  return pick_best({Representation::direct, Representation::heine1, Representation::heine1_swapped,
                    Representation::heine2, Representation::heine2_swapped, Representation::heine3},
                   [&](Representation rep) { return phi21_as(rep, A, B, C, q, z); });
}

SeriesResult phi11_as(Representation rep, cplx A, cplx C, QBase q, cplx z) {
  if (rep == Representation::direct) {
    PhiSpec s{{A}, {C}, q.value(), z};
    return rphis(s);
  }
  if (rep == Representation::transformed) {
    double rel = 0.0;
    Scaled pre = qpoch_ratio({}, {C}, q, rel);
    ScaledSeries s = normalized_sum({A * z / C}, z, C, 1, q);
    return from_scaled(pre * s.value, rel + s.rel_error, s.terms);
  }
  throw Error(ErrorKind::domain, "representation not available for 1phi1");
}

RepresentedResult phi11(cplx A, cplx C, QBase q, cplx z) {
  if (z == cplx(0.0) || terminating_length(A, q.value()) >= 0) {
    return {phi11_as(Representation::direct, A, C, q, z), Representation::direct};
  }
  if (std::abs(z) <= 1.0) {
    SeriesResult r = phi11_as(Representation::direct, A, C, q, z);
    if (rel_of(r) <= 1e-14) return {r, Representation::direct};
  }
  return pick_best({Representation::direct, Representation::transformed},
                   [&](Representation rep) { return phi11_as(rep, A, C, q, z); });
}

}  // namespace awscheme
