#include "awscheme/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "awscheme/errors.hpp"

namespace awscheme {

namespace {

// (alpha x^e; q)_inf
struct Factor {
  double alpha;
  int e;
};

struct FactorLists {
  std::vector<Factor> num;
  std::vector<Factor> den;
};

bool same(double u, double v) { return std::abs(u - v) <= 1e-13 * std::max(std::abs(u), std::abs(v)); }

FactorLists delta_factors(const MeasureParams& p) {
  const double q = p.q.value();
  const double td = p.t * p.d;
  FactorLists f;
  f.num = {{1.0, 2}, {1.0, -2}, {q / p.d, 1}, {q / p.d, -1}};
  f.den = {{td, 1}, {q / td, -1}, {td, -1}, {q / td, 1}, {p.a, 1}, {p.a, -1}, {p.b, 1}, {p.b, -1}, {p.c, 1}, {p.c, -1}};
  // e.g. cd = q removes (q x^{+-1}/d) against (c x^{+-1})
  for (auto it = f.num.begin(); it != f.num.end();) {
    auto match = std::find_if(f.den.begin(), f.den.end(), [&](const Factor& g) { return g.e == it->e && same(g.alpha, it->alpha); });
    if (match != f.den.end()) {
      f.den.erase(match);
      it = f.num.erase(it);
    } else {
      ++it;
    }
  }
  std::erase_if(f.den, [](const Factor& g) { return g.alpha == 0.0; });
  return f;
}

cplx xpow(cplx x, int e) {
  switch (e) {
    case 1: return x;
    case -1: return 1.0 / x;
    case 2: return x * x;
    case -2: return 1.0 / (x * x);
    default: return std::pow(x, e);
  }
}

std::string describe(const Factor& g) {
  return "(" + std::to_string(g.alpha) + " x^" + std::to_string(g.e) + "; q)_inf";
}

cplx delta_from(const FactorLists& f, const MeasureParams& p, cplx x) {
  if (x == cplx(0.0)) throw Error(ErrorKind::domain, "weight needs x != 0");
  Scaled v;
  for (const Factor& g : f.den) {
    ProductResult r = qpoch_scaled(g.alpha * xpow(x, g.e), p.q);
    if (r.exact_zero) throw Error(ErrorKind::pole, "weight has a pole: factor " + describe(g) + " vanishes");
    v /= r.value;
  }
  for (const Factor& g : f.num) {
    ProductResult r = qpoch_scaled(g.alpha * xpow(x, g.e), p.q);
    if (r.exact_zero) return 0.0;
    v *= r.value;
  }
  return v.value();
}

constexpr double residue_tol = 1e-11;

struct Split {
  int zeros = 0;
  Scaled derivative;
  Scaled rest;
};

Split split_at(const std::vector<Factor>& list, double s, double q) {
  Split out;
  for (const Factor& g : list) {
    double w = g.alpha * std::pow(s, g.e);
    const double stop = 1e-17;
    double qk = 1.0;
    while (std::abs(w * qk) >= stop) {
      double lin = 1.0 - w * qk;
      if (std::abs(lin) <= residue_tol * std::max(1.0, std::abs(w * qk))) {
        ++out.zeros;
        out.derivative *= cplx(-g.alpha * qk * g.e * std::pow(s, g.e - 1));
      } else {
        out.rest *= cplx(lin);
      }
      qk *= q;
    }
  }
  return out;
}

bool in_qlattice(double v, double q) {
  if (!(v > 0.0)) return false;
  double k = std::log(v) / std::log(q);
  return std::abs(k - std::round(k)) <= 1e-9;
}

}  // namespace

cplx weight_delta(const MeasureParams& p, cplx x) { return delta_from(delta_factors(p), p, x); }

double const_K(const MeasureParams& p) {
  const QBase q = p.q;
  const double qv = q.value();
  const double pre = qv * p.a * p.b * p.c * p.d * p.t * p.t;
  double radicand = (theta(qv * p.t, q).value * theta(p.a * p.d * p.t, q).value * theta(p.b * p.d * p.t, q).value *
                     theta(p.c * p.d * p.t, q).value)
                        .real();
  if (!(pre > 0.0) || !(radicand > 0.0)) throw Error(ErrorKind::domain, "nonpositive radicand in the measure constant");
  double prod = (qpoch(p.a * p.b, q).value * qpoch(p.a * p.c, q).value * qpoch(p.b * p.c, q).value *
                 qpoch(qv * p.a / p.d, q).value * qpoch(qv, q).value)
                    .real();
  double K = prod * std::sqrt(radicand / pre);
  if (!(K > 0.0)) throw Error(ErrorKind::domain, "measure constant is not positive for these parameters");
  return K;
}

double residue_mass(const MeasureParams& p, double s) {
  if (s == 0.0) throw Error(ErrorKind::domain, "residue at s = 0");
  const FactorLists f = delta_factors(p);
  const double q = p.q.value();
  Split n = split_at(f.num, s, q);
  Split d = split_at(f.den, s, q);
  if (d.zeros == n.zeros) throw Error(ErrorKind::genericity, "s = " + std::to_string(s) + " is not a pole of the weight");
  if (d.zeros != n.zeros + 1) {
    throw Error(ErrorKind::genericity, "s = " + std::to_string(s) + " is not a simple pole of the weight");
  }
  Scaled v = n.derivative * n.rest / (d.derivative * d.rest);
  return v.value().real() / s;
}

MeasureSpec::MeasureSpec(const MeasureParams& p, MeasureOptions opts) : p_(p), opts_(opts) {
  const double q = p.q.value();
  K_ = const_K(p);
  for (double alpha : {p.a, p.b, p.c}) {
    long n = 0;
    if (alpha > 0.0 && qpower_index(alpha, p.q, n) && n <= 0) {
      throw Error(ErrorKind::genericity, "a weight pole lies on the unit circle");
    }
  }
  if (p.a > 1.0) {
    for (double s = p.a; s > 1.0; s *= q) plus_.push_back(mass_point(s));
  }
  td_ = p.t * p.d;
  if (td_ < 0.0) {
    // largest k with t d q^k < -1
    double kk = std::log(-td_) / std::log(1.0 / q);
    long k = static_cast<long>(std::ceil(kk)) - 1;
    while (td_ * std::pow(q, k + 1) < -1.0) ++k;
    while (!(td_ * std::pow(q, k) < -1.0)) --k;
    k_top_ = k;
    has_minus_ = true;
  }
}

cplx MeasureSpec::delta(cplx x) const { return weight_delta(p_, x); }

MassPoint MeasureSpec::mass_point(double s) const {
  MassPoint m;
  m.s = s;
  m.residue = residue_mass(p_, s);
  m.collision = in_qlattice(td_ * s, p_.q.value());
  m.weight = K_ * m.residue * (m.collision ? 0.5 : 1.0);
  return m;
}

std::optional<MassPoint> MeasureSpec::minus_point(long j) const {
  if (!has_minus_ || j < 0) return std::nullopt;
  return mass_point(td_ * std::pow(p_.q.value(), static_cast<double>(k_top_ - j)));
}

cplx MeasureSpec::contour_integral(const std::function<cplx(cplx)>& f, int nodes) const {
  if (nodes < 2 || nodes % 2 != 0) throw Error(ErrorKind::domain, "node count must be even and >= 2");
  const FactorLists fl = delta_factors(p_);
  cplx sum = 0.0;
  for (int j = 0; j < nodes / 2; ++j) {
    double th = 2.0 * std::numbers::pi * (j + 0.5) / nodes;
    cplx x = std::polar(1.0, th);
    sum += f(x) * delta_from(fl, p_, x);
  }
  return K_ * sum / static_cast<double>(nodes);
}

IntegralResult MeasureSpec::integrate(const std::function<cplx(cplx)>& f, bool contour_vanishes) const {
  IntegralResult out;
  if (!contour_vanishes) {
    int n = opts_.min_nodes;
    cplx prev = contour_integral(f, n);
    bool done = false;
    while (n < opts_.max_nodes) {
      n *= 2;
      cplx next = contour_integral(f, n);
      double diff = std::abs(next - prev);
      double abs_mean = std::abs(contour_integral([&](cplx x) { return std::abs(f(x)); }, n / 8 >= 2 ? n / 8 : 2));
      prev = next;
      if (diff <= opts_.contour_tol * std::max(std::abs(next), abs_mean)) {
        out.abs_error += diff;
        done = true;
        break;
      }
    }
    if (!done) throw Error(ErrorKind::quadrature, "contour quadrature did not converge by " + std::to_string(opts_.max_nodes) + " nodes");
    out.contour = prev;
    out.nodes = n;
  }

  cplx disc = 0.0;
  double biggest = 0.0;
  for (const MassPoint& m : plus_) {
    cplx v = f(m.s) * m.weight;
    disc += v;
    biggest = std::max(biggest, std::abs(v));
    ++out.points;
  }
  if (has_minus_) {
    std::vector<cplx> recent;
    int small = 0;
    bool finished = false;
    for (long j = 0;; ++j) {
      double s = td_ * std::pow(p_.q.value(), static_cast<double>(k_top_ - j));
      cplx v;
      bool capped = std::abs(s) > opts_.max_support;
      if (!capped) {
        try {
          MassPoint m = mass_point(s);
          v = f(s) * m.weight;
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) capped = true;
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::genericity || e.kind() == ErrorKind::pole || e.kind() == ErrorKind::domain) throw;
          capped = true;
        }
      }
      if (capped) {
        // geometric tail from the last three terms
        if (recent.size() >= 3) {
          cplx t1 = recent[recent.size() - 3], t2 = recent[recent.size() - 2], t3 = recent.back();
          if (t1 != cplx(0.0) && t2 != cplx(0.0)) {
            cplx r1 = t2 / t1, r2 = t3 / t2;
            if (std::abs(r2) < 0.95 && std::abs(r1 - r2) <= 0.1 * std::abs(r2)) {
              cplx tail = t3 * r2 / (1.0 - r2);
              disc += tail;
              out.abs_error += std::abs(tail) * (std::abs(r1 - r2) / std::abs(1.0 - r2) + 1e-3);
              out.extrapolated = true;
              finished = true;
            }
          }
        }
        if (!finished) throw Error(ErrorKind::quadrature, "discrete mass sum did not converge before the support cap");
        break;
      }
      disc += v;
      recent.push_back(v);
      ++out.points;
      biggest = std::max(biggest, std::abs(v));
      double scale = std::max({std::abs(disc + out.contour), biggest, std::abs(out.contour)});
      if (std::abs(v) <= opts_.truncation_tol * scale) {
        if (++small >= 3) {
          finished = true;
          break;
        }
      } else {
        small = 0;
      }
      if (j > 100000) throw Error(ErrorKind::quadrature, "discrete mass sum did not converge");
    }
  }
  out.discrete = disc;
  out.value = out.contour + disc;
  out.abs_error += 4 * eps * (std::abs(out.contour) + biggest * std::max(out.points, 1));
  return out;
}

IntegralResult integrate_nu(const MeasureSpec& m, const std::function<cplx(cplx)>& f, bool contour_vanishes) {
  return m.integrate(f, contour_vanishes);
}

SeriesResult bilateral_sum(const std::function<cplx(long)>& terms, double tol) {
  SeriesResult out;
  cplx sum = terms(0);
  double biggest = std::abs(sum);
  double abssum = biggest;
  int count = 1;
  const long max_side = 20000;
  for (int dir : {1, -1}) {
    int small = 0;
    double prev = std::abs(sum);
    int growth = 0;
    for (long k = 1;; ++k) {
      if (k > max_side) throw Error(ErrorKind::divergence, "bilateral sum tail does not decay");
      cplx t = terms(dir * k);
      if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
        throw Error(ErrorKind::divergence, "bilateral sum term is not finite");
      }
      sum += t;
      double ta = std::abs(t);
      abssum += ta;
      biggest = std::max(biggest, ta);
      ++count;
      growth = (ta > prev && ta > tol * biggest) ? growth + 1 : 0;
      if (growth > 60) throw Error(ErrorKind::divergence, "bilateral sum tail grows");
      prev = ta;
      if (ta <= tol * std::max(std::abs(sum), biggest)) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
    }
  }
  out.value = sum;
  out.terms = count;
  out.abs_error = 3 * tol * std::max(std::abs(sum), biggest) + 4 * eps * abssum;
  out.converged = true;
  return out;
}

SeriesResult q_integral(const GridFunction& f, double z, QBase q, double tol) {
  const double qv = q.value();
  SeriesResult out;
  out.terms = 0;
  cplx first = 0.0;
  double abssum = 0.0;
  if (f.minus) {
    if (f.minus_support) {
      for (long k = std::max(0L, f.minus_support->first); k <= f.minus_support->second; ++k) {
        cplx t = f.minus(k) * std::pow(qv, static_cast<double>(k));
        first += t;
        abssum += std::abs(t);
        ++out.terms;
      }
    } else {
      int small = 0;
      double biggest = 0.0;
      for (long k = 0;; ++k) {
        if (k > 20000) throw Error(ErrorKind::divergence, "q-integral tail does not decay");
        cplx t = f.minus(k) * std::pow(qv, static_cast<double>(k));
        first += t;
        abssum += std::abs(t);
        biggest = std::max(biggest, std::abs(t));
        ++out.terms;
        if (std::abs(t) <= tol * std::max(std::abs(first), biggest)) {
          if (++small >= 3) break;
        } else {
          small = 0;
        }
      }
    }
  }
  cplx second = 0.0;
  if (f.plus) {
    auto term = [&](long k) { return f.plus(k) * std::pow(qv, static_cast<double>(k)); };
    if (f.plus_support) {
      for (long k = f.plus_support->first; k <= f.plus_support->second; ++k) {
        cplx t = term(k);
        second += t;
        abssum += std::abs(t) * z;
        ++out.terms;
      }
    } else {
      SeriesResult b = bilateral_sum(term, tol);
      second = b.value;
      abssum += b.abs_error / eps;
      out.terms += b.terms;
    }
  }
  out.value = (1.0 - qv) * first + (1.0 - qv) * z * second;
  out.abs_error = 4 * eps * abssum + tol * std::abs(out.value);
  out.converged = true;
  return out;
}

}  // namespace awscheme
