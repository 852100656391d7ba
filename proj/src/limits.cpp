#include "awscheme/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "awscheme/errors.hpp"
#include "awscheme/families.hpp"

namespace awscheme {

const char* to_string(Transition t) noexcept {
  switch (t) {
    case Transition::aw_to_aw_bessel: return "aw->aw-bessel";
    case Transition::big_jacobi_to_big_bessel: return "big-jacobi->big-bessel";
    case Transition::little_jacobi_to_little_bessel: return "little-jacobi->little-bessel";
    case Transition::aw_to_big_jacobi: return "aw->big-jacobi";
    case Transition::aw_bessel_to_big_bessel: return "aw-bessel->big-bessel";
    case Transition::big_jacobi_to_little_jacobi: return "big-jacobi->little-jacobi";
    case Transition::big_bessel_to_little_bessel: return "big-bessel->little-bessel";
    case Transition::aw_to_cdqh: return "aw->cdqh";
    case Transition::big_jacobi_to_aw_bessel_dual: return "big-jacobi->aw-bessel-dual";
    case Transition::little_jacobi_to_big_bessel_dual: return "little-jacobi->big-bessel-dual";
    case Transition::big_bessel_dual_to_little_bessel: return "big-bessel-dual->little-bessel";
  }
  return "unknown";
}

const char* to_string(Duality d) noexcept {
  switch (d) {
    case Duality::aw_self_dual: return "aw-self-dual";
    case Duality::little_jacobi_aw_bessel: return "little-jacobi-aw-bessel";
    case Duality::little_bessel_self_dual: return "little-bessel-self-dual";
    case Duality::big_jacobi_cdqh: return "big-jacobi-cdqh";
    case Duality::big_bessel_laguerre: return "big-bessel-laguerre";
  }
  return "unknown";
}

namespace {

AWParams aw_at(const LimitPoint& p, double a, double b, double c, double d) { return {p.q, a, b, c, d, -1.0}; }

}  // namespace

TransitionSpec make_transition(Transition id, const LimitPoint& p) {
  const QBase q = p.q;
  const double qv = q.value();
  const cplx g = p.gamma;
  const double x = p.x;
  TransitionSpec s{id, q, {}, {}};
  switch (id) {
    case Transition::aw_to_aw_bessel: {
      const double a = p.aw_a, b = p.aw_b, c = p.aw_c, d = p.aw_d;
      const double dt = aw_at(p, a, b, c, d).dual().d;
      s.source = [=](double e) { return aw_function(aw_at(p, a, b, c * e, d / e), g * e, x).value; };
      s.target = [=] { return aw_qbessel({q, a, b}, -a / (dt * g), x).value; };
      break;
    }
    case Transition::aw_to_big_jacobi: {
      const double a = p.aw_a, b = p.aw_b, c = p.aw_c, d = p.aw_d;
      const AWParams dp = aw_at(p, a, b, c, d).dual();
      s.source = [=](double e) { return aw_function(aw_at(p, a / e, b * e, c * e, d / e), g, -x / e).value; };
      s.target = [=] {
        return big_jacobi({q, dp.a, dp.b, dp.c, 1.0}, g, x / a).value / qpoch(qv * a / d, q).value;
      };
      break;
    }
    case Transition::aw_to_cdqh: {
      const double a = p.aw_a, b = p.aw_b, c = p.aw_c, d = p.aw_d;
      const AWParams dp = aw_at(p, a, b, c, d).dual();
      const double spectral = a * std::pow(qv, p.k);
      s.source = [=](double e) {
        return aw_function(aw_at(p, dp.a, dp.b, dp.c, dp.d / (e * e)), spectral / e, g).value;
      };
      s.target = [=] {
        return big_jacobi({q, dp.a, dp.b, dp.c, 1.0}, g, -std::pow(qv, p.k)).value / qpoch(qv * a / d, q).value;
      };
      break;
    }
    case Transition::big_jacobi_to_big_bessel: {
      const double a = p.big_a, b = p.big_b, c = p.big_c;
      s.source = [=](double e) { return big_jacobi({q, a, b, c * e, 1.0}, g * e, x).value; };
      s.target = [=] { return big_qbessel({q, a * b}, -c / g, x).value; };
      break;
    }
    case Transition::big_jacobi_to_little_jacobi: {
      const double a = p.big_a, b = p.big_b;
      s.source = [=](double e) { return big_jacobi({q, a, b, e, 1.0}, g, x / e).value; };
      s.target = [=] { return little_jacobi({q, a, b, 1.0}, g, x).value; };
      break;
    }
    case Transition::big_jacobi_to_aw_bessel_dual: {
      const double a = p.big_a, b = p.big_b;
      s.source = [=](double e) { return big_jacobi({q, a, b, e, 1.0}, g, x / e).value; };
      s.target = [=] { return aw_qbessel({q, a, b}, a * b * x / qv, g).value; };
      break;
    }
    case Transition::little_jacobi_to_little_bessel: {
      const double a = p.little_a, b = p.little_b;
      s.source = [=](double e) { return little_jacobi({q, a, b, 1.0}, g * e, x * e).value; };
      s.target = [=] { return little_qbessel({q, a * b}, -a * b / (qv * g), x).value; };
      break;
    }
    case Transition::little_jacobi_to_big_bessel_dual: {
      const double a = p.little_a, b = p.little_b;
      s.source = [=](double e) { return little_jacobi({q, a / e, e * b, 1.0}, g / e, e * x).value; };
      s.target = [=] { return big_qbessel({q, a * b}, a * x, -g / a).value; };
      break;
    }
    case Transition::big_bessel_to_little_bessel: {
      const double a = p.bessel_a;
      s.source = [=](double e) { return big_qbessel({q, a}, e * qv * g / a, x / e).value; };
      s.target = [=] { return little_qbessel({q, a}, g, x).value; };
      break;
    }
    case Transition::big_bessel_dual_to_little_bessel: {
      const double a = p.bessel_a;
      s.source = [=](double e) { return big_qbessel({q, a}, e * g, x / e).value; };
      s.target = [=] { return little_qbessel({q, a}, x, g * a / qv).value; };
      break;
    }
    case Transition::aw_bessel_to_big_bessel: {
      const double a = p.aw_a, b = p.aw_b;
      s.source = [=](double e) { return aw_qbessel({q, a / e, b * e}, g * e, -x / e).value; };
      s.target = [=] { return big_qbessel({q, a * b}, qv * g / b, x / a).value; };
      break;
    }
  }
  return s;
}

namespace {

ScanRow scan_row(const std::function<cplx(double)>& source, cplx target, double qv, int m) {
  ScanRow r;
  r.m = m;
  r.eps = std::pow(qv, m);
  r.rhs = target;
  try {
    r.lhs = source(r.eps);
    r.rel_error = std::abs(r.lhs - target) / std::abs(target);
    if (!std::isfinite(r.rel_error)) throw Error(ErrorKind::instability, "non-finite relative error");
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
    r.rel_error = std::numeric_limits<double>::infinity();
  }
  return r;
}

void summarize(ScanResult& out, double qv) {
  const auto& rows = out.rows;
  if (rows.empty()) return;
  out.final_error = rows.back().rel_error;
  // earliest index from which every step decreases or both ends sit at the floor
  int from = static_cast<int>(rows.size()) - 1;
  while (from > 0) {
    const ScanRow& prev = rows[from - 1];
    const ScanRow& cur = rows[from];
    bool down = prev.ok && cur.ok &&
                (cur.rel_error < prev.rel_error || (cur.rel_error <= scan_floor && prev.rel_error <= scan_floor));
    if (!down) break;
    --from;
  }
  out.monotone_from = rows[from].ok ? rows[from].m : -1;
  // least-squares slope of ln err against m ln q over the monotone stretch above the floor
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = from; i < rows.size(); ++i) {
    if (!rows[i].ok || rows[i].rel_error <= scan_floor) continue;
    double u = rows[i].m * std::log(qv), v = std::log(rows[i].rel_error);
    sx += u;
    sy += v;
    sxx += u * u;
    sxy += u * v;
    ++n;
  }
  if (n >= 2) out.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ScanResult limit_scan(const TransitionSpec& t, int m0, int m1) {
  if (m1 < m0) throw Error(ErrorKind::domain, "empty scan range");
  ScanResult out;
  out.id = t.id;
  const double qv = t.q.value();
  const cplx target = t.target();
  for (int m = m0; m <= m1; ++m) out.rows.push_back(scan_row(t.source, target, qv, m));
  summarize(out, qv);
  return out;
}

CommutativityResult commutativity(const LimitPoint& p, int m0, int m1) {
  if (m1 < m0) throw Error(ErrorKind::domain, "empty scan range");
  const QBase q = p.q;
  const double qv = q.value();
  const double a = p.big_a, b = p.big_b;
  const cplx g = p.gamma;
  const double x = p.x;
  const cplx target = little_qbessel({q, a * b}, -a * b / (qv * g), x).value;
  // Each route nests its inner limit one power of eps deeper than the outer.
  // Little route: c = eps^3 (big -> little q-Jacobi), then gamma, x scaled by eps.
  auto via_little = [=](double e) { return big_jacobi({q, a, b, e * e * e, 1.0}, g * e, x / (e * e)).value; };
  // Big q-Bessel route: c and gamma scaled by eps^2, then c, 1/x scaled by eps.
  auto via_big_bessel = [=](double e) { return big_jacobi({q, a, b, e * e * e, 1.0}, g * e * e, x / e).value; };
  CommutativityResult out;
  for (int m = m0; m <= m1; ++m) {
    out.via_little.push_back(scan_row(via_little, target, qv, m));
    out.via_big_bessel.push_back(scan_row(via_big_bessel, target, qv, m));
  }
  const ScanRow& A = out.via_little.back();
  const ScanRow& B = out.via_big_bessel.back();
  out.path_discrepancy = (A.ok && B.ok) ? std::abs(A.lhs - B.lhs) / std::abs(target) : std::numeric_limits<double>::infinity();
  out.final_error = std::max(A.rel_error, B.rel_error);
  return out;
}

namespace {

cplx polar_sample(std::mt19937& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> r(rmin, rmax), th(0.05, std::numbers::pi - 0.05);
  return std::polar(r(rng), th(rng));
}

double rel(cplx u, cplx v) { return std::abs(u - v) / std::max(std::abs(v), 1e-300); }

}  // namespace

DualityResult duality_check(Duality which, int samples, unsigned seed) {
  if (samples <= 0) throw Error(ErrorKind::domain, "sample count must be positive");
  std::mt19937 rng(seed);
  const QBase q{0.5};
  const double qv = q.value();
  DualityResult out{which, 0.0, 0};
  auto record = [&](double e) {
    if (!(e <= out.max_rel_error)) out.max_rel_error = e;
    ++out.samples;
  };
  switch (which) {
    case Duality::aw_self_dual: {
      const AWParams p{q, 0.9, 0.3, 0.3, 2.0, -1.0};
      const AWParams dp = p.dual();
      for (int i = 0; i < samples; ++i) {
        cplx g = polar_sample(rng, 1.05, 2.5), x = polar_sample(rng, 1.05, 2.5);
        record(rel(aw_function(p, g, x, AWRoute::series).value, aw_function(dp, x, g, AWRoute::series).value));
      }
      break;
    }
    case Duality::little_jacobi_aw_bessel: {
      const LittleParams lp{q, 0.6, 0.2, 1.0};
      const AWBesselParams bp{q, 0.6, 0.2};
      for (int i = 0; i < samples; ++i) {
        cplx g = polar_sample(rng, 0.5, 2.0);
        std::uniform_real_distribution<double> xs(0.1, 3.0);
        double x = xs(rng);
        record(rel(little_jacobi(lp, g, x).value, aw_qbessel(bp, lp.a * lp.b * x / qv, g).value));
      }
      break;
    }
    case Duality::little_bessel_self_dual: {
      const QBesselParams bp{q, 0.4};
      for (int i = 0; i < samples; ++i) {
        cplx g = polar_sample(rng, 0.2, 3.0), x = polar_sample(rng, 0.2, 3.0);
        record(rel(little_qbessel(bp, g, x).value, little_qbessel(bp, x, g).value));
      }
      break;
    }
    case Duality::big_jacobi_cdqh: {
      const BigParams bp{q, 0.7, 0.3, 0.4, 1.0};
      for (int i = 0; i < samples; ++i) {
        cplx g = polar_sample(rng, 0.5, 2.0);
        for (int k = 0; k <= 6; ++k) {
          record(rel(big_jacobi(bp, g, -std::pow(qv, k)).value, cdqh_poly(bp, g, k).value));
        }
      }
      break;
    }
    case Duality::big_bessel_laguerre: {
      const QBesselParams bp{q, 0.4};
      for (int i = 0; i < samples; ++i) {
        cplx g = polar_sample(rng, 0.2, 3.0);
        for (int n = 0; n <= 6; ++n) {
          record(rel(big_qbessel(bp, g, -std::pow(qv, n)).value, q_laguerre(bp, g, n).value));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace awscheme
