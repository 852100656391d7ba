// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "awscheme/cli.hpp"
#include "awscheme/families.hpp"
#include "awscheme/limits.hpp"
#include "awscheme/measures.hpp"
#include "awscheme/transforms.hpp"

using namespace awscheme;

namespace {

const QBase q05{0.5};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records metric <= threshold under a label; NaN fails.
  void bound(const std::string& label, double metric, double threshold) {
    const bool ok = metric <= threshold;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %.3g (<= %.3g)%s", detail.empty() ? "" : "; ", label.c_str(), metric, threshold,
                  ok ? "" : " FAILED");
    detail += buf;
  }

  // Records metric > threshold.
  void above(const std::string& label, double metric, double threshold) {
    const bool ok = metric > threshold;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %.3g (> %.3g)%s", detail.empty() ? "" : "; ", label.c_str(), metric, threshold,
                  ok ? "" : " FAILED");
    detail += buf;
  }
};

int failures = 0;

void criterion(int n, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("error: ") + e.what();
  }
  if (!o.pass) ++failures;
  std::printf("%s  %d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
  std::fflush(stdout);
}

double worst_metric(const VerificationReport& r) {
  double w = 0.0;
  for (const Record& rec : r.records) {
    if (!(rec.metric <= w)) w = rec.metric;
  }
  return w;
}

double eigen_worst(const std::string& family, int samples) {
  RunConfig cfg;
  cfg.command = Command::eigencheck;
  cfg.selector = family;
  cfg.samples = samples;
  cfg.draw = true;
  return worst_metric(run_checks(cfg));
}

// Res_{x=s} Delta(x)/x by the trapezoid rule on a circle of radius |s|/100.
double circle_residue(const MeasureParams& p, double s) {
  constexpr int nodes = 128;
  const double r = 1e-2 * std::abs(s);
  cplx sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
    const cplx x = s + r * w;
    sum += weight_delta(p, x) / x * r * w;
  }
  return (sum / static_cast<double>(nodes)).real();
}

}  // namespace

int main() {
  criterion(1, "eigenvalue equations, six geometric families", [] {
    Outcome o;
    for (const char* f : {"aw", "aw-bessel", "big-jacobi", "big-bessel", "little-jacobi", "little-bessel"}) {
      o.bound(f, eigen_worst(f, 20), 1e-10);
    }
    return o;
  });

  criterion(2, "spectral-variable equations", [] {
    Outcome o;
    for (const char* f : {"dual-big-bessel", "dual-big-jacobi"}) o.bound(f, eigen_worst(f, 10), 1e-10);
    return o;
  });

  criterion(3, "Askey-Wilson function identities", [] {
    Outcome o;
    const AWParams p{q05, 0.9, 0.3, 0.3, 2.0, -1.0};
    o.bound("duality", duality_check(Duality::aw_self_dual, 20, 1).max_rel_error, 1e-11);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> r(1.1, 2.5), th(0.1, 3.0);
    const AWParams pa{q05, 0.9, 0.45, 0.3, 2.0, -1.0};
    AWParams bc = pa, ab = pa;
    std::swap(bc.b, bc.c);
    std::swap(ab.a, ab.b);
    const AWParams dp = pa.dual();
    double bc_err = 0.0, ab_err = 0.0, inv_err = 0.0;
    for (int i = 0; i < 20; ++i) {
      const cplx g = std::polar(r(rng), th(rng)), x = std::polar(r(rng), th(rng));
      const cplx f = aw_function(pa, g, x).value;
      bc_err = std::max(bc_err, std::abs(f - aw_function(bc, g, x).value));
      const cplx ratio = qpoch(dp.c * g, q05).value * qpoch(0.5 * pa.b / pa.d, q05).value * qpoch(dp.c / g, q05).value /
                         (qpoch(0.5 * g / dp.d, q05).value * qpoch(0.5 * pa.a / pa.d, q05).value *
                          qpoch(0.5 / (dp.d * g), q05).value);
      ab_err = std::max(ab_err, rel(f, ratio * aw_function(ab, g, x).value));
      inv_err = std::max(inv_err, rel(aw_function(pa, 1.0 / g, x).value, f));
    }
    o.bound("b<->c", bc_err, 0.0);
    o.bound("a<->b", ab_err, 1e-11);
    o.bound("gamma<->1/gamma", inv_err, 1e-11);

    const double g0 = 1.0 / p.dual().a;
    const cplx base = aw_function(p, g0, cplx(0.8, 0.5)).value;
    double flat = 0.0;
    for (cplx x : {cplx(-1.7, 0.2), cplx(2.9), cplx(0.3, -1.1), cplx(1.2, 1.2)}) {
      flat = std::max(flat, rel(aw_function(p, g0, x).value, base));
    }
    o.bound("constant at gamma=1/a~", flat, 1e-12);
    return o;
  });

  criterion(4, "polynomial reductions, degrees 0..6", [] {
    Outcome o;
    const AWParams aw{q05, 0.9, 0.3, 0.3, 2.0, -1.0};
    const BigParams big{q05, 0.7, 0.3, 0.4, 1.5};
    const LittleParams little{q05, 0.6, 0.2, 1.0};
    const QBesselParams bessel{q05, 0.3};
    const double at = aw.dual().a;
    double e_aw = 0, e_big = 0, e_little = 0, e_lag = 0, e_cdqh = 0;
    for (int n = 0; n <= 6; ++n) {
      const double qn = std::pow(0.5, n);
      for (cplx x : {cplx(0.8, 0.5), cplx(-1.4, 0.3), cplx(2.2)}) {
        e_aw = std::max(e_aw, rel(aw_function(aw, 1.0 / (at * qn), x).value, aw_polynomial(aw, n, x).value));
      }
      for (cplx x : {cplx(-0.5), cplx(1.5), cplx(0.3, 0.2)}) {
        e_big = std::max(e_big, rel(big_jacobi(big, big.a * qn, x).value, big_jacobi_polynomial(big, n, x).value));
      }
      for (double x : {0.5, 3.0, 20.0}) {
        e_little = std::max(e_little, rel(little_jacobi(little, little.a * qn, x).value,
                                          little_jacobi_polynomial(little, n, x).value));
      }
      for (cplx g : {cplx(1.3, -0.4), cplx(0.6, 0.8)}) {
        e_lag = std::max(e_lag, rel(big_qbessel(bessel, g, -qn).value, q_laguerre(bessel, g, n).value));
        e_cdqh = std::max(e_cdqh, rel(big_jacobi(big, g, -qn).value, cdqh_poly(big, g, n).value));
      }
    }
    o.bound("Askey-Wilson", e_aw, 1e-12);
    o.bound("big q-Jacobi", e_big, 1e-12);
    o.bound("little q-Jacobi", e_little, 1e-12);
    o.bound("q-Laguerre", e_lag, 1e-12);
    o.bound("continuous dual q-Hahn", e_cdqh, 1e-12);
    return o;
  });

  criterion(5, "orthogonality relations", [] {
    Outcome o;
    GramResult l = orthogonality_matrix(OrthoFamily::little_bessel, {q05, 0.3, 0.0, 1.0}, 0, 4);
    GramResult b = orthogonality_matrix(OrthoFamily::big_bessel, {q05, 0.6, 0.0, 1.0}, -2, 2);
    GramResult a = orthogonality_matrix(OrthoFamily::aw_bessel, {q05, 0.6, 0.3, 1.0}, -2, 2);
    o.bound("little q-Bessel", l.max_rel_error, 1e-8);
    o.bound("big q-Bessel", b.max_rel_error, 1e-6);
    o.bound("AW q-Bessel", a.max_rel_error, 1e-6);
    const int nonpositive = !l.diagonal_positive + !b.diagonal_positive + !a.diagonal_positive;
    o.bound("matrices with a nonpositive diagonal", nonpositive, 0.0);
    return o;
  });

  criterion(6, "transform inversion", [] {
    Outcome o;
    for (auto [level, tol] : {std::pair{"little", 1e-6}, std::pair{"big", 1e-4}, std::pair{"aw", 1e-4}}) {
      RunConfig cfg;
      cfg.command = Command::roundtrip;
      cfg.selector = level;
      o.bound(level, worst_metric(run_checks(cfg)), tol);
    }
    return o;
  });

  criterion(7, "limit transitions", [] {
    Outcome o;
    double worst_final = 0.0, worst_from = 0.0, min_order = INFINITY;
    for (Transition t : all_transitions) {
      ScanResult r = limit_scan(make_transition(t));
      worst_final = std::max(worst_final, r.final_error);
      const double from = r.monotone_from < 0 ? 1e9 : r.monotone_from;
      worst_from = std::max(worst_from, from);
      min_order = std::min(min_order, r.order);
    }
    o.bound("final error", worst_final, 1e-3);
    o.bound("monotone from m", worst_from, 8);
    o.above("fitted order", min_order, 0.0);
    CommutativityResult c = commutativity();
    o.bound("commutativity", std::max(c.path_discrepancy, c.final_error), 1e-3);
    return o;
  });

  criterion(8, "measure residues and contour quadrature", [] {
    Outcome o;
    const MeasureParams p{q05, 0.9, 0.3, 0.3, 2.0, -1.0};
    MeasureSpec m(p);
    double worst = 0.0;
    int points = 0;
    for (const MassPoint& mp : m.plus_points()) {
      worst = std::max(worst, std::abs(mp.residue - circle_residue(p, mp.s)) / std::abs(mp.residue));
      ++points;
    }
    for (long j = 0;; ++j) {
      auto mp = m.minus_point(j);
      if (!mp || std::abs(mp->s) > m.options().max_support) break;
      worst = std::max(worst, std::abs(mp->residue - circle_residue(p, mp->s)) / std::abs(mp->residue));
      ++points;
    }
    o.bound("residue vs circle over " + std::to_string(points) + " points", points > 0 ? worst : 1.0, 1e-9);

    // successive differences must shrink at least by half per doubling until
    // they reach rounding level
    auto one = [](cplx) { return cplx(1.0); };
    cplx prev = m.contour_integral(one, 8);
    double last = std::abs(m.contour_integral(one, 16) - prev);
    prev = m.contour_integral(one, 16);
    int geometric = 0;
    for (int n = 32; n <= m.options().max_nodes && last > 1e-13; n *= 2) {
      const cplx next = m.contour_integral(one, n);
      const double d = std::abs(next - prev);
      if (!(d < 0.5 * last)) break;
      ++geometric;
      last = d;
      prev = next;
    }
    o.above("geometric doublings", geometric, 2.0);
    return o;
  });

  return failures == 0 ? 0 : 1;
}
