#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "awscheme/qcore.hpp"

namespace awscheme {

// Parameters (a; b, c; d | q, t) of the mixed measure. Unlike AWParams no
// admissibility is implied: the orthogonality and transform checks use
// measures outside the Askey-Wilson parameter domain.
struct MeasureParams {
  QBase q{0.5};
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double t = -1.0;
};

struct MeasureOptions {
  int min_nodes = 64;
  int max_nodes = 4096;
  double contour_tol = 1e-13;
  double truncation_tol = 1e-14;
  // Discrete points beyond this modulus are not evaluated; the remaining
  // tail is extrapolated when the terms decay geometrically.
  double max_support = 1e12;
};

// One discrete support point with its residue of Delta(x)/x and the weight
// K * (residue, halved at theta collisions) it carries in the measure.
struct MassPoint {
  double s = 0.0;
  double residue = 0.0;
  double weight = 0.0;
  bool collision = false;
};

struct IntegralResult {
  cplx value{0.0, 0.0};
  cplx contour{0.0, 0.0};
  cplx discrete{0.0, 0.0};
  double abs_error = 0.0;
  int nodes = 0;
  int points = 0;
  bool extrapolated = false;
};

cplx weight_delta(const MeasureParams& p, cplx x);
double const_K(const MeasureParams& p);
double residue_mass(const MeasureParams& p, double s);

class MeasureSpec {
 public:
  explicit MeasureSpec(const MeasureParams& p, MeasureOptions opts = {});

  const MeasureParams& params() const noexcept { return p_; }
  const MeasureOptions& options() const noexcept { return opts_; }
  double K() const noexcept { return K_; }
  cplx delta(cplx x) const;

  // Finite part a q^k > 1.
  const std::vector<MassPoint>& plus_points() const noexcept { return plus_; }
  // t d q^k < -1 for k <= k_top; index j = 0, 1, ... walks outwards.
  std::optional<MassPoint> minus_point(long j) const;
  long minus_top() const noexcept { return k_top_; }
  MassPoint mass_point(double s) const;

  // Trapezoid rule with a fixed node count on the full circle.
  cplx contour_integral(const std::function<cplx(cplx)>& f, int nodes) const;

  IntegralResult integrate(const std::function<cplx(cplx)>& f, bool contour_vanishes = false) const;

 private:
  MeasureParams p_;
  MeasureOptions opts_;
  double K_ = 0.0;
  double td_ = 0.0;
  long k_top_ = 0;
  bool has_minus_ = false;
  std::vector<MassPoint> plus_;
};

IntegralResult integrate_nu(const MeasureSpec& m, const std::function<cplx(cplx)>& f, bool contour_vanishes = false);

struct GridFunction {
  std::function<cplx(long k)> minus;  // value at -q^k, k >= 0
  std::function<cplx(long k)> plus;   // value at z q^k, k in Z
  // Inclusive index ranges that contain every nonzero value; unset means the
  // tails decay and the sums are truncated adaptively.
  std::optional<std::pair<long, long>> minus_support;
  std::optional<std::pair<long, long>> plus_support;
};

SeriesResult q_integral(const GridFunction& f, double z, QBase q, double tol = 1e-15);

SeriesResult bilateral_sum(const std::function<cplx(long)>& terms, double tol = 1e-15);

}  // namespace awscheme
