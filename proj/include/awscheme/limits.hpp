#pragma once

#include <functional>
#include <string>
#include <vector>

#include "awscheme/qcore.hpp"

namespace awscheme {

enum class Transition {
  aw_to_aw_bessel,
  big_jacobi_to_big_bessel,
  little_jacobi_to_little_bessel,
  aw_to_big_jacobi,
  aw_bessel_to_big_bessel,
  big_jacobi_to_little_jacobi,
  big_bessel_to_little_bessel,
  aw_to_cdqh,
  big_jacobi_to_aw_bessel_dual,
  little_jacobi_to_big_bessel_dual,
  big_bessel_dual_to_little_bessel
};

inline constexpr Transition all_transitions[] = {
    Transition::aw_to_aw_bessel,          Transition::big_jacobi_to_big_bessel,
    Transition::little_jacobi_to_little_bessel, Transition::aw_to_big_jacobi,
    Transition::aw_bessel_to_big_bessel,  Transition::big_jacobi_to_little_jacobi,
    Transition::big_bessel_to_little_bessel, Transition::aw_to_cdqh,
    Transition::big_jacobi_to_aw_bessel_dual, Transition::little_jacobi_to_big_bessel_dual,
    Transition::big_bessel_dual_to_little_bessel};

const char* to_string(Transition t) noexcept;

// Parameters for every transition; each one reads the fields of its source
// family. The Askey-Wilson set (a, b, c, d) is shared by the three
// transitions leaving that level.
struct LimitPoint {
  QBase q{0.5};
  double aw_a = 0.8, aw_b = 0.35, aw_c = 0.25, aw_d = 1.7;
  double big_a = 0.7, big_b = 0.3, big_c = 0.4;
  double little_a = 0.6, little_b = 0.2;
  double bessel_a = 0.4;
  cplx gamma{0.9, 0.5};
  double x = 0.6;
  int k = 2;  // grid index of the spectral point in the dual transition
};

// source(eps) tends to target as eps -> 0.
struct TransitionSpec {
  Transition id;
  QBase q{0.5};  // eps runs through q^m
  std::function<cplx(double eps)> source;
  std::function<cplx()> target;
};

TransitionSpec make_transition(Transition id, const LimitPoint& p = {});

struct ScanRow {
  int m = 0;
  double eps = 0.0;
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  double rel_error = 0.0;
  bool ok = true;
  std::string error;  // evaluation failure, when ok is false
};

struct ScanResult {
  Transition id;
  std::vector<ScanRow> rows;
  double order = 0.0;         // fitted p in err ~ eps^p
  int monotone_from = -1;     // first m from which errors decrease; -1 if never
  double final_error = 0.0;
};

// Errors below this are treated as converged when judging monotonicity.
inline constexpr double scan_floor = 1e-13;

ScanResult limit_scan(const TransitionSpec& t, int m0 = 4, int m1 = 16);

// The two composite routes from big q-Jacobi to little q-Bessel at one eps,
// and their common limit.
struct CommutativityResult {
  std::vector<ScanRow> via_little;
  std::vector<ScanRow> via_big_bessel;
  double path_discrepancy = 0.0;  // |A - B| / |target| at the last eps
  double final_error = 0.0;       // max of both paths against the target
};

CommutativityResult commutativity(const LimitPoint& p = {}, int m0 = 4, int m1 = 16);

enum class Duality { aw_self_dual, little_jacobi_aw_bessel, little_bessel_self_dual, big_jacobi_cdqh, big_bessel_laguerre };

const char* to_string(Duality d) noexcept;

struct DualityResult {
  Duality which;
  double max_rel_error = 0.0;
  int samples = 0;
};

// Sampled with a fixed seed over points in the common domain of both sides.
DualityResult duality_check(Duality which, int samples = 20, unsigned seed = 1);

}  // namespace awscheme
