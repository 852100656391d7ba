#pragma once

#include <vector>

#include "awscheme/qcore.hpp"

namespace awscheme {

struct PhiSpec {
  std::vector<cplx> numerator;
  std::vector<cplx> denominator;
  cplx base{0.5, 0.0};
  cplx argument{0.0, 0.0};
  int max_terms = 10000;
  // Relative accuracy required for the converged flag. Summation itself
  // always continues down to machine precision.
  double tolerance = 1e-12;
};

// r phi s with the (-1)^m q^{m(m-1)/2} balancing factor raised to 1 + s - r.
SeriesResult rphis(const PhiSpec& spec);

// Very-well-poised 8W7(a; b, c, d, e, f; q, z).
SeriesResult w87(cplx a, cplx b, cplx c, cplx d, cplx e, cplx f, QBase q, cplx z, double tolerance = 1e-12);

// Smallest n >= 0 with p * base^n = 1, or -1 when there is none.
long terminating_length(cplx p, cplx base);

struct ScaledSeries {
  Scaled value;
  double rel_error = 0.0;
  int terms = 0;
};

// sum_m (num_1, ..., num_r; q)_m / (q;q)_m * ((-1)^m q^{m(m-1)/2})^balance * w^m * (y q^m; q)_inf.
// Used for the transformed (normalised) forms of 2phi1 and 1phi1, where the
// infinite product absorbs a denominator (y;q)_m that may vanish.
ScaledSeries normalized_sum(const std::vector<cplx>& num, cplx y, cplx w, int balance, QBase q);

enum class Representation { direct, heine1, heine1_swapped, heine2, heine2_swapped, heine3, transformed };

const char* to_string(Representation r) noexcept;

struct RepresentedResult {
  SeriesResult result;
  Representation used = Representation::direct;
};

// 2phi1(A, B; C; q, z) by whichever of the direct series and the three Heine
// transformations gives the smallest error estimate. Entire in z apart from
// the poles z = q^{-n} of the continuation.
RepresentedResult phi21(cplx A, cplx B, cplx C, QBase q, cplx z);

// Forced representation, throwing when it is not applicable.
SeriesResult phi21_as(Representation rep, cplx A, cplx B, cplx C, QBase q, cplx z);

// 1phi1(A; C; q, z), choosing between the direct series and
// (z;q)_inf/(C;q)_inf 1phi1(Az/C; z; q, C).
RepresentedResult phi11(cplx A, cplx C, QBase q, cplx z);
SeriesResult phi11_as(Representation rep, cplx A, cplx C, QBase q, cplx z);

}  // namespace awscheme
