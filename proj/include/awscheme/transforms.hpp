#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "awscheme/families.hpp"
#include "awscheme/measures.hpp"

namespace awscheme {

enum class Level { aw, big, little };
enum class TransformDirection { forward, inverse };

const char* to_string(Level l) noexcept;

// Prefactor C of the inverse transform and the measure it integrates against.
// For the Askey-Wilson level C = 1 and the measure has the dual parameters.
struct TransformConstants {
  Level level;
  double C;
  MeasureSpec dual_measure;
};

TransformConstants aw_constants(const AWParams& p, MeasureOptions opts = {});
TransformConstants big_constants(const BigParams& p, MeasureOptions opts = {});
TransformConstants little_constants(const LittleParams& p, MeasureOptions opts = {});

MeasureParams measure_params(const AWParams& p);

// A symmetric function together with what is known about where it lives.
// With discrete_support set the function is taken to vanish on the unit
// circle and at every support point not listed.
struct SymmetricFunction {
  std::function<cplx(cplx)> f;
  std::optional<std::vector<double>> discrete_support;
};

// A function on Z; support bounds the indices of the nonzero values.
struct Sequence {
  std::function<cplx(long)> u;
  std::optional<std::pair<long, long>> support;
};

using Transformed = std::function<cplx(cplx)>;

// Forward maps x-functions to functions of gamma; inverse maps functions of
// gamma (given on the dual measure) back to functions of x.
Transformed aw_transform(const AWParams& p, SymmetricFunction u, TransformDirection dir, MeasureOptions opts = {});

// Forward: u on the grid {-q^k} and {z q^k}. Inverse: uhat as a function of
// gamma; the result is a function of x.
Transformed big_forward(const BigParams& p, GridFunction u);
Transformed big_inverse(const BigParams& p, SymmetricFunction uhat, MeasureOptions opts = {});

// Forward: sequence u(k) at x = y q^k. Inverse: the result maps an index k
// (passed as a real number) to u(k).
Transformed little_forward(const LittleParams& p, Sequence u);
std::function<cplx(long)> little_inverse(const LittleParams& p, SymmetricFunction uhat, MeasureOptions opts = {});

// Weights of the forward sums.
cplx big_weight(const BigParams& p, cplx x);
cplx little_weight(const LittleParams& p, long k);

enum class OrthoFamily { aw_bessel, big_bessel, little_bessel };

const char* to_string(OrthoFamily f) noexcept;

// a, b and gamma as used by the three orthogonality relations; b is only
// read by the AW-level q-Bessel case and gamma is unused by the little one.
struct OrthoParams {
  QBase q{0.5};
  double a = 0.0;
  double b = 0.0;
  double gamma = 1.0;
};

struct GramResult {
  std::vector<long> indices;
  std::vector<std::vector<cplx>> gram;
  std::vector<double> closed_form;  // expected diagonal
  // max |G_kl - delta_kl D_k| / sqrt(D_k D_l)
  double max_rel_error = 0.0;
  bool diagonal_positive = true;
};

GramResult orthogonality_matrix(OrthoFamily family, const OrthoParams& p, long lo, long hi, MeasureOptions opts = {});
double gram_closed_form(OrthoFamily family, const OrthoParams& p, long k);

}  // namespace awscheme
