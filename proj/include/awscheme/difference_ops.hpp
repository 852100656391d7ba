#pragma once

#include <functional>
#include <vector>

#include "awscheme/families.hpp"
#include "awscheme/qcore.hpp"

namespace awscheme {

enum class Family {
  aw,
  aw_bessel,
  big_jacobi,
  big_bessel,
  little_jacobi,
  little_bessel,
  dual_big_bessel,
  dual_big_jacobi
};

const char* to_string(Family f) noexcept;

// L f(x) = A(x) (f(qx) - f(x)) + B(x) (f(x/q) - f(x)) with eigenvalue lambda(label).
// For the two spectral operators the variable is gamma and the label is x.
struct OperatorSpec {
  Family family = Family::aw;
  QBase q{0.5};
  std::function<cplx(cplx)> coeff_A;
  std::function<cplx(cplx)> coeff_B;
  std::function<cplx(cplx)> eigenvalue;
};

OperatorSpec aw_operator(const AWParams& p);
OperatorSpec aw_bessel_operator(const AWBesselParams& p);
OperatorSpec big_jacobi_operator(const BigParams& p);
OperatorSpec big_bessel_operator(const QBesselParams& p);
OperatorSpec little_jacobi_operator(const LittleParams& p);
OperatorSpec little_bessel_operator(const QBesselParams& p);
OperatorSpec dual_big_bessel_operator(const QBesselParams& p);
OperatorSpec dual_big_jacobi_operator(const BigParams& p);

// f(label, point): the eigenfunction with the given label evaluated at point.
using Evaluator = std::function<cplx(cplx label, cplx point)>;

cplx apply_op(const OperatorSpec& op, const std::function<cplx(cplx)>& f, cplx x);

// max over points of |L f - lambda f| / (1 + |lambda f|).
double eigen_residual(const OperatorSpec& op, const Evaluator& eval, cplx label, const std::vector<cplx>& points);

enum class Direction { up, down };

inline constexpr int max_continuation_steps = 200;
inline constexpr double continuation_guard = 1e100;

// Solves B(x) f(x/q) = (lambda + A(x) + B(x)) f(x) - A(x) f(qx) from the seeds
// f(x0), f(q x0). Up returns f at x0 q^{-1}, ..., x0 q^{-steps}; down returns
// f at x0 q^2, ..., x0 q^{steps+1}.
std::vector<cplx> continue_on_qline(const OperatorSpec& op, cplx label, cplx x0, cplx f_x0, cplx f_qx0,
                                    Direction direction, int steps);

}  // namespace awscheme
