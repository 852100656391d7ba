#include "awscheme/difference_ops.hpp"

#include <cmath>
#include <string>

#include "awscheme/errors.hpp"

namespace awscheme {

namespace {

void require_nonzero(cplx x, const char* what) {
  if (x == cplx(0.0)) throw Error(ErrorKind::pole, std::string(what) + " coefficient is singular at x = 0");
}

cplx jacobi_eigenvalue(double a, cplx gamma) { return -1.0 - a * a + a * (gamma + 1.0 / gamma); }

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::aw: return "aw";
    case Family::aw_bessel: return "aw-bessel";
    case Family::big_jacobi: return "big-jacobi";
    case Family::big_bessel: return "big-bessel";
    case Family::little_jacobi: return "little-jacobi";
    case Family::little_bessel: return "little-bessel";
    case Family::dual_big_bessel: return "dual-big-bessel";
    case Family::dual_big_jacobi: return "dual-big-jacobi";
  }
  return "unknown";
}

OperatorSpec aw_operator(const AWParams& p) {
  const double a = p.a, b = p.b, c = p.c, d = p.d, q = p.q.value();
  const double at = p.dual().a;
  OperatorSpec op;
  op.family = Family::aw;
  op.q = p.q;
  op.coeff_A = [=](cplx x) {
    if (is_unit(x * x) || is_unit(q * x * x)) throw Error(ErrorKind::pole, "Askey-Wilson coefficient pole at x^2 = 1 or x^2 = 1/q");
    return (1.0 - a * x) * (1.0 - b * x) * (1.0 - c * x) * (1.0 - d * x) / ((1.0 - x * x) * (1.0 - q * x * x));
  };
  op.coeff_B = [A = op.coeff_A](cplx x) {
    require_nonzero(x, "Askey-Wilson");
    return A(1.0 / x);
  };
  op.eigenvalue = [=](cplx gamma) { return jacobi_eigenvalue(at, gamma); };
  return op;
}

OperatorSpec aw_bessel_operator(const AWBesselParams& p) {
  const double a = p.a, b = p.b, q = p.q.value();
  OperatorSpec op;
  op.family = Family::aw_bessel;
  op.q = p.q;
  op.coeff_A = [=](cplx x) {
    if (is_unit(x * x) || is_unit(q * x * x)) throw Error(ErrorKind::pole, "q-Bessel coefficient pole at x^2 = 1 or x^2 = 1/q");
    return (1.0 - a * x) * (1.0 - b * x) * x / ((1.0 - x * x) * (1.0 - q * x * x));
  };
  op.coeff_B = [A = op.coeff_A](cplx x) {
    require_nonzero(x, "q-Bessel");
    return A(1.0 / x);
  };
  op.eigenvalue = [](cplx gamma) { return gamma; };
  return op;
}

OperatorSpec big_jacobi_operator(const BigParams& p) {
  const double a = p.a, b = p.b, c = p.c, q = p.q.value();
  OperatorSpec op;
  op.family = Family::big_jacobi;
  op.q = p.q;
  op.coeff_A = [=](cplx x) {
    require_nonzero(x, "big q-Jacobi");
    return a * a * (1.0 + 1.0 / (a * b * x)) * (1.0 + 1.0 / (a * c * x));
  };
  op.coeff_B = [=](cplx x) {
    require_nonzero(x, "big q-Jacobi");
    return (1.0 + q / (b * c * x)) * (1.0 + 1.0 / x);
  };
  op.eigenvalue = [=](cplx gamma) { return jacobi_eigenvalue(a, gamma); };
  return op;
}

OperatorSpec big_bessel_operator(const QBesselParams& p) {
  const double a = p.a, q = p.q.value();
  OperatorSpec op;
  op.family = Family::big_bessel;
  op.q = p.q;
  op.coeff_A = [=](cplx x) {
    require_nonzero(x, "big q-Bessel");
    return (1.0 + 1.0 / (a * x)) / x;
  };
  op.coeff_B = [=](cplx x) {
    require_nonzero(x, "big q-Bessel");
    return q * (1.0 + 1.0 / x) / (a * x);
  };
  op.eigenvalue = [](cplx gamma) { return -gamma; };
  return op;
}

OperatorSpec little_jacobi_operator(const LittleParams& p) {
  const double a = p.a, b = p.b, q = p.q.value();
  OperatorSpec op;
  op.family = Family::little_jacobi;
  op.q = p.q;
  op.coeff_A = [=](cplx x) {
    require_nonzero(x, "little q-Jacobi");
    return a * a * (1.0 + 1.0 / (a * x));
  };
  op.coeff_B = [=](cplx x) {
    require_nonzero(x, "little q-Jacobi");
    return 1.0 + q / (b * x);
  };
  op.eigenvalue = [=](cplx gamma) { return jacobi_eigenvalue(a, gamma); };
  return op;
}

OperatorSpec little_bessel_operator(const QBesselParams& p) {
  const double a = p.a, q = p.q.value();
  OperatorSpec op;
  op.family = Family::little_bessel;
  op.q = p.q;
  op.coeff_A = [=](cplx x) {
    require_nonzero(x, "little q-Bessel");
    return a / x;
  };
  op.coeff_B = [=](cplx x) {
    require_nonzero(x, "little q-Bessel");
    return q / x;
  };
  op.eigenvalue = [=](cplx gamma) { return -q * gamma; };
  return op;
}

OperatorSpec dual_big_bessel_operator(const QBesselParams& p) {
  const double a = p.a, q = p.q.value();
  OperatorSpec op;
  op.family = Family::dual_big_bessel;
  op.q = p.q;
  op.coeff_A = [=](cplx g) {
    require_nonzero(g, "spectral big q-Bessel");
    return 1.0 + 1.0 / g;
  };
  op.coeff_B = [=](cplx g) {
    require_nonzero(g, "spectral big q-Bessel");
    return q / (a * g);
  };
  op.eigenvalue = [](cplx x) { return -(1.0 + x); };
  return op;
}

OperatorSpec dual_big_jacobi_operator(const BigParams& p) {
  const double a = p.a, b = p.b, c = p.c, q = p.q.value();
  OperatorSpec op;
  op.family = Family::dual_big_jacobi;
  op.q = p.q;
  op.coeff_A = [=](cplx g) {
    require_nonzero(g, "spectral big q-Jacobi");
    cplx gi = 1.0 / g;
    if (is_unit(gi * gi) || is_unit(gi * gi / q)) {
      throw Error(ErrorKind::pole, "spectral big q-Jacobi coefficient pole at gamma^2 = 1 or gamma^2 = 1/q");
    }
    return (1.0 - gi / a) * (1.0 - gi / b) * (1.0 - gi / c) / ((1.0 - gi * gi) * (1.0 - gi * gi / q));
  };
  op.coeff_B = [A = op.coeff_A](cplx g) {
    require_nonzero(g, "spectral big q-Jacobi");
    return A(1.0 / g);
  };
  op.eigenvalue = [](cplx x) { return -(1.0 + x); };
  return op;
}

cplx apply_op(const OperatorSpec& op, const std::function<cplx(cplx)>& f, cplx x) {
  const double q = op.q.value();
  cplx A = op.coeff_A(x);
  cplx B = op.coeff_B(x);
  cplx fx = f(x);
  return A * (f(q * x) - fx) + B * (f(x / q) - fx);
}

double eigen_residual(const OperatorSpec& op, const Evaluator& eval, cplx label, const std::vector<cplx>& points) {
  const cplx lambda = op.eigenvalue(label);
  auto f = [&](cplx x) { return eval(label, x); };
  double worst = 0.0;
  for (cplx x : points) {
    cplx fx = f(x);
    cplx lf = apply_op(op, f, x);
    double r = std::abs(lf - lambda * fx) / (1.0 + std::abs(lambda * fx));
    if (!(r <= worst)) worst = r;  // keeps NaN visible
  }
  return worst;
}

std::vector<cplx> continue_on_qline(const OperatorSpec& op, cplx label, cplx x0, cplx f_x0, cplx f_qx0,
                                    Direction direction, int steps) {
  if (steps < 0) throw Error(ErrorKind::domain, "negative step count");
  if (steps > max_continuation_steps) {
    throw Error(ErrorKind::instability, "continuation beyond " + std::to_string(max_continuation_steps) + " steps");
  }
  const double q = op.q.value();
  const cplx lambda = op.eigenvalue(label);
  std::vector<cplx> out;
  out.reserve(steps);
  cplx near = f_qx0;  // value one step behind
  cplx here = f_x0;
  cplx x = x0;
  if (direction == Direction::down) {
    // march from (x0, q x0) towards 0: the known pair is f(x/q), f(x) at x = q x0
    near = f_x0;
    here = f_qx0;
    x = q * x0;
  }
  for (int j = 0; j < steps; ++j) {
    cplx A = op.coeff_A(x);
    cplx B = op.coeff_B(x);
    cplx next;
    if (direction == Direction::up) {
      if (std::abs(B) <= zero_tol * (std::abs(A) + 1.0)) {
        throw Error(ErrorKind::step, "coefficient B vanishes on the q-line");
      }
      next = ((lambda + A + B) * here - A * near) / B;
      x /= q;
    } else {
      if (std::abs(A) <= zero_tol * (std::abs(B) + 1.0)) {
        throw Error(ErrorKind::step, "coefficient A vanishes on the q-line");
      }
      next = ((lambda + A + B) * here - B * near) / A;
      x *= q;
    }
    if (!(std::abs(next) < continuation_guard)) {
      throw Error(ErrorKind::instability, "continued values exceed the overflow guard");
    }
    out.push_back(next);
    near = here;
    here = next;
  }
  return out;
}

}  // namespace awscheme
