#pragma once

#include <string>
#include <vector>

#include "awscheme/hyperseries.hpp"
#include "awscheme/qcore.hpp"

namespace awscheme {

// Askey-Wilson level parameters (a; b, c; d | q) with the measure parameter t.
struct AWParams {
  QBase q{0.5};
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double t = -1.0;

  // (a~, b~, c~, d~, t~); throws a domain error when abcd/q <= 0.
  AWParams dual() const;
  // Violated admissibility conditions, each as a short message.
  std::vector<std::string> violations() const;
  void validate() const;
};

struct AWBesselParams {
  QBase q{0.5};
  double a = 0.0;
  double b = 0.0;
  std::vector<std::string> violations() const;
  void validate() const;
};

struct QBesselParams {
  QBase q{0.5};
  double a = 0.0;
  std::vector<std::string> violations() const;
  void validate() const;
};

struct BigParams {
  QBase q{0.5};
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double z = 1.0;
  std::vector<std::string> violations() const;
  void validate() const;
};

struct LittleParams {
  QBase q{0.5};
  double a = 0.0;
  double b = 0.0;
  double y = 1.0;
  std::vector<std::string> violations() const;
  void validate() const;
};

enum class AWRoute {
  automatic,  // best conditioned of the routes below
  series,     // the 8W7 representation at gamma, needs |q/(d~ gamma)| < 1
  inverted,   // the same at 1/gamma, needs |q gamma/d~| < 1
  dual        // phi_x(gamma; a~; b~, c~; d~) with x as spectral variable
};

SeriesResult aw_function(const AWParams& p, cplx gamma, cplx x, AWRoute route = AWRoute::automatic);

// The right side of the terminating reduction at 1/gamma = a~ q^n, times the
// 8W7 prefactor: an independent evaluation of the Askey-Wilson polynomial.
SeriesResult aw_polynomial(const AWParams& p, int n, cplx x);

SeriesResult aw_qbessel(const AWBesselParams& p, cplx gamma, cplx x);

// Big q-Jacobi function; outside |bcx| < 0.7 it is continued along the q-line
// of x with the three-term recurrence.
SeriesResult big_jacobi(const BigParams& p, cplx gamma, cplx x);
SeriesResult big_jacobi_series(const BigParams& p, cplx gamma, cplx x);
// Right side of the two-sided polynomial identity at gamma = a q^n.
SeriesResult big_jacobi_polynomial(const BigParams& p, int n, cplx x);
SeriesResult cdqh_poly(const BigParams& p, cplx gamma, int k);

SeriesResult big_qbessel(const QBesselParams& p, cplx gamma, cplx x);
// q-Laguerre form of the big q-Bessel function at x = -q^n.
SeriesResult q_laguerre(const QBesselParams& p, cplx gamma, int n);

struct CoefficientPair {
  SeriesResult first;   // 1phi1(-a gamma q^{-1-p}; a; q, q^{p+1})
  SeriesResult second;  // (q^{p+1};q)_inf/(a;q)_inf 1phi1(-gamma; q^{p+1}; q, a), normalised
  double rel_discrepancy = 0.0;
};

CoefficientPair qbessel_coeff_pair(const QBesselParams& p, cplx gamma, int index);
SeriesResult qbessel_coeff(const QBesselParams& p, cplx gamma, int index);

SeriesResult little_jacobi(const LittleParams& p, cplx gamma, cplx x);
SeriesResult little_jacobi_polynomial(const LittleParams& p, int n, cplx x);

SeriesResult little_qbessel(const QBesselParams& p, cplx gamma, cplx x);

}  // namespace awscheme
