#include "awscheme/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "awscheme/errors.hpp"

namespace awscheme {

const char* to_string(Level l) noexcept {
  switch (l) {
    case Level::aw: return "aw";
    case Level::big: return "big";
    case Level::little: return "little";
  }
  return "unknown";
}

const char* to_string(OrthoFamily f) noexcept {
  switch (f) {
    case OrthoFamily::aw_bessel: return "aw-bessel";
    case OrthoFamily::big_bessel: return "big-bessel";
    case OrthoFamily::little_bessel: return "little-bessel";
  }
  return "unknown";
}

MeasureParams measure_params(const AWParams& p) { return {p.q, p.a, p.b, p.c, p.d, p.t}; }

namespace {

MeasureParams big_dual_params(const BigParams& p) {
  const double abc = p.a * p.b * p.c;
  return {p.q, p.a, p.b, p.c, p.q.value() / abc, -1.0 / p.z};
}

MeasureParams little_dual_params(const LittleParams& p) {
  const double aby = p.a * p.b * p.y;
  return {p.q, p.a, p.b, aby, p.q.value() / aby, -1.0};
}

double real_theta(double x, QBase q) { return theta(x, q).value.real(); }
double real_qpoch(double x, QBase q) { return qpoch(x, q).value.real(); }

cplx integrate_symmetric(const MeasureSpec& m, const SymmetricFunction& u, const std::function<cplx(cplx)>& kernel) {
  if (u.discrete_support) {
    cplx sum = 0.0;
    for (double s : *u.discrete_support) {
      MassPoint mp = m.mass_point(s);
      cplx v = u.f(s);
      if (v != cplx(0.0)) sum += v * kernel(s) * mp.weight;
    }
    return sum;
  }
  return m.integrate([&](cplx x) { return u.f(x) * kernel(x); }).value;
}

}  // namespace

TransformConstants aw_constants(const AWParams& p, MeasureOptions opts) {
  return {Level::aw, 1.0, MeasureSpec(measure_params(p.dual()), opts)};
}

TransformConstants big_constants(const BigParams& p, MeasureOptions opts) {
  const QBase q = p.q;
  const double a = p.a, b = p.b, c = p.c, z = p.z;
  MeasureParams mp = big_dual_params(p);
  MeasureSpec m(mp, opts);
  const double ab = real_qpoch(a * b, q), ac = real_qpoch(a * c, q);
  double C = real_theta(-a * b * z, q) * real_theta(-a * c * z, q) * real_theta(-b * c * z, q) * ab * ab * ac * ac /
             ((1.0 - q.value()) * z * real_theta(-q.value() * z, q) * m.K());
  return {Level::big, C, std::move(m)};
}

TransformConstants little_constants(const LittleParams& p, MeasureOptions opts) {
  const QBase q = p.q;
  MeasureSpec m(little_dual_params(p), opts);
  const double ab = real_qpoch(p.a * p.b, q);
  const double th = real_theta(-p.b * p.y, q);
  return {Level::little, ab * ab * th * th / m.K(), std::move(m)};
}

Transformed aw_transform(const AWParams& p, SymmetricFunction u, TransformDirection dir, MeasureOptions opts) {
  p.validate();
  if (dir == TransformDirection::forward) {
    auto m = std::make_shared<MeasureSpec>(measure_params(p), opts);
    return [p, u = std::move(u), m](cplx gamma) {
      return integrate_symmetric(*m, u, [&](cplx x) { return aw_function(p, gamma, x).value; });
    };
  }
  auto m = std::make_shared<MeasureSpec>(measure_params(p.dual()), opts);
  return [p, u = std::move(u), m](cplx x) {
    return integrate_symmetric(*m, u, [&](cplx gamma) { return aw_function(p, gamma, x).value; });
  };
}

cplx big_weight(const BigParams& p, cplx x) {
  double rel = 0.0;
  return qpoch_ratio({-p.q.value() * x, -p.b * p.c * x}, {-p.a * p.b * x, -p.a * p.c * x}, p.q, rel).value();
}

cplx little_weight(const LittleParams& p, long k) {
  const double qv = p.q.value();
  const double qk = std::pow(qv, static_cast<double>(1 - k));
  double rel = 0.0;
  Scaled v = qpoch_ratio({-qk / (p.a * p.y)}, {-qk / (p.b * p.y)}, p.q, rel);
  return v.value() * std::pow(p.a, 2.0 * static_cast<double>(k));
}

Transformed big_forward(const BigParams& p, GridFunction u) {
  p.validate();
  return [p, u = std::move(u)](cplx gamma) {
    const double qv = p.q.value();
    auto kernel = [&](cplx x) { return big_jacobi(p, gamma, x).value * big_weight(p, x); };
    GridFunction g;
    if (u.minus) {
      g.minus = [&](long k) {
        cplx v = u.minus(k);
        return v == cplx(0.0) ? v : v * kernel(-std::pow(qv, static_cast<double>(k)));
      };
      g.minus_support = u.minus_support;
    }
    if (u.plus) {
      g.plus = [&](long k) {
        cplx v = u.plus(k);
        return v == cplx(0.0) ? v : v * kernel(p.z * std::pow(qv, static_cast<double>(k)));
      };
      g.plus_support = u.plus_support;
    }
    return q_integral(g, p.z, p.q).value;
  };
}

Transformed big_inverse(const BigParams& p, SymmetricFunction uhat, MeasureOptions opts) {
  p.validate();
  auto tc = std::make_shared<TransformConstants>(big_constants(p, opts));
  return [p, uhat = std::move(uhat), tc](cplx x) {
    const double abc = p.a * p.b * p.c;
    auto kernel = [&](cplx gamma) {
      double rel = 0.0;
      cplx w = qpoch_ratio({}, {gamma * abc, abc / gamma}, p.q, rel).value();
      return big_jacobi(p, gamma, x).value * w;
    };
    return tc->C * integrate_symmetric(tc->dual_measure, uhat, kernel);
  };
}

Transformed little_forward(const LittleParams& p, Sequence u) {
  p.validate();
  return [p, u = std::move(u)](cplx gamma) {
    const double qv = p.q.value();
    auto term = [&](long k) {
      cplx v = u.u(k);
      if (v == cplx(0.0)) return v;
      return v * little_jacobi(p, gamma, p.y * std::pow(qv, static_cast<double>(k))).value * little_weight(p, k);
    };
    if (u.support) {
      cplx sum = 0.0;
      for (long k = u.support->first; k <= u.support->second; ++k) sum += term(k);
      return sum;
    }
    return bilateral_sum(term).value;
  };
}

std::function<cplx(long)> little_inverse(const LittleParams& p, SymmetricFunction uhat, MeasureOptions opts) {
  p.validate();
  auto tc = std::make_shared<TransformConstants>(little_constants(p, opts));
  return [p, uhat = std::move(uhat), tc](long k) {
    const double x = p.y * std::pow(p.q.value(), static_cast<double>(k));
    return tc->C * integrate_symmetric(tc->dual_measure, uhat, [&](cplx gamma) { return little_jacobi(p, gamma, x).value; });
  };
}

double gram_closed_form(OrthoFamily family, const OrthoParams& p, long k) {
  const QBase q = p.q;
  const double qv = q.value(), a = p.a, g = p.gamma;
  const double qk = std::pow(qv, static_cast<double>(k));
  switch (family) {
    case OrthoFamily::aw_bessel: {
      MeasureParams mp{q, a, p.b, qv * g, 1.0 / g, -1.0};
      const double denom = real_qpoch(a * p.b, q) * real_theta(-a / g, q);
      return std::pow(a, -2.0 * static_cast<double>(k)) * real_qpoch(-a / (qk * g), q) /
             real_qpoch(-p.b / (qk * g), q) * const_K(mp) / (denom * denom);
    }
    case OrthoFamily::big_bessel: {
      const double qq = real_qpoch(qv, q), aa = real_qpoch(a, q);
      return (1.0 - qv) * qq * qq * real_theta(-a * g, q) / (aa * aa * real_theta(-g, q)) *
             std::pow(a, -static_cast<double>(k)) * real_qpoch(-qk * g, q);
    }
    case OrthoFamily::little_bessel: {
      const double qq = real_qpoch(qv, q), aa = real_qpoch(a, q);
      return std::pow(a, -static_cast<double>(k)) * qq * qq / (aa * aa);
    }
  }
  return 0.0;
}

GramResult orthogonality_matrix(OrthoFamily family, const OrthoParams& p, long lo, long hi, MeasureOptions opts) {
  if (hi < lo) throw Error(ErrorKind::domain, "empty index range");
  const QBase q = p.q;
  const double qv = q.value(), a = p.a, g = p.gamma;
  switch (family) {
    case OrthoFamily::aw_bessel:
      AWBesselParams{q, a, p.b}.validate();
      if (!(g > 0.0)) throw Error(ErrorKind::validation, "validation error: requires gamma > 0 (gamma=" + std::to_string(g) + ")");
      break;
    case OrthoFamily::big_bessel:
      QBesselParams{q, a}.validate();
      if (!(g > 0.0)) throw Error(ErrorKind::validation, "validation error: requires gamma > 0 (gamma=" + std::to_string(g) + ")");
      break;
    case OrthoFamily::little_bessel: QBesselParams{q, a}.validate(); break;
  }

  std::function<cplx(long, long)> entry;
  std::optional<MeasureSpec> m;
  if (family == OrthoFamily::aw_bessel) {
    m.emplace(MeasureParams{q, a, p.b, qv * g, 1.0 / g, -1.0}, opts);
    AWBesselParams bp{q, a, p.b};
    entry = [&m, bp, g, qv](long k, long l) {
      cplx gk = g * std::pow(qv, static_cast<double>(k)), gl = g * std::pow(qv, static_cast<double>(l));
      return m->integrate([&](cplx x) { return aw_qbessel(bp, gk, x).value * aw_qbessel(bp, gl, x).value; }).value;
    };
  } else if (family == OrthoFamily::big_bessel) {
    QBesselParams bp{q, a};
    const double z = qv / (a * g);
    entry = [=](long k, long l) {
      cplx gk = g * std::pow(qv, static_cast<double>(k)), gl = g * std::pow(qv, static_cast<double>(l));
      auto F = [&](cplx x) {
        double rel = 0.0;
        cplx w = qpoch_ratio({-qv * x}, {-a * x}, q, rel).value();
        return big_qbessel(bp, gk, x).value * big_qbessel(bp, gl, x).value * w;
      };
      GridFunction gf;
      gf.minus = [&](long j) { return F(-std::pow(qv, static_cast<double>(j))); };
      gf.plus = [&](long j) { return F(z * std::pow(qv, static_cast<double>(j))); };
      return q_integral(gf, z, q).value;
    };
  } else {
    QBesselParams bp{q, a};
    entry = [=](long n, long mm) {
      cplx gn = std::pow(qv, static_cast<double>(n)), gm = std::pow(qv, static_cast<double>(mm));
      auto term = [&](long k) {
        const double x = std::pow(qv, static_cast<double>(k));
        return std::pow(a, static_cast<double>(k)) * little_qbessel(bp, gn, x).value * little_qbessel(bp, gm, x).value;
      };
      return bilateral_sum(term).value;
    };
  }

  GramResult out;
  for (long k = lo; k <= hi; ++k) {
    out.indices.push_back(k);
    out.closed_form.push_back(gram_closed_form(family, p, k));
  }
  const std::size_t n = out.indices.size();
  out.gram.assign(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      out.gram[i][j] = entry(out.indices[i], out.indices[j]);
      out.gram[j][i] = out.gram[i][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(out.gram[i][i].real() > 0.0)) out.diagonal_positive = false;
    for (std::size_t j = 0; j < n; ++j) {
      cplx expect = i == j ? cplx(out.closed_form[i]) : cplx(0.0);
      double scale = std::sqrt(std::abs(out.closed_form[i] * out.closed_form[j]));
      double err = std::abs(out.gram[i][j] - expect) / scale;
      if (!(err <= out.max_rel_error)) out.max_rel_error = err;
    }
  }
  return out;
}

}  // namespace awscheme
