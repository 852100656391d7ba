#include "awscheme/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "awscheme/difference_ops.hpp"
#include "awscheme/families.hpp"
#include "awscheme/limits.hpp"
#include "awscheme/transforms.hpp"

namespace awscheme {

namespace {

using ParamMap = std::map<std::string, double>;

Error invalid(const std::string& what) { return Error(ErrorKind::validation, what); }

// ---- selectors and defaults ----

struct FamilyInfo {
  std::string name;
  Family family;
  std::string level;
  ParamMap defaults;
};

const ParamMap aw_defaults{{"q", 0.5}, {"a", 0.9}, {"b", 0.3}, {"c", 0.3}, {"d", 2.0}, {"t", -1.0}};
const ParamMap big_defaults{{"q", 0.5}, {"a", 0.7}, {"b", 0.3}, {"c", 0.4}, {"z", 1.0}};
const ParamMap little_defaults{{"q", 0.5}, {"a", 0.6}, {"b", 0.2}, {"y", 1.0}};
const ParamMap bessel_defaults{{"q", 0.5}, {"a", 0.4}};

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> t = {
      {"aw", Family::aw, "aw", aw_defaults},
      {"aw-bessel", Family::aw_bessel, "aw", {{"q", 0.5}, {"a", 0.6}, {"b", 0.3}}},
      {"big-jacobi", Family::big_jacobi, "big", big_defaults},
      {"big-bessel", Family::big_bessel, "big", bessel_defaults},
      {"little-jacobi", Family::little_jacobi, "little", little_defaults},
      {"little-bessel", Family::little_bessel, "little", bessel_defaults},
      {"dual-big-bessel", Family::dual_big_bessel, "big", bessel_defaults},
      {"dual-big-jacobi", Family::dual_big_jacobi, "big", big_defaults},
  };
  return t;
}

std::string canonical_family(std::string s) {
  // "q-Bessel" spellings are accepted alongside the short ones
  const std::string qb = "qbessel";
  if (auto pos = s.find(qb); pos != std::string::npos) s.replace(pos, qb.size(), "bessel");
  return s;
}

const FamilyInfo& family_info(const std::string& selector) {
  const std::string name = canonical_family(selector);
  for (const auto& f : families()) {
    if (f.name == name) return f;
  }
  std::string known;
  for (const auto& f : families()) known += (known.empty() ? "" : ", ") + f.name;
  throw invalid("unknown family '" + selector + "' (expected one of " + known + ")");
}

std::string join_dash(std::string s) {
  for (std::size_t pos; (pos = s.find("->")) != std::string::npos;) s.replace(pos, 2, "-to-");
  return s;
}

struct Scope {
  std::string level;  // empty when parameter files do not apply
  ParamMap defaults;
};

Scope scope_of(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::eval:
    case Command::eigencheck: {
      const FamilyInfo& f = family_info(cfg.selector);
      if (cfg.command == Command::eval && (f.family == Family::dual_big_bessel || f.family == Family::dual_big_jacobi)) {
        throw invalid("eval takes a geometric family; the dual families are operators only");
      }
      return {f.level, f.defaults};
    }
    case Command::orthocheck: {
      const std::string name = canonical_family(cfg.selector);
      if (name == "little-bessel") return {"little", {{"q", 0.5}, {"a", 0.3}}};
      if (name == "big-bessel") return {"big", {{"q", 0.5}, {"a", 0.6}}};
      if (name == "aw-bessel") return {"aw", {{"q", 0.5}, {"a", 0.6}, {"b", 0.3}}};
      throw invalid("orthocheck family must be little-bessel, big-bessel or aw-bessel, got '" + cfg.selector + "'");
    }
    case Command::roundtrip: {
      if (cfg.selector == "aw") {
        ParamMap d = aw_defaults;
        d["t"] = -1.3;
        return {"aw", d};
      }
      if (cfg.selector == "big") return {"big", big_defaults};
      if (cfg.selector == "little") return {"little", little_defaults};
      throw invalid("roundtrip level must be aw, big or little, got '" + cfg.selector + "'");
    }
    case Command::limitcheck: return {"", {{"q", 0.5}}};
    case Command::dualcheck: return {"", {}};
  }
  throw invalid("unknown command");
}

// ---- parameter files ----

cplx complex_from_json(const nlohmann::json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw invalid("parameter '" + key + "' must be a number or a [re, im] pair");
}

void apply_json(const nlohmann::json& obj, const ParamMap& allowed, Cell& cell, const std::string& where) {
  if (!obj.is_object()) throw invalid(where + " must be a JSON object");
  for (const auto& [k, v] : obj.items()) {
    if (k == "gamma") {
      cell.gamma = complex_from_json(v, k);
    } else if (k == "x") {
      cell.x = complex_from_json(v, k);
    } else if (allowed.count(k)) {
      if (!v.is_number()) throw invalid("parameter '" + k + "' in " + where + " must be a number");
      cell.params[k] = v.get<double>();
    } else {
      throw invalid("parameter '" + k + "' in " + where + " does not apply here");
    }
  }
}

std::vector<Cell> cells_from_file(const std::filesystem::path& path, const Scope& scope, const Cell& base) {
  if (scope.level.empty()) throw invalid("parameter files apply to eval, eigencheck, orthocheck and roundtrip only");
  std::ifstream in(path);
  if (!in) throw invalid("cannot read parameter file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw invalid("parameter file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw invalid("parameter file must hold a JSON object");
  if (!doc.contains("level") || !doc["level"].is_string()) {
    throw invalid("parameter file needs a \"level\" tag (aw, big or little)");
  }
  const std::string level = doc["level"].get<std::string>();
  if (level != "aw" && level != "big" && level != "little") {
    throw invalid("parameter file level must be aw, big or little, got '" + level + "'");
  }
  if (level != scope.level) {
    throw invalid("parameter file is tagged '" + level + "' but the selected check works at level '" + scope.level + "'");
  }
  for (const auto& [k, v] : doc.items()) {
    if (k != "level" && k != "params" && k != "cells") throw invalid("unknown key '" + k + "' in parameter file");
  }
  Cell shared = base;
  if (doc.contains("params")) apply_json(doc["params"], scope.defaults, shared, "params");
  if (!doc.contains("cells")) return {shared};
  if (!doc["cells"].is_array() || doc["cells"].empty()) throw invalid("\"cells\" must be a nonempty array");
  std::vector<Cell> out;
  for (std::size_t i = 0; i < doc["cells"].size(); ++i) {
    Cell c = shared;
    apply_json(doc["cells"][i], scope.defaults, c, "cells[" + std::to_string(i) + "]");
    out.push_back(std::move(c));
  }
  return out;
}

// ---- typed parameters ----

AWParams aw_params(const ParamMap& m) {
  return {QBase(m.at("q")), m.at("a"), m.at("b"), m.at("c"), m.at("d"), m.at("t")};
}
AWBesselParams aw_bessel_params(const ParamMap& m) { return {QBase(m.at("q")), m.at("a"), m.at("b")}; }
BigParams big_params(const ParamMap& m) { return {QBase(m.at("q")), m.at("a"), m.at("b"), m.at("c"), m.at("z")}; }
LittleParams little_params(const ParamMap& m) { return {QBase(m.at("q")), m.at("a"), m.at("b"), m.at("y")}; }
QBesselParams bessel_params(const ParamMap& m) { return {QBase(m.at("q")), m.at("a")}; }

// Validates and returns the operator together with an evaluator f(label, point).
std::pair<OperatorSpec, Evaluator> family_setup(Family f, const ParamMap& m) {
  switch (f) {
    case Family::aw: {
      AWParams p = aw_params(m);
      p.validate();
      return {aw_operator(p), [p](cplx g, cplx x) { return aw_function(p, g, x).value; }};
    }
    case Family::aw_bessel: {
      AWBesselParams p = aw_bessel_params(m);
      p.validate();
      return {aw_bessel_operator(p), [p](cplx g, cplx x) { return aw_qbessel(p, g, x).value; }};
    }
    case Family::big_jacobi: {
      BigParams p = big_params(m);
      p.validate();
      return {big_jacobi_operator(p), [p](cplx g, cplx x) { return big_jacobi(p, g, x).value; }};
    }
    case Family::big_bessel: {
      QBesselParams p = bessel_params(m);
      p.validate();
      return {big_bessel_operator(p), [p](cplx g, cplx x) { return big_qbessel(p, g, x).value; }};
    }
    case Family::little_jacobi: {
      LittleParams p = little_params(m);
      p.validate();
      return {little_jacobi_operator(p), [p](cplx g, cplx x) { return little_jacobi(p, g, x).value; }};
    }
    case Family::little_bessel: {
      QBesselParams p = bessel_params(m);
      p.validate();
      return {little_bessel_operator(p), [p](cplx g, cplx x) { return little_qbessel(p, g, x).value; }};
    }
    case Family::dual_big_bessel: {
      QBesselParams p = bessel_params(m);
      p.validate();
      return {dual_big_bessel_operator(p), [p](cplx x, cplx g) { return big_qbessel(p, g, x).value; }};
    }
    case Family::dual_big_jacobi: {
      BigParams p = big_params(m);
      p.validate();
      return {dual_big_jacobi_operator(p), [p](cplx x, cplx g) { return big_jacobi(p, g, x).value; }};
    }
  }
  throw invalid("unknown family");
}

// ---- random draws ----

double uniform(std::mt19937& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

cplx random_point(std::mt19937& rng, double rmin, double rmax) {
  return std::polar(uniform(rng, rmin, rmax), uniform(rng, -std::numbers::pi, std::numbers::pi));
}

ParamMap draw_params(Family f, std::mt19937& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double q = uniform(rng, 0.3, 0.7);
    ParamMap m{{"q", q}};
    std::vector<std::string> bad;
    switch (f) {
      case Family::aw: {
        const double a = uniform(rng, 0.4, 0.95);
        const double b = uniform(rng, 0.1, a), c = uniform(rng, 0.1, a);
        const double dmin = std::max(q / std::min(b, c), q * a) * 1.02;
        m.insert({{"a", a}, {"b", b}, {"c", c}, {"d", uniform(rng, dmin, 2.5 * dmin)}, {"t", -uniform(rng, 0.5, 2.0)}});
        bad = aw_params(m).violations();
        break;
      }
      case Family::aw_bessel:
      case Family::little_jacobi: {
        const double a = uniform(rng, 0.2, 0.95);
        m.insert({{"a", a}, {"b", uniform(rng, 0.05, a)}});
        if (f == Family::little_jacobi) {
          m["y"] = uniform(rng, 0.5, 2.0);
          bad = little_params(m).violations();
        } else {
          bad = aw_bessel_params(m).violations();
        }
        break;
      }
      case Family::big_jacobi:
      case Family::dual_big_jacobi: {
        const double a = uniform(rng, 0.3, 0.95);
        m.insert({{"a", a}, {"b", uniform(rng, 0.05, a)}, {"c", uniform(rng, 0.05, a)}, {"z", uniform(rng, 0.5, 2.0)}});
        bad = big_params(m).violations();
        break;
      }
      case Family::big_bessel:
      case Family::little_bessel:
      case Family::dual_big_bessel: {
        m["a"] = uniform(rng, 0.05, 0.95);
        bad = bessel_params(m).violations();
        break;
      }
    }
    if (bad.empty()) return m;
  }
  throw Error(ErrorKind::domain, "no admissible parameter draw found");
}

// ---- records ----

using Clock = std::chrono::steady_clock;

std::map<std::string, ParamValue> record_params(const ParamMap& m) {
  std::map<std::string, ParamValue> out;
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

void put_complex(std::map<std::string, ParamValue>& out, const std::string& key, cplx v) {
  out[key + "_re"] = v.real();
  out[key + "_im"] = v.imag();
}

struct Recorder {
  const RunConfig& cfg;
  VerificationReport& report;

  // Times body, which returns the metric, and appends one record.
  void operator()(const std::string& id, const std::string& tag, std::map<std::string, ParamValue> params,
                  double threshold, const std::function<double()>& body) const {
    auto t0 = Clock::now();
    double metric = body();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    report.add(make_record(id, tag, std::move(params), metric, threshold, cfg.timing ? ms : 0));
  }
};

double tol_or(const RunConfig& cfg, double fallback) { return cfg.tolerance.value_or(fallback); }

// ---- commands ----

void eigencheck(const RunConfig& cfg, const Cell& cell, const std::string& prefix, VerificationReport& rep) {
  const FamilyInfo& info = family_info(cfg.selector);
  const bool spectral = info.family == Family::dual_big_bessel || info.family == Family::dual_big_jacobi;
  std::mt19937 rng(cfg.seed);
  if (!cfg.draw) family_setup(info.family, cell.params);  // reject bad input before any sampling
  Recorder rec{cfg, rep};
  for (int i = 0; i < cfg.samples; ++i) {
    ParamMap m = cfg.draw ? draw_params(info.family, rng) : cell.params;
    auto [op, eval] = family_setup(info.family, m);
    // label is gamma for geometric operators and x for the spectral ones
    const std::optional<cplx>& fixed = spectral ? cell.x : cell.gamma;
    cplx label = fixed ? *fixed : random_point(rng, 0.5, 2.0);
    std::vector<cplx> points;
    for (int j = 0; j < 5; ++j) points.push_back(random_point(rng, 0.5, 2.0));
    auto params = record_params(m);
    put_complex(params, spectral ? "x" : "gamma", label);
    rec(prefix + "eigen/" + info.name + "/" + std::to_string(i), info.name + "-eigen", std::move(params),
        tol_or(cfg, 1e-10), [&] { return eigen_residual(op, eval, label, points); });
  }
}

void orthocheck(const RunConfig& cfg, const Cell& cell, const std::string& prefix, VerificationReport& rep) {
  const std::string name = canonical_family(cfg.selector);
  OrthoFamily fam = name == "little-bessel" ? OrthoFamily::little_bessel
                    : name == "big-bessel"  ? OrthoFamily::big_bessel
                                            : OrthoFamily::aw_bessel;
  const ParamMap& m = cell.params;
  OrthoParams p{QBase(m.at("q")), m.at("a"), m.count("b") ? m.at("b") : 0.0, 1.0};
  if (cell.gamma) {
    if (cell.gamma->imag() != 0.0 || !(cell.gamma->real() > 0.0)) throw invalid("orthogonality needs a real gamma > 0");
    p.gamma = cell.gamma->real();
  }
  const long lo = cfg.lo.value_or(fam == OrthoFamily::little_bessel ? 0 : -2);
  const long hi = cfg.hi.value_or(fam == OrthoFamily::little_bessel ? 4 : 2);
  if (hi < lo) throw invalid("index range needs lo <= hi");
  const double tol = tol_or(cfg, fam == OrthoFamily::little_bessel ? 1e-8 : 1e-6);
  auto params = record_params(m);
  if (fam != OrthoFamily::little_bessel) params["gamma"] = p.gamma;
  params["lo"] = static_cast<double>(lo);
  params["hi"] = static_cast<double>(hi);
  GramResult g;
  Recorder rec{cfg, rep};
  const std::string tag = std::string(to_string(fam)) + "-orthogonality";
  rec(prefix + "ortho/" + to_string(fam), tag, params, tol, [&] {
    g = orthogonality_matrix(fam, p, lo, hi);
    return g.max_rel_error;
  });
  // positivity as a 0/1 metric against threshold 0
  rep.add(make_record(prefix + "ortho/" + to_string(fam) + "/diagonal-positive", tag, params,
                      g.diagonal_positive ? 0.0 : 1.0, 0.0, 0));
}

double max_deviation(const std::vector<std::pair<cplx, cplx>>& got_want) {
  double worst = 0.0;
  for (const auto& [got, want] : got_want) {
    double e = std::abs(got - want);
    if (!(e <= worst)) worst = e;
  }
  return worst;
}

void roundtrip(const RunConfig& cfg, const Cell& cell, const std::string& prefix, VerificationReport& rep) {
  const ParamMap& m = cell.params;
  Recorder rec{cfg, rep};
  const std::string level = cfg.selector;
  if (level == "little") {
    LittleParams p = little_params(m);
    p.validate();
    for (long k0 : {-1L, 0L, 2L}) {
      auto params = record_params(m);
      params["k0"] = static_cast<double>(k0);
      rec(prefix + "roundtrip/little/delta" + std::to_string(k0), "little-transform-inversion", params, tol_or(cfg, 1e-6),
          [&] {
            auto fw = little_forward(p, Sequence{[k0](long k) { return k == k0 ? cplx(1.0) : cplx(0.0); },
                                                 std::pair<long, long>{k0, k0}});
            auto inv = little_inverse(p, SymmetricFunction{fw, std::nullopt});
            std::vector<std::pair<cplx, cplx>> gw;
            for (long k = k0 - 2; k <= k0 + 2; ++k) gw.push_back({inv(k), k == k0 ? 1.0 : 0.0});
            return max_deviation(gw);
          });
    }
  } else if (level == "big") {
    BigParams p = big_params(m);
    p.validate();
    const double qv = p.q.value();
    struct Spot {
      bool minus;
      long k;
    };
    for (Spot s : {Spot{true, 0}, Spot{true, 2}, Spot{false, -1}, Spot{false, 1}}) {
      auto params = record_params(m);
      params["grid"] = s.minus ? std::string("minus") : std::string("plus");
      params["k0"] = static_cast<double>(s.k);
      const std::string id = prefix + "roundtrip/big/" + (s.minus ? "minus" : "plus") + std::to_string(s.k);
      rec(id, "big-transform-inversion", params, tol_or(cfg, 1e-4), [&] {
        GridFunction u;
        auto ind = [k0 = s.k](long k) { return k == k0 ? cplx(1.0) : cplx(0.0); };
        auto none = [](long) { return cplx(0.0); };
        u.minus = s.minus ? std::function<cplx(long)>(ind) : none;
        u.plus = s.minus ? std::function<cplx(long)>(none) : ind;
        if (s.minus) {
          u.minus_support = std::pair<long, long>{s.k, s.k};
          u.plus_support = std::pair<long, long>{0, -1};
        } else {
          u.minus_support = std::pair<long, long>{0, -1};
          u.plus_support = std::pair<long, long>{s.k, s.k};
        }
        auto inv = big_inverse(p, SymmetricFunction{big_forward(p, u), std::nullopt});
        std::vector<std::pair<cplx, cplx>> gw;
        for (long k = 0; k <= 3; ++k) gw.push_back({inv(-std::pow(qv, k)), s.minus && s.k == k ? 1.0 : 0.0});
        for (long k = -2; k <= 2; ++k) gw.push_back({inv(p.z * std::pow(qv, k)), !s.minus && s.k == k ? 1.0 : 0.0});
        return max_deviation(gw);
      });
    }
  } else {
    AWParams p = aw_params(m);
    p.validate();
    MeasureSpec xm(measure_params(p));
    std::vector<double> probes;
    for (const auto& mp : xm.plus_points()) probes.push_back(mp.s);
    for (long j = 0; j < 3; ++j) {
      if (auto mp = xm.minus_point(j)) probes.push_back(mp->s);
    }
    if (probes.empty()) throw invalid("the x-measure has no discrete mass points for these parameters");
    const std::size_t n_spots = std::min<std::size_t>(2, probes.size());
    for (std::size_t i = 0; i < n_spots; ++i) {
      const double s0 = probes[i];
      auto params = record_params(m);
      params["support_point"] = s0;
      rec(prefix + "roundtrip/aw/point" + std::to_string(i), "aw-transform-inversion", params, tol_or(cfg, 1e-4), [&] {
        auto ind = [s0](cplx x) { return std::abs(x - s0) <= 1e-12 * std::abs(s0) ? cplx(1.0) : cplx(0.0); };
        auto fw = aw_transform(p, SymmetricFunction{ind, std::vector<double>{s0}}, TransformDirection::forward);
        auto inv = aw_transform(p, SymmetricFunction{fw, std::nullopt}, TransformDirection::inverse);
        std::vector<std::pair<cplx, cplx>> gw;
        for (double s : probes) gw.push_back({inv(s), s == s0 ? 1.0 : 0.0});
        return max_deviation(gw);
      });
    }
  }
}

std::vector<Transition> select_transitions(const std::string& sel) {
  if (sel.empty() || sel == "all") return {std::begin(all_transitions), std::end(all_transitions)};
  for (Transition t : all_transitions) {
    if (join_dash(to_string(t)) == join_dash(sel)) return {t};
  }
  throw invalid("unknown transition '" + sel + "'");
}

constexpr Duality all_dualities[] = {Duality::aw_self_dual, Duality::little_jacobi_aw_bessel,
                                     Duality::little_bessel_self_dual, Duality::big_jacobi_cdqh,
                                     Duality::big_bessel_laguerre};

double duality_tolerance(Duality d) { return d == Duality::aw_self_dual ? 1e-11 : 1e-12; }

void limitcheck(const RunConfig& cfg, const Cell& cell, VerificationReport& rep) {
  LimitPoint lp;
  lp.q = QBase(cell.params.at("q"));
  const double tol = tol_or(cfg, 1e-3);
  Recorder rec{cfg, rep};
  const std::map<std::string, ParamValue> params{{"q", lp.q.value()}, {"m0", 4.0}, {"m1", 16.0}};
  for (Transition t : select_transitions(cfg.selector)) {
    const std::string name = to_string(t);
    ScanResult s;
    rec("limit/" + name + "/final-error", name, params, tol, [&] {
      s = limit_scan(make_transition(t, lp));
      return s.final_error;
    });
    // monotone from m0 <= 8; -1 means never
    rep.add(make_record("limit/" + name + "/monotone-from", name, params,
                        s.monotone_from < 0 ? INFINITY : static_cast<double>(s.monotone_from), 8.0, 0));
    // a positive order passes as -order <= 0
    rep.add(make_record("limit/" + name + "/order", name, params, -s.order, 0.0, 0));
  }
  if (cfg.selector.empty() || cfg.selector == "all") {
    rec("limit/commutativity", "limit-diagram-commutes", params, tol,
        [&] { return commutativity(lp).path_discrepancy; });
  }
}

void dualcheck(const RunConfig& cfg, VerificationReport& rep) {
  std::vector<Duality> which;
  for (Duality d : all_dualities) {
    if (cfg.selector.empty() || cfg.selector == "all" || cfg.selector == to_string(d)) which.push_back(d);
  }
  if (which.empty()) throw invalid("unknown duality '" + cfg.selector + "'");
  Recorder rec{cfg, rep};
  for (Duality d : which) {
    const std::map<std::string, ParamValue> params{{"samples", static_cast<double>(cfg.samples)},
                                                   {"seed", static_cast<double>(cfg.seed)}};
    rec(std::string("duality/") + to_string(d), to_string(d), params, tol_or(cfg, duality_tolerance(d)),
        [&] { return duality_check(d, cfg.samples, cfg.seed).max_rel_error; });
  }
}

std::string format_complex(cplx v) {
  if (v.imag() == 0.0) return format_double(v.real());
  std::string im = format_double(v.imag());
  if (im[0] != '-') im = "+" + im;
  return format_double(v.real()) + im + "i";
}

cplx parse_complex(const std::string& s, const char* what) {
  // accepts "re" or "re,im"
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(in >> re)) throw invalid(std::string("cannot read ") + what + " from '" + s + "'");
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) throw invalid(std::string("cannot read ") + what + " from '" + s + "'");
  }
  if (!in.eof() && in.peek() != EOF) throw invalid(std::string("trailing characters in ") + what + " '" + s + "'");
  return {re, im};
}

}  // namespace

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::eval: return "eval";
    case Command::eigencheck: return "eigencheck";
    case Command::orthocheck: return "orthocheck";
    case Command::roundtrip: return "roundtrip";
    case Command::limitcheck: return "limitcheck";
    case Command::dualcheck: return "dualcheck";
  }
  return "unknown";
}

std::vector<Cell> resolve_cells(const RunConfig& cfg) {
  const Scope scope = scope_of(cfg);
  Cell base;
  base.params = scope.defaults;
  std::vector<Cell> cells = cfg.param_file ? cells_from_file(*cfg.param_file, scope, base) : std::vector<Cell>{base};
  for (const auto& [k, v] : cfg.params) {
    if (!scope.defaults.count(k)) {
      throw invalid("parameter '" + k + "' does not apply to " + std::string(to_string(cfg.command)) +
                    (cfg.selector.empty() ? "" : " " + cfg.selector));
    }
  }
  for (Cell& c : cells) {
    for (const auto& [k, v] : cfg.params) c.params[k] = v;
    if (cfg.gamma) c.gamma = cfg.gamma;
    if (cfg.x) c.x = cfg.x;
  }
  return cells;
}

VerificationReport run_checks(const RunConfig& cfg) {
  if (cfg.samples <= 0) throw invalid("sample count must be positive");
  VerificationReport rep;
  const std::vector<Cell> cells = resolve_cells(cfg);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string prefix = cells.size() > 1 ? "cell" + std::to_string(i) + "/" : "";
    switch (cfg.command) {
      case Command::eigencheck: eigencheck(cfg, cells[i], prefix, rep); break;
      case Command::orthocheck: orthocheck(cfg, cells[i], prefix, rep); break;
      case Command::roundtrip: roundtrip(cfg, cells[i], prefix, rep); break;
      case Command::limitcheck: limitcheck(cfg, cells[i], rep); break;
      case Command::dualcheck: dualcheck(cfg, rep); break;
      case Command::eval: throw invalid("eval produces a value, not a report");
    }
  }
  return rep;
}

std::string eval_value(const RunConfig& cfg) {
  const FamilyInfo& info = family_info(cfg.selector);
  std::string out;
  for (const Cell& c : resolve_cells(cfg)) {
    if (!c.x) throw invalid("eval needs --x");
    auto [op, f] = family_setup(info.family, c.params);
    // the little q-Bessel function is 1 at x = 0 for every spectral point
    const bool unit_case = info.family == Family::little_bessel && *c.x == cplx(0.0);
    if (!c.gamma && !unit_case) throw invalid("eval needs --gamma");
    const cplx g = c.gamma.value_or(1.0);
    out += format_complex(f(g, *c.x)) + "\n";
  }
  return out;
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::domain:
    case ErrorKind::pole:
    case ErrorKind::genericity:
    case ErrorKind::write:
      return 2;
    case ErrorKind::divergence:
    case ErrorKind::continuation:
    case ErrorKind::quadrature:
    case ErrorKind::instability:
    case ErrorKind::step:
      return 3;
  }
  return 3;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == Command::eval) {
      out << eval_value(cfg);
      return 0;
    }
    VerificationReport rep = run_checks(cfg);
    std::optional<std::filesystem::path> dest = cfg.output;
    if (!dest) {
      if (const char* dir = std::getenv(output_dir_env); dir && *dir) {
        dest = std::filesystem::path(dir) / (std::string(to_string(cfg.command)) + (cfg.format == Format::csv ? ".csv" : ".json"));
      }
    }
    if (dest) {
      emit(rep, cfg.format, *dest);
    } else {
      emit(rep, cfg.format, out);
    }
    long failed = std::count_if(rep.records.begin(), rep.records.end(), [](const Record& r) { return !r.pass; });
    if (failed > 0) {
      err << failed << " of " << rep.records.size() << " records failed\n";
      return 1;
    }
    return 0;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "unexpected failure: " << e.what() << '\n';
    return 3;
  }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Askey-Wilson scheme: evaluation and verification checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::map<std::string, double> flag_values;
  std::string gamma_text, x_text, format_text = "csv";
  std::string file_text, output_text;
  long lo = 0, hi = 0;
  double tolerance = 0.0;

  struct Sub {
    Command cmd;
    const char* help;
    const char* selector_flag;
    const char* selector_help;
  };
  const Sub subs[] = {
      {Command::eval, "Evaluate one function value", "--family", "aw, aw-bessel, big-jacobi, big-bessel, little-jacobi, little-bessel"},
      {Command::eigencheck, "Residuals of the q-difference eigenvalue equation", "--family",
       "any geometric family, or dual-big-bessel, dual-big-jacobi"},
      {Command::orthocheck, "Gram matrix of an orthogonality relation", "--family", "little-bessel, big-bessel, aw-bessel"},
      {Command::roundtrip, "Forward then inverse transform of finitely supported functions", "--level", "aw, big, little"},
      {Command::limitcheck, "Limit transition scans over eps = q^m", "--transition", "transition name or all"},
      {Command::dualcheck, "Sampled duality relations", "--which", "duality name or all"},
  };
  std::vector<std::pair<CLI::App*, Command>> apps;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(to_string(s.cmd), s.help);
    apps.push_back({sub, s.cmd});
    sub->add_option(s.selector_flag, cfg.selector, s.selector_help);
    if (s.cmd == Command::eval || s.cmd == Command::eigencheck || s.cmd == Command::orthocheck) {
      sub->get_option(s.selector_flag)->required();
    }
    if (s.cmd == Command::roundtrip) sub->get_option(s.selector_flag)->required();
    for (const char* name : {"q", "a", "b", "c", "d", "t", "z", "y"}) {
      sub->add_option_function<double>(std::string("--") + name, [&flag_values, name](double v) { flag_values[name] = v; },
                                       std::string("parameter ") + name);
    }
    sub->add_option("--gamma", gamma_text, "spectral point, re or re,im");
    sub->add_option("--x", x_text, "geometric point, re or re,im");
    sub->add_option("--params", file_text, "JSON parameter file with a level tag");
    if (s.cmd != Command::eval) {
      sub->add_option("--samples", cfg.samples, "number of samples")->check(CLI::PositiveNumber);
      sub->add_option("--seed", cfg.seed, "seed for random draws");
      sub->add_option("--tol", tolerance, "pass threshold");
      sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
      sub->add_option("--output", output_text, "report path; default from " + std::string(output_dir_env) + " or stdout");
      sub->add_flag("--timing", cfg.timing, "record runtimes (reports then differ between runs)");
    }
    if (s.cmd == Command::eigencheck) sub->add_flag("--draw", cfg.draw, "random admissible parameters per sample");
    if (s.cmd == Command::orthocheck) {
      sub->add_option("--lo", lo, "lowest index");
      sub->add_option("--hi", hi, "highest index");
    }
  }

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    // help requests exit 0; everything else is invalid input
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    for (const auto& [sub, cmd] : apps) {
      if (sub->parsed()) {
        cfg.command = cmd;
        if (cmd == Command::orthocheck && sub->count("--lo")) cfg.lo = lo;
        if (cmd == Command::orthocheck && sub->count("--hi")) cfg.hi = hi;
        if (cmd != Command::eval && sub->count("--tol")) cfg.tolerance = tolerance;
      }
    }
    cfg.params = flag_values;
    if (!gamma_text.empty()) cfg.gamma = parse_complex(gamma_text, "gamma");
    if (!x_text.empty()) cfg.x = parse_complex(x_text, "x");
    if (!file_text.empty()) cfg.param_file = file_text;
    if (!output_text.empty()) cfg.output = output_text;
    cfg.format = format_text == "json" ? Format::json : Format::csv;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  }
  return run(cfg, out, err);
}

}  // namespace awscheme
