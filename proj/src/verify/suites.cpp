#include "ttbar/verify/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "ttbar/deform/holo.hpp"
#include "ttbar/deform/real.hpp"
#include "ttbar/maass/maass.hpp"
#include "ttbar/mellin/mellin.hpp"
#include "ttbar/simd/dispatch.hpp"
#include "ttbar/verify/seeds.hpp"

namespace ttbar::verify {

namespace {

using deform::Normalization;
using deform::RealVariant;
using maass::PlaneFunction;
using spectra::EvalResult;
using spectra::HoloSeed;
using spectra::RealSeed;

constexpr double kPi = std::numbers::pi;

Json cx(Complex z) { return Json::array({z.real(), z.imag()}); }
Json pt(const ModulusPoint& d) { return Json::array({d.d1, d.d2}); }

CheckRecord record(std::string identity, std::string relation, Json inputs, double residual, double threshold,
                   Comparison cmp = Comparison::below) {
  CheckRecord r;
  r.identity = std::move(identity);
  r.relation = std::move(relation);
  r.inputs = std::move(inputs);
  r.residual = residual;
  r.threshold = threshold;
  r.comparison = cmp;
  r.decide();
  return r;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Runs fn, turning a library error into one failed record.
CheckTask guarded(std::string identity, std::string relation, Json inputs,
                  std::function<std::vector<CheckRecord>()> fn) {
  return [identity = std::move(identity), relation = std::move(relation), inputs = std::move(inputs),
          fn = std::move(fn)]() -> std::vector<CheckRecord> {
    try {
      return fn();
    } catch (const std::exception& e) {
      return {failed_record(identity, relation, inputs, e.what())};
    }
  };
}

struct Plan {
  std::vector<CheckTask> tasks;
  std::vector<std::string> notes;
};

std::vector<std::string> seeds_or(const RunConfig& c, std::vector<std::string> fallback) {
  return c.seeds.empty() ? fallback : c.seeds;
}

std::vector<double> alphas_or(const RunConfig& c, std::vector<double> fallback) {
  return c.alphas.empty() ? fallback : c.alphas;
}

std::vector<ModulusPoint> points_or(const RunConfig& c, std::vector<ModulusPoint> fallback) {
  if (c.grid) return c.grid->points();
  if (c.delta) return {ModulusPoint(*c.delta)};
  return fallback;
}

std::string where(const std::string& seed, double alpha) { return seed + " at alpha=" + num(alpha); }

// ---------------------------------------------------------------- suites

const char* kSRelation = "F(1/delta) = delta^k F(delta)";

void plan_thm1(const RunConfig& c, Plan& plan) {
  std::vector<ModulusPoint> pts = points_or(
      c, {{0.6, -0.3}, {0.6, 0.25}, {0.8, -0.3}, {0.8, 0.25}, {1.0, -0.3},
          {1.0, 0.25}, {1.25, -0.3}, {1.25, 0.25}, {1.6, -0.3}, {1.6, 0.25}});
  double tol = c.tol;
  for (const auto& name : seeds_or(c, {"theta3", "eta24", "eta-inverse"})) {
    HoloSeed seed = load_holo_seed(name);
    for (double a : alphas_or(c, {0.05, 0.2, 1.0})) {
      deform::Window w;
      try {
        w = deform::admissible_domain(seed, a);
      } catch (const DomainError&) {
        plan.notes.push_back(where(name, a) + ": admissible window is empty, excluded");
        continue;
      }
      std::vector<ModulusPoint> inside;
      for (const auto& d : pts) {
        if (w.contains(d.d1) && w.contains(d.s_image().d1))
          inside.push_back(d);
        else
          plan.notes.push_back(where(name, a) + ": delta=(" + num(d.d1) + "," + num(d.d2) +
                               ") outside the admissible window, excluded");
      }
      for (const auto& d : inside) {
        Json in = {{"seed", name}, {"alpha", a}, {"delta", pt(d)}};
        plan.tasks.push_back(guarded("s-covariance", kSRelation, in, [=] {
          return std::vector<CheckRecord>{
              record("s-covariance", kSRelation, in, deform::s_residual(seed, a, d, tol), 1e-9)};
        }));
      }
    }
  }
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void plan_thm1_limit(const RunConfig& c, Plan& plan) {
  std::vector<double> alphas = alphas_or(c, {1e-2, 1e-3, 1e-4});
  if (alphas.size() < 2) throw ConfigError("thm1-limit needs at least two alpha values");
  ModulusPoint d = c.delta ? ModulusPoint(*c.delta) : ModulusPoint(1.1, 0.1);
  double tol = c.tol;
  const char* rel = "log-log slope of |F_raw^alpha - 2^{1-k} F^0| against alpha equals 1";
  for (const auto& name : seeds_or(c, {"theta3", "eta24", "eta-inverse"})) {
    HoloSeed seed = load_holo_seed(name);
    Json in = {{"seed", name}, {"alpha", alphas}, {"delta", pt(d)}};
    plan.tasks.push_back(guarded("alpha-limit", rel, in, [=] {
      Complex limit = std::pow(2.0, 1.0 - seed.weight) * spectra::eval_seed(seed, d, tol).value;
      std::vector<double> lx, ly;
      Json diffs = Json::array();
      for (double a : alphas) {
        Complex v = deform::deform_eval(seed, {a, Normalization::raw}, d, tol).value;
        double diff = std::abs(v - limit) / std::abs(limit);
        diffs.push_back(diff);
        lx.push_back(std::log(a));
        ly.push_back(std::log(diff));
      }
      double slope = fit_slope(lx, ly);
      CheckRecord r = record("alpha-limit", rel, in, std::abs(slope - 1.0), 0.1);
      r.details = {{"slope", slope}, {"relative-differences", diffs}};
      return std::vector<CheckRecord>{r};
    }));
  }
}

void plan_kernel_oracle(const RunConfig& c, Plan& plan) {
  std::vector<double> ds;
  if (c.grid) {
    for (const auto& p : c.grid->points())
      if (p.d2 == 0.0) ds.push_back(p.d1);
  } else if (c.delta) {
    ds.push_back(c.delta->real());
  } else {
    ds = {0.8, 0.9, 1.0, 1.2, 1.5};
  }
  deform::KernelQuad quad;
  quad.gh_order = c.quad_order;
  double tol = c.tol;
  for (const auto& name : seeds_or(c, {"eta24"})) {
    HoloSeed seed = load_holo_seed(name);
    for (double a : alphas_or(c, {0.2})) {
      const char* crel = "kernel constant fixed on the one-term seed equals 2^{1-k}";
      Json cin = {{"weight", seed.weight}, {"alpha", a}};
      const char* rel = "series equals the calibrated kernel integral";
      Json in = {{"seed", name}, {"alpha", a}, {"delta", ds}};
      plan.tasks.push_back(guarded("kernel-oracle", rel, in, [=] {
        std::vector<CheckRecord> out;
        double C = deform::calibrate_kernel(a, seed.weight, quad);
        double expect = std::pow(2.0, 1.0 - seed.weight);
        CheckRecord cr = record("kernel-constant", crel, cin, std::abs(C / expect - 1.0), 1e-6);
        cr.details = {{"constant", C}, {"expected", expect}};
        out.push_back(cr);
        for (double d : ds) {
          Json pin = {{"seed", name}, {"alpha", a}, {"delta", d}};
          try {
            Complex series = deform::deform_eval(seed, {a, Normalization::raw}, ModulusPoint(d), tol).value;
            Complex oracle = deform::kernel_oracle(seed, a, d, quad, C).value;
            CheckRecord r = record("kernel-oracle", rel, pin, std::abs(series - oracle) / std::abs(series), 1e-6);
            r.details = {{"series", cx(series)}, {"oracle", cx(oracle)}};
            out.push_back(r);
          } catch (const std::exception& e) {
            out.push_back(failed_record("kernel-oracle", rel, pin, e.what()));
          }
        }
        return out;
      }));
    }
  }
}

mellin::MultiplierRoute route_of(const RunConfig& c) {
  return mellin::multiplier_route_from_string(c.route == "auto" ? "automatic" : c.route);
}

void plan_thm1a(const RunConfig& c, Plan& plan) {
  struct ProductCase {
    std::string seed;
    double alpha;
    std::vector<Complex> s;
  };
  std::vector<ProductCase> cases;
  if (!c.seeds.empty() || c.s || !c.alphas.empty()) {
    for (const auto& name : seeds_or(c, {"theta3", "eta24"})) {
      HoloSeed seed = load_holo_seed(name);
      std::vector<Complex> s = c.s ? std::vector<Complex>{*c.s} : std::vector<Complex>{seed.weight + 1.0};
      for (double a : alphas_or(c, {0.2})) cases.push_back({name, a, s});
    }
  } else {
    cases = {{"theta3", 0.1, {1.2, {0.8, 2.0}, {2.0, -1.0}}}, {"eta24", 0.2, {13.0, {14.0, 2.0}, {12.5, -1.0}}}};
  }
  const char* prel = "R^alpha(s) = I^alpha(k,s) R^0(s)";
  for (const auto& pc : cases) {
    HoloSeed seed = load_holo_seed(pc.seed);
    for (Complex s : pc.s) {
      Json in = {{"seed", pc.seed}, {"alpha", pc.alpha}, {"s", cx(s)}};
      double a = pc.alpha;
      plan.tasks.push_back(guarded("product-identity", prel, in, [=] {
        mellin::ProductCheck p = mellin::product_identity(seed, a, s);
        CheckRecord r = record("product-identity", prel, in, p.residual, 1e-5);
        r.details = {{"R0", cx(p.R0)}, {"Ralpha", cx(p.Ralpha)}, {"I", cx(p.I)}};
        return std::vector<CheckRecord>{r};
      }));
    }
  }
  if (!c.seeds.empty() || c.s || !c.alphas.empty()) return;

  struct Triple {
    double k;
    Complex s;
    double alpha;
  };
  const char* rrel = "I^alpha(k,s) = I^alpha(k,k-s)";
  for (Triple t : {Triple{0.5, {0.25, 3.0}, 0.3}, Triple{0.5, 1.2, 0.1}, Triple{12.0, 13.0, 0.2},
                   Triple{12.0, {7.5, -2.0}, 0.5}, Triple{4.0, {1.0, 0.5}, 1.0}, Triple{2.0, {3.0, 2.0}, 0.05}}) {
    Json in = {{"k", t.k}, {"s", cx(t.s)}, {"alpha", t.alpha}};
    auto route = route_of(c);
    plan.tasks.push_back(guarded("multiplier-reflection", rrel, in, [=] {
      mellin::MultiplierValue u = mellin::I_alpha(t.k, t.s, t.alpha, route);
      mellin::MultiplierValue v = mellin::I_alpha(t.k, t.k - t.s, t.alpha, route);
      CheckRecord r = record("multiplier-reflection", rrel, in, std::abs(u.I - v.I) / std::abs(u.I), 1e-8);
      r.details = {{"I(s)", cx(u.I)}, {"I(k-s)", cx(v.I)}, {"route(s)", mellin::to_string(u.route)},
                   {"route(k-s)", mellin::to_string(v.route)}};
      return std::vector<CheckRecord>{r};
    }));
  }
  const char* qrel = "closed form 2^{1-k} alpha^{-s} U(s, 2s-k+1, 1/alpha) equals the double integral";
  for (Triple t : {Triple{0.5, 1.2, 0.2}, Triple{0.5, {0.25, 3.0}, 0.3}, Triple{4.0, {1.0, 0.5}, 1.0},
                   Triple{0.5, {1.3, 2.0}, 0.5}, Triple{2.0, 0.7, 0.25}, Triple{12.0, {7.5, -2.0}, 0.5}}) {
    Json in = {{"k", t.k}, {"s", cx(t.s)}, {"alpha", t.alpha}};
    plan.tasks.push_back(guarded("multiplier-routes", qrel, in, [=] {
      Complex q = mellin::I_alpha(t.k, t.s, t.alpha, mellin::MultiplierRoute::quadrature).I;
      Complex f = mellin::I_alpha(t.k, t.s, t.alpha, mellin::MultiplierRoute::closedform).I;
      CheckRecord r = record("multiplier-routes", qrel, in, std::abs(q - f) / std::abs(q), 1e-7);
      r.details = {{"quadrature", cx(q)}, {"closedform", cx(f)}};
      return std::vector<CheckRecord>{r};
    }));
  }
}

void plan_zero(const RunConfig& c, Plan& plan) {
  const char* rel = "a zero of R^0 on the critical line is a zero of R^alpha";
  for (const auto& name : seeds_or(c, {"theta3"})) {
    HoloSeed seed = load_holo_seed(name);
    std::vector<double> alphas = alphas_or(c, {0.1});
    Json in = {{"seed", name}, {"alpha", alphas}, {"t-bracket", Json::array({7.0, 7.15})}};
    plan.tasks.push_back(guarded("zero-inheritance", rel, in, [=] {
      Complex s0 = mellin::critical_zero(seed, 7.0, 7.15);
      std::vector<CheckRecord> out;
      for (double a : alphas) {
        Json pin = {{"seed", name}, {"alpha", a}, {"s0", cx(s0)}};
        Complex at = mellin::deformed_mellin(seed, a, s0).R;
        Complex off = mellin::deformed_mellin(seed, a, s0 + 0.2).R;
        CheckRecord r = record("zero-inheritance", rel, pin, std::abs(at) / std::abs(off), 1e-3);
        r.details = {{"R-alpha(s0)", cx(at)}, {"R-alpha(s0+0.2)", cx(off)}};
        out.push_back(r);
      }
      return out;
    }));
  }
}

const std::vector<ModulusPoint>& torus_points() {
  static const std::vector<ModulusPoint> pts = {{1.0, 0.3},  {0.9, 0.2}, {1.4, -0.45}, {0.75, 0.1},
                                                {1.1, 0.0},  {0.6, 0.35}, {1.8, 0.25}, {0.85, -0.4}};
  return pts;
}

RealVariant variant_for(const RealSeed& seed) {
  return seed.weight == 0.0 ? RealVariant::invariant : RealVariant::weighted;
}

/// Points with delta, 1/delta and delta + i inside the window.
std::vector<ModulusPoint> torus_admissible(const RealSeed& seed, double a, const std::vector<ModulusPoint>& pts,
                                           const std::string& name, Plan& plan) {
  std::vector<ModulusPoint> inside;
  deform::Window w;
  try {
    w = deform::admissible_domain(seed, a);
  } catch (const DomainError&) {
    plan.notes.push_back(where(name, a) + ": admissible window is empty, excluded");
    return inside;
  }
  for (const auto& d : pts) {
    if (w.contains(d.d1) && w.contains(d.s_image().d1))
      inside.push_back(d);
    else
      plan.notes.push_back(where(name, a) + ": delta=(" + num(d.d1) + "," + num(d.d2) +
                           ") outside the admissible window, excluded");
  }
  return inside;
}

void plan_torus(const RunConfig& c, Plan& plan) {
  std::vector<ModulusPoint> pts = points_or(c, torus_points());
  double tol = std::max(c.tol, 1e-14);
  for (const auto& name : seeds_or(c, {"ising-Z", "eta-modulus-2"})) {
    RealSeed seed = load_real_seed(name);
    RealVariant v = variant_for(seed);
    for (double a : alphas_or(c, {0.02, 0.05})) {
      for (const auto& d : torus_admissible(seed, a, pts, name, plan)) {
        Json in = {{"seed", name}, {"alpha", a}, {"delta", pt(d)}, {"variant", deform::to_string(v)}};
        plan.tasks.push_back(guarded("torus-invariance", "S and T invariance of the deformed real series", in, [=] {
          deform::StResiduals r = deform::st_residuals(seed, a, d, v, tol);
          return std::vector<CheckRecord>{
              record("s-covariance", "F(1/delta) = |delta|^k F(delta)", in, r.s, 1e-8),
              record("t-invariance", "F(delta + i) = F(delta)", in, r.t, 1e-8)};
        }));
      }
    }
  }
}

void plan_dgh(const RunConfig& c, Plan& plan) {
  std::vector<ModulusPoint> pts = points_or(c, torus_points());
  deform::DghQuad quad{8.0, 1e-8};
  double tol = std::max(c.tol, 1e-14);
  std::vector<double> alphas = alphas_or(c, {0.02, 0.05});
  const char* nrel = "the kernel integrates the constant function to 1";
  for (double a : alphas) {
    Json in = {{"alpha", a}, {"delta", pt(ModulusPoint(1.0))}};
    plan.tasks.push_back(guarded("kernel-normalization", nrel, in, [=] {
      double n = deform::dgh_normalization(a, ModulusPoint(1.0), quad);
      CheckRecord r = record("kernel-normalization", nrel, in, std::abs(n - 1.0), 1e-6);
      r.details = {{"integral", n}};
      return std::vector<CheckRecord>{r};
    }));
  }
  const char* rel = "deformed series equals the heat-kernel integral of the seed";
  for (const auto& name : seeds_or(c, {"ising-Z"})) {
    RealSeed seed = load_real_seed(name);
    if (seed.weight != 0.0) {
      plan.notes.push_back(name + ": the kernel integral applies to weight-0 seeds only, excluded");
      continue;
    }
    PlaneFunction F = deform::real_seed_function(seed);
    for (double a : alphas) {
      for (const auto& d : torus_admissible(seed, a, pts, name, plan)) {
        Json in = {{"seed", name}, {"alpha", a}, {"delta", pt(d)}};
        plan.tasks.push_back(guarded("dgh-oracle", rel, in, [=] {
          Complex series = deform::deform_eval_real(seed, a, d, RealVariant::invariant, Normalization::unit, tol).value;
          deform::DghResult o = deform::dgh_kernel_oracle(F, a, d, quad);
          CheckRecord r = record("dgh-oracle", rel, in, std::abs(series - o.value) / std::abs(series), 1e-4);
          r.details = {{"series", cx(series)}, {"oracle", cx(o.value)}, {"quadrature-error", o.error}};
          return std::vector<CheckRecord>{r};
        }));
      }
    }
  }
}

double real_s(const RunConfig& c, double fallback) {
  if (!c.s) return fallback;
  if (c.s->imag() != 0.0 || !(c.s->real() > 1.0)) throw ConfigError("this suite needs real s > 1");
  return c.s->real();
}

void plan_heat_flow(const RunConfig& c, Plan& plan) {
  double s = real_s(c, 2.0);
  ModulusPoint d = c.delta ? ModulusPoint(*c.delta) : ModulusPoint(1.1, 0.2);
  std::vector<double> alphas = alphas_or(c, {0.02, 0.01});
  for (double a : alphas)
    if (a > 0.05) throw ConfigError("heat-flow needs alpha <= 0.05");
  const char* crel = "the kernel flow fixes the constant function";
  Json cin = {{"alpha", alphas.front()}, {"delta", pt(d)}};
  plan.tasks.push_back(guarded("heat-flow-constant", crel, cin, [=] {
    PlaneFunction one = [](const ModulusPoint&) { return Complex(1.0); };
    deform::HeatFlowCheck h = deform::heat_flow_residual(one, alphas.front(), d);
    return std::vector<CheckRecord>{record("heat-flow-constant", crel, cin, h.residual, 1e-8)};
  }));
  const char* rel = "E_s^alpha = (1 - s(1-s) alpha/4) E_s + O(alpha^2)";
  Json in = {{"s", s}, {"alpha", alphas}, {"delta", pt(d)}};
  plan.tasks.push_back(guarded("heat-flow", rel, in, [=] {
    PlaneFunction E = [s](const ModulusPoint& p) { return maass::eisenstein_real_fourier(s, p).value; };
    std::vector<CheckRecord> out;
    std::vector<double> res;
    for (double a : alphas) {
      Json pin = {{"s", s}, {"alpha", a}, {"delta", pt(d)}};
      deform::HeatFlowCheck h = deform::heat_flow_residual(E, a, d);
      double scale = std::max(std::abs(E(d)), std::abs(h.laplacian));
      double rel_res = h.residual / scale;
      res.push_back(rel_res);
      CheckRecord r = record("heat-flow", rel, pin, rel_res, 5.0 * a);
      r.details = {{"rate", h.rate}, {"expected-rate", 0.25}, {"laplacian", cx(h.laplacian)},
                   {"difference-quotient", cx(h.difference_quotient)}};
      out.push_back(r);
    }
    for (std::size_t i = 1; i < alphas.size(); ++i) {
      const char* lrel = "first-order residual shrinks in proportion to alpha";
      Json lin = {{"s", s}, {"alpha", Json::array({alphas[i - 1], alphas[i]})}, {"delta", pt(d)}};
      double ratio = res[i] / res[i - 1];
      double expect = alphas[i] / alphas[i - 1];
      CheckRecord r = record("heat-flow-linear", lrel, lin, std::abs(ratio / expect - 1.0), 0.3);
      r.details = {{"ratio", ratio}, {"expected-ratio", expect}};
      out.push_back(r);
    }
    return out;
  }));
}

void plan_maass_flow(const RunConfig& c, Plan& plan) {
  std::vector<double> ss = c.s ? std::vector<double>{real_s(c, 2.0)} : std::vector<double>{2.0, 3.0};
  std::vector<ModulusPoint> pts = points_or(c, {{1.1, 0.2}, {0.9, -0.35}});
  const char* erel = "Delta E_s = s(1-s) E_s";
  const char* frel = "lattice sum equals the Fourier expansion";
  for (double s : ss) {
    for (const auto& d : pts) {
      Json in = {{"s", s}, {"delta", pt(d)}, {"M", 60}};
      plan.tasks.push_back(guarded("eigenvalue", erel, in, [=] {
        PlaneFunction E = [s](const ModulusPoint& p) { return maass::eisenstein_real(s, p, {60}).value; };
        Complex e = E(d);
        Complex lap = maass::laplacian_fd(E, d, 1e-3);
        CheckRecord r = record("eigenvalue", erel, in, std::abs(lap - s * (1 - s) * e) / std::abs(e), 1e-5);
        r.details = {{"value", cx(e)}, {"laplacian", cx(lap)}};
        Complex f = maass::eisenstein_real_fourier(s, d).value;
        CheckRecord x = record("lattice-fourier", frel, in, std::abs(e - f) / std::abs(f), 1e-7);
        x.details = {{"lattice", cx(e)}, {"fourier", cx(f)}};
        return std::vector<CheckRecord>{r, x};
      }));
    }
  }
  const char* grel = "flow factors compose additively in alpha";
  Complex sc(0.5, 3.0);
  Json gin = {{"s", cx(sc)}, {"alpha", Json::array({0.1, 0.25})}};
  plan.tasks.push_back(guarded("flow-semigroup", grel, gin, [=] {
    Complex f = maass::flow_factor(sc, 0.1).factor * maass::flow_factor(sc, 0.25).factor;
    Complex g = maass::flow_factor(sc, 0.35).factor;
    const char* crel = "the flow contracts on the critical line";
    CheckRecord r = record("flow-semigroup", grel, gin, std::abs(f - g) / std::abs(g), 1e-14);
    CheckRecord k = record("flow-contraction", crel, gin, std::abs(g), 1.0);
    k.details = {{"factor", cx(g)}};
    return std::vector<CheckRecord>{r, k};
  }));
}

void plan_theta(const RunConfig& c, Plan& plan) {
  std::vector<ModulusPoint> pts = points_or(c, {{0.7}, {1.0}, {2.0}});
  HoloSeed seed = load_holo_seed("theta3");
  double tol = c.tol;
  for (double a : alphas_or(c, {0.1})) {
    for (const auto& d : pts) {
      Json in = {{"alpha", a}, {"delta", pt(d)}};
      plan.tasks.push_back(guarded("theta-inversion", "theta3^alpha(1/delta) = delta^{1/2} theta3^alpha(delta)", in, [=] {
        return std::vector<CheckRecord>{
            record("theta-inversion", "theta3^alpha(1/delta) = delta^{1/2} theta3^alpha(delta)", in,
                   deform::s_residual(seed, a, d, tol), 1e-11),
            record("jacobi-at-origin", "Jacobi inversion at z = 0", in,
                   deform::jacobi_inversion_residual(0.0, a, d), 1e-11)};
      }));
    }
  }
}

void plan_jacobi(const RunConfig& c, Plan& plan) {
  struct Case {
    Complex z;
    double alpha;
    ModulusPoint d;
  };
  std::vector<Case> cases;
  if (c.delta || !c.alphas.empty() || c.s) {
    Complex z = c.s ? *c.s : Complex(0.2);
    ModulusPoint d = c.delta ? ModulusPoint(*c.delta) : ModulusPoint(1.1);
    for (double a : alphas_or(c, {0.1})) cases.push_back({z, a, d});
  } else {
    cases = {{0.2, 0.1, {1.1}}, {0.2, 0.1, {0.8, 0.3}}, {{0.1, 0.05}, 0.2, {0.9, 0.2}}};
  }
  const char* rel = "theta^alpha(z; delta) = delta^{-1/2} shifted^alpha(iz; 1/delta)";
  for (const auto& k : cases) {
    Json in = {{"z", cx(k.z)}, {"alpha", k.alpha}, {"delta", pt(k.d)}};
    plan.tasks.push_back(guarded("jacobi-inversion", rel, in, [=] {
      return std::vector<CheckRecord>{
          record("jacobi-inversion", rel, in, deform::jacobi_inversion_residual(k.z, k.alpha, k.d), 1e-10)};
    }));
  }
}

void plan_partition(const RunConfig& c, Plan& plan) {
  std::vector<double> ds;
  for (const auto& p : points_or(c, {{1.0}, {0.6}, {1.9}})) ds.push_back(p.d1);
  const char* rel = "sum P(n) (1+S_n)^{3/2}/S_n e^{-S_n/2alpha} at delta equals delta^{1/2} times its value at 1/delta";
  for (double a : alphas_or(c, {0.1})) {
    Json win = {{"seed", "eta-inverse"}, {"alpha", a}};
    plan.tasks.push_back(guarded("partition-window", "window (8 pi alpha/24, 24/(8 pi alpha))", win, [=] {
      deform::Window w = deform::admissible_domain(load_holo_seed("eta-inverse"), a);
      double lo = kPi * a / 3.0, hi = 3.0 / (kPi * a);
      CheckRecord r = record("partition-window", "window (8 pi alpha/24, 24/(8 pi alpha))", win,
                             std::max(std::abs(w.lo / lo - 1.0), std::abs(w.hi / hi - 1.0)), 1e-12);
      r.details = {{"lo", w.lo}, {"hi", w.hi}};
      return std::vector<CheckRecord>{r};
    }));
    for (double d : ds) {
      Json in = {{"alpha", a}, {"delta", d}};
      plan.tasks.push_back(guarded("partition-sum", rel, in, [=] {
        deform::PartitionSides p = deform::partition_sum_sides(a, d);
        CheckRecord r = record("partition-sum", rel, in, p.relative_residual(), 1e-8);
        r.details = {{"lhs", p.lhs}, {"rhs", p.rhs}};
        return std::vector<CheckRecord>{r};
      }));
    }
  }
}

void plan_hagedorn(const RunConfig& c, Plan& plan) {
  const char* rel = "|F^alpha| grows like (delta_c - delta)^{-1/2} at the window edge";
  for (const auto& name : seeds_or(c, {"eta-inverse"})) {
    HoloSeed seed = load_holo_seed(name);
    for (double a : alphas_or(c, {0.1})) {
      Json in = {{"seed", name}, {"alpha", a}};
      plan.tasks.push_back(guarded("hagedorn-exponent", rel, in, [=] {
        deform::HagedornFit fit = deform::hagedorn_scan(seed, a);
        double Delta = seed.delta();
        double dc = 1.0 / (8.0 * kPi * std::abs(Delta) * a);
        CheckRecord r = record("hagedorn-exponent", rel, in, std::abs(fit.exponent + 0.5), 0.05);
        r.details = {{"exponent", fit.exponent}, {"delta-c", fit.delta_c}, {"expected-delta-c", dc},
                     {"fit-rms", fit.residual_rms}, {"points", fit.points}};
        return std::vector<CheckRecord>{r};
      }));
    }
  }
}

void plan_eisenstein_holo(const RunConfig& c, Plan& plan) {
  ModulusPoint d = c.delta ? ModulusPoint(*c.delta) : ModulusPoint(1.2);
  int gh = std::min(c.quad_order, 128);
  for (double a : alphas_or(c, {0.1})) {
    Json in = {{"k", 4}, {"alpha", a}, {"delta", pt(d)}, {"M", 40}};
    plan.tasks.push_back(guarded("eisenstein-symmetry", "S covariance without T invariance", in, [=] {
      maass::SymmetryResiduals r = maass::holo_eisenstein_residuals(4, a, d, {40}, gh);
      return std::vector<CheckRecord>{
          record("eisenstein-s", "E(1/delta) = i^k delta^k E(delta)", in, r.s, 1e-6),
          record("eisenstein-t-broken", "E(delta + i) differs from E(delta)", in, r.t, 1e-3, Comparison::above)};
    }));
    Json ain = {{"k", 4}, {"alpha", a}, {"delta", pt(d)}};
    const char* arel = "lattice points with mn = 0 keep (m + i n delta)^{-k}";
    plan.tasks.push_back(guarded("axis-terms", arel, ain, [=] {
      int mismatches = 0;
      const Complex I(0.0, 1.0);
      for (int m = -6; m <= 6; ++m) {
        for (int n = -6; n <= 6; ++n) {
          if ((m != 0 && n != 0) || (m == 0 && n == 0)) continue;
          Complex got = maass::deformed_lattice_term(4, a, m, n, d, gh);
          Complex plain = maass::deformed_lattice_term(4, 0.0, m, n, d, gh);
          Complex exact = 1.0 / std::pow(Complex(m) + I * double(n) * d.value(), 4);
          if (got != plain || std::abs(got - exact) > 1e-15 * std::abs(exact)) ++mismatches;
        }
      }
      CheckRecord r = record("axis-terms", arel, ain, mismatches, 0.5);
      r.details = {{"mismatches", mismatches}};
      return std::vector<CheckRecord>{r};
    }));
  }
}

using Planner = void (*)(const RunConfig&, Plan&);

struct SuiteEntry {
  const char* name;
  Planner plan;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> r = {
      {"thm1", plan_thm1},
      {"thm1-limit", plan_thm1_limit},
      {"kernel-oracle", plan_kernel_oracle},
      {"thm1a", plan_thm1a},
      {"zero-inheritance", plan_zero},
      {"torus-invariance", plan_torus},
      {"dgh-oracle", plan_dgh},
      {"heat-flow", plan_heat_flow},
      {"maass-flow", plan_maass_flow},
      {"theta", plan_theta},
      {"jacobi", plan_jacobi},
      {"partition", plan_partition},
      {"hagedorn", plan_hagedorn},
      {"eisenstein-holo", plan_eisenstein_holo},
  };
  return r;
}

std::string canonical(const std::string& name) { return name == "s-invariance" ? "thm1" : name; }

/// Evaluates fn(0..n-1) on up to `threads` workers; results come back in index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int threads, numkit::PrecisionMode precision, Fn fn) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    numkit::PrecisionScope scope(precision);
    for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
  if (workers <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------- scans

struct ScanPoint {
  double alpha;
  double d1, d2;
};

std::string fmt_or_empty(double x, bool present) { return present ? num(x) : std::string(); }

std::string scan_rows(const RunConfig& c, const std::string& name, const std::vector<ScanPoint>& pts) {
  spectra::Seed seed = load_seed(name);
  double tol = c.tol;
  auto row = [&](std::size_t i) -> std::string {
    const ScanPoint& p = pts[i];
    std::string head = num(p.d1) + "," + num(p.d2) + "," + num(p.alpha) + ",";
    try {
      ModulusPoint d(p.d1, p.d2);
      deform::Window w;
      bool empty = false;
      try {
        w = std::visit([&](const auto& s) { return deform::admissible_domain(s, p.alpha); }, seed);
      } catch (const DomainError&) {
        empty = true;
      }
      if (empty || !w.contains(d.d1)) return head + ",,,,domain-violation";
      bool has_residual = w.contains(d.s_image().d1);
      EvalResult v;
      double residual = 0.0;
      const auto* h = std::get_if<HoloSeed>(&seed);
      const RealSeed* r = std::get_if<RealSeed>(&seed);
      if (h)
        v = deform::deform_eval(*h, {p.alpha, Normalization::unit}, d, tol);
      else
        v = deform::deform_eval_real(*r, p.alpha, d, variant_for(*r), Normalization::unit, std::max(tol, 1e-14));
      // near the lower window edge the image series may not converge within budget
      try {
        if (has_residual && h) residual = deform::s_residual(*h, p.alpha, d, tol);
        if (has_residual && r) residual = deform::st_residuals(*r, p.alpha, d, variant_for(*r), std::max(tol, 1e-14)).s;
      } catch (const ConvergenceError&) {
        has_residual = false;
      }
      return head + num(v.value.real()) + "," + num(v.value.imag()) + "," + fmt_or_empty(residual, has_residual) +
             "," + num(v.tail) + ",ok";
    } catch (const DomainError&) {
      return head + ",,,,domain-violation";
    } catch (const std::exception&) {
      return head + ",,,,error";
    }
  };
  std::vector<std::string> rows = parallel_map<std::string>(pts.size(), c.threads, c.precision, row);
  std::string out = "delta1,delta2,alpha,value_re,value_im,residual,tail,status\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : registry()) n.emplace_back(e.name);
    n.emplace_back("all");
    return n;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return name == "s-invariance" || std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<CheckRecord> run_tasks(const std::vector<CheckTask>& tasks, int threads, numkit::PrecisionMode precision) {
  auto results = parallel_map<std::vector<CheckRecord>>(tasks.size(), threads, precision, [&](std::size_t i) {
    try {
      return tasks[i]();
    } catch (const std::exception& e) {
      return std::vector<CheckRecord>{failed_record("task-" + std::to_string(i), "check task", Json::object(), e.what())};
    }
  });
  std::vector<CheckRecord> merged;
  for (auto& r : results)
    for (auto& rec : r) merged.push_back(std::move(rec));
  return merged;
}

VerificationReport run_suite(const RunConfig& config) {
  config.validate();
  auto start = std::chrono::steady_clock::now();
  std::string suite = canonical(config.suite);
  Plan plan;
  for (const auto& e : registry()) {
    if (suite != "all" && suite != e.name) continue;
    e.plan(config, plan);
  }
  VerificationReport report;
  report.suite = config.suite;
  report.precision = numkit::to_string(config.precision);
  report.backend = simd::to_string(simd::active_backend());
  report.version = library_version();
  report.records = run_tasks(plan.tasks, config.threads, config.precision);
  report.notes = std::move(plan.notes);
  if (config.wall_time)
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string scan_csv(const RunConfig& config) {
  config.validate();
  std::string name = config.seeds.empty() ? "theta3" : config.seeds.front();
  std::vector<ModulusPoint> grid = points_or(config, {ModulusPoint(1.0)});
  std::vector<ScanPoint> pts;
  for (double a : alphas_or(config, {0.1}))
    for (const auto& d : grid) pts.push_back({a, d.d1, d.d2});
  return scan_rows(config, name, pts);
}

std::string hagedorn_csv(const RunConfig& config) {
  config.validate();
  std::string name = config.seeds.empty() ? "eta-inverse" : config.seeds.front();
  HoloSeed seed = load_holo_seed(name);
  if (!(seed.delta() < 0.0)) throw ConfigError("hagedorn scan needs a seed with a negative leading exponent");
  std::vector<ScanPoint> pts;
  for (double a : alphas_or(config, {0.1})) {
    double dc = 1.0 / (8.0 * kPi * std::abs(seed.delta()) * a);
    for (int i = 0; i <= 12; ++i) {
      double r = std::pow(10.0, -1.0 - 0.5 * i);
      pts.push_back({a, dc * (1.0 - r), 0.0});
    }
    for (double r : {1e-3, 1e-2, 1e-1}) pts.push_back({a, dc * (1.0 + r), 0.0});
  }
  return scan_rows(config, name, pts);
}

}  // namespace ttbar::verify
