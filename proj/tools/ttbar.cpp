#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ttbar/deform/holo.hpp"
#include "ttbar/deform/real.hpp"
#include "ttbar/maass/maass.hpp"
#include "ttbar/mellin/mellin.hpp"
#include "ttbar/verify/seeds.hpp"
#include "ttbar/verify/suites.hpp"

namespace {

using namespace ttbar;
using verify::Json;
using verify::RunConfig;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

/// Raw flag values; a flag overrides the config file only when it was given.
struct Flags {
  std::string config;
  std::vector<std::string> seed;
  std::vector<double> alpha;
  double beta = 0.0;
  std::string delta;
  std::string s;
  std::string grid;
  double tol = 0.0;
  int quad_order = 0;
  std::string precision;
  std::string out;
  std::string format;
  std::string route;
  int threads = 0;
  bool wall_time = false;
};

struct Bound {
  Flags f;
  std::vector<CLI::Option*> opts;
  CLI::Option* find(const std::string& name) const {
    for (auto* o : opts)
      if (o->check_lname(name.substr(2))) return o;
    return nullptr;
  }
  bool given(const std::string& name) const {
    auto* o = find(name);
    return o && o->count() > 0;
  }
};

void add_common(CLI::App* app, Bound& b) {
  Flags& f = b.f;
  b.opts = {
      app->add_option("--config", f.config, "flat JSON config file; flags override its fields"),
      app->add_option("--seed", f.seed, "seed name(s)")->delimiter(','),
      app->add_option("--alpha", f.alpha, "deformation parameter(s)")->delimiter(','),
      app->add_option("--beta", f.beta, "fixed beta = 2 pi alpha delta for Dirichlet series"),
      app->add_option("--delta", f.delta, "modulus point, e.g. 1.1+0.2i"),
      app->add_option("--s", f.s, "Mellin variable or Eisenstein parameter"),
      app->add_option("--grid", f.grid, "delta grid lo:hi:n[,lo:hi:n]"),
      app->add_option("--tol", f.tol, "series truncation tolerance"),
      app->add_option("--quad-order", f.quad_order, "Gauss-Hermite order"),
      app->add_option("--precision", f.precision, "binary64 or double-double"),
      app->add_option("--out", f.out, "output file (default stdout)"),
      app->add_option("--format", f.format, "json or csv"),
      app->add_option("--route", f.route, "multiplier route: auto, quadrature or closedform"),
      app->add_option("--threads", f.threads, "worker threads"),
      app->add_flag("--wall-time", f.wall_time, "record wall time in the report"),
  };
}

RunConfig make_config(const Bound& b) {
  const Flags& f = b.f;
  RunConfig c = f.config.empty() ? RunConfig{} : RunConfig::from_file(f.config);
  if (b.given("--seed")) c.seeds = f.seed;
  if (b.given("--alpha")) c.alphas = f.alpha;
  if (b.given("--beta")) c.beta = f.beta;
  if (b.given("--delta")) c.delta = verify::parse_complex(f.delta);
  if (b.given("--s")) c.s = verify::parse_complex(f.s);
  if (b.given("--grid")) c.grid = verify::GridSpec::parse(f.grid);
  if (b.given("--tol")) c.tol = f.tol;
  if (b.given("--quad-order")) c.quad_order = f.quad_order;
  if (b.given("--precision")) c.precision = numkit::precision_from_string(f.precision);
  if (b.given("--out")) c.out = f.out;
  if (b.given("--format")) c.format = f.format;
  if (b.given("--route")) c.route = f.route;
  if (b.given("--threads")) c.threads = f.threads;
  if (b.given("--wall-time")) c.wall_time = f.wall_time;
  return c;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + c.out + "'");
  out << text;
}

Json cx(Complex z) { return Json::array({z.real(), z.imag()}); }

spectra::ModulusPoint point_of(const RunConfig& c) {
  return c.delta ? spectra::ModulusPoint(*c.delta) : spectra::ModulusPoint(1.0);
}

std::string one_seed(const RunConfig& c, const char* fallback) {
  if (c.seeds.size() > 1) throw ConfigError("this command takes a single seed");
  return c.seeds.empty() ? fallback : c.seeds.front();
}

double one_alpha(const RunConfig& c, double fallback) {
  if (c.alphas.size() > 1) throw ConfigError("this command takes a single alpha");
  return c.alphas.empty() ? fallback : c.alphas.front();
}

std::string result_json(Json j) { return j.dump(2) + "\n"; }

int eval_holo(const RunConfig& c, const std::string& normalization) {
  std::string name = one_seed(c, "theta3");
  double a = one_alpha(c, 0.0);
  spectra::HoloSeed seed = verify::load_holo_seed(name);
  auto d = point_of(c);
  deform::DeformParams p{a, deform::normalization_from_string(normalization)};
  auto r = deform::deform_eval(seed, p, d, c.tol);
  Json j = {{"seed", name},          {"alpha", a},          {"delta", cx(d.value())},
            {"normalization", normalization}, {"value", cx(r.value)}, {"tail", r.tail},
            {"terms", r.terms_used}};
  emit(c, result_json(j));
  return kExitPass;
}

int eval_real(const RunConfig& c, const std::string& variant, const std::string& normalization) {
  std::string name = one_seed(c, "ising-Z");
  double a = one_alpha(c, 0.0);
  spectra::RealSeed seed = verify::load_real_seed(name);
  auto d = point_of(c);
  deform::RealVariant v = variant.empty()
                              ? (seed.weight == 0.0 ? deform::RealVariant::invariant : deform::RealVariant::weighted)
                              : deform::real_variant_from_string(variant);
  auto r = deform::deform_eval_real(seed, a, d, v, deform::normalization_from_string(normalization),
                                    std::max(c.tol, 1e-14));
  Json j = {{"seed", name},         {"alpha", a},        {"delta", cx(d.value())},
            {"variant", deform::to_string(v)}, {"value", cx(r.value)}, {"tail", r.tail},
            {"terms", r.terms_used}};
  emit(c, result_json(j));
  return kExitPass;
}

int eval_eisenstein(const RunConfig& c, bool real, bool holo_deformed, int k, int M) {
  if (real == holo_deformed) throw ConfigError("eval eisenstein needs exactly one of --real and --holo-deformed");
  auto d = point_of(c);
  maass::LatticeCutoff cut{M};
  Json j;
  if (real) {
    Complex s = c.s ? *c.s : Complex(2.0);
    auto r = maass::eisenstein_real(s, d, cut);
    j = {{"series", "real"}, {"s", cx(s)}, {"delta", cx(d.value())}, {"M", M},
         {"value", cx(r.value)}, {"tail", r.tail}};
  } else {
    double a = one_alpha(c, 0.0);
    int gh = std::min(c.quad_order, 128);
    auto r = maass::eisenstein_holo_deformed(k, a, d, cut, gh);
    auto res = maass::holo_eisenstein_residuals(k, a, d, cut, gh);
    j = {{"series", "holo-deformed"}, {"k", k}, {"alpha", a}, {"delta", cx(d.value())}, {"M", M},
         {"value", cx(r.value)}, {"tail", r.tail}, {"s-residual", res.s}, {"t-residual", res.t}};
  }
  emit(c, result_json(j));
  return kExitPass;
}

int run_mellin(const RunConfig& c) {
  if (!c.s) throw ConfigError("mellin needs --s");
  if (c.beta && !c.alphas.empty()) throw ConfigError("mellin takes --alpha or --beta, not both");
  std::string name = one_seed(c, "theta3");
  spectra::HoloSeed seed = verify::load_holo_seed(name);
  Complex s = *c.s;
  Json j = {{"seed", name}, {"s", cx(s)}};
  if (c.beta) {
    j["beta"] = *c.beta;
    auto v = mellin::dirichlet_beta(seed, *c.beta, s);
    j["R"] = cx(mellin::completed_beta(seed, *c.beta, s));
    j["dirichlet"] = cx(v.value);
    j["error"] = v.error;
    j["terms"] = v.terms;
  } else if (!c.alphas.empty()) {
    double a = one_alpha(c, 0.0);
    auto route = mellin::multiplier_route_from_string(c.route == "auto" ? "automatic" : c.route);
    mellin::MultiplierOptions opts;
    opts.gh_order = c.quad_order;
    auto I = mellin::I_alpha(seed.weight, s, a, route, opts);
    auto p = mellin::product_identity(seed, a, s);
    j["alpha"] = a;
    j["R"] = cx(p.Ralpha);
    j["R0"] = cx(p.R0);
    j["I"] = cx(I.I);
    j["route"] = mellin::to_string(I.route);
    j["product-residual"] = p.residual;
  } else {
    auto v = seed.delta() >= 0.0 ? mellin::mellin_fold(seed, s) : mellin::mellin_seed(seed, s);
    j["R"] = cx(v.R);
    j["error"] = v.error;
  }
  emit(c, result_json(j));
  return kExitPass;
}

std::string records_csv(const verify::VerificationReport& r) {
  std::string out = "identity,residual,threshold,comparison,passed,error\n";
  char buf[64];
  for (const auto& rec : r.records) {
    out += rec.identity + ",";
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", rec.residual, rec.threshold);
    out += buf;
    out += rec.comparison == verify::Comparison::below ? "<," : ">,";
    out += rec.passed ? "true," : "false,";
    std::string e = rec.error;
    for (char& ch : e)
      if (ch == ',' || ch == '\n') ch = ' ';
    out += e + "\n";
  }
  return out;
}

int run_verify(RunConfig c, const std::string& suite) {
  if (!suite.empty()) c.suite = suite;
  c.validate();
  verify::VerificationReport r = verify::run_suite(c);
  emit(c, c.format == "csv" ? records_csv(r) : r.dump());
  std::fprintf(stderr, "%s: %zu checks, %zu failed\n", r.suite.c_str(), r.records.size(), r.failures());
  return r.passed() ? kExitPass : kExitFail;
}

int run_scan(RunConfig c, const std::string& kind) {
  if (c.format == "json") c.format = "csv";
  c.validate();
  if (kind == "grid")
    emit(c, verify::scan_csv(c));
  else if (kind == "hagedorn")
    emit(c, verify::hagedorn_csv(c));
  else
    throw ConfigError("scan kind must be grid or hagedorn");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed modular forms: evaluation, scans and identity checks"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "evaluate a deformed series at one point");
  eval->require_subcommand(1);

  Bound bh, br, be, bv, bm, bs;
  std::string holo_norm = "unit";
  auto* holo = eval->add_subcommand("holo", "deformed holomorphic series");
  add_common(holo, bh);
  holo->add_option("--normalization", holo_norm, "unit or raw");

  std::string real_variant, real_norm = "unit";
  auto* real = eval->add_subcommand("real", "deformed real-analytic series");
  add_common(real, br);
  real->add_option("--variant", real_variant, "weighted or invariant (default from the seed weight)");
  real->add_option("--normalization", real_norm, "unit or raw");

  bool e_real = false, e_holo = false;
  int e_k = 4, e_M = 40;
  auto* eis = eval->add_subcommand("eisenstein", "Eisenstein series");
  add_common(eis, be);
  eis->add_flag("--real", e_real, "real-analytic E_s (parameter --s)");
  eis->add_flag("--holo-deformed", e_holo, "deformed holomorphic E_k (--k, --alpha)");
  eis->add_option("--k", e_k, "weight of the holomorphic series");
  eis->add_option("--M", e_M, "lattice box half-width");

  std::string suite;
  auto* ver = app.add_subcommand("verify", "run a named verification suite");
  add_common(ver, bv);
  ver->add_option("suite", suite, "suite name (see --list)");
  bool list = false;
  ver->add_flag("--list", list, "print the suite names");

  auto* mel = app.add_subcommand("mellin", "Mellin transform, multiplier and product identity");
  add_common(mel, bm);

  std::string scan_kind = "grid";
  auto* scan = app.add_subcommand("scan", "CSV table over a delta grid");
  add_common(scan, bs);
  scan->add_option("kind", scan_kind, "grid (default) or hagedorn");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (holo->parsed()) {
      RunConfig c = make_config(bh);
      c.validate();
      numkit::PrecisionScope scope(c.precision);
      return eval_holo(c, holo_norm);
    }
    if (real->parsed()) {
      RunConfig c = make_config(br);
      c.validate();
      numkit::PrecisionScope scope(c.precision);
      return eval_real(c, real_variant, real_norm);
    }
    if (eis->parsed()) {
      RunConfig c = make_config(be);
      c.validate();
      numkit::PrecisionScope scope(c.precision);
      return eval_eisenstein(c, e_real, e_holo, e_k, e_M);
    }
    if (ver->parsed()) {
      if (list) {
        for (const auto& n : verify::suite_names()) std::printf("%s\n", n.c_str());
        return kExitPass;
      }
      return run_verify(make_config(bv), suite);
    }
    if (mel->parsed()) {
      RunConfig c = make_config(bm);
      c.validate();
      numkit::PrecisionScope scope(c.precision);
      return run_mellin(c);
    }
    if (scan->parsed()) return run_scan(make_config(bs), scan_kind);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return kExitConfig;
}
