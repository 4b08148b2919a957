#include "ttbar/deform/real.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ttbar/numkit/quadrature.hpp"
#include "ttbar/simd/kernels.hpp"

namespace ttbar::deform {

namespace {

constexpr double kPi = std::numbers::pi;

void require_variant(const RealSeed& seed, RealVariant v) {
  if (v == RealVariant::invariant && seed.weight != 0.0)
    throw DomainError("invariant deformation needs a weight-0 seed; '" + seed.name + "' has weight " +
                      std::to_string(seed.weight));
}

}  // namespace

RealVariant real_variant_from_string(const std::string& name) {
  if (name == "weighted") return RealVariant::weighted;
  if (name == "invariant") return RealVariant::invariant;
  throw ConfigError("unknown real deformation variant '" + name + "'");
}

const char* to_string(RealVariant v) { return v == RealVariant::weighted ? "weighted" : "invariant"; }

RealTermDeformation real_term_deformation(double lambda, int p, double k, double alpha, double delta1,
                                          RealVariant v) {
  if (alpha < 0.0) throw DomainError("alpha must be >= 0");
  if (!(delta1 > 0.0)) throw DomainError("delta1 must be > 0");
  RealTermDeformation r;
  const double u = 4.0 * kPi * alpha * delta1;
  if (alpha == 0.0) {
    r.exponent = -2.0 * kPi * lambda * delta1;
    return r;
  }
  double w = 2.0 * u * lambda + (u * p) * (u * p);
  if (!(1.0 + w > 0.0)) throw BranchCutError("deformed real term leaves the admissible region", 1.0 + w);
  r.S = std::sqrt(1.0 + w);
  r.exponent = -w / (2.0 * alpha * (1.0 + r.S));
  if (v == RealVariant::weighted) r.prefactor = std::pow(0.5 * (1.0 + r.S + u * lambda), 1.0 - 0.5 * k) / r.S;
  return r;
}

Window admissible_domain(const RealSeed& seed, double alpha) { return admissible_domain(seed.delta(), alpha); }

EvalResult deform_eval_real(const RealSeed& seed, double alpha, const ModulusPoint& delta, RealVariant v,
                            Normalization n, double tol) {
  require_variant(seed, v);
  if (alpha < 0.0) throw DomainError("alpha must be >= 0");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be > 0");
  Window w = admissible_domain(seed, alpha);
  if (!w.contains(delta.d1))
    throw DomainError("delta1 = " + std::to_string(delta.d1) + " outside the admissible window (" +
                      std::to_string(w.lo) + ", " + std::to_string(w.hi) + ") of seed '" + seed.name + "'");
  const std::int32_t P = seed.max_spin();
  std::vector<double> cr(2 * P + 1), ci(2 * P + 1);
  for (std::int32_t p = -P; p <= P; ++p) {
    cr[p + P] = std::cos(2.0 * kPi * p * delta.d2);
    ci[p + P] = std::sin(2.0 * kPi * p * delta.d2);
  }
  std::vector<double> are(seed.size()), aim(seed.size());
  for (std::size_t j = 0; j < seed.size(); ++j) {
    are[j] = seed.a[j].real();
    aim[j] = seed.a[j].imag();
  }
  // every S^2 must stay positive, including high-spin terms below the window edge
  for (std::size_t j = 0; j < seed.size(); ++j) real_term_deformation(seed.lambda[j], seed.spin[j], seed.weight, alpha, delta.d1, v);
  simd::SpectrumView view{seed.lambda.data(), seed.spin.data(), are.data(), aim.data(), seed.size()};
  simd::DeformSumArgs args;
  args.alpha = alpha;
  args.delta1 = delta.d1;
  args.prefactor = v == RealVariant::weighted && alpha > 0.0;
  args.weight_exp = 1.0 - 0.5 * seed.weight;
  args.lambda_coeff = 1.0;
  args.cis_re = cr.data();
  args.cis_im = ci.data();
  args.spin_offset = P;
  Complex value = simd::deformed_sum(view, args);
  double tail = spectra::real_tail_estimate(seed, [&](std::size_t j) {
    RealTermDeformation t = real_term_deformation(seed.lambda[j], seed.spin[j], seed.weight, alpha, delta.d1, v);
    return std::abs(seed.a[j]) * t.prefactor * std::exp(t.exponent);
  });
  if (tail > tol * std::abs(value))
    throw ConvergenceError("deformed seed '" + seed.name + "': tolerance not reached at the stored order", value,
                           tail);
  if (n == Normalization::raw && v == RealVariant::weighted) {
    double c = std::pow(2.0, 1.0 - seed.weight);
    value *= c;
    tail *= c;
  }
  return {value, tail, static_cast<long long>(seed.size())};
}

StResiduals st_residuals(const RealSeed& seed, double alpha, const ModulusPoint& delta, RealVariant v, double tol) {
  Complex f = deform_eval_real(seed, alpha, delta, v, Normalization::unit, tol).value;
  Complex fs = deform_eval_real(seed, alpha, delta.s_image(), v, Normalization::unit, tol).value;
  Complex ft = deform_eval_real(seed, alpha, delta.t_image(), v, Normalization::unit, tol).value;
  double scale = std::abs(f);
  double mod = std::pow(std::norm(delta.value()), 0.5 * seed.weight);
  return {std::abs(fs - mod * f) / scale, std::abs(ft - f) / scale};
}

PlaneFunction real_seed_function(const RealSeed& seed, double tol) {
  return [seed, tol](const ModulusPoint& d) {
    maass::Reduction r = maass::reduce_to_fundamental(d, seed.weight);
    return r.factor * spectra::eval_seed(seed, r.point, tol).value;
  };
}

double dgh_exponent(const ModulusPoint& d, const ModulusPoint& dp, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("kernel needs alpha > 0");
  return std::norm(d.value() - dp.value()) / (4.0 * alpha * d.d1 * dp.d1);
}

DghResult dgh_kernel_oracle(const PlaneFunction& F, double alpha, const ModulusPoint& delta, const DghQuad& quad) {
  if (!(alpha > 0.0)) throw DomainError("kernel needs alpha > 0");
  if (!(quad.width > 0.0 && quad.tol > 0.0)) throw ConfigError("invalid kernel quadrature settings");
  const double d1 = delta.d1, d2 = delta.d2, ra = std::sqrt(alpha);
  const double V = 2.0 * std::asinh(quad.width * std::sqrt(0.5 * alpha));
  const double T = quad.width / std::sqrt(2.0);
  long long evals = 0;
  numkit::AdaptiveOptions inner_opt;
  inner_opt.abs_tol = 1e-300;
  inner_opt.rel_tol = 0.1 * quad.tol;
  numkit::AdaptiveOptions outer_opt;
  outer_opt.abs_tol = 1e-300;
  outer_opt.rel_tol = quad.tol;
  auto point = [&](double v, double t) { return ModulusPoint(d1 * std::exp(v), d2 + 2.0 * d1 * ra * std::exp(0.5 * v) * t); };
  auto outer = [&](double v) -> Complex {
    double sh = std::sinh(0.5 * v);
    double g = std::exp(-sh * sh / alpha - 0.5 * v);
    auto inner = [&](double t) -> Complex { return std::exp(-t * t) * F(point(v, t)); };
    numkit::QuadResult r = numkit::adaptive_quad(inner, -T, T, inner_opt);
    evals += r.evaluations;
    return g * r.value;
  };
  numkit::QuadResult r = numkit::adaptive_quad(outer, -V, V, outer_opt);
  const double norm = 1.0 / (2.0 * kPi * ra);
  Complex value = norm * r.value;
  // Gaussian mass beyond the rectangle, weighted by F on its edges
  double edge = 0.0;
  for (auto [v, t] : {std::pair{-V, 0.0}, std::pair{V, 0.0}, std::pair{0.0, -T}, std::pair{0.0, T}})
    edge = std::max(edge, std::abs(F(point(v, t))));
  double mass = 2.0 * std::erfc(T) * edge;
  if (mass > quad.tol * std::max(std::abs(value), 1e-300))
    throw ConvergenceError("kernel rectangle too small: truncated Gaussian mass above tolerance", value, mass);
  return {value, norm * r.error + mass, evals};
}

double dgh_normalization(double alpha, const ModulusPoint& delta, const DghQuad& quad) {
  PlaneFunction one = [](const ModulusPoint&) { return Complex(1.0); };
  return dgh_kernel_oracle(one, alpha, delta, quad).value.real();
}

HeatFlowCheck heat_flow_residual(const PlaneFunction& F, double alpha, const ModulusPoint& delta, double h,
                                 const DghQuad& quad) {
  if (!(alpha > 0.0 && alpha <= 0.05)) throw ConfigError("heat-flow check needs 0 < alpha <= 0.05");
  HeatFlowCheck c;
  c.laplacian = maass::laplacian_fd(F, delta, h);
  Complex f0 = F(delta);
  Complex fa = dgh_kernel_oracle(F, alpha, delta, quad).value;
  c.difference_quotient = (fa - f0) / alpha;
  c.residual = std::abs(c.difference_quotient + 0.25 * c.laplacian);
  if (std::abs(c.laplacian) > 1e-9 * std::max(std::abs(f0), 1e-300))
    c.rate = (c.difference_quotient / (-c.laplacian)).real();
  else
    c.rate = std::numeric_limits<double>::quiet_NaN();
  return c;
}

}  // namespace ttbar::deform
