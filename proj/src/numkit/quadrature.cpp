#include "ttbar/numkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include <Eigen/Eigenvalues>

namespace ttbar::numkit {

namespace {

constexpr double kPi = std::numbers::pi;

// Kronrod 15-point abscissae (positive half) and weights; Gauss 7-point
// weights for the embedded rule at odd indices.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const ComplexIntegrand& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  Complex fc = f(c);
  Complex kron = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    Complex f1 = f(c - dx), f2 = f(c + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
  double err = std::abs(kron - gauss);
  // QUADPACK-style sharpening of the raw difference.
  double scale = std::pow(200.0 * err / std::max(std::abs(kron), 1e-300), 1.5);
  double est = std::abs(kron) > 0 ? std::min(err, std::abs(kron) * scale) : err;
  est = std::max(est, 2.0 * std::numeric_limits<double>::epsilon() * std::abs(kron));
  if (!is_finite(kron)) est = std::numeric_limits<double>::infinity();
  return {a, b, kron, est};
}

double target(const AdaptiveOptions& o, Complex value) {
  return std::max(o.abs_tol, o.rel_tol * std::abs(value));
}

}  // namespace

void QuadratureSpec::validate() const {
  if (order < 1) throw ConfigError("quadrature order must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("quadrature tolerance must be > 0");
  if (domain.kind == DomainKind::interval && !(domain.b > domain.a))
    throw ConfigError("quadrature interval must satisfy a < b");
}

GaussRule gauss_hermite(int order) {
  if (order < 1 || order > 200)
    throw DomainError("Gauss-Hermite order must lie in [1, 200]");
  const int n = order;
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = std::sqrt(kPi);
    return rule;
  }
  // Golub-Welsch eigenvalues as starting points, then Newton polishing on the
  // normalized recurrence, which also yields accurate small weights.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int j = 1; j < n; ++j) sub[j - 1] = std::sqrt(0.5 * j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const double pim4 = std::pow(kPi, -0.25);
  for (int i = 0; i < n; ++i) {
    double z = eig.eigenvalues()[i];
    double pp = 0.0;
    for (int it = 0; it < 8; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.weights[i] = 2.0 / (pp * pp);
  }
  // Enforce exact symmetry.
  for (int i = 0; i < n / 2; ++i) {
    double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussRule gauss_legendre(int order) {
  if (order < 1 || order > 400)
    throw DomainError("Gauss-Legendre order must lie in [1, 400]");
  const int n = order;
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  if (n % 2 == 1) rule.nodes[m - 1] = 0.0;
  return rule;
}

QuadResult adaptive_quad(const ComplexIntegrand& f, double a, double b,
                         const AdaptiveOptions& opts) {
  if (!(b > a)) {
    if (a == b) return {};
    QuadResult r = adaptive_quad(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  heap.push(first);
  Complex total = first.value;
  double err = first.error;
  int evals = 15;
  int intervals = 1;
  double abs_total = std::abs(first.value);
  const double eps = std::numeric_limits<double>::epsilon();
  while (err > target(opts, total) && err > 8.0 * eps * abs_total) {
    if (intervals >= opts.max_intervals || !std::isfinite(err)) {
      throw ConvergenceError("adaptive quadrature did not reach tolerance", total, err);
    }
    Segment s = heap.top();
    heap.pop();
    double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {
      throw ConvergenceError("adaptive quadrature interval underflow", total, err);
    }
    Segment l = gk15(f, s.a, mid), r = gk15(f, mid, s.b);
    evals += 30;
    ++intervals;
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    abs_total += std::abs(l.value) + std::abs(r.value) - std::abs(s.value);
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to remove drift from incremental updates.
  Complex sum = 0.0;
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  return {sum, esum, evals};
}

QuadResult adaptive_quad(const ComplexIntegrand& f, const QuadDomain& domain,
                         const AdaptiveOptions& opts) {
  switch (domain.kind) {
    case DomainKind::interval:
      return adaptive_quad(f, domain.a, domain.b, opts);
    case DomainKind::real_line: {
      auto g = [&f](double x) { return f(x) + f(-x); };
      return adaptive_quad(g, QuadDomain::half_line(0.0), opts);
    }
    case DomainKind::half_line:
      break;
  }
  const double a = domain.a;
  auto g = [&f, a](double u) {
    double e = std::exp(u);
    return f(a + std::expm1(u)) * e;
  };
  AdaptiveOptions panel = opts;
  panel.abs_tol = opts.abs_tol / 16.0;
  QuadResult total;
  int quiet = 0;
  for (int k = 0; k < 700; ++k) {
    double u0 = k, u1 = k + 1.0;
    panel.abs_tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value)) / 16.0;
    panel.rel_tol = 0.0;
    QuadResult p = adaptive_quad(g, u0, u1, panel);
    total.value += p.value;
    total.error += p.error;
    total.evaluations += p.evaluations;
    double negligible =
        1e-3 * std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value));
    if (k >= 2 && std::abs(p.value) + p.error < negligible && std::abs(g(u1)) < negligible)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= 2) return total;
  }
  throw ConvergenceError("half-line quadrature: integrand does not decay", total.value,
                         total.error);
}

QuadResult tanh_sinh(const ComplexIntegrand& f, double a, double b, double tol,
                     int max_level) {
  if (!(b > a)) throw DomainError("tanh-sinh requires a < b");
  const double half = 0.5 * (b - a);
  const double tmax = 3.5;
  auto node = [&](double t, Complex& out) {
    double u = 0.5 * kPi * std::sinh(t);
    double cu = std::cosh(u);
    double w = 0.5 * kPi * std::cosh(t) / (cu * cu);
    // Distance to the nearer endpoint without cancellation.
    double d = (b - a) / (1.0 + std::exp(2.0 * std::abs(u)));
    if (d <= 0.0 || w * half == 0.0) {
      out = 0.0;
      return;
    }
    double x = t < 0 ? a + d : b - d;
    out = f(x) * (w * half);
  };
  double h = 1.0;
  Complex sum;
  node(0.0, sum);
  int evals = 1;
  for (double t = h; t <= tmax; t += h) {
    Complex l, r;
    node(t, r);
    node(-t, l);
    sum += l + r;
    evals += 2;
  }
  Complex prev = sum * h;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= tmax; t += 2.0 * h) {
      Complex l, r;
      node(t, r);
      node(-t, l);
      sum += l + r;
      evals += 2;
    }
    Complex cur = sum * h;
    err = std::abs(cur - prev);
    prev = cur;
    if (level >= 3 && err <= tol * std::max(1.0, std::abs(cur))) return {cur, err, evals};
  }
  throw ConvergenceError("tanh-sinh did not converge", prev, err);
}

Complex apply_rule(const GaussRule& rule, const ComplexIntegrand& f) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

QuadResult integrate(const ComplexIntegrand& f, const QuadratureSpec& spec) {
  spec.validate();
  switch (spec.rule) {
    case QuadRule::gauss_hermite: {
      Complex full = apply_rule(gauss_hermite(spec.order), f);
      Complex coarse = spec.order > 1 ? apply_rule(gauss_hermite(std::max(1, spec.order / 2)), f)
                                      : full;
      return {full, std::abs(full - coarse), spec.order + spec.order / 2};
    }
    case QuadRule::tanh_sinh:
      if (spec.domain.kind != DomainKind::interval)
        throw ConfigError("tanh-sinh requires a finite interval");
      return tanh_sinh(f, spec.domain.a, spec.domain.b, spec.tol);
    case QuadRule::adaptive_interval:
      break;
  }
  AdaptiveOptions o;
  o.abs_tol = spec.tol;
  return adaptive_quad(f, spec.domain, o);
}

QuadRule quad_rule_from_string(const std::string& name) {
  if (name == "gauss-hermite") return QuadRule::gauss_hermite;
  if (name == "adaptive" || name == "adaptive-interval") return QuadRule::adaptive_interval;
  if (name == "tanh-sinh") return QuadRule::tanh_sinh;
  throw ConfigError("unknown quadrature rule '" + name + "'");
}

}  // namespace ttbar::numkit
