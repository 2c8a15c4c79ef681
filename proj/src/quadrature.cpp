#include "datxy/quadrature.hpp"

namespace datxy {

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, std::span<const double> breakpoints) {
  auto vf = [&f](double x) { return std::array<double, 1>{f(x)}; };
  return integrate_components<1>(vf, a, b, spec, breakpoints).value[0];
}

FixedRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be >= 1");
  FixedRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // refresh derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

FixedRule composite_gauss_legendre(std::span<const double> cuts, double panels_per_unit,
                                   int min_panels, int order) {
  if (cuts.size() < 2) throw DomainError("composite rule needs at least two cut points");
  if (min_panels < 1) throw DomainError("min_panels must be >= 1");
  const FixedRule base = gauss_legendre(order);
  FixedRule out;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    if (!(b > a)) continue;
    const int panels =
        std::max(min_panels, static_cast<int>(std::ceil(panels_per_unit * (b - a))));
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
      const double lo = a + k * h;
      for (int i = 0; i < order; ++i) {
        out.nodes.push_back(lo + 0.5 * h * (base.nodes[i] + 1.0));
        out.weights.push_back(0.5 * h * base.weights[i]);
      }
    }
  }
  return out;
}

}  // namespace datxy
