#include "datxy/quench.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "datxy/blocks.hpp"
#include "datxy/entanglement.hpp"
#include "datxy/uniform.hpp"

namespace datxy {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Kernels kernels_raw(double g, double l1, double t, double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  const double L1 = lambda_of(g, l1, phi);
  const double L0 = lambda_of(g, 0.0, phi);
  const double cc = std::cos(2.0 * L0 * t);
  const double g2s2 = g * g * s * s;
  const double base = g2s2 + (c + l1) * c;
  const double den = kPi * L1 * L0 * L0;
  Kernels k;
  const double first = g * s * s / den * (base - l1 * c * cc);
  const double second = c / den * (base * c + l1 * g2s2 * cc);
  k.K_minus = -first - second;
  k.K_plus = first - second;
  k.S = g * l1 / kPi * s * s * std::sin(2.0 * t * L0) / (L1 * L0);
  k.M = -(cc * l1 * g2s2 + c * base) / den;
  return k;
}

CorrelatorSet uniform_set(double cxx, double cyy, double cxy, double cyx, double mz) {
  CorrelatorSet cs;
  cs.cxx = cxx;
  cs.cyy = cyy;
  cs.cxy = cxy;
  cs.cyx = cyx;
  cs.mz_e = cs.mz_o = mz;
  cs.fill_wick();
  return cs;
}

// Pre-quench state and observables of one momentum sector, in the eigenbasis
// of the post-quench block.
template <int n>
struct Rotated {
  Eigen::Matrix<double, n, 1> E;
  Eigen::Matrix<cd, n, n> rho;
  std::array<Eigen::Matrix<cd, n, n>, kNumObs> ops;
};

template <int n>
Rotated<n> rotate(const Eigen::Matrix<cd, n, n>& Hpost, const Eigen::Matrix<cd, n, n>& rho0,
                  const std::array<BlockList, kNumObs>& ops,
                  Eigen::Matrix<cd, n, n> BlockList::*member) {
  Rotated<n> r;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cd, n, n>> es(Hpost);
  const auto& V = es.eigenvectors();
  r.E = es.eigenvalues();
  r.rho = V.adjoint() * rho0 * V;
  for (std::size_t k = 0; k < kNumObs; ++k) r.ops[k] = V.adjoint() * (ops[k].*member) * V;
  return r;
}

template <int n>
void accumulate(const Rotated<n>& r, double t, double w, ObsValues& out) {
  Eigen::Matrix<cd, n, 1> u;
  for (int i = 0; i < n; ++i) u(i) = std::exp(-kI * (r.E(i) * t));
  const Eigen::Matrix<cd, n, n> rt = r.rho.cwiseProduct(u * u.adjoint());
  for (std::size_t k = 0; k < kNumObs; ++k)
    out[k] += w * (rt.transpose().cwiseProduct(r.ops[k])).sum().real();
}

struct Node {
  double weight = 0.0;
  ObsValues static_part{};  // block 1 (post-quench block is null: no dynamics)
  Rotated<4> b2, b3;
  Rotated<6> b4;
};

double ln_or_zero(const CorrelatorSet& cs) { return log_negativity(assemble_rdm(cs)); }

}  // namespace

void QuenchSpec::validate() const {
  initial.validate();
  if (t_grid.empty()) throw DomainError("quench time grid is empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("quench time grid must be ascending");
  if (!(avg_window.first <= avg_window.second))
    throw DomainError("averaging window must satisfy start <= end");
}

std::vector<double> linear_grid(double a, double b, int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return g;
}

std::vector<double> log_grid(double a, double b, int n) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("log grid needs positive bounds");
  auto g = linear_grid(std::log(a), std::log(b), n);
  for (double& x : g) x = std::exp(x);
  g.front() = a;
  g.back() = b;
  return g;
}

std::vector<double> default_time_grid() { return linear_grid(0.0, 100.0 * kPi, 2001); }

std::vector<double> window_grid(std::pair<double, double> window, int n) {
  return linear_grid(window.first, window.second, n);
}

Kernels kernels(const ModelParams& p, double t, double phi) {
  p.validate();
  if (!p.uniform_field()) throw DomainError("quench kernels need lambda2 = 0");
  if (lambda_of(p.gamma, p.lambda1, phi) < 1e-12) {
    // Removable point at phi in {0, pi}: average the two one-sided limits.
    const double h = 1e-7;
    const Kernels a = kernels_raw(p.gamma, p.lambda1, t, phi - h);
    const Kernels b = kernels_raw(p.gamma, p.lambda1, t, phi + h);
    return {0.5 * (a.K_minus + b.K_minus), 0.5 * (a.K_plus + b.K_plus), 0.5 * (a.S + b.S),
            0.5 * (a.M + b.M)};
  }
  return kernels_raw(p.gamma, p.lambda1, t, phi);
}

TimeTrace evolve_uniform(const QuenchSpec& spec, const QuadratureSpec& q) {
  spec.validate();
  const ModelParams& p = spec.initial;
  if (!p.uniform_field()) throw DomainError("evolve_uniform needs lambda2 = 0");
  if (!p.zero_temperature()) throw DomainError("evolve_uniform needs a zero-temperature start");
  const RootPair rp = root_pair(p);
  std::vector<double> brk;
  if (p.gamma * p.gamma < 1.0) {
    const double cstar = -p.lambda1 / (1.0 - p.gamma * p.gamma);
    if (cstar > -1.0 && cstar < 1.0) brk.push_back(std::acos(cstar));
  }
  TimeTrace tr;
  tr.t = spec.t_grid;
  for (double t : spec.t_grid) {
    auto f = [&p, t](double phi) {
      const Kernels k = kernels(p, t, phi);
      return std::array<double, 4>{k.K_minus, k.K_plus, k.S, k.M};
    };
    CorrelatorSet cs;
    if (!rp.real_solutions) {
      const auto r = integrate_components<4>(f, 0.0, kPi, q, brk);
      cs = uniform_set(r.value[0], r.value[1], r.value[2], r.value[2], r.value[3]);
      cs.quad_error = r.error;
    } else {
      const auto r1 = integrate_components<4>(f, 0.0, rp.phi1, q, brk);
      const auto r2 = integrate_components<4>(f, rp.phi2, kPi, q, brk);
      const double off = (std::cos(rp.phi2) - std::cos(rp.phi1)) / kPi;
      const double s = r1.value[2] + r2.value[2];
      cs = uniform_set(r1.value[0] + r2.value[0], r1.value[1] + r2.value[1], s + off, s - off,
                       r1.value[3] + r2.value[3]);
      cs.quad_error = r1.error + r2.error;
    }
    tr.values.push_back(cs);
    tr.ln.push_back(ln_or_zero(cs));
  }
  return tr;
}

TimeTrace evolve_alt(const QuenchSpec& spec, const EvolveOptions& opt) {
  spec.validate();
  const ModelParams& p = spec.initial;
  ModelParams post = p;
  post.lambda1 = post.lambda2 = 0.0;

  std::vector<double> cuts{0.0};
  if (p.zero_temperature())
    for (double x : ground_block_crossings(p)) cuts.push_back(x);
  cuts.push_back(0.5 * kPi);
  const double tmax = std::max(std::abs(spec.t_grid.front()), std::abs(spec.t_grid.back()));
  const double rate = 2.0 * tmax * (1.0 + p.d + std::abs(p.gamma)) * p.J;
  const FixedRule rule =
      composite_gauss_legendre(cuts, opt.panel_scale * rate / (0.5 * kPi), opt.min_panels,
                               opt.order);

  std::vector<Node> nodes(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double phi = rule.nodes[i];
    const BlockState st = equilibrium_block_state(p, phi);
    const auto ops = observable_blocks(phi);
    const BlockList Hp = hamiltonian_blocks(post, phi);
    Node& nd = nodes[i];
    nd.weight = rule.weights[i] / kPi;
    for (std::size_t k = 0; k < kNumObs; ++k)
      nd.static_part[k] = (st.rho.b1.transpose().cwiseProduct(ops[k].b1)).sum().real();
    nd.b2 = rotate<4>(Hp.b2, st.rho.b2, ops, &BlockList::b2);
    nd.b3 = rotate<4>(Hp.b3, st.rho.b3, ops, &BlockList::b3);
    nd.b4 = rotate<6>(Hp.b4, st.rho.b4, ops, &BlockList::b4);
  }

  TimeTrace tr;
  tr.t = spec.t_grid;
  for (double t : spec.t_grid) {
    const double tt = t / p.J;
    ObsValues acc{};
    for (const Node& nd : nodes) {
      for (std::size_t k = 0; k < kNumObs; ++k) acc[k] += nd.weight * nd.static_part[k];
      accumulate<4>(nd.b2, tt, nd.weight, acc);
      accumulate<4>(nd.b3, tt, nd.weight, acc);
      accumulate<6>(nd.b4, tt, nd.weight, acc);
    }
    CorrelatorSet cs;
    cs.cxx = acc[0];
    cs.cyy = acc[1];
    cs.cxy = acc[2];
    cs.cyx = acc[3];
    cs.mz_e = acc[4];
    cs.mz_o = acc[5];
    cs.branch = "blocks";
    cs.fill_wick();
    tr.values.push_back(cs);
    tr.ln.push_back(ln_or_zero(cs));
  }
  return tr;
}

double time_averaged_ln(const TimeTrace& trace, std::pair<double, double> window) {
  if (trace.ln.size() != trace.t.size()) throw DomainError("trace carries no LN values");
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < trace.t.size(); ++i)
    if (trace.t[i] >= window.first && trace.t[i] <= window.second) {
      ts.push_back(trace.t[i]);
      ys.push_back(trace.ln[i]);
    }
  if (ts.empty()) throw EmptyWindow("no trace samples inside the averaging window");
  if (ts.size() == 1) return ys[0];
  double area = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i) area += 0.5 * (ys[i] + ys[i - 1]) * (ts[i] - ts[i - 1]);
  return area / (ts.back() - ts.front());
}

ErgodicityVerdict ergodicity_verdict(const ModelParams& p, const std::vector<double>& betaJ_grid,
                                     std::pair<double, double> window, const QuadratureSpec& q) {
  if (betaJ_grid.empty()) throw DomainError("T' grid is empty");
  ErgodicityVerdict v;
  v.lhs = -kInf;
  const ModelParams zero_field = p.with_fields(0.0, 0.0);
  for (double b : betaJ_grid) {
    const double ln = equilibrium_ln(zero_field.with_beta(b), q);
    if (ln > v.lhs) {
      v.lhs = ln;
      v.argmax_betaJ = b;
    }
  }
  QuenchSpec spec;
  spec.initial = p;
  spec.t_grid = window_grid(window);
  spec.avg_window = window;
  v.rhs = time_averaged_ln(evolve_alt(spec), window);
  v.ergodic = v.lhs >= v.rhs - 1e-9;
  return v;
}

}  // namespace datxy
