#include "datxy/blocks.hpp"

#include <algorithm>
#include <functional>

#include "datxy/uniform.hpp"

namespace datxy {

namespace {

constexpr cd I{0.0, 1.0};
constexpr double kDegTol = 1e-12;

template <int n>
Eigen::Matrix<cd, n, n> make(std::initializer_list<std::initializer_list<cd>> rows) {
  Eigen::Matrix<cd, n, n> m;
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

template <int n>
Eigen::Matrix<cd, n, n> diag(std::initializer_list<double> v) {
  Eigen::Matrix<cd, n, n> m = Eigen::Matrix<cd, n, n>::Zero();
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

template <int n>
struct Eig {
  Eigen::Matrix<double, n, 1> w;
  Eigen::Matrix<cd, n, n> v;
};

template <int n>
Eig<n> eig(const Eigen::Matrix<cd, n, n>& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cd, n, n>> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

// rho_block = sum_i weight(w_i) v_i v_i^dagger
template <int n, class W>
Eigen::Matrix<cd, n, n> weighted(const Eig<n>& e, W&& weight) {
  Eigen::Matrix<cd, n, n> r = Eigen::Matrix<cd, n, n>::Zero();
  for (int i = 0; i < n; ++i) {
    const double wt = weight(e.w(i));
    if (wt != 0.0) r.noalias() += wt * e.v.col(i) * e.v.col(i).adjoint();
  }
  return r;
}

template <int n>
double tr_re(const Eigen::Matrix<cd, n, n>& a, const Eigen::Matrix<cd, n, n>& b) {
  // Re Tr[a b] without forming the product
  return (a.transpose().cwiseProduct(b)).sum().real();
}

double min_abs_band(const ModelParams& p, double phi) {
  const auto b = bdg_bands(p, phi);
  double m = std::abs(b[0]);
  for (double x : b) m = std::min(m, std::abs(x));
  return m;
}

}  // namespace

Mat16 BlockList::direct_sum() const {
  Mat16 m = Mat16::Zero();
  m.block<2, 2>(0, 0) = b1;
  m.block<4, 4>(2, 2) = b2;
  m.block<4, 4>(6, 6) = b3;
  m.block<6, 6>(10, 10) = b4;
  return m;
}

BlockList hamiltonian_blocks(const ModelParams& p, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double l1 = p.lambda1, l2 = p.lambda2, ds = p.d * s;
  const cd gs = p.gamma * s;
  BlockList H;
  H.b2 = make<4>({{-l1 - l2, c + ds, -I * gs, 0.0},
                  {c + ds, -l1 + l2, 0.0, -I * gs},
                  {I * gs, 0.0, l1 - l2, -c + ds},
                  {0.0, I * gs, -c + ds, l1 + l2}});
  H.b3 = make<4>({{-l1 - l2, c - ds, -I * gs, 0.0},
                  {c - ds, -l1 + l2, 0.0, -I * gs},
                  {I * gs, 0.0, l1 - l2, -c - ds},
                  {0.0, I * gs, -c - ds, l1 + l2}});
  H.b4 = make<6>({{-2 * l1, I * gs, -I * gs, 0.0, 0.0, 0.0},
                  {-I * gs, 0.0, 0.0, c - ds, c + ds, -I * gs},
                  {I * gs, 0.0, 0.0, -c - ds, -c + ds, I * gs},
                  {0.0, c - ds, -c - ds, -2 * l2, 0.0, 0.0},
                  {0.0, c + ds, -c + ds, 0.0, 2 * l2, 0.0},
                  {0.0, I * gs, -I * gs, 0.0, 0.0, 2 * l1}});
  if (p.J != 1.0) {
    H.b2 *= p.J;
    H.b3 *= p.J;
    H.b4 *= p.J;
  }
  return H;
}

std::array<BlockList, kNumObs> observable_blocks(double phi) {
  const cd E = std::exp(I * phi), e = std::exp(-I * phi);
  std::array<BlockList, kNumObs> o;
  auto& xx = o[static_cast<int>(Obs::Cxx)];
  xx.b2 = make<4>({{0., E, -E, 0.}, {e, 0., 0., e}, {-e, 0., 0., -e}, {0., E, -E, 0.}});
  xx.b3 = make<4>({{0., e, e, 0.}, {E, 0., 0., -E}, {E, 0., 0., -E}, {0., -e, -e, 0.}});
  xx.b4 = make<6>({{0., -e, -E, 0., 0., 0.},
                   {-E, 0., 0., E, E, -E},
                   {-e, 0., 0., -e, -e, -e},
                   {0., e, -E, 0., 0., 0.},
                   {0., e, -E, 0., 0., 0.},
                   {0., -e, -E, 0., 0., 0.}});
  auto& yy = o[static_cast<int>(Obs::Cyy)];
  yy.b2 = make<4>({{0., E, E, 0.}, {e, 0., 0., -e}, {e, 0., 0., -e}, {0., -E, -E, 0.}});
  yy.b3 = make<4>({{0., e, -e, 0.}, {E, 0., 0., E}, {-E, 0., 0., -E}, {0., e, -e, 0.}});
  yy.b4 = make<6>({{0., e, E, 0., 0., 0.},
                   {E, 0., 0., E, E, E},
                   {e, 0., 0., -e, -e, e},
                   {0., e, -E, 0., 0., 0.},
                   {0., e, -E, 0., 0., 0.},
                   {0., e, E, 0., 0., 0.}});
  auto& xy = o[static_cast<int>(Obs::Cxy)];
  xy.b2 = -I * make<4>({{0., E, E, 0.}, {-e, 0., 0., -e}, {-e, 0., 0., -e}, {0., E, E, 0.}});
  xy.b3 = -I * make<4>({{0., e, -e, 0.}, {-E, 0., 0., E}, {E, 0., 0., -E}, {0., -e, e, 0.}});
  xy.b4 = -I * make<6>({{0., e, E, 0., 0., 0.},
                        {-E, 0., 0., -E, E, E},
                        {-e, 0., 0., e, -e, e},
                        {0., e, -E, 0., 0., 0.},
                        {0., -e, E, 0., 0., 0.},
                        {0., -e, -E, 0., 0., 0.}});
  auto& yx = o[static_cast<int>(Obs::Cyx)];
  yx.b2 = -I * make<4>({{0., -E, E, 0.}, {e, 0., 0., -e}, {-e, 0., 0., e}, {0., E, -E, 0.}});
  yx.b3 = -I * make<4>({{0., -e, -e, 0.}, {E, 0., 0., E}, {E, 0., 0., E}, {0., -e, -e, 0.}});
  yx.b4 = -I * make<6>({{0., e, E, 0., 0., 0.},
                        {-E, 0., 0., E, -E, E},
                        {-e, 0., 0., -e, e, e},
                        {0., -e, E, 0., 0., 0.},
                        {0., e, -E, 0., 0., 0.},
                        {0., -e, -E, 0., 0., 0.}});
  auto& me = o[static_cast<int>(Obs::MzE)];
  me.b2 = diag<4>({-2, 0, 0, 2});
  me.b3 = diag<4>({-2, 0, 0, 2});
  me.b4 = diag<6>({-2, 0, 0, -2, 2, 2});
  auto& mo = o[static_cast<int>(Obs::MzO)];
  mo.b2 = diag<4>({0, -2, 2, 0});
  mo.b3 = diag<4>({0, -2, 2, 0});
  mo.b4 = diag<6>({-2, 0, 0, 2, -2, 2});
  return o;
}

MomentumBlockSet build_blocks(const ModelParams& p, double phi) {
  p.validate();
  if (!(phi > 0.0 && phi <= 0.5 * kPi)) throw DomainError("phi must lie in (0, pi/2]");
  MomentumBlockSet m;
  m.phi = phi;
  m.H = hamiltonian_blocks(p, phi);
  m.ops = observable_blocks(phi);
  return m;
}

Mat4 bdg_matrix(const ModelParams& p, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double l1 = p.lambda1, l2 = p.lambda2, ds = p.d * s;
  const cd gs = p.gamma * s;
  Mat4 m = make<4>({{l1 - l2, c + ds, 0.0, -I * gs},
                    {c + ds, l1 + l2, -I * gs, 0.0},
                    {0.0, I * gs, -(l1 - l2), -(c - ds)},
                    {I * gs, 0.0, -(c - ds), -(l1 + l2)}});
  return p.J * m;
}

std::array<double, 4> bdg_bands(const ModelParams& p, double phi) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(bdg_matrix(p, phi), Eigen::EigenvaluesOnly);
  const auto& w = es.eigenvalues();
  return {w(0), w(1), w(2), w(3)};
}

GapResult min_gap_at(const ModelParams& p, int n_phi) {
  if (n_phi < 64) throw DomainError("min_gap needs n_phi >= 64");
  const double a = -0.5 * kPi, b = 0.5 * kPi;
  std::vector<double> xs(n_phi), fs(n_phi);
  for (int i = 0; i < n_phi; ++i) {
    xs[i] = a + (b - a) * i / (n_phi - 1);
    fs[i] = min_abs_band(p, xs[i]);
  }
  GapResult best{fs[0], xs[0]};
  // The symmetric points are where the closed-form boundaries live.
  for (double x : {0.0, a, b}) {
    const double f = min_abs_band(p, x);
    if (f < best.gap) best = {f, x};
  }
  // Polish every local grid minimum among the lowest few.
  std::vector<int> mins;
  for (int i = 0; i < n_phi; ++i) {
    const bool left = i == 0 || fs[i] <= fs[i - 1];
    const bool right = i == n_phi - 1 || fs[i] <= fs[i + 1];
    if (left && right) mins.push_back(i);
  }
  std::sort(mins.begin(), mins.end(), [&](int x, int y) { return fs[x] < fs[y]; });
  if (mins.size() > 4) mins.resize(4);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i : mins) {
    double lo = xs[std::max(i - 1, 0)], hi = xs[std::min(i + 1, n_phi - 1)];
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = min_abs_band(p, x1), f2 = min_abs_band(p, x2);
    while (hi - lo > 1e-12) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - r * (hi - lo);
        f1 = min_abs_band(p, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + r * (hi - lo);
        f2 = min_abs_band(p, x2);
      }
    }
    const double xm = 0.5 * (lo + hi);
    const double fm = min_abs_band(p, xm);
    if (fs[i] < best.gap) best = {fs[i], xs[i]};
    if (fm < best.gap) best = {fm, xm};
  }
  return best;
}

double min_gap(const ModelParams& p, int n_phi) { return min_gap_at(p, n_phi).gap; }

BlockState equilibrium_block_state(const ModelParams& p, double phi) {
  const BlockList H = hamiltonian_blocks(p, phi);
  const Eig<2> e1{Eigen::Vector2d::Zero(), Mat2::Identity()};
  const Eig<4> e2 = eig<4>(H.b2), e3 = eig<4>(H.b3);
  const Eig<6> e4 = eig<6>(H.b4);

  std::array<double, 16> all{};
  int k = 0;
  for (int i = 0; i < 2; ++i) all[k++] = e1.w(i);
  for (int i = 0; i < 4; ++i) all[k++] = e2.w(i);
  for (int i = 0; i < 4; ++i) all[k++] = e3.w(i);
  for (int i = 0; i < 6; ++i) all[k++] = e4.w(i);
  std::sort(all.begin(), all.end());
  const double E0 = all[0];
  const double tol = kDegTol * std::max(1.0, std::abs(E0));

  BlockState st;
  st.degenerate_ground = all[1] - all[0] < tol;
  std::function<double(double)> weight;
  if (p.zero_temperature()) {
    weight = [E0, tol](double w) { return w - E0 < tol ? 1.0 : 0.0; };
  } else {
    const double b = p.betaJ / p.J;
    weight = [E0, b](double w) { return std::exp(-b * (w - E0)); };
  }
  double Z = 0.0;
  for (double w : all) Z += weight(w);
  auto norm = [&](double w) { return weight(w) / Z; };
  st.rho.b1 = weighted<2>(e1, norm);
  st.rho.b2 = weighted<4>(e2, norm);
  st.rho.b3 = weighted<4>(e3, norm);
  st.rho.b4 = weighted<6>(e4, norm);
  return st;
}

ObsValues block_expectations(const BlockList& rho, const std::array<BlockList, kNumObs>& ops) {
  ObsValues v{};
  for (std::size_t k = 0; k < kNumObs; ++k) {
    const BlockList& o = ops[k];
    v[k] = tr_re<2>(rho.b1, o.b1) + tr_re<4>(rho.b2, o.b2) + tr_re<4>(rho.b3, o.b3) +
           tr_re<6>(rho.b4, o.b4);
  }
  return v;
}

std::vector<double> ground_block_crossings(const ModelParams& p, int n_scan) {
  // Lowest eigenvalue of each block; the ground block is the argmin.
  auto lows = [&p](double phi) {
    const BlockList H = hamiltonian_blocks(p, phi);
    std::array<double, 4> m{0.0, 0.0, 0.0, 0.0};
    m[1] = eig<4>(H.b2).w(0);
    m[2] = eig<4>(H.b3).w(0);
    m[3] = eig<6>(H.b4).w(0);
    return m;
  };
  auto argmin = [](const std::array<double, 4>& m) {
    return static_cast<int>(std::min_element(m.begin(), m.end()) - m.begin());
  };
  std::vector<double> out;
  const double a = 1e-9, b = 0.5 * kPi;
  double x_prev = a;
  auto m_prev = lows(a);
  int k_prev = argmin(m_prev);
  for (int i = 1; i <= n_scan; ++i) {
    const double x = a + (b - a) * i / n_scan;
    const auto m = lows(x);
    const int k = argmin(m);
    if (k != k_prev) {
      // bisection on the difference of the two competing block minima
      double lo = x_prev, hi = x;
      const int ka = k_prev, kb = k;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto mm = lows(mid);
        if (mm[ka] - mm[kb] < 0.0)
          lo = mid;
        else
          hi = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    k_prev = k;
    m_prev = m;
  }
  // A band passing through zero reshuffles the ground state inside a block.
  // Bands come in +-pairs, so look for zeros of the smallest |band|.
  auto smallest = [&p](double phi) {
    const auto w = bdg_bands(p, phi);
    double m = kInf;
    for (double e : w) m = std::min(m, std::abs(e));
    return m;
  };
  std::vector<double> g(n_scan + 1);
  for (int i = 0; i <= n_scan; ++i) g[i] = smallest(a + (b - a) * i / n_scan);
  const double step = (b - a) / n_scan;
  for (int i = 1; i < n_scan; ++i) {
    if (!(g[i] <= g[i - 1] && g[i] <= g[i + 1])) continue;
    double lo = a + (i - 1) * step, hi = a + (i + 1) * step;
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
    double fc = smallest(c), fd = smallest(d);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - r * (hi - lo);
        fc = smallest(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + r * (hi - lo);
        fd = smallest(d);
      }
    }
    const double x = 0.5 * (lo + hi);
    if (smallest(x) < 1e-9) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double u, double v) { return std::abs(u - v) < 1e-12; }),
            out.end());
  return out;
}

CorrelatorSet thermal_correlators_alt(const ModelParams& p, const QuadratureSpec& q) {
  p.validate();
  bool any_degenerate = false;
  auto f = [&](double phi) {
    const BlockState st = equilibrium_block_state(p, phi);
    if (st.degenerate_ground) any_degenerate = true;
    return block_expectations(st.rho, observable_blocks(phi));
  };
  std::vector<double> brk;
  if (p.zero_temperature()) brk = ground_block_crossings(p);
  auto r = integrate_components<kNumObs>(f, 0.0, 0.5 * kPi, q, brk);
  CorrelatorSet cs;
  cs.cxx = r.value[0] / kPi;
  cs.cyy = r.value[1] / kPi;
  cs.cxy = r.value[2] / kPi;
  cs.cyx = r.value[3] / kPi;
  cs.mz_e = r.value[4] / kPi;
  cs.mz_o = r.value[5] / kPi;
  cs.quad_error = r.error / kPi;
  cs.degenerate_ground = any_degenerate;
  cs.branch = "blocks";
  cs.fill_wick();
  return cs;
}

CorrelatorSet equilibrium_correlators(const ModelParams& p, const QuadratureSpec& q) {
  p.validate();
  if (p.uniform_field()) {
    if (p.zero_temperature()) return zero_T_correlators_uniform(p, q);
    return thermal_correlators_uniform(p, q);
  }
  return thermal_correlators_alt(p, q);
}

}  // namespace datxy
