#include "datxy/ed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace datxy {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
constexpr double kGroundTol = 1e-9;

// Translation by two sites and its orbits.
struct Orbits {
  int N = 0, L = 0;
  std::uint32_t mask = 0;
  std::vector<std::uint32_t> rep;
  std::vector<int> shift;   // T^shift[s] rep[s] = s
  std::vector<int> period;  // orbit length, stored for every state

  explicit Orbits(int n) : N(n), L(n / 2), mask((std::uint32_t{1} << n) - 1) {
    const std::size_t dim = std::size_t{1} << N;
    rep.assign(dim, 0);
    shift.assign(dim, -1);
    period.assign(dim, 0);
    std::vector<std::uint32_t> orbit;
    for (std::uint32_t s = 0; s < dim; ++s) {
      if (shift[s] >= 0) continue;
      orbit.clear();
      std::uint32_t x = s;
      do {
        orbit.push_back(x);
        x = T(x);
      } while (x != s);
      const auto it = std::min_element(orbit.begin(), orbit.end());
      const int lr = static_cast<int>(it - orbit.begin());
      const int R = static_cast<int>(orbit.size());
      for (int l = 0; l < R; ++l) {
        rep[orbit[l]] = *it;
        shift[orbit[l]] = ((l - lr) % R + R) % R;
        period[orbit[l]] = R;
      }
    }
  }
  std::uint32_t T(std::uint32_t s) const { return ((s << 2) | (s >> (N - 2))) & mask; }
};

struct Sector {
  int parity = 0;  // popcount mod 2
  int m = 0;       // momentum index, k = 2 pi m / L
  double k = 0.0;
  std::vector<std::uint32_t> reps;
  std::vector<int> index;  // state -> position in reps, -1 if absent
};

std::vector<Sector> make_sectors(const Orbits& o) {
  std::vector<Sector> out;
  const std::size_t dim = std::size_t{1} << o.N;
  for (int par = 0; par < 2; ++par)
    for (int m = 0; m < o.L; ++m) {
      Sector s;
      s.parity = par;
      s.m = m;
      s.k = 2.0 * kPi * m / o.L;
      s.index.assign(dim, -1);
      for (std::uint32_t x = 0; x < dim; ++x) {
        if (o.rep[x] != x) continue;
        if (std::popcount(x) % 2 != par) continue;
        if ((m * o.period[x]) % o.L != 0) continue;
        s.index[x] = static_cast<int>(s.reps.size());
        s.reps.push_back(x);
      }
      if (!s.reps.empty()) out.push_back(std::move(s));
    }
  return out;
}

// Matrix of a translation-invariant, parity-conserving operator in one sector.
Eigen::MatrixXcd sector_matrix(const Orbits& o, const Sector& s, const PauliSum& op) {
  const int n = static_cast<int>(s.reps.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const std::uint32_t r = s.reps[c];
    const double Rr = o.period[r];
    for (const auto& term : op) {
      const auto [x, amp] = term.act(r);
      const std::uint32_t r2 = o.rep[x];
      const int j = s.index[r2];
      if (j < 0) continue;
      const double R2 = o.period[r2];
      M(j, c) += amp * std::exp(kI * (s.k * o.shift[x])) * std::sqrt(Rr / R2);
    }
  }
  return M;
}

double trace_product_re(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

struct Observables {
  std::array<PauliSum, 7> ops;  // xx, yy, xy, yx, zz, mz_e, mz_o
};

Observables observables(const SpinChainED& ed) {
  Observables o;
  o.ops[0] = bond_average(ed, 'x', 'x');
  o.ops[1] = bond_average(ed, 'y', 'y');
  o.ops[2] = bond_average(ed, 'x', 'y');
  o.ops[3] = bond_average(ed, 'y', 'x');
  o.ops[4] = bond_average(ed, 'z', 'z');
  o.ops[5] = sublattice_mz(ed, true);
  o.ops[6] = sublattice_mz(ed, false);
  return o;
}

CorrelatorSet to_set(const std::array<double, 7>& v) {
  CorrelatorSet cs;
  cs.cxx = v[0];
  cs.cyy = v[1];
  cs.cxy = v[2];
  cs.cyx = v[3];
  cs.czz = v[4];
  cs.mz_e = v[5];
  cs.mz_o = v[6];
  cs.branch = "ed";
  return cs;
}

bool use_sectors(const SpinChainED& ed) {
  return ed.boundary == Boundary::Periodic && ed.hx == 0.0;
}

struct SectorEigen {
  Sector sector;
  Eigen::VectorXd E;
  Eigen::MatrixXcd V;
};

std::vector<SectorEigen> diagonalize_sectors(const Orbits& orb, const PauliSum& H) {
  std::vector<SectorEigen> out;
  for (auto& s : make_sectors(orb)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sector_matrix(orb, s, H));
    out.push_back({std::move(s), es.eigenvalues(), es.eigenvectors()});
  }
  return out;
}

std::array<double, 7> expectation_all(const Observables& obs, const Eigen::VectorXcd& psi) {
  std::array<double, 7> v{};
  for (int i = 0; i < 7; ++i) v[i] = expect(obs.ops[i], psi).real();
  return v;
}

}  // namespace

SpinChainED::SpinChainED(const ModelParams& p, int n, Boundary b, double h)
    : params(p), N(n), boundary(b), hx(h) {
  p.validate();
  if (n > kMaxEDSites)
    throw ResourceLimit("exact diagonalization is limited to N <= " +
                        std::to_string(kMaxEDSites));
  if (n < 4 || n % 2 != 0) throw DomainError("N must be even and >= 4");
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("hx must be finite and >= 0");
}

std::pair<std::uint32_t, std::complex<double>> PauliString::act(std::uint32_t s) const {
  cd amp = coef;
  for (const auto& [site, op] : ops) {
    const std::uint32_t bit = std::uint32_t{1} << site;
    const bool up = (s & bit) != 0;
    switch (op) {
      case 'x':
        s ^= bit;
        break;
      case 'y':
        amp *= up ? kI : -kI;
        s ^= bit;
        break;
      case 'z':
        if (!up) amp = -amp;
        break;
      default:
        throw DomainError(std::string("unknown Pauli label ") + op);
    }
  }
  return {s, amp};
}

PauliSum hamiltonian_terms(const SpinChainED& ed) {
  const auto& p = ed.params;
  PauliSum H;
  const int bonds = ed.boundary == Boundary::Periodic ? ed.N : ed.N - 1;
  const double J = p.J;
  for (int j = 0; j < bonds; ++j) {
    const int k = (j + 1) % ed.N;
    H.push_back({0.5 * J * (1.0 + p.gamma) / 2.0, {{j, 'x'}, {k, 'x'}}});
    H.push_back({0.5 * J * (1.0 - p.gamma) / 2.0, {{j, 'y'}, {k, 'y'}}});
    if (p.d != 0.0) {
      H.push_back({0.5 * J * p.d / 2.0, {{j, 'x'}, {k, 'y'}}});
      H.push_back({-0.5 * J * p.d / 2.0, {{j, 'y'}, {k, 'x'}}});
    }
  }
  for (int j = 0; j < ed.N; ++j) {
    const double sign = ((j + 1) % 2 == 0) ? 1.0 : -1.0;
    H.push_back({0.5 * J * (p.lambda1 + sign * p.lambda2), {{j, 'z'}}});
    if (ed.hx != 0.0) H.push_back({J * ed.hx * sign, {{j, 'x'}}});
  }
  return H;
}

PauliSum bond_average(const SpinChainED& ed, char a, char b) {
  PauliSum O;
  const int L = ed.N / 2;
  const int count = ed.boundary == Boundary::Periodic ? L : L - 1;
  for (int l = 0; l < count; ++l) {
    const int e = 2 * l + 1, o = (2 * l + 2) % ed.N;
    O.push_back({1.0 / count, {{e, a}, {o, b}}});
  }
  return O;
}

PauliSum sublattice_mz(const SpinChainED& ed, bool even) {
  PauliSum O;
  const int L = ed.N / 2;
  for (int l = 0; l < L; ++l) O.push_back({1.0 / L, {{even ? 2 * l + 1 : 2 * l, 'z'}}});
  return O;
}

void apply(const PauliSum& op, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
  out = Eigen::VectorXcd::Zero(in.size());
  const auto dim = static_cast<std::uint32_t>(in.size());
  for (std::uint32_t s = 0; s < dim; ++s) {
    const cd v = in(s);
    if (v == cd{}) continue;
    for (const auto& t : op) {
      const auto [x, amp] = t.act(s);
      out(x) += amp * v;
    }
  }
}

std::complex<double> expect(const PauliSum& op, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd tmp;
  apply(op, psi, tmp);
  return psi.dot(tmp);
}

Eigen::MatrixXcd dense_matrix(const PauliSum& op, int N) {
  const std::size_t dim = std::size_t{1} << N;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s)
    for (const auto& t : op) {
      const auto [x, amp] = t.act(s);
      M(x, s) += amp;
    }
  return M;
}

CorrelatorSet ed_thermal_correlators(const SpinChainED& ed, double betaJ) {
  if (std::isnan(betaJ) || betaJ < 0.0) throw DomainError("betaJ must be >= 0");
  const Observables obs = observables(ed);
  const PauliSum H = hamiltonian_terms(ed);
  const bool zeroT = std::isinf(betaJ);
  const double beta = betaJ / ed.params.J;
  std::array<double, 7> acc{};

  if (use_sectors(ed)) {
    const Orbits orb(ed.N);
    auto sectors = diagonalize_sectors(orb, H);
    double E0 = kInf;
    for (const auto& s : sectors) E0 = std::min(E0, s.E(0));
    double Z = 0.0;
    for (const auto& s : sectors) {
      Eigen::VectorXd w(s.E.size());
      for (int i = 0; i < s.E.size(); ++i)
        w(i) = zeroT ? (s.E(i) - E0 < kGroundTol ? 1.0 : 0.0) : std::exp(-beta * (s.E(i) - E0));
      if (w.sum() == 0.0) continue;
      Z += w.sum();
      const Eigen::MatrixXcd rho = s.V * w.asDiagonal() * s.V.adjoint();
      for (int i = 0; i < 7; ++i)
        acc[i] += trace_product_re(rho, sector_matrix(orb, s.sector, obs.ops[i]));
    }
    for (double& a : acc) a /= Z;
    return to_set(acc);
  }

  if (ed.N > 10) throw ResourceLimit("dense thermal ED without symmetry sectors needs N <= 10");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(H, ed.N));
  const Eigen::VectorXd& E = es.eigenvalues();
  Eigen::VectorXd w(E.size());
  for (int i = 0; i < E.size(); ++i)
    w(i) = zeroT ? (E(i) - E(0) < kGroundTol ? 1.0 : 0.0) : std::exp(-beta * (E(i) - E(0)));
  w /= w.sum();
  for (int n = 0; n < E.size(); ++n) {
    if (w(n) < 1e-300) continue;
    const auto v = expectation_all(obs, es.eigenvectors().col(n));
    for (int i = 0; i < 7; ++i) acc[i] += w(n) * v[i];
  }
  return to_set(acc);
}

EDTrace ed_quench(const SpinChainED& ed, const std::vector<double>& t_grid) {
  if (!use_sectors(ed)) throw DomainError("ed_quench needs a periodic chain with hx = 0");
  const Orbits orb(ed.N);
  const Observables obs = observables(ed);
  const PauliSum H0 = hamiltonian_terms(ed);
  SpinChainED post = ed;
  post.params.lambda1 = post.params.lambda2 = 0.0;
  const PauliSum H1 = hamiltonian_terms(post);

  auto initial = diagonalize_sectors(orb, H0);
  double E0 = kInf;
  for (const auto& s : initial) E0 = std::min(E0, s.E(0));

  struct Piece {
    Eigen::VectorXcd coeffs;  // ground vector expanded in the post-quench eigenbasis
    const Eigen::VectorXd* Ep;
    const Eigen::MatrixXcd* Vp;
    std::array<Eigen::MatrixXcd, 7> O;
    Eigen::MatrixXcd Hp;
  };
  std::vector<Eigen::VectorXd> post_E;
  std::vector<Eigen::MatrixXcd> post_V;
  std::vector<Piece> pieces;
  post_E.reserve(initial.size());
  post_V.reserve(initial.size());
  for (const auto& s : initial) {
    int g = 0;
    while (g < s.E.size() && s.E(g) - E0 < kGroundTol) ++g;
    if (g == 0) continue;
    const Eigen::MatrixXcd Hp = sector_matrix(orb, s.sector, H1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hp);
    post_E.push_back(es.eigenvalues());
    post_V.push_back(es.eigenvectors());
    std::array<Eigen::MatrixXcd, 7> O;
    for (int i = 0; i < 7; ++i) O[i] = sector_matrix(orb, s.sector, obs.ops[i]);
    for (int n = 0; n < g; ++n)
      pieces.push_back({post_V.back().adjoint() * s.V.col(n), &post_E.back(), &post_V.back(), O,
                        Hp});
  }
  const double weight = 1.0 / static_cast<double>(pieces.size());

  EDTrace tr;
  tr.t = t_grid;
  const double J = ed.params.J;
  for (double t : t_grid) {
    std::array<double, 7> acc{};
    double energy = 0.0, norm = 0.0;
    for (const auto& pc : pieces) {
      Eigen::VectorXcd c = pc.coeffs;
      for (int i = 0; i < c.size(); ++i) c(i) *= std::exp(-kI * ((*pc.Ep)(i) * t / J));
      const Eigen::VectorXcd psi = (*pc.Vp) * c;
      for (int i = 0; i < 7; ++i) acc[i] += weight * psi.dot(pc.O[i] * psi).real();
      energy += weight * psi.dot(pc.Hp * psi).real();
      norm += weight * psi.squaredNorm();
    }
    tr.values.push_back(to_set(acc));
    tr.post_energy.push_back(energy);
    tr.norm.push_back(norm);
  }
  return tr;
}

Eigen::SparseMatrix<std::complex<double>> sparse_matrix(const PauliSum& op, int N) {
  const std::size_t dim = std::size_t{1} << N;
  std::vector<Eigen::Triplet<cd>> trip;
  trip.reserve(dim * op.size());
  for (std::uint32_t s = 0; s < dim; ++s)
    for (const auto& t : op) {
      const auto [x, amp] = t.act(s);
      trip.emplace_back(static_cast<int>(x), static_cast<int>(s), amp);
    }
  Eigen::SparseMatrix<cd> M(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  M.setFromTriplets(trip.begin(), trip.end());
  M.prune(cd{});
  return M;
}

LanczosResult ground_state_lanczos(const SpinChainED& ed, double tol) {
  const PauliSum H = hamiltonian_terms(ed);
  const int dim = static_cast<int>(ed.dim());
  LanczosResult res;
  if (dim <= 64) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(H, ed.N));
    res.energy = es.eigenvalues()(0);
    res.vector = es.eigenvectors().col(0);
    return res;
  }
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cd(nd(rng), nd(rng));
  v.normalize();

  const int max_iter = std::min(dim, 400);
  std::vector<Eigen::VectorXcd> Q;
  std::vector<double> alpha, beta;
  const Eigen::SparseMatrix<cd> Hs = sparse_matrix(H, ed.N);
  Eigen::VectorXcd w;
  for (int it = 0; it < max_iter; ++it) {
    Q.push_back(v);
    w = Hs * v;
    const double a = v.dot(w).real();
    alpha.push_back(a);
    // full reorthogonalisation, twice for stability
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : Q) w -= q * q.dot(w);
    const double b = w.norm();
    const int m = static_cast<int>(alpha.size());
    if (m % 5 == 0 || b < 1e-14 || it == max_iter - 1) {
      Eigen::MatrixXd Tm = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        Tm(i, i) = alpha[i];
        if (i + 1 < m) Tm(i, i + 1) = Tm(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tm);
      const double resid = b * std::abs(es.eigenvectors()(m - 1, 0));
      if (resid < tol || b < 1e-14 || it == max_iter - 1) {
        res.energy = es.eigenvalues()(0);
        res.vector = Eigen::VectorXcd::Zero(dim);
        for (int i = 0; i < m; ++i) res.vector += es.eigenvectors()(i, 0) * Q[i];
        res.vector.normalize();
        res.iterations = m;
        if (resid >= tol && b >= 1e-14)
          throw NonConvergence("Lanczos did not reach residual " + std::to_string(tol));
        return res;
      }
    }
    beta.push_back(b);
    v = w / b;
  }
  throw NonConvergence("Lanczos exhausted its iteration budget");
}

double staggered_mx_of(const SpinChainED& ed) {
  const LanczosResult g = ground_state_lanczos(ed);
  PauliSum M;
  for (int j = 0; j < ed.N; ++j)
    M.push_back({(((j + 1) % 2 == 0) ? 1.0 : -1.0) / ed.N, {{j, 'x'}}});
  return std::abs(expect(M, g.vector).real());
}

}  // namespace datxy
