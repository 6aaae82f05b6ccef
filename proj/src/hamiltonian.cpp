#include "atomsim/hamiltonian.hpp"

#include <cmath>

#include "atomsim/errors.hpp"
#include "atomsim/rng.hpp"

namespace atomsim {

namespace {
inline size_t pow3(int n) {
  size_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}
inline int trit(size_t k, int site) {
  static const size_t p3[] = {1ull, 3ull, 9ull, 27ull, 81ull, 243ull, 729ull,
                              2187ull, 6561ull, 19683ull, 59049ull, 177147ull};
  return static_cast<int>((k / p3[site]) % 3);
}
inline size_t with_trit(size_t k, int site, int from, int to) {
  static const size_t p3[] = {1ull, 3ull, 9ull, 27ull, 81ull, 243ull, 729ull,
                              2187ull, 6561ull, 19683ull, 59049ull, 177147ull};
  return k + static_cast<size_t>(to - from) * p3[site];
}
}  // namespace

double HamiltonianParams::interaction(int i, int j) const {
  double r = std::abs(i - j);  // units of the lattice constant
  return v0 / std::pow(r, 6);
}

ThreeLevelState ThreeLevelState::product(int n_atoms,
                                         const std::vector<int>& levels) {
  ThreeLevelState s;
  s.n_atoms = n_atoms;
  s.amps = StateVec::Zero(pow3(n_atoms));
  size_t idx = 0, mul = 1;
  for (int i = 0; i < n_atoms; ++i, mul *= 3) idx += levels[i] * mul;
  s.amps[idx] = 1.0;
  return s;
}

ThreeLevelState ThreeLevelState::all_in(int n_atoms, int level) {
  return product(n_atoms, std::vector<int>(n_atoms, level));
}

double ThreeLevelState::norm() const { return amps.norm(); }
void ThreeLevelState::normalize() { amps /= amps.norm(); }

void apply_hamiltonian(const HamiltonianParams& p, const StateVec& in,
                       StateVec& out) {
  const int n = p.n_atoms;
  const size_t dim = pow3(n);
  out.setZero(dim);

  // diagonal: detuning + interactions, cached per basis state on the fly
  for (size_t k = 0; k < dim; ++k) {
    Complex a = in[k];
    if (a == Complex(0)) continue;
    double diag = 0;
    for (int i = 0; i < n; ++i) {
      if (trit(k, i) != kLvlR) continue;
      diag -= p.delta;
      if (!p.site_detuning.empty()) diag += p.site_detuning[i];
      for (int j = i + 1; j < n; ++j)
        if (trit(k, j) == kLvlR) diag += p.interaction(i, j);
    }
    out[k] += diag * a;
    // drive: |1> <-> |r| on each site
    for (int i = 0; i < n; ++i) {
      int t = trit(k, i);
      if (t == kLvl1)
        out[with_trit(k, i, t, kLvlR)] += 0.5 * p.omega * a;
      else if (t == kLvlR)
        out[with_trit(k, i, t, kLvl1)] += 0.5 * p.omega * a;
    }
  }
}

namespace {

// one Lanczos step of exp(-i H dt) |v>
void lanczos_step(const HamiltonianParams& p, StateVec& v, double dt_s,
                  int m_max, double tol) {
  const size_t dim = v.size();
  const int m_cap = std::min<int>(m_max, static_cast<int>(dim));
  std::vector<StateVec> basis;
  std::vector<double> alpha, beta;
  basis.push_back(v.normalized());
  StateVec w(dim);
  int m = 0;
  for (int j = 0; j < m_cap; ++j) {
    apply_hamiltonian(p, basis[j], w);
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    double a = std::real(basis[j].dot(w));
    alpha.push_back(a);
    w -= a * basis[j];
    // full reorthogonalization: cheap at these sizes, keeps accuracy high
    for (auto& b : basis) w -= b.dot(w) * b;
    double nb = w.norm();
    m = j + 1;
    if (nb < 1e-14) break;
    beta.push_back(nb);
    basis.push_back(w / nb);
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  Eigen::VectorXcd phases(m);
  for (int i = 0; i < m; ++i)
    phases[i] = std::exp(Complex(0, -es.eigenvalues()[i] * dt_s));
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(m);
  e1[0] = v.norm();
  Eigen::VectorXcd y =
      es.eigenvectors().cast<Complex>() *
      (phases.array() * (es.eigenvectors().transpose().cast<Complex>() * e1).array())
          .matrix();
  StateVec out = StateVec::Zero(dim);
  for (int i = 0; i < m; ++i) out += y[i] * basis[i];
  (void)tol;
  v = out;
}

}  // namespace

ThreeLevelState evolve(const ThreeLevelState& state, const HamiltonianParams& p,
                       double t_us, const EvolveOptions& opt) {
  if (t_us < 0) throw std::invalid_argument("evolve: t >= 0");
  if (p.n_atoms > p.n_max)
    throw DimensionOverflow("evolve: " + std::to_string(p.n_atoms) +
                            " atoms above configured maximum");
  ThreeLevelState s = state;
  if (t_us == 0) return s;
  // pick substeps so that ||H|| dt stays small enough for the Krylov
  // dimension to converge well past the target tolerance
  double hnorm = std::abs(p.omega) + std::abs(p.delta) + 2 * std::abs(p.v0);
  double dmax = 0;
  for (double d : p.site_detuning) dmax = std::max(dmax, std::abs(d));
  hnorm += dmax * p.n_atoms;
  double t_s = t_us * 1e-6;
  int n_steps = std::max(1, static_cast<int>(std::ceil(
                                t_us / opt.max_step_us)));
  n_steps = std::max(n_steps,
                     static_cast<int>(std::ceil(hnorm * t_s / 5.0)));
  double dt = t_s / n_steps;
  for (int k = 0; k < n_steps; ++k)
    lanczos_step(p, s.amps, dt, opt.krylov_dim, opt.tol);
  double nrm = s.amps.norm();
  if (std::abs(nrm - 1.0) > 1e-9 && std::abs(nrm) > 0) s.amps /= nrm;
  return s;
}

double energy_expectation(const HamiltonianParams& p, const ThreeLevelState& s) {
  StateVec out;
  apply_hamiltonian(p, s.amps, out);
  return std::real(s.amps.dot(out));
}

Eigen::MatrixXcd reduced_density(const ThreeLevelState& s,
                                 const std::vector<int>& sites) {
  const int n = s.n_atoms;
  const size_t dim = s.amps.size();
  const size_t da = pow3(static_cast<int>(sites.size()));
  std::vector<uint8_t> in_a(n, 0);
  for (int q : sites) in_a[q] = 1;
  std::vector<int> a_sites = sites, b_sites;
  for (int i = 0; i < n; ++i)
    if (!in_a[i]) b_sites.push_back(i);
  const size_t db = pow3(static_cast<int>(b_sites.size()));

  // reshape into (A, B) index pair
  Eigen::MatrixXcd psi(da, db);
  psi.setZero();
  for (size_t k = 0; k < dim; ++k) {
    if (s.amps[k] == Complex(0)) continue;
    size_t ia = 0, mul = 1;
    for (int q : a_sites) {
      ia += trit(k, q) * mul;
      mul *= 3;
    }
    size_t ib = 0;
    mul = 1;
    for (int q : b_sites) {
      ib += trit(k, q) * mul;
      mul *= 3;
    }
    psi(ia, ib) = s.amps[k];
  }
  return psi * psi.adjoint();
}

double subsystem_purity(const ThreeLevelState& s, const std::vector<int>& sites) {
  Eigen::MatrixXcd rho = reduced_density(s, sites);
  return std::real((rho * rho).trace());
}

double renyi2(const ThreeLevelState& s, const std::vector<int>& sites) {
  return -std::log2(subsystem_purity(s, sites));
}

double step_halving_selftest() {
  HamiltonianParams p;
  p.n_atoms = 4;
  p.omega = 2 * M_PI * 3.1e6;
  p.delta = 2 * M_PI * 0.3e6;
  p.v0 = 2 * M_PI * 20e6;
  ThreeLevelState s0 = ThreeLevelState::all_in(4, kLvl1);
  EvolveOptions coarse, fine;
  fine.max_step_us = coarse.max_step_us / 2;
  ThreeLevelState a = evolve(s0, p, 0.37, coarse);
  ThreeLevelState b = evolve(s0, p, 0.37, fine);
  return (a.amps - b.amps).norm();
}

}  // namespace atomsim
