#include "atomsim/cz_pulse.hpp"

#include <cmath>

namespace atomsim {

namespace {

using Mat9 = Eigen::Matrix<std::complex<double>, 9, 9>;
using Cplx = std::complex<double>;

// basis index = a + 3*b over {0,1,r} per atom
int idx(int a, int b) { return a + 3 * b; }

Mat9 pulse_hamiltonian(double omega, double delta, double phase,
                       double blockade) {
  Mat9 h = Mat9::Zero();
  Cplx drive = 0.5 * omega * std::exp(Cplx(0, -phase));
  for (int other = 0; other < 3; ++other) {
    // atom 1
    h(idx(2, other), idx(1, other)) += drive;
    h(idx(1, other), idx(2, other)) += std::conj(drive);
    // atom 2
    h(idx(other, 2), idx(other, 1)) += drive;
    h(idx(other, 1), idx(other, 2)) += std::conj(drive);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double d = 0;
      if (a == 2) d -= delta;
      if (b == 2) d -= delta;
      if (a == 2 && b == 2) d += blockade;
      h(idx(a, b), idx(a, b)) = d;
    }
  return h;
}

Mat9 expm_unitary(const Mat9& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat9> es(h);
  Eigen::Matrix<Cplx, 9, 1> phases;
  for (int i = 0; i < 9; ++i)
    phases[i] = std::exp(Cplx(0, -es.eigenvalues()[i] * t));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

CZPulseResult cz_pulse_unitary(const CZPulseParams& p, double blockade_rad_s) {
  const double tau = p.tau_s();
  Mat9 u1 = expm_unitary(pulse_hamiltonian(p.omega, p.delta(), 0.0,
                                           blockade_rad_s),
                         tau);
  Mat9 u2 = expm_unitary(pulse_hamiltonian(p.omega, p.delta(), p.xi,
                                           blockade_rad_s),
                         tau);
  CZPulseResult r;
  r.full = u2 * u1;

  // project onto the hyperfine (qubit) subspace {0,1}^2
  const int q[4] = {idx(0, 0), idx(1, 0), idx(0, 1), idx(1, 1)};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.map(i, j) = r.full(q[i], q[j]);

  // common single-qubit phase from the |01>/|10> return amplitude, with the
  // |00> global phase divided out
  Cplx a00 = r.map(0, 0);
  Cplx a01 = r.map(1, 1);
  r.zeta = std::arg(a01 / a00);

  for (int j = 0; j < 4; ++j) {
    double pop = 0;
    for (int i = 0; i < 4; ++i) pop += std::norm(r.map(i, j));
    r.leakage = std::max(r.leakage, 1.0 - pop);
  }

  // undo the single-qubit phases and the global phase, compare to CZ
  Eigen::Vector4cd zz;
  zz << 1.0, std::exp(Cplx(0, -r.zeta)), std::exp(Cplx(0, -r.zeta)),
      std::exp(Cplx(0, -2 * r.zeta));
  Eigen::Matrix4cd m = (zz.asDiagonal() * r.map) / a00;
  Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
  cz(3, 3) = -1.0;
  Cplx tr = (cz.adjoint() * m).trace();
  r.process_fidelity = std::norm(tr) / 16.0;
  return r;
}

}  // namespace atomsim
