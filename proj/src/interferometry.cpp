#include "atomsim/interferometry.hpp"

#include <cmath>

#include "atomsim/errors.hpp"

namespace atomsim {

namespace {

using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;
using Cplx = std::complex<double>;

Mat2 rx(double theta) {
  Mat2 m;
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, Cplx(0, -s), Cplx(0, -s), c;
  return m;
}

// pair basis order: |b1 b2> with b1 = copy-1 atom bit (fast index).
// U = (Rx(pi/2) (x) Rx(pi/2)) CZ (Rx(pi/4) (x) Rx(pi/4)) (Z(pi) (x) I)
Mat4 bell_map() {
  Mat2 z_pi;
  z_pi << 1, 0, 0, -1;
  Mat2 id = Mat2::Identity();
  auto kron = [](const Mat2& a, const Mat2& b) {
    // a acts on the copy-1 bit (fast index), b on the copy-2 bit
    Mat4 m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            m(i + 2 * k, j + 2 * l) = a(i, j) * b(k, l);
    return m;
  };
  Mat4 cz = Mat4::Identity();
  cz(3, 3) = -1;
  return kron(rx(M_PI / 2), rx(M_PI / 2)) * cz *
         kron(rx(M_PI / 4), rx(M_PI / 4)) * kron(z_pi, id);
}

}  // namespace

Eigen::Matrix4cd bell_pair_map() { return bell_map(); }

std::vector<ShotRecord> interfere_and_sample(const MappedState& copy1,
                                             const MappedState& copy2,
                                             size_t n_shots, Rng& rng) {
  if (copy1.n_atoms != copy2.n_atoms)
    throw LengthMismatch("copies have different atom counts");
  const int n = copy1.n_atoms;
  const size_t dim = 1ull << (2 * n);

  // joint register: copy-1 bits 0..n-1, copy-2 bits n..2n-1
  Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(dim);
  const size_t d1 = copy1.amps.size();
  for (size_t a = 0; a < d1; ++a) {
    if (copy1.amps[a] == Cplx(0)) continue;
    for (size_t b = 0; b < d1; ++b) {
      if (copy2.amps[b] == Cplx(0)) continue;
      joint[a | (b << n)] = copy1.amps[a] * copy2.amps[b];
    }
  }

  static const Mat4 kBell = bell_map();
  for (int i = 0; i < n; ++i) {
    bool lost1 = copy1.lost[i], lost2 = copy2.lost[i];
    int q1 = i, q2 = n + i;
    if (!lost1 && !lost2) {
      // apply the 4x4 pair map on bits (q1, q2)
      for (size_t base = 0; base < dim; ++base) {
        if (base & ((1ull << q1) | (1ull << q2))) continue;
        size_t i00 = base, i10 = base | (1ull << q1), i01 = base | (1ull << q2),
               i11 = i10 | i01;
        Eigen::Vector4cd v(joint[i00], joint[i10], joint[i01], joint[i11]);
        Eigen::Vector4cd w = kBell * v;
        joint[i00] = w[0];
        joint[i10] = w[1];
        joint[i01] = w[2];
        joint[i11] = w[3];
      }
    } else {
      // a lone survivor still sees its single-qubit pulses
      for (int q : {lost1 ? -1 : q1, lost2 ? -1 : q2}) {
        if (q < 0) continue;
        Mat2 u = rx(M_PI / 2) * rx(M_PI / 4);
        if (q == q1) {
          Mat2 z_pi;
          z_pi << 1, 0, 0, -1;
          u = u * z_pi;
        }
        for (size_t base = 0; base < dim; ++base) {
          if (base & (1ull << q)) continue;
          size_t b0 = base, b1 = base | (1ull << q);
          Cplx v0 = joint[b0], v1 = joint[b1];
          joint[b0] = u(0, 0) * v0 + u(0, 1) * v1;
          joint[b1] = u(1, 0) * v0 + u(1, 1) * v1;
        }
      }
    }
  }

  // categorical sampling from |joint|^2
  std::vector<double> cdf(dim);
  double acc = 0;
  for (size_t k = 0; k < dim; ++k) {
    acc += std::norm(joint[k]);
    cdf[k] = acc;
  }
  std::vector<ShotRecord> shots;
  shots.reserve(n_shots);
  for (size_t s = 0; s < n_shots; ++s) {
    double u = rng.uniform() * acc;
    size_t k =
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (k >= dim) k = dim - 1;
    std::vector<uint8_t> bits(2 * n, 0), lost(2 * n, 0);
    for (int i = 0; i < n; ++i) {
      lost[i] = copy1.lost[i];
      lost[n + i] = copy2.lost[i];
    }
    for (int q = 0; q < 2 * n; ++q)
      bits[q] = (k >> q) & 1 ? 1 : 0;
    shots.emplace_back(std::move(bits), std::move(lost));
  }
  return shots;
}

EntropyResult renyi_entropy(const std::vector<ShotRecord>& shots,
                            const std::vector<int>& subsystem, int n_atoms,
                            double global_t0_entropy) {
  EntropyResult r;
  r.subsystem = subsystem;
  r.n_shots = shots.size();
  r.classical_offset =
      global_t0_entropy * static_cast<double>(subsystem.size()) / n_atoms;
  if (shots.empty()) {
    r.s2_valid = false;
    return r;
  }
  std::vector<int> parities;
  parities.reserve(shots.size());
  for (auto& shot : shots) {
    int n00 = 0;
    for (int i : subsystem)
      if (shot.bit(i) == 0 && shot.bit(n_atoms + i) == 0) ++n00;
    parities.push_back(n00 % 2 ? -1 : +1);
  }
  double sum = 0;
  for (int p : parities) sum += p;
  const double n = static_cast<double>(parities.size());
  r.purity = sum / n;

  // delete-one jackknife on the purity and, when defined, on s2
  if (n > 1) {
    double var_p = 0, var_s = 0;
    bool s_defined = r.purity > 0;
    for (int p : parities) {
      double pj = (sum - p) / (n - 1);
      var_p += (pj - r.purity) * (pj - r.purity);
      if (pj <= 0) s_defined = false;
    }
    r.stderror = std::sqrt(var_p * (n - 1) / n);
    if (s_defined) {
      double s0 = -std::log2(r.purity);
      for (int p : parities) {
        double sv = -std::log2((sum - p) / (n - 1));
        var_s += (sv - s0) * (sv - s0);
      }
      r.s2_stderror = std::sqrt(var_s * (n - 1) / n);
    }
  }
  r.s2_valid = r.purity > 0;  // reported, not thrown
  if (r.s2_valid) r.s2 = -std::log2(r.purity);
  return r;
}

double mapped_purity(const MappedState& state, const std::vector<int>& sites) {
  // reduced density matrix over the surviving subsystem sites
  std::vector<int> alive;
  for (int q : sites)
    if (!state.lost[q]) alive.push_back(q);
  const int n = state.n_atoms;
  const size_t da = 1ull << alive.size();
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (std::find(alive.begin(), alive.end(), i) == alive.end())
      rest.push_back(i);
  const size_t db = 1ull << rest.size();
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(da, db);
  for (size_t k = 0; k < (1ull << n); ++k) {
    if (state.amps[k] == Cplx(0)) continue;
    size_t ia = 0, ib = 0;
    for (size_t j = 0; j < alive.size(); ++j)
      if ((k >> alive[j]) & 1) ia |= 1ull << j;
    for (size_t j = 0; j < rest.size(); ++j)
      if ((k >> rest[j]) & 1) ib |= 1ull << j;
    psi(ia, ib) += state.amps[k];
  }
  Eigen::MatrixXcd rho = psi * psi.adjoint();
  return std::real((rho * rho).trace());
}

double purity_oracle(const std::vector<MappedState>& trajectories,
                     const std::vector<int>& subsystem) {
  if (trajectories.empty()) return 0.0;
  if (trajectories.size() == 1)
    return mapped_purity(trajectories[0], subsystem);
  const int n = trajectories[0].n_atoms;
  double acc = 0;
  size_t count = 0;
  for (size_t i = 0; i < trajectories.size(); ++i) {
    for (size_t j = i + 1; j < trajectories.size(); ++j) {
      // common surviving subsystem of the pair; lost atoms read +1 under the
      // swap parity and drop out
      std::vector<int> common;
      for (int q : subsystem)
        if (!trajectories[i].lost[q] && !trajectories[j].lost[q])
          common.push_back(q);
      auto rho_of = [&](const MappedState& st) {
        std::vector<int> rest;
        for (int k2 = 0; k2 < n; ++k2)
          if (std::find(common.begin(), common.end(), k2) == common.end())
            rest.push_back(k2);
        const size_t da = 1ull << common.size(), db = 1ull << rest.size();
        Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(da, db);
        for (size_t k = 0; k < (1ull << n); ++k) {
          if (st.amps[k] == Cplx(0)) continue;
          size_t ia = 0, ib = 0;
          for (size_t m = 0; m < common.size(); ++m)
            if ((k >> common[m]) & 1) ia |= 1ull << m;
          for (size_t m = 0; m < rest.size(); ++m)
            if ((k >> rest[m]) & 1) ib |= 1ull << m;
          psi(ia, ib) += st.amps[k];
        }
        return (psi * psi.adjoint()).eval();
      };
      acc += std::real((rho_of(trajectories[i]) * rho_of(trajectories[j]))
                           .trace());
      ++count;
    }
  }
  return acc / count;
}

}  // namespace atomsim
