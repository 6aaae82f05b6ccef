#include "atomsim/pxp.hpp"

#include <cmath>
#include <complex>

#include "atomsim/errors.hpp"

namespace atomsim {

namespace {
using Cplx = std::complex<double>;

bool constrained(uint32_t s, int n) {
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    if (((s >> i) & 1) && ((s >> j) & 1)) return false;
  }
  return true;
}

// H|psi> in the constrained basis: flip site i when both ring neighbours are
// ground; every valid flip connects two constrained states.
void apply(const PxpBasis& b, const Eigen::VectorXcd& in,
           Eigen::VectorXcd& out) {
  out.setZero(b.dim());
  const int n = b.n_atoms;
  for (size_t k = 0; k < b.dim(); ++k) {
    Cplx a = in[k];
    if (a == Cplx(0)) continue;
    uint32_t s = b.states[k];
    for (int i = 0; i < n; ++i) {
      int l = (i + n - 1) % n, r = (i + 1) % n;
      if (((s >> l) & 1) || ((s >> r) & 1)) continue;
      uint32_t s2 = s ^ (1u << i);
      out[b.index_of[s2]] += a;
    }
  }
}
}  // namespace

PxpBasis PxpBasis::build(int n_atoms) {
  if (n_atoms < 2 || n_atoms > 24)
    throw DimensionOverflow("pxp basis supports 2..24 atoms");
  PxpBasis b;
  b.n_atoms = n_atoms;
  b.index_of.assign(1ull << n_atoms, -1);
  for (uint32_t s = 0; s < (1u << n_atoms); ++s)
    if (constrained(s, n_atoms)) {
      b.index_of[s] = static_cast<int64_t>(b.states.size());
      b.states.push_back(s);
    }
  return b;
}

PxpState pxp_initial(const PxpBasis& basis, uint32_t configuration) {
  if (basis.index_of[configuration] < 0)
    throw std::invalid_argument("configuration violates the blockade");
  PxpState s;
  s.amps = Eigen::VectorXcd::Zero(basis.dim());
  s.amps[basis.index_of[configuration]] = 1.0;
  return s;
}

PxpState pxp_evolve(const PxpBasis& basis, const PxpState& s, double t) {
  // Lanczos with conservative substeps; ||H|| <= n
  PxpState out = s;
  double hnorm = basis.n_atoms;
  int n_steps = std::max(1, static_cast<int>(std::ceil(hnorm * std::abs(t) / 5.0)));
  double dt = t / n_steps;
  const int m_cap = std::min<int>(40, static_cast<int>(basis.dim()));
  Eigen::VectorXcd w(basis.dim());
  for (int step = 0; step < n_steps; ++step) {
    std::vector<Eigen::VectorXcd> kry;
    std::vector<double> alpha, beta;
    kry.push_back(out.amps.normalized());
    int m = 0;
    for (int j = 0; j < m_cap; ++j) {
      apply(basis, kry[j], w);
      if (j > 0) w -= beta[j - 1] * kry[j - 1];
      double a = std::real(kry[j].dot(w));
      alpha.push_back(a);
      w -= a * kry[j];
      for (auto& v : kry) w -= v.dot(w) * v;
      m = j + 1;
      double nb = w.norm();
      if (nb < 1e-14) break;
      beta.push_back(nb);
      kry.push_back(w / nb);
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(m);
    e1[0] = out.amps.norm();
    Eigen::VectorXcd y =
        es.eigenvectors().cast<Cplx>() *
        (Eigen::VectorXcd(
             (es.eigenvalues().array() * -dt)
                 .unaryExpr([](double x) { return std::exp(Cplx(0, x)); }))
             .array() *
         (es.eigenvectors().transpose().cast<Cplx>() * e1).array())
            .matrix();
    Eigen::VectorXcd nxt = Eigen::VectorXcd::Zero(basis.dim());
    for (int i = 0; i < m; ++i) nxt += y[i] * kry[i];
    out.amps = nxt;
  }
  out.amps /= out.amps.norm();
  return out;
}

double pxp_site_population(const PxpBasis& basis, const PxpState& s, int site) {
  double p = 0;
  for (size_t k = 0; k < basis.dim(); ++k)
    if ((basis.states[k] >> site) & 1) p += std::norm(s.amps[k]);
  return p;
}

double pxp_single_site_s2(const PxpBasis& basis, const PxpState& s, int site) {
  // 2x2 reduced density matrix: diagonal from populations, off-diagonal from
  // pairs of basis states differing only at this site
  double p1 = pxp_site_population(basis, s, site);
  Cplx coh = 0;
  for (size_t k = 0; k < basis.dim(); ++k) {
    uint32_t st = basis.states[k];
    if ((st >> site) & 1) continue;
    uint32_t st2 = st | (1u << site);
    int64_t k2 = basis.index_of[st2];
    if (k2 < 0) continue;
    coh += s.amps[k] * std::conj(s.amps[k2]);
  }
  double p0 = 1.0 - p1;
  double purity = p0 * p0 + p1 * p1 + 2.0 * std::norm(coh);
  return -std::log2(purity);
}

}  // namespace atomsim
