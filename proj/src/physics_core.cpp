#include "kaon/physics_core.hpp"

#include <cmath>
#include <stdexcept>

namespace kaon {

PhysicalParams derive_params(double gamma_S, double gamma_L, double delta_m,
                             Complex epsilon) {
  if (!(gamma_S > 0.0) || !(gamma_L > 0.0))
    throw std::invalid_argument("derive_params: decay rates must be positive");
  if (gamma_L > gamma_S)
    throw std::invalid_argument("derive_params: gamma_L must not exceed gamma_S");
  if (!std::isfinite(delta_m))
    throw std::invalid_argument("derive_params: delta_m must be finite");

  PhysicalParams par;
  par.gamma_S = gamma_S;
  par.gamma_L = gamma_L;
  par.delta_m = delta_m;
  par.epsilon = epsilon;
  par.p = 1.0 + epsilon;
  par.q = 1.0 - epsilon;
  const double n2 = std::norm(par.p) + std::norm(par.q);
  par.norm_N = std::sqrt(n2);
  par.delta = (std::norm(par.p) - std::norm(par.q)) / n2;
  par.gamma_bar = 0.5 * (gamma_S + gamma_L);
  par.lambda_S = Complex(0.0, -0.5 * gamma_S);
  par.lambda_L = Complex(delta_m, -0.5 * gamma_L);
  if (std::abs(par.delta) >= 1.0)
    throw std::invalid_argument("derive_params: lifetime basis degenerate (|delta| >= 1)");
  return par;
}

PhysicalParams default_params() {
  const double mag = 2.28e-3;
  const double phase = M_PI / 4.0;
  return derive_params(1.0, 1.0 / 600.0, 0.5,
                       std::polar(mag, phase));
}

std::pair<Vec2, Vec2> lifetime_states(const PhysicalParams& par) {
  Vec2 ks, kl;
  ks << par.p / par.norm_N, -par.q / par.norm_N;
  kl << par.p / par.norm_N, par.q / par.norm_N;
  return {ks, kl};
}

std::pair<Vec2, Vec2> dual_lifetime_states(const PhysicalParams& par) {
  if (1.0 - par.delta * par.delta < 1e-12)
    throw std::domain_error("dual_lifetime_states: near-singular lifetime basis");
  auto [ks, kl] = lifetime_states(par);
  Mat2 basis;
  basis.col(0) = ks;
  basis.col(1) = kl;
  // columns of (B^{-1})^dag are biorthogonal to the columns of B
  Mat2 duals = basis.inverse().adjoint();
  return {duals.col(0), duals.col(1)};
}

Mat2 effective_hamiltonian(const PhysicalParams& par) {
  auto [ks, kl] = lifetime_states(par);
  auto [ds, dl] = dual_lifetime_states(par);
  return par.lambda_S * ks * ds.adjoint() + par.lambda_L * kl * dl.adjoint();
}

Mat2 mass_matrix(const PhysicalParams& par) {
  Mat2 heff = effective_hamiltonian(par);
  return 0.5 * (heff + heff.adjoint());
}

Mat2 decay_matrix(const PhysicalParams& par) {
  Mat2 heff = effective_hamiltonian(par);
  return Complex(0.0, 1.0) * (heff - heff.adjoint());
}

Mat2 lindblad_operator(const PhysicalParams& par) {
  Mat2 gamma = decay_matrix(par);
  Eigen::SelfAdjointEigenSolver<Mat2> es(gamma);
  Eigen::Vector2d ev = es.eigenvalues();
  if (ev.minCoeff() < kPositivityTol)
    throw std::domain_error("lindblad_operator: decay matrix not positive");
  Eigen::Vector2d root = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() *
         es.eigenvectors().adjoint();
}

std::pair<Mat2, Mat2> flux_operators(const PhysicalParams& par) {
  Mat2 gamma = decay_matrix(par);
  Eigen::SelfAdjointEigenSolver<Mat2> es(gamma);
  Eigen::Vector2d ev = es.eigenvalues();
  Eigen::Vector2d root_plus = ev.cwiseMax(0.0).cwiseSqrt();
  Eigen::Vector2d root_minus = (-ev).cwiseMax(0.0).cwiseSqrt();
  Mat2 u = es.eigenvectors();
  return {Mat2(u * root_plus.asDiagonal() * u.adjoint()),
          Mat2(u * root_minus.asDiagonal() * u.adjoint())};
}

PauliSet pauli_ops(BasisChoice choice) {
  Vec2 e1, e2;
  if (choice == BasisChoice::Strangeness) {
    e1 << 1.0, 0.0;
    e2 << 0.0, 1.0;
  } else {
    const double r = 1.0 / std::sqrt(2.0);
    e1 << r, r;    // K1 = (K0 + K0bar)/sqrt2
    e2 << r, -r;   // K2 = (K0 - K0bar)/sqrt2
  }
  PauliSet ops;
  ops.sigma_z = e1 * e1.adjoint() - e2 * e2.adjoint();
  ops.sigma_plus = e1 * e2.adjoint();
  return ops;
}

BlochForm bloch_decompose(const Mat2& tau) {
  if (!is_hermitian(tau))
    throw std::invalid_argument("bloch_decompose: input not Hermitian");
  BlochForm b;
  b.trace = tau.trace().real();
  b.n[0] = 2.0 * tau(0, 1).real();
  b.n[1] = -2.0 * tau(0, 1).imag();
  b.n[2] = (tau(0, 0) - tau(1, 1)).real();
  return b;
}

Mat2 bloch_reconstruct(const BlochForm& b) {
  Mat2 tau;
  tau(0, 0) = 0.5 * (b.trace + b.n[2]);
  tau(1, 1) = 0.5 * (b.trace - b.n[2]);
  tau(0, 1) = Complex(0.5 * b.n[0], -0.5 * b.n[1]);
  tau(1, 0) = std::conj(tau(0, 1));
  return tau;
}

bool is_hermitian(const Mat2& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Mat4& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Mat2& hermitian) {
  return Eigen::SelfAdjointEigenSolver<Mat2>(hermitian, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

double min_eigenvalue(const Mat4& hermitian) {
  return Eigen::SelfAdjointEigenSolver<Mat4>(hermitian, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

}  // namespace kaon
