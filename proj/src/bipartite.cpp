#include "kaon/bipartite.hpp"

#include <cmath>
#include <stdexcept>

namespace kaon {

namespace {

Vec4 kron2(const Vec2& a, const Vec2& b) {
  Vec4 out;
  out << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
  return out;
}

// sigma_y (x) sigma_y, the spin-flip; real symmetric.
Mat4 flip_matrix() {
  Mat4 f = Mat4::Zero();
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}

Mat4 hermitian_sqrt(const Mat4& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho);
  Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

BipartiteAmplitudes from_strangeness(const Vec4& psi, const PhysicalParams& par) {
  auto [ds, dl] = dual_lifetime_states(par);
  const Vec2 duals[2] = {ds, dl};
  Complex c[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c[i][j] = kron2(duals[i], duals[j]).adjoint() * psi;
  BipartiteAmplitudes amps;
  amps.r_SS = c[0][0];
  amps.r_SL = c[0][1];
  amps.r_LS = c[1][0];
  amps.r_LL = c[1][1];
  amps.N0 = 1.0;
  return amps;
}

Vec4 to_strangeness(const BipartiteAmplitudes& amps, const PhysicalParams& par) {
  auto [ks, kl] = lifetime_states(par);
  return (amps.r_SS * kron2(ks, ks) + amps.r_SL * kron2(ks, kl) +
          amps.r_LS * kron2(kl, ks) + amps.r_LL * kron2(kl, kl)) /
         amps.N0;
}

BipartiteAmplitudes singlet(const PhysicalParams& par) {
  // (|K0 K0bar> - |K0bar K0>)/sqrt2 = N^2/(2 sqrt2 p q) (|K_S K_L> - |K_L K_S>)
  BipartiteAmplitudes amps;
  const Complex coeff =
      par.norm_N * par.norm_N / (2.0 * std::sqrt(2.0) * par.p * par.q);
  amps.r_SS = 0.0;
  amps.r_LL = 0.0;
  amps.r_SL = coeff;
  amps.r_LS = -coeff;
  return amps;
}

std::array<BipartiteAmplitudes, 4> bell_states(const PhysicalParams& par) {
  const double r = 1.0 / std::sqrt(2.0);
  Vec4 psi_minus, psi_plus, phi_plus, phi_minus;
  psi_minus << 0.0, r, -r, 0.0;
  psi_plus << 0.0, r, r, 0.0;
  phi_plus << r, 0.0, 0.0, r;
  phi_minus << r, 0.0, 0.0, -r;
  return {from_strangeness(psi_minus, par), from_strangeness(psi_plus, par),
          from_strangeness(phi_plus, par), from_strangeness(phi_minus, par)};
}

BipartiteAmplitudes fig2_state(const PhysicalParams& par) {
  auto [ks, kl] = lifetime_states(par);
  Vec4 psi_minus;
  const double r = 1.0 / std::sqrt(2.0);
  psi_minus << 0.0, r, -r, 0.0;
  Vec4 v = (psi_minus + kron2(ks, ks)) / std::sqrt(2.0);
  v.normalize();  // components overlap for epsilon != 0
  return from_strangeness(v, par);
}

BipartiteAmplitudes evolve_amplitudes(const BipartiteAmplitudes& amps, double t,
                                      const PhysicalParams& par) {
  if (t < 0.0)
    throw std::invalid_argument("evolve_amplitudes: t must be nonnegative");
  const Complex i(0.0, 1.0);
  const Complex es = std::exp(-i * par.lambda_S * t);
  const Complex el = std::exp(-i * par.lambda_L * t);
  BipartiteAmplitudes out = amps;
  out.r_SS *= es * es;
  out.r_SL *= es * el;
  out.r_LS *= el * es;
  out.r_LL *= el * el;
  out.time = amps.time + t;
  return out;
}

BipartiteState to_density(const BipartiteAmplitudes& amps,
                          const PhysicalParams& par) {
  BipartiteState state;
  state.time = amps.time;
  Vec4 psi = to_strangeness(amps, par);
  state.rho_ssss = psi * psi.adjoint();
  const double p_ss = psi.squaredNorm();

  // Single-sided survival probabilities: rebuild the t = 0 state, take its
  // marginals and push each through the one-kaon propagator. The opposite
  // kaon's surviving + final evolution is trace preserving, so this is the
  // full survival probability of one side.
  const Complex i(0.0, 1.0);
  BipartiteAmplitudes initial = amps;
  const Complex es = std::exp(i * par.lambda_S * amps.time);
  const Complex el = std::exp(i * par.lambda_L * amps.time);
  initial.r_SS *= es * es;
  initial.r_SL *= es * el;
  initial.r_LS *= el * es;
  initial.r_LL *= el * el;
  initial.time = 0.0;
  Vec4 psi0 = to_strangeness(initial, par);
  Mat4 rho0 = psi0 * psi0.adjoint();

  BipartiteState at0;
  at0.rho_ssss = rho0;
  Mat2 sigma_left = reduced_state(at0, Side::Left);
  Mat2 sigma_right = reduced_state(at0, Side::Right);
  Mat2 v = propagator(par, amps.time);
  const double p_left = (v * sigma_left * v.adjoint()).trace().real();
  const double p_right = (v * sigma_right * v.adjoint()).trace().real();

  state.decayed_weights[0] = std::max(0.0, p_left - p_ss);           // sf
  state.decayed_weights[1] = std::max(0.0, p_right - p_ss);          // fs
  state.decayed_weights[2] = std::max(0.0, 1.0 - p_left - p_right + p_ss);
  return state;
}

Mat2 reduced_state(const BipartiteState& state, Side side) {
  Mat2 out = Mat2::Zero();
  const Mat4& rho = state.rho_ssss;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k)
        out(a, b) += (side == Side::Left) ? rho(2 * a + k, 2 * b + k)
                                          : rho(a + 2 * k, b + 2 * k);
  return out;
}

double closed_form_C(const BipartiteAmplitudes& amps, const PhysicalParams& par) {
  const double prefactor = 1.0 - par.delta * par.delta;
  return prefactor * 2.0 *
         std::abs(amps.r_SS * amps.r_LL - amps.r_SL * amps.r_LS) /
         (amps.N0 * amps.N0);
}

double concurrence_wootters(const Mat4& rho, bool normalized) {
  if (!is_hermitian(rho))
    throw std::invalid_argument("concurrence_wootters: input not Hermitian");
  const double tr = rho.trace().real();
  if (min_eigenvalue(rho) < kPositivityTol * std::max(1.0, tr))
    throw std::invalid_argument("concurrence_wootters: input not PSD");

  Mat4 r = rho;
  if (normalized) {
    if (tr <= kHermitianTol)
      throw std::domain_error("concurrence_wootters: zero trace");
    r /= tr;
  }
  // The l_i are the singular values of sqrt(rho)^T F sqrt(rho); their squares
  // are the eigenvalues of rho rho~.
  Mat4 s = hermitian_sqrt(r);
  Mat4 m = s.transpose() * flip_matrix() * s;
  Eigen::JacobiSVD<Mat4> svd(m);
  Eigen::Vector4d l = svd.singularValues();  // decreasing
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double jakob_bergou_residual(const BipartiteState& state, Side side,
                             BasisChoice choice) {
  const double tr = state.trace_ssss();
  if (tr <= kHermitianTol)
    throw std::domain_error("jakob_bergou_residual: state fully decayed");
  Mat2 sigma = reduced_state(state, side);
  PauliSet ops = pauli_ops(choice);
  const double p = std::abs((ops.sigma_z * sigma).trace());
  const double v = 2.0 * std::abs((ops.sigma_plus * sigma).trace());
  const double c = concurrence_wootters(state.rho_ssss);
  return (p * p + v * v + c * c) / (tr * tr) - 1.0;
}

double concurrence_decay_residual(const BipartiteAmplitudes& amps, double t,
                                  const PhysicalParams& par) {
  const double c0 = concurrence_wootters(to_density(amps, par).rho_ssss);
  const double ct = concurrence_wootters(
      to_density(evolve_amplitudes(amps, t, par), par).rho_ssss);
  return ct - c0 * std::exp(-2.0 * par.gamma_bar * t);
}

}  // namespace kaon
