#include "kaon/single_kaon.hpp"

#include <cmath>
#include <stdexcept>

namespace kaon {

SingleKaonState pure_state(const Vec2& ket) {
  if (std::abs(ket.norm() - 1.0) > kHermitianTol)
    throw std::invalid_argument("pure_state: ket must be unit norm");
  SingleKaonState s;
  s.tau_ss = ket * ket.adjoint();
  return s;
}

SingleKaonState mixed_state(const Mat2& tau_ss) {
  if (!is_hermitian(tau_ss))
    throw std::invalid_argument("mixed_state: tau_ss must be Hermitian");
  if (min_eigenvalue(Mat2(0.5 * (tau_ss + tau_ss.adjoint()))) < kPositivityTol)
    throw std::invalid_argument("mixed_state: tau_ss must be positive semidefinite");
  if (std::abs(tau_ss.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("mixed_state: initial trace must be 1");
  SingleKaonState s;
  s.tau_ss = 0.5 * (tau_ss + tau_ss.adjoint());
  return s;
}

Mat2 propagator(const PhysicalParams& par, double t) {
  auto [ks, kl] = lifetime_states(par);
  auto [ds, dl] = dual_lifetime_states(par);
  const Complex i(0.0, 1.0);
  return std::exp(-i * par.lambda_S * t) * ks * ds.adjoint() +
         std::exp(-i * par.lambda_L * t) * kl * dl.adjoint();
}

Mat2 lifetime_coefficients(const Mat2& tau_ss, const PhysicalParams& par) {
  auto [ds, dl] = dual_lifetime_states(par);
  Mat2 duals;
  duals.col(0) = ds;
  duals.col(1) = dl;
  return duals.adjoint() * tau_ss * duals;
}

SingleKaonState evolve(const SingleKaonState& state, double t,
                       const PhysicalParams& par) {
  if (t < 0.0) throw std::invalid_argument("evolve: t must be nonnegative");

  SingleKaonState out;
  out.time = state.time + t;

  Mat2 v = propagator(par, t);
  out.tau_ss = v * state.tau_ss * v.adjoint();

  // Decay flux integral: tau_ff(t) = tau_ff(0) + sum_ab c_ab G_ab(t)
  // [(A+ K_a)(A+ K_b)^dag - (A- K_a)(A- K_b)^dag] with G_ab(t) =
  // int_0^t e^{-i(lambda_a - conj(lambda_b)) u} du. The a = b terms
  // reproduce the lifetime-channel weights (1 - e^{-gamma_a t}) c_aa; the
  // cross terms carry the coherence flux that keeps the total trace exactly
  // conserved for epsilon != 0.
  Mat2 c = lifetime_coefficients(state.tau_ss, par);
  auto [a_plus, a_minus] = flux_operators(par);
  auto [ks, kl] = lifetime_states(par);
  const Vec2 plus_ket[2] = {a_plus * ks, a_plus * kl};
  const Vec2 minus_ket[2] = {a_minus * ks, a_minus * kl};
  const Complex lambda[2] = {par.lambda_S, par.lambda_L};
  const Complex i(0.0, 1.0);

  out.tau_ff = state.tau_ff;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Complex rate = i * (lambda[a] - std::conj(lambda[b]));
      const Complex g = (1.0 - std::exp(-rate * t)) / rate;
      out.tau_ff += c(a, b) * g *
                    (plus_ket[a] * plus_ket[b].adjoint() -
                     minus_ket[a] * minus_ket[b].adjoint());
    }
  }
  // symmetrize away eigensolver round-off
  out.tau_ss = 0.5 * (out.tau_ss + out.tau_ss.adjoint()).eval();
  out.tau_ff = 0.5 * (out.tau_ff + out.tau_ff.adjoint()).eval();
  return out;
}

Eigen::Vector2d final_lifetime_weights(const SingleKaonState& initial, double t,
                                       const PhysicalParams& par) {
  Mat2 c = lifetime_coefficients(initial.tau_ss, par);
  Eigen::Vector2d w;
  w[0] = (1.0 - std::exp(-par.gamma_L * t)) * c(1, 1).real();
  w[1] = (1.0 - std::exp(-par.gamma_S * t)) * c(0, 0).real();
  return w;
}

double predictability(const SingleKaonState& state, BasisChoice choice) {
  return std::abs((pauli_ops(choice).sigma_z * state.tau_ss).trace());
}

double coherence(const SingleKaonState& state, BasisChoice choice) {
  return 2.0 * std::abs((pauli_ops(choice).sigma_plus * state.tau_ss).trace());
}

double single_property(const SingleKaonState& state, BasisChoice choice) {
  const double p = predictability(state, choice);
  const double v = coherence(state, choice);
  return std::sqrt(p * p + v * v);
}

double mixedness(const SingleKaonState& state) {
  const double tr = state.trace_ss();
  const double tr2 = (state.tau_ss * state.tau_ss).trace().real();
  double m2 = 2.0 * (tr * tr - tr2);
  if (m2 < 0.0) {
    if (m2 < -1e-12)
      throw std::domain_error("mixedness: negative radicand beyond tolerance");
    m2 = 0.0;
  }
  return std::sqrt(m2);
}

double bohr_residual(const SingleKaonState& state, BasisChoice choice) {
  const double tr = state.trace_ss();
  if (tr <= kHermitianTol)
    throw std::domain_error("bohr_residual: state fully decayed");
  const double s = single_property(state, choice);
  const double m = mixedness(state);
  return (s * s + m * m) / (tr * tr) - 1.0;
}

std::pair<double, double> info_balance(const SingleKaonState& state,
                                       BasisChoice choice) {
  const double s = single_property(state, choice);
  const double m = mixedness(state);
  return {std::sqrt(s * s + m * m), state.trace_ff()};
}

}  // namespace kaon
