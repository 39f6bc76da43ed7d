#pragma once

// Wigner-Weisskopf evolution of a single-kaon block density operator and the
// complementarity observables built on its surviving block.

#include "kaon/physics_core.hpp"

#include <utility>

namespace kaon {

/// Block density operator on the surviving (+) final direct sum.
/// tau_ss and tau_ff are both kept in strangeness coordinates; the sf/fs
/// blocks decouple from the dynamics and are identically zero.
struct SingleKaonState {
  Mat2 tau_ss = Mat2::Zero();
  Mat2 tau_ff = Mat2::Zero();
  double time = 0.0;

  double trace_ss() const { return tau_ss.trace().real(); }
  double trace_ff() const { return tau_ff.trace().real(); }
};

/// Rank-1 surviving block from a unit ket, empty final block, time 0.
SingleKaonState pure_state(const Vec2& ket);

/// General trace-1 Hermitian PSD surviving block, empty final block, time 0.
SingleKaonState mixed_state(const Mat2& tau_ss);

/// Non-unitary surviving-block propagator
/// V(t) = e^{-i lambda_S t} |K_S><dual_S| + e^{-i lambda_L t} |K_L><dual_L|.
Mat2 propagator(const PhysicalParams& par, double t);

/// Lifetime-coefficient matrix c with tau = sum_ij c_ij |K_i><K_j|,
/// indices ordered (S, L).
Mat2 lifetime_coefficients(const Mat2& tau_ss, const PhysicalParams& par);

/// Evolves both blocks forward by t: tau_ss -> V tau_ss V^dag, and tau_ff
/// accumulates the integrated decay flux A tau_ss(u) A^dag (closed form).
/// Total trace is conserved exactly. Re-evolution of an evolved state is the
/// semigroup composition.
SingleKaonState evolve(const SingleKaonState& state, double t,
                       const PhysicalParams& par);

/// Final-block lifetime-channel weights ((1-e^{-gamma_L t}) tau_LL,
/// (1-e^{-gamma_S t}) tau_SS) for an initial state evolved by t. Only their
/// sum is observable; for epsilon != 0 the surviving-block coherence
/// contributes an additional cross flux not captured here.
Eigen::Vector2d final_lifetime_weights(const SingleKaonState& initial, double t,
                                       const PhysicalParams& par);

/// P = |Tr(sigma_z tau_ss)| for the chosen basis.
double predictability(const SingleKaonState& state, BasisChoice choice);

/// V = 2 |Tr(sigma^+ tau_ss)|.
double coherence(const SingleKaonState& state, BasisChoice choice);

/// S = sqrt(P^2 + V^2); basis independent, equals Tr tau_ss for initially
/// pure states.
double single_property(const SingleKaonState& state, BasisChoice choice);

/// M = sqrt(2 ((Tr tau_ss)^2 - Tr(tau_ss^2))).
double mixedness(const SingleKaonState& state);

/// (S^2 + M^2) / (Tr tau_ss)^2 - 1; vanishes for every physical state.
double bohr_residual(const SingleKaonState& state, BasisChoice choice);

/// (sqrt(S^2 + M^2), Tr tau_ff); the two summands of the unit total.
std::pair<double, double> info_balance(const SingleKaonState& state,
                                       BasisChoice choice);

}  // namespace kaon
