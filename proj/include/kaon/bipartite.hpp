#pragma once

// Two-kaon states: lifetime-basis amplitudes, their Wigner-Weisskopf
// evolution, Wootters concurrence and the bipartite complementarity
// relation. The 4x4 surviving block lives in strangeness (x) strangeness
// coordinates, tensor index = 2*left + right.

#include "kaon/physics_core.hpp"
#include "kaon/single_kaon.hpp"

#include <array>

namespace kaon {

enum class Side { Left, Right };

/// Lifetime-basis expansion of an initially pure two-kaon state:
/// |psi> = (1/N0) sum_ij r_ij |K_i> (x) |K_j>, i,j in {S, L}.
/// Kept divided by N(0) at all times, so the state is unnormalized for t > 0.
struct BipartiteAmplitudes {
  Complex r_SS, r_SL, r_LS, r_LL;
  double N0 = 1.0;
  double time = 0.0;
};

/// Surviving 4x4 block plus the traces of the three decayed sectors
/// (left-survives/right-decays, the reverse, both decay).
struct BipartiteState {
  Mat4 rho_ssss = Mat4::Zero();
  Eigen::Vector3d decayed_weights = Eigen::Vector3d::Zero();
  double time = 0.0;

  double trace_ssss() const { return rho_ssss.trace().real(); }
};

/// Lifetime amplitudes of a unit strangeness-coordinate 4-vector (N0 = 1).
BipartiteAmplitudes from_strangeness(const Vec4& psi, const PhysicalParams& par);

/// Strangeness-coordinate vector (1/N0) sum r_ij K_i (x) K_j.
Vec4 to_strangeness(const BipartiteAmplitudes& amps, const PhysicalParams& par);

/// The antisymmetric state (|K0 K0bar> - |K0bar K0>)/sqrt2 produced at a
/// Phi factory; r_SS = r_LL = 0, r_SL = -r_LS.
BipartiteAmplitudes singlet(const PhysicalParams& par);

/// All four maximally entangled strangeness-basis Bell states
/// (psi-, psi+, phi+, phi-) as lifetime amplitudes.
std::array<BipartiteAmplitudes, 4> bell_states(const PhysicalParams& par);

/// The superposition (psi- + K_S (x) K_S)/sqrt2, renormalized at t = 0
/// (the two components are not orthogonal for epsilon != 0).
BipartiteAmplitudes fig2_state(const PhysicalParams& par);

/// r_ij -> r_ij e^{-i lambda_i t} e^{-i lambda_j t}; N0 stays fixed.
BipartiteAmplitudes evolve_amplitudes(const BipartiteAmplitudes& amps, double t,
                                      const PhysicalParams& par);

/// rho_ssss = |psi(t)><psi(t)| plus decayed-sector traces inferred from the
/// single-sided survival probabilities; the four sector traces sum to 1.
BipartiteState to_density(const BipartiteAmplitudes& amps,
                          const PhysicalParams& par);

/// Partial trace of rho_ssss over the other kaon.
Mat2 reduced_state(const BipartiteState& state, Side side);

/// Closed-form two-particle property
/// C = (1 - delta^2) 2 |r_SS(t) r_LL(t) - r_SL(t) r_LS(t)| / N0^2.
double closed_form_C(const BipartiteAmplitudes& amps, const PhysicalParams& par);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4} where the l_i are the
/// decreasing square roots of the eigenvalues of rho rho~ with
/// rho~ = (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y). Evaluated as the
/// singular values of sqrt(rho)^T (sigma_y (x) sigma_y) sqrt(rho), which is
/// algebraically the same and stable near zero eigenvalues. Homogeneous of
/// degree 1 in rho unless `normalized` divides by the trace first.
double concurrence_wootters(const Mat4& rho, bool normalized = false);

/// [P^2 + V^2 + C^2] / (Tr rho_ssss)^2 - 1; zero for every pure surviving
/// block, at most zero for mixed ones.
double jakob_bergou_residual(const BipartiteState& state, Side side,
                             BasisChoice choice);

/// C(rho(t)) - C(rho(0)) e^{-2 gamma_bar t}, both ends via Wootters.
double concurrence_decay_residual(const BipartiteAmplitudes& amps, double t,
                                  const PhysicalParams& par);

}  // namespace kaon
