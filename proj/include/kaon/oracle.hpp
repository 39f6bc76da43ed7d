#pragma once

// Independent verification paths: a fixed-step integrator for the
// master equation and brute-force concurrence evaluations. Nothing here may
// reuse the closed-form propagator it is meant to check.

#include "kaon/physics_core.hpp"
#include "kaon/single_kaon.hpp"

#include <cstdint>

namespace kaon {

struct IntegratorConfig {
  double step = 1e-3;  // in tau_S
};

/// Classical RK4 on the coupled blocks
///   dtau_ss/dt = -i[H, tau_ss] - 1/2 {Gamma, tau_ss}
///   dtau_ff/dt = A+ tau_ss A+^dag - A- tau_ss A-^dag
/// with H and the signed flux split of Gamma extracted from PhysicalParams.
/// Requires step * gamma_S <= 0.01.
SingleKaonState integrate_master(const SingleKaonState& state0, double t,
                                 const PhysicalParams& par,
                                 const IntegratorConfig& config = {});

/// Pure-state concurrence |<psi^*| sigma_y (x) sigma_y |psi>| / <psi|psi>.
double pure_concurrence_overlap(const Vec4& psi);

/// Seeded stochastic upper bound on the entanglement of formation proxy:
/// the minimum, over sampled pure-state decompositions of rho (square-root
/// ensemble rotated by random unitaries, with accepted local perturbations
/// of the best candidate), of the ensemble-average concurrence. Always
/// >= concurrence_wootters(rho) and converges to it as samples grow.
double decomposition_upper_bound(const Mat4& rho, int samples, uint64_t seed);

}  // namespace kaon
