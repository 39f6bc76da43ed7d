#pragma once

// Physical parameters of the neutral-kaon system and the three bases
// (strangeness, CP, lifetime) everything else is expressed in.
//
// Internally every density operator is kept in the orthonormal strangeness
// basis {K0, K0bar}; the lifetime basis {K_S, K_L} is non-orthonormal for
// epsilon != 0 and only ever appears as amplitude coefficients together
// with its biorthogonal duals.

#include <Eigen/Dense>

#include <complex>
#include <utility>

namespace kaon {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPositivityTol = -1e-10;

/// Which orthonormal Pauli set observables refer to. The lifetime basis is
/// deliberately not an option here: it is non-orthonormal for epsilon != 0.
enum class BasisChoice { Strangeness, CP };

/// Decay rates, strangeness oscillation frequency and the CP-violation
/// parameter, plus everything derived from them. Units: time in tau_S,
/// rates in 1/tau_S (gamma_S = 1 by default).
struct PhysicalParams {
  double gamma_S = 1.0;
  double gamma_L = 1.0 / 600.0;
  double delta_m = 0.5;   // m_L - m_S
  Complex epsilon;

  // derived, filled in by derive_params
  Complex p;              // 1 + epsilon
  Complex q;              // 1 - epsilon
  double norm_N = 0.0;    // N, with N^2 = |p|^2 + |q|^2
  double delta = 0.0;     // <K_S|K_L> = (|p|^2 - |q|^2) / N^2
  double gamma_bar = 0.0; // (gamma_S + gamma_L) / 2
  // Convention m_S = 0, m_L = delta_m; only delta_m enters observables.
  Complex lambda_S;       // m_S - i gamma_S / 2
  Complex lambda_L;       // m_L - i gamma_L / 2
};

/// Validates the rates and computes all derived fields.
/// Requires gamma_S >= gamma_L > 0 (equality allowed: degenerate lifetimes
/// are a legitimate limit, the oscillation survives).
PhysicalParams derive_params(double gamma_S, double gamma_L, double delta_m,
                             Complex epsilon);

/// gamma_S = 1, gamma_L = 1/600, delta_m = 1/2, epsilon = 2.28e-3 e^{i pi/4}.
PhysicalParams default_params();

/// Right eigenvectors of H_eff in strangeness coordinates:
/// K_S = (p, -q)/N, K_L = (p, q)/N. Unit norm, overlap <K_S|K_L> = delta.
std::pair<Vec2, Vec2> lifetime_states(const PhysicalParams& par);

/// Left-eigenvector duals: <dual_i|K_j> = delta_ij exactly. Coincide with
/// the lifetime states at epsilon = 0.
std::pair<Vec2, Vec2> dual_lifetime_states(const PhysicalParams& par);

/// Non-Hermitian effective Hamiltonian H_eff = lambda_S |K_S><dual_S| +
/// lambda_L |K_L><dual_L| in strangeness coordinates.
Mat2 effective_hamiltonian(const PhysicalParams& par);

/// Hermitian split of H_eff = H - (i/2) Gamma.
Mat2 mass_matrix(const PhysicalParams& par);     // H
Mat2 decay_matrix(const PhysicalParams& par);    // Gamma = i(H_eff - H_eff^dag)
/// Hermitian PSD square root A of Gamma, the Lindblad operator (Gamma = A^dag A).
/// Throws if Gamma is indefinite; use flux_operators for the general case.
Mat2 lindblad_operator(const PhysicalParams& par);

/// Signed spectral split Gamma = A_plus^dag A_plus - A_minus^dag A_minus.
/// For physical parameter sets Gamma is PSD, A_minus = 0 and A_plus is the
/// Lindblad operator; large epsilon with a steep lifetime hierarchy makes
/// Gamma indefinite and the decay flux picks up the signed correction.
std::pair<Mat2, Mat2> flux_operators(const PhysicalParams& par);

struct PauliSet {
  Mat2 sigma_z;
  Mat2 sigma_plus;
};

/// sigma_z and sigma^+ of the chosen orthonormal basis, expressed in
/// strangeness coordinates. CP eigenstates: K1 = (K0 + K0bar)/sqrt2,
/// K2 = (K0 - K0bar)/sqrt2.
PauliSet pauli_ops(BasisChoice choice);

struct BlochForm {
  double trace;
  Eigen::Vector3d n;
};

/// tau = (trace/2) 1 + (1/2) n.sigma for a Hermitian 2x2 input.
BlochForm bloch_decompose(const Mat2& tau);
Mat2 bloch_reconstruct(const BlochForm& b);

bool is_hermitian(const Mat2& m, double tol = kHermitianTol);
bool is_hermitian(const Mat4& m, double tol = kHermitianTol);
double min_eigenvalue(const Mat2& hermitian);
double min_eigenvalue(const Mat4& hermitian);

}  // namespace kaon
