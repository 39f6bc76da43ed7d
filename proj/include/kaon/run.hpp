#pragma once

// Scenario runners behind the command-line front end: parameter resolution,
// config-file handling and CSV time-series emission.

#include "kaon/checks.hpp"
#include "kaon/physics_core.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kaon {

enum class NormalizationMode { Raw, Surviving };

struct RunConfig {
  double gamma_S = 1.0;
  double gamma_ratio = 600.0;      // gamma_S / gamma_L
  double delta_m_ratio = 0.5;      // delta_m / gamma_S
  double epsilon_mag = 2.28e-3;
  double epsilon_phase = M_PI / 4.0;
  double t_max = 6.0;
  int steps = 600;
  BasisChoice basis = BasisChoice::Strangeness;
  NormalizationMode mode = NormalizationMode::Raw;
  std::string out = "-";
  uint64_t seed = 20070401;
};

PhysicalParams resolve_params(const RunConfig& cfg);

/// Flat key=value file, '#' comments. Unknown keys are an error.
void apply_config_file(RunConfig& cfg, const std::string& path);

BasisChoice parse_basis(const std::string& text);
NormalizationMode parse_mode(const std::string& text);

/// Complex literal of the form "a+bi" (either part optional).
Complex parse_complex(const std::string& text);

/// Columns t, P, V, S, M, trace_ss, trace_ff, bohr_residual.
/// initial: K0 | K0bar | KS | KL | comma-separated 2-component complex ket
/// (normalized on input).
void run_single(const RunConfig& cfg, const std::string& initial,
                std::ostream& os);

/// Columns t, P_left, V_left, C_closed, C_wootters, trace_ssss, jb_residual.
/// initial: singlet | psi_plus | phi_plus | phi_minus | fig2 | four
/// comma-separated complex lifetime amplitudes r_SS,r_SL,r_LS,r_LL.
void run_bipartite(const RunConfig& cfg, const std::string& initial,
                   std::ostream& os);

/// Runs every invariant suite, prints the report; returns 0 iff all pass.
int run_check(const RunConfig& cfg, std::ostream& os);

/// Prints the resolved PhysicalParams including derived quantities.
void print_params(const RunConfig& cfg, std::ostream& os);

}  // namespace kaon
