#include "kaon/run.hpp"

#include "kaon/bipartite.hpp"
#include "kaon/single_kaon.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kaon {

namespace {

// Locale-independent full-precision formatting.
std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

std::vector<double> time_grid(const RunConfig& cfg) {
  std::vector<double> grid(cfg.steps);
  for (int i = 0; i < cfg.steps; ++i)
    grid[i] = cfg.t_max * i / (cfg.steps - 1);
  return grid;
}

}  // namespace

PhysicalParams resolve_params(const RunConfig& cfg) {
  if (!(cfg.t_max > 0.0))
    throw std::invalid_argument("config: t_max must be positive");
  if (cfg.steps < 2) throw std::invalid_argument("config: steps must be >= 2");
  if (!(cfg.gamma_ratio >= 1.0))
    throw std::invalid_argument("config: gamma_ratio must be >= 1");
  return derive_params(cfg.gamma_S, cfg.gamma_S / cfg.gamma_ratio,
                       cfg.gamma_S * cfg.delta_m_ratio,
                       std::polar(cfg.epsilon_mag, cfg.epsilon_phase));
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: missing '=' at line " +
                                  std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "gamma_S") cfg.gamma_S = std::stod(value);
    else if (key == "gamma_ratio") cfg.gamma_ratio = std::stod(value);
    else if (key == "delta_m_ratio") cfg.delta_m_ratio = std::stod(value);
    else if (key == "epsilon_mag") cfg.epsilon_mag = std::stod(value);
    else if (key == "epsilon_phase") cfg.epsilon_phase = std::stod(value);
    else if (key == "t_max") cfg.t_max = std::stod(value);
    else if (key == "steps") cfg.steps = std::stoi(value);
    else if (key == "basis") cfg.basis = parse_basis(value);
    else if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "out") cfg.out = value;
    else if (key == "seed") cfg.seed = std::stoull(value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "' at line " +
                                  std::to_string(lineno));
  }
}

BasisChoice parse_basis(const std::string& text) {
  if (text == "strangeness") return BasisChoice::Strangeness;
  if (text == "cp") return BasisChoice::CP;
  throw std::invalid_argument("basis must be 'strangeness' or 'cp'");
}

NormalizationMode parse_mode(const std::string& text) {
  if (text == "raw") return NormalizationMode::Raw;
  if (text == "surviving") return NormalizationMode::Surviving;
  throw std::invalid_argument("mode must be 'raw' or 'surviving'");
}

Complex parse_complex(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  // split "a+bi" at the last top-level sign that is not an exponent sign
  size_t split = std::string::npos;
  for (size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') &&
        s[i - 1] != 'e' && s[i - 1] != 'E')
      split = i;
  }

  auto parse_real = [](const std::string& part) {
    size_t used = 0;
    double v = std::stod(part, &used);
    if (used != part.size())
      throw std::invalid_argument("bad numeric literal '" + part + "'");
    return v;
  };
  auto parse_imag = [&](std::string part) {
    part.pop_back();  // trailing 'i'
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part);
  };

  if (s.back() == 'i') {
    if (split == std::string::npos) return Complex(0.0, parse_imag(s));
    return Complex(parse_real(s.substr(0, split)), parse_imag(s.substr(split)));
  }
  if (split != std::string::npos)
    throw std::invalid_argument("bad complex literal '" + s + "'");
  return Complex(parse_real(s), 0.0);
}

void run_single(const RunConfig& cfg, const std::string& initial,
                std::ostream& os) {
  PhysicalParams par = resolve_params(cfg);
  auto [ks, kl] = lifetime_states(par);

  Vec2 ket;
  if (initial == "K0") ket << 1.0, 0.0;
  else if (initial == "K0bar") ket << 0.0, 1.0;
  else if (initial == "KS") ket = ks;
  else if (initial == "KL") ket = kl;
  else {
    auto parts = split_commas(initial);
    if (parts.size() != 2)
      throw std::invalid_argument("single: initial must be K0, K0bar, KS, KL "
                                  "or two comma-separated complex components");
    ket << parse_complex(parts[0]), parse_complex(parts[1]);
    if (ket.norm() <= 0.0)
      throw std::invalid_argument("single: zero initial vector");
    ket.normalize();
  }
  SingleKaonState s0 = pure_state(ket);

  os << "t,P,V,S,M,trace_ss,trace_ff,bohr_residual\n";
  for (double t : time_grid(cfg)) {
    SingleKaonState s = evolve(s0, t, par);
    double p = predictability(s, cfg.basis);
    double v = coherence(s, cfg.basis);
    double sp = single_property(s, cfg.basis);
    double m = mixedness(s);
    const double tr = s.trace_ss();
    const double residual = bohr_residual(s, cfg.basis);
    if (cfg.mode == NormalizationMode::Surviving) {
      p /= tr;
      v /= tr;
      sp /= tr;
      m /= tr;
    }
    os << fmt(t) << ',' << fmt(p) << ',' << fmt(v) << ',' << fmt(sp) << ','
       << fmt(m) << ',' << fmt(tr) << ',' << fmt(s.trace_ff()) << ','
       << fmt(residual) << '\n';
  }
}

void run_bipartite(const RunConfig& cfg, const std::string& initial,
                   std::ostream& os) {
  PhysicalParams par = resolve_params(cfg);

  BipartiteAmplitudes amps;
  if (initial == "singlet") amps = singlet(par);
  else if (initial == "psi_plus") amps = bell_states(par)[1];
  else if (initial == "phi_plus") amps = bell_states(par)[2];
  else if (initial == "phi_minus") amps = bell_states(par)[3];
  else if (initial == "fig2") amps = fig2_state(par);
  else {
    auto parts = split_commas(initial);
    if (parts.size() != 4)
      throw std::invalid_argument(
          "bipartite: initial must be singlet, psi_plus, phi_plus, phi_minus, "
          "fig2 or four comma-separated complex amplitudes");
    amps.r_SS = parse_complex(parts[0]);
    amps.r_SL = parse_complex(parts[1]);
    amps.r_LS = parse_complex(parts[2]);
    amps.r_LL = parse_complex(parts[3]);
    amps.N0 = 1.0;
    const double norm = to_strangeness(amps, par).norm();
    if (norm <= 0.0)
      throw std::invalid_argument("bipartite: zero initial amplitudes");
    amps.N0 = norm;
  }

  os << "t,P_left,V_left,C_closed,C_wootters,trace_ssss,jb_residual\n";
  for (double t : time_grid(cfg)) {
    BipartiteAmplitudes at = evolve_amplitudes(amps, t, par);
    BipartiteState state = to_density(at, par);
    Mat2 sigma = reduced_state(state, Side::Left);
    PauliSet ops = pauli_ops(cfg.basis);
    double p = std::abs((ops.sigma_z * sigma).trace());
    double v = 2.0 * std::abs((ops.sigma_plus * sigma).trace());
    double c_closed = closed_form_C(at, par);
    double c_wootters = concurrence_wootters(state.rho_ssss);
    const double tr = state.trace_ssss();
    const double jb = jakob_bergou_residual(state, Side::Left, cfg.basis);
    if (cfg.mode == NormalizationMode::Surviving) {
      p /= tr;
      v /= tr;
      c_closed /= tr;
      c_wootters /= tr;
    }
    os << fmt(t) << ',' << fmt(p) << ',' << fmt(v) << ',' << fmt(c_closed)
       << ',' << fmt(c_wootters) << ',' << fmt(tr) << ',' << fmt(jb) << '\n';
  }
}

int run_check(const RunConfig& cfg, std::ostream& os) {
  PhysicalParams par = resolve_params(cfg);
  auto results = run_all_checks(par, cfg.seed);
  bool all_pass = true;
  for (const auto& r : results) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": samples "
       << r.samples << ", max residual " << fmt(r.max_residual)
       << " (tolerance " << fmt(r.tolerance) << ")\n";
    all_pass = all_pass && r.pass;
  }
  os << (all_pass ? "all checks passed\n" : "CHECK FAILURE\n");
  return all_pass ? 0 : 1;
}

void print_params(const RunConfig& cfg, std::ostream& os) {
  PhysicalParams par = resolve_params(cfg);
  os << "gamma_S   = " << fmt(par.gamma_S) << '\n'
     << "gamma_L   = " << fmt(par.gamma_L) << '\n'
     << "delta_m   = " << fmt(par.delta_m) << '\n'
     << "epsilon   = " << fmt(par.epsilon.real()) << " + "
     << fmt(par.epsilon.imag()) << "i\n"
     << "p         = " << fmt(par.p.real()) << " + " << fmt(par.p.imag())
     << "i\n"
     << "q         = " << fmt(par.q.real()) << " + " << fmt(par.q.imag())
     << "i\n"
     << "N         = " << fmt(par.norm_N) << '\n'
     << "delta     = " << fmt(par.delta) << '\n'
     << "gamma_bar = " << fmt(par.gamma_bar) << '\n'
     << "lambda_S  = " << fmt(par.lambda_S.real()) << " + "
     << fmt(par.lambda_S.imag()) << "i\n"
     << "lambda_L  = " << fmt(par.lambda_L.real()) << " + "
     << fmt(par.lambda_L.imag()) << "i\n";
}

}  // namespace kaon
