#include "kaon/checks.hpp"

#include "kaon/bipartite.hpp"
#include "kaon/oracle.hpp"
#include "kaon/single_kaon.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace kaon {

namespace {

Vec2 random_ket2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec2 v;
  v << Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

Vec4 random_ket4(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

Mat2 random_density2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Mat2 rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Mat4 random_density4(std::mt19937_64& rng, int rank = 4) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Mat4 rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Mat2 random_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat2> qr(g);
  Mat2 q = qr.householderQ();
  Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

SingleKaonState random_single_state(std::mt19937_64& rng, bool pure) {
  return pure ? pure_state(random_ket2(rng)) : mixed_state(random_density2(rng));
}

Mat4 kron22(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

struct SuiteBuilder {
  std::vector<SuiteResult> results;

  void add(const std::string& name, int samples, double max_residual,
           double tolerance) {
    results.push_back({name, samples, max_residual, tolerance,
                       max_residual <= tolerance});
  }
};

void check_basis_machinery(SuiteBuilder& b, uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> mag(0.0, 0.45);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

  double worst_overlap = 0.0;
  double worst_dual = 0.0;
  const int n = 50;
  for (int i = 0; i < n; ++i) {
    auto par = derive_params(1.0, 1.0 / 600.0, 0.5,
                             std::polar(mag(rng), phase(rng)));
    auto [ks, kl] = lifetime_states(par);
    worst_overlap = std::max(worst_overlap,
                             std::abs(Complex(ks.adjoint() * kl) - par.delta));
    worst_overlap = std::max(worst_overlap, std::abs(ks.norm() - 1.0));
    worst_overlap = std::max(worst_overlap, std::abs(kl.norm() - 1.0));

    auto [ds, dl] = dual_lifetime_states(par);
    worst_dual = std::max({worst_dual,
                           std::abs(Complex(ds.adjoint() * ks) - 1.0),
                           std::abs(Complex(dl.adjoint() * kl) - 1.0),
                           std::abs(Complex(ds.adjoint() * kl)),
                           std::abs(Complex(dl.adjoint() * ks))});
  }
  b.add("lifetime-overlap", n, worst_overlap, 1e-12);
  b.add("biorthogonality", n, worst_dual, 1e-12);

  double worst_pauli = 0.0;
  for (BasisChoice choice : {BasisChoice::Strangeness, BasisChoice::CP}) {
    PauliSet ops = pauli_ops(choice);
    worst_pauli = std::max(
        {worst_pauli,
         (ops.sigma_z * ops.sigma_z - Mat2::Identity()).cwiseAbs().maxCoeff(),
         std::abs(ops.sigma_z.trace()),
         (ops.sigma_plus * ops.sigma_plus).cwiseAbs().maxCoeff()});
    Mat2 sym = ops.sigma_plus + ops.sigma_plus.adjoint();
    worst_pauli = std::max(worst_pauli,
                           (sym - sym.adjoint()).cwiseAbs().maxCoeff());
  }
  b.add("pauli-algebra", 2, worst_pauli, 1e-14);

  std::mt19937_64 rng2(seed ^ 0x6a09e667f3bcc909ull);
  double worst_bloch = 0.0;
  const int nb = 100;
  for (int i = 0; i < nb; ++i) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat2 g;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) g(r, c) = Complex(gauss(rng2), gauss(rng2));
    Mat2 h = 0.5 * (g + g.adjoint());
    Mat2 back = bloch_reconstruct(bloch_decompose(h));
    worst_bloch = std::max(worst_bloch, (back - h).cwiseAbs().maxCoeff());
  }
  b.add("bloch-roundtrip", nb, worst_bloch, 1e-12);
}

void check_single_kaon(SuiteBuilder& b, const PhysicalParams& par,
                       uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xbb67ae8584caa73bull);

  // Bohr identity and information balance over the full random sweep.
  // Monotone trace decay requires a PSD decay matrix; for indefinite Gamma
  // (large epsilon against a steep lifetime hierarchy) only conservation of
  // the total trace survives.
  const bool cp_regime = min_eigenvalue(decay_matrix(par)) > kPositivityTol;

  double worst_bohr = 0.0;
  double worst_balance = 0.0;
  double worst_positivity = 0.0;
  double worst_monotonic = 0.0;
  double worst_conserve = 0.0;
  const int n_states = 1000;
  const int n_times = 20;
  for (int i = 0; i < n_states; ++i) {
    SingleKaonState s0 = random_single_state(rng, i % 2 == 0);
    double prev_trace = s0.trace_ss();
    for (int k = 0; k < n_times; ++k) {
      const double t = 6.0 * (k + 1) / n_times;
      SingleKaonState s = evolve(s0, t, par);
      for (BasisChoice choice : {BasisChoice::Strangeness, BasisChoice::CP}) {
        worst_bohr = std::max(worst_bohr, std::abs(bohr_residual(s, choice)));
        auto [surv, dec] = info_balance(s, choice);
        worst_balance = std::max(worst_balance, std::abs(surv + dec - 1.0));
      }
      worst_positivity =
          std::max(worst_positivity, -min_eigenvalue(s.tau_ss));
      worst_monotonic = std::max(worst_monotonic, s.trace_ss() - prev_trace);
      worst_conserve = std::max(
          worst_conserve, std::abs(s.trace_ss() + s.trace_ff() - 1.0));
      prev_trace = s.trace_ss();
    }
  }
  b.add("bohr-identity", n_states * n_times * 2, worst_bohr, 1e-10);
  b.add("info-balance", n_states * n_times * 2, worst_balance, 1e-10);
  b.add("positivity", n_states * n_times, std::max(0.0, worst_positivity),
        1e-10);
  b.add("trace-conservation", n_states * n_times, worst_conserve, 1e-10);
  if (cp_regime)
    b.add("trace-monotonic", n_states * n_times,
          std::max(0.0, worst_monotonic), 1e-12);

  // Closed-form predictability/coherence of an evolved K_S in the CP choice.
  auto [ks, kl] = lifetime_states(par);
  SingleKaonState s_ks = pure_state(ks);
  const double eps2 = std::norm(par.epsilon);
  double worst_ks = 0.0;
  const int n_ks = 50;
  for (int k = 0; k < n_ks; ++k) {
    const double t = 5.0 * k / (n_ks - 1);
    SingleKaonState s = evolve(s_ks, t, par);
    const double damp = std::exp(-par.gamma_S * t);
    const double p_expect = damp * (1.0 - eps2) / (1.0 + eps2);
    const double v_expect = damp * 2.0 * std::abs(par.epsilon) / (1.0 + eps2);
    worst_ks = std::max(
        {worst_ks, std::abs(predictability(s, BasisChoice::CP) - p_expect),
         std::abs(coherence(s, BasisChoice::CP) - v_expect)});
  }
  b.add("ks-closed-form", n_ks, worst_ks, 1e-10);

  double worst_basis = 0.0;
  double worst_semigroup = 0.0;
  std::uniform_real_distribution<double> tdist(0.0, 3.0);
  const int nb = 100;
  for (int i = 0; i < nb; ++i) {
    SingleKaonState s0 = random_single_state(rng, i % 2 == 0);
    SingleKaonState s = evolve(s0, 2.0, par);
    worst_basis = std::max(worst_basis,
                           std::abs(single_property(s, BasisChoice::Strangeness) -
                                    single_property(s, BasisChoice::CP)));
    const double t1 = tdist(rng);
    const double t2 = tdist(rng);
    Mat2 joint = evolve(s0, t1 + t2, par).tau_ss;
    Mat2 stepped = evolve(evolve(s0, t1, par), t2, par).tau_ss;
    worst_semigroup =
        std::max(worst_semigroup, (joint - stepped).cwiseAbs().maxCoeff());
  }
  b.add("basis-invariance", nb, worst_basis, 1e-12);
  b.add("semigroup", nb, worst_semigroup, 1e-10);
}

void check_oracle(SuiteBuilder& b, const PhysicalParams& par, uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x3c6ef372fe94f82bull);

  double worst = 0.0;
  const int n = 10;
  for (int i = 0; i < n; ++i) {
    SingleKaonState s0 = random_single_state(rng, i % 2 == 0);
    for (double t : {0.5, 1.0, 2.0}) {
      SingleKaonState exact = evolve(s0, t, par);
      SingleKaonState numeric = integrate_master(s0, t, par, {1e-3});
      worst = std::max(
          {worst, (exact.tau_ss - numeric.tau_ss).cwiseAbs().maxCoeff(),
           (exact.tau_ff - numeric.tau_ff).cwiseAbs().maxCoeff()});
    }
  }
  b.add("oracle-agreement", n * 3, worst, 1e-8);

  // 4th-order convergence: each halving of the step should shrink the
  // discrepancy by about 16x. Coarse steps keep every error comfortably
  // above the double-precision floor.
  SingleKaonState probe = pure_state(random_ket2(rng));
  SingleKaonState exact = evolve(probe, 1.0, par);
  std::vector<double> errors;
  for (double step : {1e-2, 5e-3, 2.5e-3}) {
    SingleKaonState numeric = integrate_master(probe, 1.0, par, {step});
    errors.push_back((exact.tau_ss - numeric.tau_ss).cwiseAbs().maxCoeff());
  }
  double worst_order = 0.0;
  for (size_t i = 1; i < errors.size(); ++i) {
    const double ratio = errors[i - 1] / errors[i];
    worst_order = std::max(worst_order, std::abs(std::log2(ratio) - 4.0));
  }
  b.add("integrator-convergence", static_cast<int>(errors.size()), worst_order,
        1.0);
}

void check_bipartite(SuiteBuilder& b, const PhysicalParams& par,
                     uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xa54ff53a5f1d36f1ull);

  double worst_pure = 0.0;
  const int np = 1000;
  for (int i = 0; i < np; ++i) {
    Vec4 psi = random_ket4(rng);
    Mat4 rho = psi * psi.adjoint();
    worst_pure = std::max(worst_pure, std::abs(concurrence_wootters(rho) -
                                               pure_concurrence_overlap(psi)));
  }
  b.add("pure-concurrence-oracle", np, worst_pure, 1e-10);

  double worst_closed = 0.0;
  double worst_jb = 0.0;
  double worst_decay = 0.0;
  const int na = 100;
  for (int i = 0; i < na; ++i) {
    BipartiteAmplitudes amps = from_strangeness(random_ket4(rng), par);
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      BipartiteAmplitudes at = evolve_amplitudes(amps, t, par);
      BipartiteState state = to_density(at, par);
      worst_closed =
          std::max(worst_closed, std::abs(closed_form_C(at, par) -
                                          concurrence_wootters(state.rho_ssss)));
      for (Side side : {Side::Left, Side::Right})
        for (BasisChoice choice :
             {BasisChoice::Strangeness, BasisChoice::CP})
          worst_jb = std::max(
              worst_jb, std::abs(jakob_bergou_residual(state, side, choice)));
    }
    worst_decay = std::max(
        worst_decay, std::abs(concurrence_decay_residual(amps, 1.0, par)));
  }
  b.add("closed-form-vs-wootters", na * 5, worst_closed, 1e-9);
  b.add("jakob-bergou", na * 5 * 4, worst_jb, 1e-9);
  b.add("concurrence-decay", na, worst_decay, 1e-9);

  // Mixed surviving blocks obey the relation as an inequality.
  double worst_mixed = 0.0;
  for (int i = 0; i < 50; ++i) {
    BipartiteState state;
    state.rho_ssss = random_density4(rng);
    for (Side side : {Side::Left, Side::Right})
      worst_mixed = std::max(
          worst_mixed,
          jakob_bergou_residual(state, side, BasisChoice::Strangeness));
  }
  b.add("jakob-bergou-mixed-bound", 50 * 2, std::max(0.0, worst_mixed), 1e-10);

  double worst_bell = 0.0;
  double worst_cp = 0.0;
  auto par0 = derive_params(par.gamma_S, par.gamma_L, par.delta_m, 0.0);
  auto bells = bell_states(par);
  auto bells0 = bell_states(par0);
  for (size_t i = 0; i < bells.size(); ++i) {
    worst_bell = std::max(
        worst_bell,
        std::abs(concurrence_wootters(to_density(bells[i], par).rho_ssss) - 1.0));
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
      const double c_eps = concurrence_wootters(
          to_density(evolve_amplitudes(bells[i], t, par), par).rho_ssss);
      const double c_zero = concurrence_wootters(
          to_density(evolve_amplitudes(bells0[i], t, par0), par0).rho_ssss);
      worst_cp = std::max(worst_cp, std::abs(c_eps - c_zero));
    }
  }
  b.add("bell-concurrence", 4, worst_bell, 1e-9);
  b.add("cp-independence", 16, worst_cp, 1e-9);

  std::uniform_real_distribution<double> unit(0.01, 1.0);
  double worst_hom = 0.0;
  double worst_local = 0.0;
  for (int i = 0; i < 100; ++i) {
    Mat4 rho = random_density4(rng);
    const double c = concurrence_wootters(rho);
    const double a = unit(rng);
    worst_hom = std::max(worst_hom,
                         std::abs(concurrence_wootters(Mat4(a * rho)) - a * c));
    Mat4 local = kron22(random_unitary2(rng), random_unitary2(rng));
    worst_local = std::max(
        worst_local,
        std::abs(concurrence_wootters(Mat4(local * rho * local.adjoint())) - c));
  }
  b.add("wootters-homogeneity", 100, worst_hom, 1e-12);
  b.add("local-unitary-invariance", 100, worst_local, 1e-12);

  double worst_bound = 0.0;
  for (int i = 0; i < 100; ++i) {
    Mat4 rho = random_density4(rng, 1 + static_cast<int>(i % 4));
    const double c = concurrence_wootters(rho);
    const double bound = decomposition_upper_bound(rho, 200, seed + i);
    worst_bound = std::max(worst_bound, c - bound);
  }
  b.add("decomposition-bound", 100, std::max(0.0, worst_bound), 1e-6);
}

}  // namespace

std::vector<SuiteResult> run_all_checks(const PhysicalParams& par,
                                        uint64_t seed) {
  SuiteBuilder b;
  check_basis_machinery(b, seed);
  check_single_kaon(b, par, seed);
  check_oracle(b, par, seed);
  check_bipartite(b, par, seed);
  return b.results;
}

}  // namespace kaon
