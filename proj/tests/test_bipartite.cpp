#include "kaon/bipartite.hpp"

#include "kaon/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kaon;

namespace {

Vec4 random_ket4(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

Mat4 random_density4(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Mat4 rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Vec4 singlet_vector() {
  Vec4 v;
  const double r = 1.0 / std::sqrt(2.0);
  v << 0.0, r, -r, 0.0;
  return v;
}

Mat4 werner_state(double w) {
  Vec4 s = singlet_vector();
  return w * (s * s.adjoint()) + (1.0 - w) * 0.25 * Mat4::Identity();
}

}  // namespace

TEST_CASE("singlet amplitudes") {
  SUBCASE("orthonormal limit") {
    auto par = derive_params(1.0, 1.0 / 600.0, 0.5, 0.0);
    BipartiteAmplitudes amps = singlet(par);
    CHECK(std::abs(amps.r_SS) < 1e-15);
    CHECK(std::abs(amps.r_LL) < 1e-15);
    CHECK(std::abs(amps.r_SL - Complex(1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(amps.r_SL + amps.r_LS) < 1e-15);
    CHECK(amps.N0 == 1.0);
  }
  SUBCASE("reconstruction at measured epsilon") {
    auto par = default_params();
    BipartiteAmplitudes amps = singlet(par);
    CHECK((to_strangeness(amps, par) - singlet_vector()).norm() < 1e-12);
  }
  SUBCASE("maximally entangled at t = 0") {
    auto par = default_params();
    BipartiteState state = to_density(singlet(par), par);
    CHECK(concurrence_wootters(state.rho_ssss) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bell states") {
  SUBCASE("phi admixture vanishes at epsilon = 0") {
    auto par = derive_params(1.0, 1.0 / 600.0, 0.5, 0.0);
    auto bells = bell_states(par);
    // phi+ = (K_S K_S + K_L K_L)/sqrt2 exactly: no psi+ admixture
    CHECK(std::abs(bells[2].r_SL) < 1e-14);
    CHECK(std::abs(bells[2].r_LS) < 1e-14);
    // psi+ maps onto the phi- pattern (-K_S K_S + K_L K_L)/sqrt2
    CHECK(std::abs(bells[1].r_SS + Complex(1.0 / std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(bells[1].r_LL - Complex(1.0 / std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(bells[1].r_SL) < 1e-14);
    CHECK(std::abs(bells[1].r_LS) < 1e-14);
  }
  SUBCASE("concurrence 1 for every Bell state and every epsilon") {
    for (Complex eps : {Complex(0.0), std::polar(2.28e-3, M_PI / 4.0),
                        Complex(0.1, 0.0)}) {
      auto par = derive_params(1.0, 1.0 / 600.0, 0.5, eps);
      for (const auto& amps : bell_states(par)) {
        BipartiteState state = to_density(amps, par);
        CHECK(concurrence_wootters(state.rho_ssss) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(closed_form_C(amps, par) == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("evolve_amplitudes") {
  auto par = default_params();
  std::mt19937_64 rng(5);
  BipartiteAmplitudes amps = from_strangeness(random_ket4(rng), par);

  SUBCASE("t = 0 identity") {
    BipartiteAmplitudes same = evolve_amplitudes(amps, 0.0, par);
    CHECK(std::abs(same.r_SS - amps.r_SS) < 1e-15);
    CHECK(std::abs(same.r_LL - amps.r_LL) < 1e-15);
  }
  SUBCASE("moduli damp with the channel rates") {
    BipartiteAmplitudes at = evolve_amplitudes(amps, 1.3, par);
    CHECK(std::abs(at.r_SS) ==
          doctest::Approx(std::abs(amps.r_SS) * std::exp(-par.gamma_S * 1.3))
              .epsilon(1e-12));
    CHECK(std::abs(at.r_SL) ==
          doctest::Approx(std::abs(amps.r_SL) * std::exp(-par.gamma_bar * 1.3))
              .epsilon(1e-12));
    CHECK(std::abs(at.r_LL) ==
          doctest::Approx(std::abs(amps.r_LL) * std::exp(-par.gamma_L * 1.3))
              .epsilon(1e-12));
  }
  SUBCASE("singlet coherence at epsilon = 0") {
    auto par0 = derive_params(1.0, 1.0 / 600.0, 0.5, 0.0);
    BipartiteAmplitudes at = evolve_amplitudes(singlet(par0), 1.0, par0);
    CHECK(std::abs(at.r_SL) ==
          doctest::Approx(std::exp(-par0.gamma_bar) / std::sqrt(2.0))
              .epsilon(1e-12));
  }
  SUBCASE("negative time rejected") {
    CHECK_THROWS_AS(evolve_amplitudes(amps, -1.0, par), std::invalid_argument);
  }
}

TEST_CASE("to_density") {
  auto par = default_params();
  SUBCASE("singlet projector at t = 0") {
    BipartiteState state = to_density(singlet(par), par);
    Vec4 s = singlet_vector();
    CHECK((state.rho_ssss - s * s.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(state.trace_ssss() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(state.decayed_weights.sum() < 1e-12);
  }
  SUBCASE("purity and sector bookkeeping for t > 0") {
    auto par0 = derive_params(1.0, 1.0 / 600.0, 0.5, 0.0);
    BipartiteAmplitudes at = evolve_amplitudes(singlet(par0), 1.0, par0);
    BipartiteState state = to_density(at, par0);
    CHECK(state.trace_ssss() ==
          doctest::Approx(std::exp(-2.0 * par0.gamma_bar)).epsilon(1e-12));
    // surviving block stays rank 1
    Eigen::SelfAdjointEigenSolver<Mat4> es(state.rho_ssss);
    CHECK(es.eigenvalues()[2] < 1e-12);
    CHECK(state.trace_ssss() + state.decayed_weights.sum() ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("sector traces sum to one for random evolved amplitudes") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
      BipartiteAmplitudes amps = from_strangeness(random_ket4(rng), par);
      BipartiteState state =
          to_density(evolve_amplitudes(amps, 1.7, par), par);
      CHECK(state.trace_ssss() + state.decayed_weights.sum() ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("reduced_state") {
  auto par = default_params();
  SUBCASE("singlet marginal is maximally mixed") {
    BipartiteState state = to_density(singlet(par), par);
    for (Side side : {Side::Left, Side::Right}) {
      Mat2 sigma = reduced_state(state, side);
      CHECK((sigma - 0.5 * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("product state marginal") {
    auto par0 = derive_params(1.0, 1.0 / 600.0, 0.5, 0.0);
    auto [ks, kl] = lifetime_states(par0);
    BipartiteAmplitudes amps;
    amps.r_SS = 1.0;  // K_S (x) K_S
    BipartiteState state =
        to_density(evolve_amplitudes(amps, 0.8, par0), par0);
    Mat2 expected =
        std::exp(-2.0 * par0.gamma_S * 0.8) * (ks * ks.adjoint());
    CHECK((reduced_state(state, Side::Left) - expected).cwiseAbs().maxCoeff() <
          1e-12);
  }
  SUBCASE("Schmidt spectra of both marginals agree") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
      BipartiteState state;
      Vec4 psi = random_ket4(rng);
      state.rho_ssss = psi * psi.adjoint();
      Eigen::SelfAdjointEigenSolver<Mat2> left(reduced_state(state, Side::Left));
      Eigen::SelfAdjointEigenSolver<Mat2> right(
          reduced_state(state, Side::Right));
      CHECK((left.eigenvalues() - right.eigenvalues()).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
}

TEST_CASE("closed_form_C") {
  auto par = default_params();
  SUBCASE("singlet gives exactly 1 at t = 0") {
    CHECK(closed_form_C(singlet(par), par) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // also at strongly inflated epsilon, pinning the delta exponent
    auto par_big = derive_params(1.0, 1.0 / 600.0, 0.5, Complex(0.1, 0.0));
    CHECK(closed_form_C(singlet(par_big), par_big) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("product amplitudes give 0") {
    BipartiteAmplitudes amps;
    amps.r_SS = 1.0;
    CHECK(closed_form_C(amps, par) == 0.0);
    CHECK(closed_form_C(evolve_amplitudes(amps, 2.0, par), par) == 0.0);
  }
  SUBCASE("singlet decay at epsilon = 0") {
    auto par0 = derive_params(1.0, 1.0 / 600.0, 0.5, 0.0);
    BipartiteAmplitudes at = evolve_amplitudes(singlet(par0), 1.0, par0);
    CHECK(closed_form_C(at, par0) ==
          doctest::Approx(0.36726681942941885).epsilon(1e-12));
  }
  SUBCASE("agrees with Wootters for random amplitudes") {
    std::mt19937_64 rng(19);
    for (Complex eps : {Complex(0.0), std::polar(2.28e-3, M_PI / 4.0)}) {
      auto p = derive_params(1.0, 1.0 / 600.0, 0.5, eps);
      for (int i = 0; i < 30; ++i) {
        BipartiteAmplitudes amps = from_strangeness(random_ket4(rng), p);
        for (double t : {0.0, 0.7, 2.4}) {
          BipartiteAmplitudes at = evolve_amplitudes(amps, t, p);
          CHECK(std::abs(closed_form_C(at, p) -
                         concurrence_wootters(to_density(at, p).rho_ssss)) <
                1e-9);
        }
      }
    }
  }
}

TEST_CASE("concurrence_wootters") {
  SUBCASE("canonical values") {
    Vec4 s = singlet_vector();
    CHECK(concurrence_wootters(Mat4(s * s.adjoint())) ==
          doctest::Approx(1.0).epsilon(1e-14));
    Vec4 product;
    product << 1.0, 0.0, 0.0, 0.0;
    CHECK(concurrence_wootters(Mat4(product * product.adjoint())) < 1e-14);
  }
  SUBCASE("Werner state against the analytic value") {
    const double w = 0.8;
    CHECK(concurrence_wootters(werner_state(w)) ==
          doctest::Approx((3.0 * w - 1.0) / 2.0).epsilon(1e-13));
  }
  SUBCASE("agrees with the direct rho rho~ eigenvalue route") {
    std::mt19937_64 rng(29);
    Mat4 flip = Mat4::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    for (int i = 0; i < 25; ++i) {
      Mat4 rho = random_density4(rng);
      Mat4 rho_tilde = flip * rho.conjugate() * flip;
      Eigen::ComplexEigenSolver<Mat4> es(rho * rho_tilde);
      Eigen::Vector4d lambda =
          es.eigenvalues().real().cwiseMax(0.0).cwiseSqrt();
      std::sort(lambda.data(), lambda.data() + 4, std::greater<double>());
      const double direct =
          std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
      CHECK(concurrence_wootters(rho) == doctest::Approx(direct).epsilon(1e-7));
    }
  }
  SUBCASE("homogeneity and the normalized flag") {
    std::mt19937_64 rng(31);
    Mat4 rho = random_density4(rng);
    const double c = concurrence_wootters(rho);
    CHECK(concurrence_wootters(Mat4(0.3 * rho)) ==
          doctest::Approx(0.3 * c).epsilon(1e-13));
    CHECK(concurrence_wootters(Mat4(0.3 * rho), /*normalized=*/true) ==
          doctest::Approx(c).epsilon(1e-13));
  }
  SUBCASE("non-PSD input rejected") {
    Mat4 bad = Mat4::Identity();
    bad(0, 0) = -0.5;
    CHECK_THROWS_AS(concurrence_wootters(bad), std::invalid_argument);
  }
}

TEST_CASE("jakob_bergou_residual") {
  auto par = default_params();
  SUBCASE("singlet at t = 0") {
    BipartiteState state = to_density(singlet(par), par);
    for (auto choice : {BasisChoice::Strangeness, BasisChoice::CP})
      CHECK(std::abs(jakob_bergou_residual(state, Side::Left, choice)) < 1e-12);
  }
  SUBCASE("product pure state") {
    BipartiteAmplitudes amps;
    amps.r_SS = 1.0;
    amps.N0 = to_strangeness(amps, par).norm();
    BipartiteState state = to_density(amps, par);
    CHECK(std::abs(jakob_bergou_residual(state, Side::Right,
                                         BasisChoice::Strangeness)) < 1e-12);
  }
  SUBCASE("fig2 superposition state at t = 0.5") {
    BipartiteState state =
        to_density(evolve_amplitudes(fig2_state(par), 0.5, par), par);
    for (Side side : {Side::Left, Side::Right})
      for (auto choice : {BasisChoice::Strangeness, BasisChoice::CP})
        CHECK(std::abs(jakob_bergou_residual(state, side, choice)) < 1e-9);
  }
  SUBCASE("mixed surviving blocks satisfy the inequality") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 25; ++i) {
      BipartiteState state;
      state.rho_ssss = random_density4(rng);
      CHECK(jakob_bergou_residual(state, Side::Left, BasisChoice::Strangeness) <
            1e-10);
    }
  }
}

TEST_CASE("concurrence decay law and CP independence") {
  auto par = default_params();
  SUBCASE("residual vanishes") {
    std::mt19937_64 rng(43);
    BipartiteAmplitudes amps = from_strangeness(random_ket4(rng), par);
    CHECK(concurrence_decay_residual(amps, 0.0, par) == doctest::Approx(0.0));
    for (double t : {0.5, 1.0, 2.0})
      CHECK(std::abs(concurrence_decay_residual(singlet(par), t, par)) < 1e-9);
  }
  SUBCASE("concurrence is blind to CP violation") {
    auto par0 = derive_params(1.0, 1.0 / 600.0, 0.5, 0.0);
    const double c_eps = concurrence_wootters(
        to_density(evolve_amplitudes(singlet(par), 1.0, par), par).rho_ssss);
    const double c_zero = concurrence_wootters(
        to_density(evolve_amplitudes(singlet(par0), 1.0, par0), par0).rho_ssss);
    CHECK(std::abs(c_eps - c_zero) < 1e-9);
  }
  SUBCASE("normalized decay ratio is state independent") {
    std::mt19937_64 rng(47);
    const double t = 1.4;
    const double expected = std::exp(-2.0 * par.gamma_bar * t);
    for (int i = 0; i < 10; ++i) {
      BipartiteAmplitudes amps = from_strangeness(random_ket4(rng), par);
      const double c0 =
          concurrence_wootters(to_density(amps, par).rho_ssss);
      if (c0 < 1e-3) continue;
      const double ct = concurrence_wootters(
          to_density(evolve_amplitudes(amps, t, par), par).rho_ssss);
      CHECK(ct / c0 == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("local unitary invariance") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_u2 = [&]() {
    Mat2 g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Mat2> qr(g);
    Mat2 q = qr.householderQ();
    Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
  };
  for (int i = 0; i < 25; ++i) {
    Mat4 rho = random_density4(rng);
    Mat2 u = random_u2();
    Mat2 v = random_u2();
    Mat4 local;
    for (int a = 0; a < 2; ++a)
      for (int bcol = 0; bcol < 2; ++bcol)
        local.block<2, 2>(2 * a, 2 * bcol) = u(a, bcol) * v;
    Mat4 rotated = local * rho * local.adjoint();
    CHECK(std::abs(concurrence_wootters(rotated) - concurrence_wootters(rho)) <
          1e-12);
  }
}
