#include "kaon/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace kaon {

namespace {

struct Blocks {
  Mat2 ss;
  Mat2 ff;
};

Blocks derivative(const Blocks& x, const Mat2& h, const Mat2& a_plus,
                  const Mat2& a_minus) {
  const Complex i(0.0, 1.0);
  Mat2 gamma = a_plus.adjoint() * a_plus - a_minus.adjoint() * a_minus;
  Blocks d;
  d.ss = -i * (h * x.ss - x.ss * h) - 0.5 * (gamma * x.ss + x.ss * gamma);
  d.ff = a_plus * x.ss * a_plus.adjoint() - a_minus * x.ss * a_minus.adjoint();
  return d;
}

Mat4 flip_matrix() {
  Mat4 f = Mat4::Zero();
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}

Mat4 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat4> qr(g);
  Mat4 q = qr.householderQ();
  Mat4 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j) {
    Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

Mat4 nearby_unitary(const Mat4& u, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      g(i, j) = Complex(gauss(rng), gauss(rng)) * scale;
  Eigen::HouseholderQR<Mat4> qr(Mat4(Mat4::Identity() + g));
  Mat4 q = qr.householderQ();
  Mat4 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j) {
    Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);  // keep q near the identity
  }
  return u * q;
}

// Ensemble-average concurrence of the decomposition W U(:,0:r)^dag, where the
// columns of W are the subnormalized eigenvectors of rho. Each ensemble
// member phi_j contributes p_j C(phi_j/|phi_j|) = |phi_j^T F phi_j|.
double ensemble_average(const Eigen::Matrix<Complex, 4, Eigen::Dynamic>& w,
                        const Mat4& u, const Mat4& f) {
  const int r = static_cast<int>(w.cols());
  double total = 0.0;
  for (int j = 0; j < 4; ++j) {
    Vec4 phi = Vec4::Zero();
    for (int i = 0; i < r; ++i) phi += std::conj(u(j, i)) * w.col(i);
    total += std::abs(Complex(phi.transpose() * f * phi));
  }
  return total;
}

}  // namespace

SingleKaonState integrate_master(const SingleKaonState& state0, double t,
                                 const PhysicalParams& par,
                                 const IntegratorConfig& config) {
  if (t < 0.0)
    throw std::invalid_argument("integrate_master: t must be nonnegative");
  if (!(config.step > 0.0) || config.step * par.gamma_S > 0.01)
    throw std::invalid_argument("integrate_master: step must satisfy step * gamma_S <= 0.01");
  if (t == 0.0) return state0;

  const Mat2 h = mass_matrix(par);
  const auto [ap, am] = flux_operators(par);

  const int n = std::max(1, static_cast<int>(std::lround(t / config.step)));
  const double dt = t / n;

  Blocks x{state0.tau_ss, state0.tau_ff};
  for (int step = 0; step < n; ++step) {
    Blocks k1 = derivative(x, h, ap, am);
    Blocks mid1{x.ss + 0.5 * dt * k1.ss, x.ff + 0.5 * dt * k1.ff};
    Blocks k2 = derivative(mid1, h, ap, am);
    Blocks mid2{x.ss + 0.5 * dt * k2.ss, x.ff + 0.5 * dt * k2.ff};
    Blocks k3 = derivative(mid2, h, ap, am);
    Blocks end{x.ss + dt * k3.ss, x.ff + dt * k3.ff};
    Blocks k4 = derivative(end, h, ap, am);
    x.ss += (dt / 6.0) * (k1.ss + 2.0 * k2.ss + 2.0 * k3.ss + k4.ss);
    x.ff += (dt / 6.0) * (k1.ff + 2.0 * k2.ff + 2.0 * k3.ff + k4.ff);
  }

  SingleKaonState out;
  out.tau_ss = 0.5 * (x.ss + x.ss.adjoint());
  out.tau_ff = 0.5 * (x.ff + x.ff.adjoint());
  out.time = state0.time + t;
  return out;
}

double pure_concurrence_overlap(const Vec4& psi) {
  const double n2 = psi.squaredNorm();
  if (n2 <= 0.0)
    throw std::invalid_argument("pure_concurrence_overlap: zero vector");
  const Complex overlap = psi.transpose() * flip_matrix() * psi;
  return std::abs(overlap) / n2;
}

double decomposition_upper_bound(const Mat4& rho, int samples, uint64_t seed) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho);
  Eigen::Vector4d ev = es.eigenvalues();

  int r = 0;
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> w(4, 4);
  for (int i = 0; i < 4; ++i) {
    if (ev[i] > 1e-12) {
      w.col(r) = es.eigenvectors().col(i) * std::sqrt(ev[i]);
      ++r;
    }
  }
  w.conservativeResize(4, r);
  const Mat4 f = flip_matrix();

  std::mt19937_64 rng(seed);
  Mat4 best_u = Mat4::Identity();
  double best = ensemble_average(w, best_u, f);

  // Half the budget on global restarts, half on shrinking perturbations of
  // the incumbent.
  for (int s = 0; s < samples; ++s) {
    Mat4 u;
    if (s % 2 == 0) {
      u = random_unitary(rng);
    } else {
      const double scale = 0.5 * std::pow(0.999, s);
      u = nearby_unitary(best_u, std::max(scale, 1e-3), rng);
    }
    const double value = ensemble_average(w, u, f);
    if (value < best) {
      best = value;
      best_u = u;
    }
  }
  return best;
}

}  // namespace kaon
