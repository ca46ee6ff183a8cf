#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>

#include "rieszspec/unperturbed.hpp"

using namespace rieszspec;
using Catch::Approx;

namespace {

Matrix upper_C()
{
  Matrix C(2, 2);
  C << 1.0, 1.0, 0.0, 2.0;
  return C;
}

}  // namespace

TEST_CASE("compute_C returns the zeroth coefficient of P_2")
{
  OperatorSpec spec = make_spec(4, 2, Bc::Periodic);
  spec.P(2).set_coefficient(0, upper_C());
  spec.P(2).set_coefficient(2, Matrix::Identity(2, 2));
  CHECK(compute_C(spec) == upper_C());
}

TEST_CASE("eigensystem of a non-normal upper-triangular matrix")
{
  // C = [[1, 1], [0, 2]]: mu = (1, 2); v_1 = (1,0), v_2 = (1,1)/sqrt(2);
  // adjoint eigenvectors normalized to <v_j, w_j> = 1 are w_1 = (1,-1),
  // w_2 = (0, sqrt(2)).
  const BiorthogonalSystem sys = eigensystem_C(upper_C());
  REQUIRE(sys.m() == 2);
  CHECK(sys.mu[0] == Complex(1.0, 0.0));
  CHECK(sys.mu[1] == Complex(2.0, 0.0));
  CHECK(sys.gap_a == Approx(1.0).epsilon(1e-12));

  const double isq2 = 1.0 / std::sqrt(2.0);
  // Eigenvectors carry an arbitrary unit phase; compare against it.
  const Complex phase1 = sys.V(0, 0);
  CHECK(std::abs(phase1) == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sys.V(1, 0)) <= 1e-12);
  const Complex phase2 = sys.V(0, 1) / isq2;
  CHECK(std::abs(phase2) == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sys.V(1, 1) - phase2 * isq2) <= 1e-12);

  // w_j inherits the inverse phase through the <v_j, w_j> = 1 scaling.
  CHECK(std::abs(sys.W(0, 0) - phase1) <= 1e-12);
  CHECK(std::abs(sys.W(1, 0) + phase1) <= 1e-12);
  CHECK(std::abs(sys.W(0, 1)) <= 1e-12);
  CHECK(std::abs(sys.W(1, 1) - phase2 * std::sqrt(2.0)) <= 1e-12);

  // Residuals and biorthogonality.
  CHECK((upper_C() * sys.V - sys.V * sys.mu.asDiagonal()).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((upper_C().adjoint() * sys.W - sys.W * sys.mu.conjugate().asDiagonal())
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
  CHECK((sys.W.adjoint() * sys.V - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10);

  // Operator norms: ||V||^2 = 1 + 1/sqrt(2), ||W||^2 = 2 + sqrt(2).
  CHECK(sys.norm_V == Approx(std::sqrt(1.0 + isq2)).epsilon(1e-12));
  CHECK(sys.norm_W == Approx(std::sqrt(2.0 + std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("eigensystem sorts by real part then imaginary part")
{
  Matrix C = Matrix::Zero(3, 3);
  C(0, 0) = Complex(2.0, 0.0);
  C(1, 1) = Complex(1.0, 1.0);
  C(2, 2) = Complex(1.0, -1.0);
  const BiorthogonalSystem sys = eigensystem_C(C);
  CHECK(sys.mu[0] == Complex(1.0, -1.0));
  CHECK(sys.mu[1] == Complex(1.0, 1.0));
  CHECK(sys.mu[2] == Complex(2.0, 0.0));
}

TEST_CASE("eigensystem is deterministic across calls")
{
  const BiorthogonalSystem a = eigensystem_C(upper_C());
  const BiorthogonalSystem b = eigensystem_C(upper_C());
  CHECK(a.mu == b.mu);
  CHECK(a.V == b.V);
  CHECK(a.W == b.W);
}

TEST_CASE("degenerate spectra are rejected")
{
  Matrix jordan = Matrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  CHECK_THROWS_AS(eigensystem_C(jordan), Error);
  CHECK_THROWS_AS(eigensystem_C(Matrix::Identity(2, 2)), Error);
}

TEST_CASE("unperturbed eigenvalue formula")
{
  Matrix C = Matrix::Zero(1, 1);
  C(0, 0) = 2.0;
  const BiorthogonalSystem sys = eigensystem_C(C);
  const double pi = std::numbers::pi;

  // n = 4, k = 1, periodic: (2 pi i)^4 + 2 (2 pi i)^2 = 16 pi^4 - 8 pi^2.
  CHECK(mu_kj(sys, 4, 1, 0, Bc::Periodic).real() ==
        Approx(16.0 * std::pow(pi, 4) - 8.0 * pi * pi).epsilon(1e-14));
  CHECK(mu_kj(sys, 4, 1, 0, Bc::Periodic).imag() == 0.0);

  Matrix C5 = Matrix::Zero(1, 1);
  C5(0, 0) = 5.0;
  const BiorthogonalSystem sys5 = eigensystem_C(C5);
  // n = 2, k = 0, antiperiodic: (pi i)^2 + 5 = 5 - pi^2.
  CHECK(mu_kj(sys5, 2, 0, 0, Bc::Antiperiodic).real() == Approx(5.0 - pi * pi).epsilon(1e-14));
}

TEST_CASE("pair members share their unperturbed eigenvalue exactly")
{
  const BiorthogonalSystem sys = eigensystem_C(upper_C());
  for (int n : {2, 4, 6})
    for (int k : {1, 3, 17})
      for (int j : {0, 1})
      {
        CHECK(mu_kj(sys, n, k, j, Bc::Periodic) == mu_kj(sys, n, -k, j, Bc::Periodic));
        CHECK(mu_kj(sys, n, k, j, Bc::Antiperiodic) ==
              mu_kj(sys, n, pair_partner(Bc::Antiperiodic, k), j, Bc::Antiperiodic));
      }
}

TEST_CASE("frame bounds collapse to Parseval for an orthonormal eigensystem")
{
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 2.0;
  const BiorthogonalSystem sys = eigensystem_C(diag);
  std::map<int, Vector> f;
  Vector f0(2), f3(2);
  f0 << Complex(1.0, 2.0), Complex(0.0, -1.0);
  f3 << Complex(0.5, 0.0), Complex(3.0, 4.0);
  f[0] = f0;
  f[3] = f3;
  const FrameDefect defect = frame_defect(sys, f);
  const double norm_sq = f0.squaredNorm() + f3.squaredNorm();
  CHECK(defect.sum_sq == Approx(norm_sq).epsilon(1e-12));
  CHECK(defect.lower == Approx(norm_sq).epsilon(1e-12));
  CHECK(defect.upper == Approx(norm_sq).epsilon(1e-12));
}

TEST_CASE("frame bounds hold for a non-normal eigensystem")
{
  const BiorthogonalSystem sys = eigensystem_C(upper_C());
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial)
  {
    std::map<int, Vector> f;
    for (int p = -3; p <= 3; ++p)
    {
      Vector fp(2);
      fp << Complex(dist(rng), dist(rng)), Complex(dist(rng), dist(rng));
      f[p] = fp;
    }
    const FrameDefect defect = frame_defect(sys, f);
    CHECK(defect.lower <= defect.sum_sq);
    CHECK(defect.sum_sq <= defect.upper);

    // Reconstruction through the biorthogonal expansion.
    for (const auto& [p, fp] : f)
    {
      const Vector rebuilt = sys.V * (sys.W.adjoint() * fp);
      CHECK((rebuilt - fp).norm() <= 1e-10);
    }
  }
}
