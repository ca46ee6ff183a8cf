#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rieszspec/asymptotics.hpp"
#include "rieszspec/scenarios.hpp"

using namespace rieszspec;
using Catch::Approx;

namespace {

struct Prepared
{
  OperatorSpec spec;
  BiorthogonalSystem sys;
  ProjectionTable table;
};

Prepared prepare(OperatorSpec spec, int p_max)
{
  BiorthogonalSystem sys = eigensystem_C(compute_C(spec));
  ProjectionTable table = build_projection_table(spec, sys, p_max);
  return {std::move(spec), std::move(sys), std::move(table)};
}

}  // namespace

TEST_CASE("localization radius with no coupling reduces to the log term")
{
  // Scalar operator, zero coefficient: eps_3 = 2 * ln(3) / 3.
  const Prepared pr = prepare(make_spec(2, 1, Bc::Periodic), 8);
  CHECK(epsilon_k(pr.table, pr.sys, 2, 3, 1.0, Bc::Periodic) ==
        Approx(2.0 * std::log(3.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("localization radius with flat coupling matches the closed form")
{
  // n = 4, m = 2, diagonal mean (orthonormal eigenvectors), |b| = 1/2 at the
  // transfer frequencies of k = 2: eps_2 = 16 (1 + ln(2)/2).
  OperatorSpec spec = make_spec(4, 2, Bc::Periodic);
  Matrix C = Matrix::Zero(2, 2);
  C(0, 0) = 1.0;
  C(1, 1) = 2.0;
  spec.P(2).set_coefficient(0, C);
  spec.P(2).set_coefficient(4, 0.5 * Matrix::Identity(2, 2));
  spec.P(2).set_coefficient(-4, 0.5 * Matrix::Identity(2, 2));
  const Prepared pr = prepare(std::move(spec), 8);
  CHECK(pr.sys.norm_V == Approx(1.0).epsilon(1e-12));
  CHECK(epsilon_k(pr.table, pr.sys, 4, 2, 1.0, Bc::Periodic) ==
        Approx(16.0 * (1.0 + std::log(2.0) / 2.0)).epsilon(1e-12));
}

TEST_CASE("epsilon_k rejects k < 2 and scales linearly in c3")
{
  const Prepared pr = prepare(preset("hill-symmetric").spec, 16);
  CHECK_THROWS_AS(epsilon_k(pr.table, pr.sys, 2, 1, 1.0, Bc::Periodic), Error);
  const double base = epsilon_k(pr.table, pr.sys, 2, 5, 1.0, Bc::Periodic);
  CHECK(epsilon_k(pr.table, pr.sys, 2, 5, 3.0, Bc::Periodic) == Approx(3.0 * base).epsilon(1e-14));
}

TEST_CASE("refined pair reproduces a hand-built asymmetric example")
{
  // beta_+ = 4/k^2 and beta_- = 1/k^2 at k = 5 give q = 2/k^2, gamma = 2,
  // alpha_+- = +-1/2, (u, v) = (2, 1)/sqrt(5) up to the branch sign.
  const int k = 5;
  OperatorSpec spec = make_spec(2, 1, Bc::Periodic);
  spec.P(2).set_coefficient(2 * k, (4.0 / (k * k)) * Matrix::Identity(1, 1));
  spec.P(2).set_coefficient(-2 * k, (1.0 / (k * k)) * Matrix::Identity(1, 1));
  const Prepared pr = prepare(std::move(spec), 2 * k);
  const PairPrediction p = refined_pair(pr.table, pr.sys, 2, k, 0, 1.0, 1.0, Bc::Periodic);

  CHECK(std::abs(p.q - Complex(2.0 / 25.0, 0.0)) <= 1e-15);
  CHECK(p.gamma == Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(p.alpha_plus - Complex(0.5, 0.0)) <= 1e-14);
  CHECK(std::abs(p.alpha_minus + Complex(0.5, 0.0)) <= 1e-14);
  const double theta = 2.0 * M_PI * k;
  CHECK(std::abs(p.mu_center - Complex(-theta * theta, 0.0)) <= 1e-9);
  CHECK(std::abs(p.h_plus - (p.mu_center + Complex(2.0 / 25.0, 0.0))) <= 1e-12);
  // d is dominated by the log floor here: b_max(f) b_max(-f) = 4/625 < ln(5)/5.
  CHECK(p.d == Approx(std::log(5.0) / 5.0).epsilon(1e-14));
  CHECK(p.refined_radius == Approx(2.0 * std::log(5.0) / 5.0).epsilon(1e-14));
  CHECK(std::abs(p.u_plus - Complex(2.0 / std::sqrt(5.0), 0.0)) <= 1e-14);
  CHECK(std::abs(p.v_plus - Complex(1.0 / std::sqrt(5.0), 0.0)) <= 1e-14);
}

TEST_CASE("refined pair invariants hold on the order-4 matrix preset")
{
  const Scenario sc = preset("matrix-n4");
  const Prepared pr = prepare(sc.spec, 40);
  for (int k : {2, 5, 8, 13})
    for (int j = 0; j < 2; ++j)
    {
      const PairPrediction p = refined_pair(pr.table, pr.sys, 4, k, j, 1.0, 1.0, Bc::Periodic);
      INFO("k=" << k << " j=" << j);
      const Complex split = omega_pow(Bc::Periodic, k, 2) * p.q;
      CHECK(std::abs((p.h_plus - p.h_minus) - 2.0 * split) <= 1e-12 * std::abs(p.mu_center));
      CHECK(p.alpha_minus == -p.alpha_plus);
      CHECK(std::abs(p.alpha_plus * p.alpha_minus + p.beta_minus / p.beta_plus) <=
            1e-12 * (1.0 + std::abs(p.beta_minus / p.beta_plus)));
      CHECK(p.gamma >= 1.0);
      CHECK(std::norm(p.u_plus) + std::norm(p.v_plus) == Approx(1.0).epsilon(1e-12));
      CHECK(std::norm(p.u_minus) + std::norm(p.v_minus) == Approx(1.0).epsilon(1e-12));
      CHECK(p.refined_radius < p.eps);
    }
}

TEST_CASE("disk disjointness flag reflects the actual geometry")
{
  OperatorSpec spec = make_spec(2, 2, Bc::Periodic);
  Matrix C = Matrix::Zero(2, 2);
  C(0, 0) = 1.0;
  C(1, 1) = 100.0;
  spec.P(2).set_coefficient(0, C);

  {
    const Prepared pr = prepare(spec, 8);
    const FirstOrderDisks disks = first_order_disks(pr.sys, pr.table, 2, 2, 1.0, Bc::Periodic);
    REQUIRE(disks.disks.size() == 2);
    CHECK(disks.disjoint);  // radii ~ 2 ln 2 against a gap of 99
  }
  {
    OperatorSpec loud = spec;
    loud.P(2).set_coefficient(4, 20.0 * Matrix::Identity(2, 2));
    loud.P(2).set_coefficient(-4, 20.0 * Matrix::Identity(2, 2));
    const Prepared pr = prepare(std::move(loud), 8);
    const FirstOrderDisks disks = first_order_disks(pr.sys, pr.table, 2, 2, 1.0, Bc::Periodic);
    CHECK_FALSE(disks.disjoint);  // radii ~ 160 swallow the gap
  }
}

TEST_CASE("sweep enumerates pairs in (k, j) order")
{
  const Scenario sc = preset("matrix-n4");
  const Prepared pr = prepare(sc.spec, 40);
  const auto sweep = predicted_spectrum(pr.table, pr.sys, 4, 2, 4, 1.0, 1.0, Bc::Periodic);
  REQUIRE(sweep.size() == 6);
  const std::vector<std::pair<int, int>> want = {{2, 0}, {2, 1}, {3, 0}, {3, 1}, {4, 0}, {4, 1}};
  for (std::size_t i = 0; i < want.size(); ++i)
  {
    CHECK(sweep[i].k == want[i].first);
    CHECK(sweep[i].j == want[i].second);
    CHECK(sweep[i].refined.has_value());
    CHECK_FALSE(sweep[i].degenerate);
  }
}

TEST_CASE("sweep records degenerate pairs instead of throwing")
{
  const Scenario sc = preset("constant-P2");
  const Prepared pr = prepare(sc.spec, 16);
  const auto sweep = predicted_spectrum(pr.table, pr.sys, 4, 2, 5, 1.0, 1.0, Bc::Periodic);
  REQUIRE(sweep.size() == 8);
  for (const SweepEntry& entry : sweep)
  {
    CHECK(entry.degenerate);
    CHECK_FALSE(entry.refined.has_value());
  }
  CHECK_THROWS_AS(refined_pair(pr.table, pr.sys, 4, 3, 0, 1.0, 1.0, Bc::Periodic), Error);
}

TEST_CASE("antiperiodic pairs split around the odd-frequency centers")
{
  const Scenario sc = preset("antiperiodic-hill");
  const Prepared pr = prepare(sc.spec, 40);
  const int k = 3;  // theta = 7 pi, transfer frequency 7
  const PairPrediction p = refined_pair(pr.table, pr.sys, 2, k, 0, 1.0, 1.0, Bc::Antiperiodic);
  const double center = -49.0 * M_PI * M_PI;
  const double q = std::sqrt(2.0 / 7.0);
  CHECK(std::abs(p.mu_center - Complex(center, 0.0)) <= 1e-9);
  CHECK(std::abs(p.beta_plus - Complex(q, 0.0)) <= 1e-14);
  CHECK(std::abs(p.beta_minus - Complex(q, 0.0)) <= 1e-14);
  CHECK(std::abs(p.h_plus - Complex(center + q, 0.0)) <= 1e-9);
  CHECK(std::abs(p.h_minus - Complex(center - q, 0.0)) <= 1e-9);
  CHECK(p.gamma == Approx(1.0).epsilon(1e-14));
}
