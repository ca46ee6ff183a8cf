#pragma once

/// Named reference problems.  Tail amplitudes are normalized so the
/// diagonal transfer coefficients obey simple laws in the pair index k,
/// e.g. amp = sqrt(2) with exponent 1/2 gives b(2k) = sqrt(2) (2k)^(-1/2)
/// = k^(-1/2).  Expected verdicts derive from the analytic tail rules.

#include <cmath>
#include <string>
#include <vector>

#include "rieszspec/diagnostics.hpp"
#include "rieszspec/operator_spec.hpp"

namespace rieszspec {

struct Scenario
{
  std::string name;
  OperatorSpec spec;
  Condition8Verdict expected_condition8 = Condition8Verdict::Inconclusive;
  RieszVerdict expected_riesz = RieszVerdict::Inconclusive;
  std::string notes;
};

inline std::vector<std::string> preset_names()
{
  return {"hill-symmetric", "hill-asymmetric", "matrix-n4",
          "constant-P2",    "antiperiodic-hill", "trigpoly"};
}

inline Scenario preset(const std::string& name)
{
  const double root2 = std::sqrt(2.0);
  Scenario sc;
  sc.name = name;

  if (name == "hill-symmetric")
  {
    sc.spec = make_spec(2, 1, Bc::Periodic);
    TailLaw tail;
    tail.amp_pos = tail.amp_neg = root2 * Matrix::Identity(1, 1);
    tail.s_pos = tail.s_neg = 0.5;
    sc.spec.P(2).set_tail(tail);
    sc.expected_condition8 = Condition8Verdict::Holds;
    sc.expected_riesz = RieszVerdict::Basis;
    sc.notes = "scalar Hill-type problem, symmetric transfer b(+-2k) = k^(-1/2)";
  }
  else if (name == "hill-asymmetric")
  {
    sc.spec = make_spec(2, 1, Bc::Periodic);
    TailLaw tail;
    tail.amp_pos = root2 * Matrix::Identity(1, 1);
    tail.amp_neg = std::pow(2.0, 0.75) * Matrix::Identity(1, 1);
    tail.s_pos = 0.5;
    tail.s_neg = 0.75;
    sc.spec.P(2).set_tail(tail);
    sc.expected_condition8 = Condition8Verdict::Holds;
    sc.expected_riesz = RieszVerdict::NoBasis;
    sc.notes = "one-sided slower decay: b(2k) = k^(-1/2) vs b(-2k) = k^(-3/4), ratio k^(1/4)";
  }
  else if (name == "matrix-n4")
  {
    sc.spec = make_spec(4, 2, Bc::Periodic);
    Matrix C(2, 2);
    C << 1.0, 1.0, 0.0, 2.0;
    sc.spec.P(2).set_coefficient(0, C);
    TailLaw tail;
    tail.amp_pos = tail.amp_neg = root2 * Matrix::Identity(2, 2);
    tail.s_pos = tail.s_neg = 0.5;
    sc.spec.P(2).set_tail(tail);
    Matrix p3_plus = Matrix::Zero(2, 2), p3_minus = Matrix::Zero(2, 2);
    p3_plus(0, 1) = 0.2;
    p3_minus(1, 0) = 0.2;
    sc.spec.P(3).set_coefficient(1, p3_plus);
    sc.spec.P(3).set_coefficient(-1, p3_minus);
    sc.spec.P(4).set_coefficient(0, 0.3 * Matrix::Identity(2, 2));
    sc.expected_condition8 = Condition8Verdict::Holds;
    sc.expected_riesz = RieszVerdict::Basis;
    sc.notes = "order-4 system, non-normal mean matrix, symmetric tails, lower-order terms on";
  }
  else if (name == "constant-P2")
  {
    sc.spec = make_spec(4, 2, Bc::Periodic);
    Matrix C(2, 2);
    C << 1.0, 1.0, 0.0, 2.0;
    sc.spec.P(2).set_coefficient(0, C);
    sc.expected_condition8 = Condition8Verdict::Fails;
    sc.expected_riesz = RieszVerdict::Inconclusive;
    sc.notes = "pure mean matrix: spectrum matches the closed form, every pair degenerate";
  }
  else if (name == "antiperiodic-hill")
  {
    sc.spec = make_spec(2, 1, Bc::Antiperiodic);
    TailLaw tail;
    tail.amp_pos = tail.amp_neg = root2 * Matrix::Identity(1, 1);
    tail.s_pos = tail.s_neg = 0.5;
    sc.spec.P(2).set_tail(tail);
    sc.expected_condition8 = Condition8Verdict::Holds;
    sc.expected_riesz = RieszVerdict::Basis;
    sc.notes = "antiperiodic mirror of hill-symmetric; transfer frequency 2k+1";
  }
  else if (name == "trigpoly")
  {
    sc.spec = make_spec(2, 1, Bc::Periodic);
    sc.spec.P(2).set_coefficient(2, Matrix::Identity(1, 1));
    sc.spec.P(2).set_coefficient(-2, Matrix::Identity(1, 1));
    sc.expected_condition8 = Condition8Verdict::Fails;
    sc.expected_riesz = RieszVerdict::Inconclusive;
    sc.notes = "finitely supported potential 2 cos(4 pi x): outside the asymptotic regime";
  }
  else
  {
    fail(Errc::UnknownScenario, "no preset named '" + name + "'");
  }
  return sc;
}

}  // namespace rieszspec
