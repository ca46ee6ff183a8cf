#pragma once

/// Projected coefficients of P_2 against the biorthogonal eigensystem,
///
///   b(s, q, p) = < P2_hat(p) v_q, w_s > = w_s^H P2_hat(p) v_q,
///
/// cached on a symmetric frequency window and recomputable outside it.
/// b_max(p) = max_{s,q} |b(s,q,p)| is the row bound entering the disk
/// radii.  When P_2 carries a tail law, the projected tail
/// < amp v_q, w_s > * |p|^-s * phase(p) is carried along so diagnostics
/// can query arbitrarily large frequencies at O(1) cost.

#include <cstdio>
#include <ostream>
#include <vector>

#include "rieszspec/unperturbed.hpp"

namespace rieszspec {

struct ProjectedTail
{
  Matrix amp_pos;  // W^H amp_pos V, entry (s,q)
  Matrix amp_neg;
  double s_pos = 1.0;
  double s_neg = 1.0;
  bool alternating = false;
  int start = 1;
};

class ProjectionTable
{
public:
  ProjectionTable(const FourierMatrixSeries& p2, const BiorthogonalSystem& sys, int p_max)
    : m_(sys.m()), p_max_(p_max), V_(sys.V), W_(sys.W), p2_(p2)
  {
    if (p_max < 1)
      fail(Errc::InvalidConfig, "projection window must satisfy p_max >= 1");
    window_.reserve(2 * p_max + 1);
    row_max_.reserve(2 * p_max + 1);
    for (int p = -p_max; p <= p_max; ++p)
    {
      Matrix block = W_.adjoint() * p2.coefficient(p) * V_;
      row_max_.push_back(block.cwiseAbs().maxCoeff());
      window_.push_back(std::move(block));
    }
    if (const TailLaw* tail = p2.tail())
    {
      ProjectedTail pt;
      pt.amp_pos = W_.adjoint() * tail->amp_pos * V_;
      pt.amp_neg = W_.adjoint() * tail->amp_neg * V_;
      pt.s_pos = tail->s_pos;
      pt.s_neg = tail->s_neg;
      pt.alternating = tail->alternating;
      pt.start = p2.tail_start();
      tail_ = std::move(pt);
    }
  }

  int dim() const { return m_; }
  int window() const { return p_max_; }
  const ProjectedTail* tail() const { return tail_ ? &*tail_ : nullptr; }

  /// b(s, q, p); falls back to direct recomputation outside the window.
  Complex b(int s, int q, int p) const
  {
    if (std::abs(p) <= p_max_)
      return window_[static_cast<std::size_t>(p + p_max_)](s, q);
    return (W_.col(s).adjoint() * p2_.coefficient(p) * V_.col(q))(0, 0);
  }

  /// Row bound b_p = max_{s,q} |b(s,q,p)|.
  double b_max(int p) const
  {
    if (std::abs(p) <= p_max_)
      return row_max_[static_cast<std::size_t>(p + p_max_)];
    return (W_.adjoint() * p2_.coefficient(p) * V_).cwiseAbs().maxCoeff();
  }

  /// Flat CSV of the cached window: s, q, p, re(b), im(b), |b|.
  void write_csv(std::ostream& out) const
  {
    out << "s,q,p,b_re,b_im,b_abs\n";
    char buf[160];
    for (int s = 0; s < m_; ++s)
      for (int q = 0; q < m_; ++q)
        for (int p = -p_max_; p <= p_max_; ++p)
        {
          const Complex value = b(s, q, p);
          std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g,%.17g\n", s, q, p, value.real(),
                        value.imag(), std::abs(value));
          out << buf;
        }
  }

private:
  int m_;
  int p_max_;
  Matrix V_, W_;
  FourierMatrixSeries p2_;
  std::vector<Matrix> window_;    // index p + p_max_
  std::vector<double> row_max_;
  std::optional<ProjectedTail> tail_;
};

inline ProjectionTable build_projection_table(const OperatorSpec& spec,
                                              const BiorthogonalSystem& sys, int p_max)
{
  return ProjectionTable(spec.P(2), sys, p_max);
}

struct Lemma1Residuals
{
  double mean_residual = 0.0;      // max_{s,q} |<(P2_hat(0) - C) v_q, w_s>|
  double transfer_residual = 0.0;  // max_{s,q} |<P2_hat(f) v_q, w_s> - b(s,q,f)|
  int transfer_freq = 0;
};

/// Structural identities behind the resonant pair reduction: the mean part
/// of P_2 - C projects to zero, and the pair (k, partner) couples through
/// exactly the transfer-frequency coefficient.
inline Lemma1Residuals verify_lemma1(const OperatorSpec& spec, const BiorthogonalSystem& sys, int k)
{
  if (k == 0)
    fail(Errc::InvalidConfig, "verify_lemma1 requires k != 0");
  Lemma1Residuals out;
  out.transfer_freq = transfer_frequency(spec.bc, k);
  const Matrix C = compute_C(spec);
  const Matrix mean_block = sys.W.adjoint() * (spec.P(2).coefficient(0) - C) * sys.V;
  out.mean_residual = mean_block.cwiseAbs().maxCoeff();

  const ProjectionTable table(spec.P(2), sys, std::max(1, std::abs(out.transfer_freq)));
  const Matrix direct = sys.W.adjoint() * spec.P(2).coefficient(out.transfer_freq) * sys.V;
  double worst = 0.0;
  for (int s = 0; s < sys.m(); ++s)
    for (int q = 0; q < sys.m(); ++q)
      worst = std::max(worst, std::abs(direct(s, q) - table.b(s, q, out.transfer_freq)));
  out.transfer_residual = worst;
  return out;
}

}  // namespace rieszspec
