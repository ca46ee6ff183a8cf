#pragma once

/// Unperturbed data: the mean matrix C of P_2, its biorthogonal
/// eigensystem and the explicit eigenvalue formula
///
///   mu(k, j) = omega^n + mu_j * omega^(n-2),   omega = i * theta(k),
///
/// which is exact when every coefficient is the constant C.  Inner
/// products are the standard C^m one, conjugate-linear in the second
/// argument: <x, y> = y^H x.

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rieszspec/operator_spec.hpp"
#include "rieszspec/types.hpp"

namespace rieszspec {

struct BiorthogonalSystem
{
  Vector mu;    // simple eigenvalues of C, sorted by (re, im)
  Matrix V;     // columns: unit right eigenvectors v_j
  Matrix W;     // columns: adjoint eigenvectors w_j with <v_j, w_j> = 1
  double gap_a = 0.0;   // min_{i != j} |mu_i - mu_j|; +inf when m == 1
  double norm_V = 0.0;  // operator 2-norms
  double norm_W = 0.0;

  int m() const { return static_cast<int>(mu.size()); }
  Vector v(int j) const { return V.col(j); }
  Vector w(int j) const { return W.col(j); }
};

/// Mean of P_2 over one period; equals its zeroth Fourier coefficient.
inline Matrix compute_C(const OperatorSpec& spec)
{
  return spec.P(2).coefficient(0);
}

/// Diagonalizes C and its adjoint.  Requires a simple spectrum: the
/// minimal eigenvalue gap must exceed gap_tol * max(1, ||C||).
inline BiorthogonalSystem eigensystem_C(const Matrix& C, double gap_tol = 1e-8)
{
  const int m = static_cast<int>(C.rows());
  if (C.cols() != m || m < 1)
    fail(Errc::DimensionMismatch, "C must be square and nonempty");

  Eigen::ComplexEigenSolver<Matrix> solver(C, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    fail(Errc::NoConvergence, "eigensolve of C did not converge");

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  const Vector raw = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (raw[a].real() != raw[b].real())
      return raw[a].real() < raw[b].real();
    return raw[a].imag() < raw[b].imag();
  });

  BiorthogonalSystem sys;
  sys.mu.resize(m);
  sys.V.resize(m, m);
  for (int j = 0; j < m; ++j)
  {
    sys.mu[j] = raw[order[j]];
    Vector v = solver.eigenvectors().col(order[j]);
    sys.V.col(j) = v / v.norm();
  }

  const double scale = std::max(1.0, C.operatorNorm());
  sys.gap_a = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      sys.gap_a = std::min(sys.gap_a, std::abs(sys.mu[i] - sys.mu[j]));
  if (m > 1 && !(sys.gap_a > gap_tol * scale))
    fail(Errc::DegenerateSpectrum,
         "eigenvalues of C are not simple at relative tolerance " + std::to_string(gap_tol));

  // Adjoint eigenvectors: solve C^H and pick, for each mu_j, the eigenvector
  // of conj(mu_j); rescale so <v_j, w_j> = w_j^H v_j = 1.
  Eigen::ComplexEigenSolver<Matrix> adj(C.adjoint(), /*computeEigenvectors=*/true);
  if (adj.info() != Eigen::Success)
    fail(Errc::NoConvergence, "eigensolve of C^H did not converge");
  sys.W.resize(m, m);
  std::vector<bool> used(m, false);
  for (int j = 0; j < m; ++j)
  {
    const Complex target = std::conj(sys.mu[j]);
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int t = 0; t < m; ++t)
    {
      if (used[t])
        continue;
      const double dist = std::abs(adj.eigenvalues()[t] - target);
      if (dist < best_dist)
      {
        best_dist = dist;
        best = t;
      }
    }
    used[best] = true;
    Vector u = adj.eigenvectors().col(best);
    const Complex pairing = u.dot(sys.V.col(j));  // u^H v_j
    if (std::abs(pairing) < 1e-14)
      fail(Errc::DegenerateSpectrum, "adjoint pairing <v_j, w_j> is numerically singular");
    sys.W.col(j) = u / std::conj(pairing);
  }

  sys.norm_V = sys.V.operatorNorm();
  sys.norm_W = sys.W.operatorNorm();
  return sys;
}

/// Unperturbed eigenvalue mu(k, j) = omega^n + mu_j omega^(n-2).
inline Complex mu_kj(const BiorthogonalSystem& sys, int n, int k, int j, Bc bc)
{
  return omega_pow(bc, k, n) + sys.mu[j] * omega_pow(bc, k, n - 2);
}

struct FrameDefect
{
  double sum_sq = 0.0;  // sum_{p,q} |<f_p, w_q>|^2
  double lower = 0.0;   // ||V||^-2 ||f||^2
  double upper = 0.0;   // ||W||^2 ||f||^2
};

/// Frame inequality data for a finitely supported coefficient family f_p.
inline FrameDefect frame_defect(const BiorthogonalSystem& sys, const std::map<int, Vector>& f)
{
  FrameDefect out;
  double norm_sq = 0.0;
  for (const auto& [p, fp] : f)
  {
    if (fp.size() != sys.m())
      fail(Errc::DimensionMismatch, "frame input at frequency " + std::to_string(p) +
                                        " has wrong length");
    norm_sq += fp.squaredNorm();
    out.sum_sq += (sys.W.adjoint() * fp).squaredNorm();
  }
  out.lower = norm_sq / (sys.norm_V * sys.norm_V);
  out.upper = sys.norm_W * sys.norm_W * norm_sq;
  return out;
}

}  // namespace rieszspec
