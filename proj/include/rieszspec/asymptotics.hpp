#pragma once

/// Closed-form spectral predictions for large |k|.  Pair k couples the
/// basis directions at frequencies +theta(k) and -theta(k) through the
/// transfer coefficients beta_+ = b(j,j,+f), beta_- = b(j,j,-f) with
/// f = transfer_frequency(bc, k).  First-order localization disks sit at
/// the unperturbed centers with radius
///
///   eps_k = 2 m c3 k^(n-2) (b_max(f) + b_max(-f) + ln k / k) ||V||,
///
/// and the refined prediction splits each center by +-omega^(n-2) q with
/// q = sqrt(beta_+ beta_-) (principal branch), radius c4 k^(n-2) gamma d_k.

#include <cmath>
#include <optional>
#include <vector>

#include "rieszspec/projection.hpp"

namespace rieszspec {

inline double epsilon_k(const ProjectionTable& table, const BiorthogonalSystem& sys, int n, int k,
                        double c3, Bc bc)
{
  if (k < 2)
    fail(Errc::InvalidConfig, "epsilon_k requires k >= 2");
  const int f = transfer_frequency(bc, k);
  const double kd = static_cast<double>(k);
  return 2.0 * sys.m() * c3 * real_ipow(kd, n - 2) *
         (table.b_max(f) + table.b_max(-f) + std::log(kd) / kd) * sys.norm_V;
}

struct Disk
{
  Complex center;
  double radius = 0.0;
  int j = 0;
};

struct FirstOrderDisks
{
  int k = 0;
  std::vector<Disk> disks;  // one per j, ascending
  bool disjoint = true;     // pairwise, vacuous for m == 1
};

inline FirstOrderDisks first_order_disks(const BiorthogonalSystem& sys, const ProjectionTable& table,
                                         int n, int k, double c3, Bc bc)
{
  FirstOrderDisks out;
  out.k = k;
  const double eps = epsilon_k(table, sys, n, k, c3, bc);
  for (int j = 0; j < sys.m(); ++j)
    out.disks.push_back({mu_kj(sys, n, k, j, bc), eps, j});
  for (std::size_t a = 0; a < out.disks.size() && out.disjoint; ++a)
    for (std::size_t b = a + 1; b < out.disks.size(); ++b)
      if (std::abs(out.disks[a].center - out.disks[b].center) <=
          out.disks[a].radius + out.disks[b].radius)
      {
        out.disjoint = false;
        break;
      }
  return out;
}

struct PairPrediction
{
  int k = 0;
  int j = 0;
  Complex mu_center;       // unperturbed double eigenvalue
  double eps = 0.0;        // first-order radius
  Complex beta_plus;       // b(j, j, +f)
  Complex beta_minus;      // b(j, j, -f)
  Complex q;               // sqrt(beta_+ beta_-), principal branch
  double gamma = 1.0;      // max of the two sqrt amplitude ratios
  double d = 0.0;          // max(b_max(f) b_max(-f), ln(max(k,2)) / k)
  Complex h_plus;          // mu_center + omega^(n-2) q
  Complex h_minus;         // mu_center - omega^(n-2) q
  double refined_radius = 0.0;
  Complex alpha_plus;      // leading coefficient ratio v/u on each branch
  Complex alpha_minus;
  Complex u_plus, v_plus;    // normalized pair coefficients, |u|^2 + |v|^2 = 1
  Complex u_minus, v_minus;
};

inline PairPrediction refined_pair(const ProjectionTable& table, const BiorthogonalSystem& sys,
                                   int n, int k, int j, double c3, double c4, Bc bc)
{
  if (k < 2)
    fail(Errc::InvalidConfig, "refined_pair requires k >= 2");
  const int f = transfer_frequency(bc, k);
  PairPrediction p;
  p.k = k;
  p.j = j;
  p.mu_center = mu_kj(sys, n, k, j, bc);
  p.eps = epsilon_k(table, sys, n, k, c3, bc);
  p.beta_plus = table.b(j, j, f);
  p.beta_minus = table.b(j, j, -f);
  if (p.beta_plus == Complex(0.0, 0.0) || p.beta_minus == Complex(0.0, 0.0))
    fail(Errc::DegeneratePair, "pair k=" + std::to_string(k) + ", j=" + std::to_string(j) +
                                   " has a vanishing transfer coefficient");
  p.q = std::sqrt(p.beta_plus * p.beta_minus);
  const double ratio = std::sqrt(std::abs(p.beta_plus) / std::abs(p.beta_minus));
  p.gamma = std::max(ratio, 1.0 / ratio);
  const double kd = static_cast<double>(k);
  p.d = std::max(table.b_max(f) * table.b_max(-f), std::log(std::max(kd, 2.0)) / kd);
  const Complex split = omega_pow(bc, k, n - 2) * p.q;
  p.h_plus = p.mu_center + split;
  p.h_minus = p.mu_center - split;
  p.refined_radius = c4 * real_ipow(kd, n - 2) * p.gamma * p.d;
  p.alpha_plus = p.q / p.beta_plus;
  p.alpha_minus = -p.alpha_plus;
  const double norm_u = 1.0 / std::sqrt(1.0 + std::norm(p.alpha_plus));
  p.u_plus = norm_u;
  p.v_plus = p.alpha_plus * norm_u;
  p.u_minus = norm_u;  // |alpha_minus| == |alpha_plus|
  p.v_minus = p.alpha_minus * norm_u;
  return p;
}

struct SweepEntry
{
  int k = 0;
  int j = 0;
  Complex mu_center;
  double eps = 0.0;
  bool degenerate = false;
  std::optional<PairPrediction> refined;  // absent exactly when degenerate
};

/// Predictions for every (k, j) with k in [k_min, k_max], k ascending then
/// j ascending.  Degenerate pairs are recorded, not fatal.
inline std::vector<SweepEntry> predicted_spectrum(const ProjectionTable& table,
                                                  const BiorthogonalSystem& sys, int n, int k_min,
                                                  int k_max, double c3, double c4, Bc bc)
{
  if (k_min < 2 || k_min > k_max)
    fail(Errc::InvalidConfig, "predicted_spectrum requires 2 <= k_min <= k_max");
  std::vector<SweepEntry> sweep;
  for (int k = k_min; k <= k_max; ++k)
    for (int j = 0; j < sys.m(); ++j)
    {
      SweepEntry entry;
      entry.k = k;
      entry.j = j;
      entry.mu_center = mu_kj(sys, n, k, j, bc);
      entry.eps = epsilon_k(table, sys, n, k, c3, bc);
      try
      {
        entry.refined = refined_pair(table, sys, n, k, j, c3, c4, bc);
      }
      catch (const Error& e)
      {
        if (e.code() != Errc::DegeneratePair)
          throw;
        entry.degenerate = true;
      }
      sweep.push_back(std::move(entry));
    }
  return sweep;
}

}  // namespace rieszspec
