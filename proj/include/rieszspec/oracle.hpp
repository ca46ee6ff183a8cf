#pragma once

/// Truncated Fourier-Galerkin oracle.  In the basis phi_p(x) = e^{i theta(p) x},
/// p in [-K, K], the operator acts blockwise as
///
///   M[(p,s), (p',q)] = omega(p')^n delta_pp' delta_sq
///                      + sum_{nu=2}^{n} omega(p')^(n-nu) [P_nu_hat(p - p')]_{s,q},
///
/// a dense m(2K+1) complex matrix.  Eigenpairs are certified a posteriori
/// against ||M v - lambda v|| <= eig_tol ||M||_F; the solver behind the
/// contract is interchangeable.  Matching assigns each certified
/// eigenvalue to a first-order disk and, where a refined prediction
/// exists, to the nearer split center; eigenvectors whose dominant
/// frequency reaches the truncation edge are excluded as contaminated.

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rieszspec/asymptotics.hpp"

namespace rieszspec {

constexpr int kDefaultSizeCap = 600;

struct GalerkinMatrix
{
  int K = 0;
  int n = 0;
  int m = 0;
  Bc bc = Bc::Periodic;
  Matrix M;
  double norm_estimate = 0.0;  // Frobenius norm, an upper bound for the 2-norm

  int dim() const { return m * (2 * K + 1); }
  int row_of(int p, int s) const { return (p + K) * m + s; }
  int freq_of(int row) const { return row / m - K; }
  int component_of(int row) const { return row % m; }
};

inline GalerkinMatrix assemble(const OperatorSpec& spec, int K, int size_cap = kDefaultSizeCap)
{
  ensure_valid(spec);
  if (K < 1)
    fail(Errc::InvalidConfig, "truncation K must be >= 1");
  if (K < spec.max_explicit_frequency())
    fail(Errc::TruncationTooSmall, "K = " + std::to_string(K) +
                                       " is below the largest explicit coefficient frequency " +
                                       std::to_string(spec.max_explicit_frequency()));
  GalerkinMatrix gal;
  gal.K = K;
  gal.n = spec.n;
  gal.m = spec.m;
  gal.bc = spec.bc;
  const int dim = gal.dim();
  if (dim > size_cap)
    fail(Errc::SizeCapExceeded, "Galerkin dimension " + std::to_string(dim) + " exceeds the cap " +
                                    std::to_string(size_cap));
  gal.M = Matrix::Zero(dim, dim);

  // Coefficient lookups cached per frequency difference in [-2K, 2K].
  std::vector<std::vector<Matrix>> coef_cache(spec.n + 1);
  for (int nu = 2; nu <= spec.n; ++nu)
  {
    coef_cache[nu].reserve(4 * K + 1);
    for (int diff = -2 * K; diff <= 2 * K; ++diff)
      coef_cache[nu].push_back(spec.P(nu).coefficient(diff));
  }

  for (int pc = -K; pc <= K; ++pc)
  {
    // Column-frequency symbol powers omega(pc)^(n - nu).
    std::vector<Complex> weight(spec.n + 1);
    for (int nu = 2; nu <= spec.n; ++nu)
      weight[nu] = omega_pow(spec.bc, pc, spec.n - nu);
    const Complex lead = omega_pow(spec.bc, pc, spec.n);

    for (int pr = -K; pr <= K; ++pr)
    {
      Matrix block = Matrix::Zero(spec.m, spec.m);
      for (int nu = 2; nu <= spec.n; ++nu)
      {
        const Matrix& coef = coef_cache[nu][static_cast<std::size_t>(pr - pc + 2 * K)];
        if (!coef.isZero(0.0))
          block += weight[nu] * coef;
      }
      if (pr == pc)
        block += lead * Matrix::Identity(spec.m, spec.m);
      if (!block.isZero(0.0))
        gal.M.block(gal.row_of(pr, 0), gal.row_of(pc, 0), spec.m, spec.m) = block;
    }
  }
  gal.norm_estimate = gal.M.norm();
  return gal;
}

/// Comparison operator: order n, coefficient C + (beta_+ e^{i 2 pi f x}
/// + beta_- e^{-i 2 pi f x}) I at the y^(n-2) slot, everything else zero.
/// Its pair (k, j) splits exactly like the refined prediction at leading
/// order, with no other coupling present.
inline GalerkinMatrix assemble_model(const OperatorSpec& spec, const ProjectionTable& table, int k,
                                     int j, int K, int size_cap = kDefaultSizeCap)
{
  const int f = transfer_frequency(spec.bc, k);
  const Complex beta_plus = table.b(j, j, f);
  const Complex beta_minus = table.b(j, j, -f);
  if (beta_plus == Complex(0.0, 0.0) || beta_minus == Complex(0.0, 0.0))
    fail(Errc::DegeneratePair, "model operator needs nonvanishing transfer coefficients");
  OperatorSpec model = make_spec(spec.n, spec.m, spec.bc);
  const Matrix eye = Matrix::Identity(spec.m, spec.m);
  model.P(2).set_coefficient(0, compute_C(spec));
  model.P(2).set_coefficient(f, beta_plus * eye);
  model.P(2).set_coefficient(-f, beta_minus * eye);
  return assemble(model, K, size_cap);
}

struct EigenDecomposition
{
  Vector eigenvalues;       // sorted by (re, im)
  Matrix eigenvectors;      // unit columns, order matching eigenvalues
  Eigen::VectorXd residuals;  // ||M v - lambda v|| per pair
  double norm_estimate = 0.0;
  double eig_tol = 0.0;
};

inline EigenDecomposition eig_dense(const Matrix& M, double eig_tol = 1e-10)
{
  if (M.rows() != M.cols() || M.rows() < 1)
    fail(Errc::DimensionMismatch, "eig_dense needs a square nonempty matrix");
  if (!M.allFinite())
    fail(Errc::InvalidConfig, "eig_dense input has non-finite entries");
  Eigen::ComplexEigenSolver<Matrix> solver(M, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    fail(Errc::NoConvergence,
         "dense eigensolve failed to converge at dimension " + std::to_string(M.rows()));

  const int dim = static_cast<int>(M.rows());
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  const Vector& raw = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (raw[a].real() != raw[b].real())
      return raw[a].real() < raw[b].real();
    return raw[a].imag() < raw[b].imag();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(dim);
  out.eigenvectors.resize(dim, dim);
  out.norm_estimate = M.norm();
  out.eig_tol = eig_tol;
  for (int i = 0; i < dim; ++i)
  {
    out.eigenvalues[i] = raw[order[i]];
    Vector v = solver.eigenvectors().col(order[i]);
    out.eigenvectors.col(i) = v / v.norm();
  }
  const Matrix R = M * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal();
  out.residuals = R.colwise().norm().real().transpose();
  const double worst = out.residuals.maxCoeff();
  if (worst > eig_tol * out.norm_estimate)
    fail(Errc::NoConvergence, "eigenpair residual " + std::to_string(worst) +
                                  " exceeds eig_tol * ||M|| = " +
                                  std::to_string(eig_tol * out.norm_estimate));
  return out;
}

struct MatchedEigenpair
{
  Complex lambda;
  int index = -1;        // column in the decomposition
  int k = 0;             // assigned pair
  int j = 0;
  int branch = 0;        // +1 / -1 refined branch, 0 when unresolved
  bool ambiguous = false;  // equidistant from both refined centers
  int dominant_p = 0;    // grid frequency carrying the largest coefficient
  Complex u, v;          // <c_k, w_j>, <c_partner, w_j>
  Complex lambda_scaled;  // lambda / omega(k)^(n-2)
  double tail_energy = 0.0;
  double residual = 0.0;
};

struct DiskCount
{
  int k = 0;
  int j = 0;
  int total = 0;        // eigenvalues inside the first-order disk
  int plus_count = 0;   // inside the refined plus/minus disks
  int minus_count = 0;
};

struct MatchResult
{
  std::vector<MatchedEigenpair> matched;      // deterministic eigenvalue order
  std::vector<DiskCount> counts;              // k ascending then j
  std::vector<int> edge_excluded;             // decomposition indices
  std::vector<int> unassigned;                // interior but outside every disk
};

/// Coefficient block c_p of eigenvector column `index`.
inline Vector coefficient_block(const GalerkinMatrix& gal, const Matrix& vectors, int index, int p)
{
  return vectors.col(index).segment(gal.row_of(p, 0), gal.m);
}

/// Frame coordinates of one matched pair; u, v are the projections onto
/// the pair directions, the tail energy collects every other frequency.
inline void extract_coordinates(const GalerkinMatrix& gal, const Matrix& vectors,
                                MatchedEigenpair& pair, const BiorthogonalSystem& sys)
{
  const int partner = pair_partner(gal.bc, pair.k);
  pair.u = sys.W.col(pair.j).dot(coefficient_block(gal, vectors, pair.index, pair.k));
  pair.v = sys.W.col(pair.j).dot(coefficient_block(gal, vectors, pair.index, partner));
  pair.lambda_scaled = pair.lambda / omega_pow(gal.bc, pair.k, gal.n - 2);
  double tail = 0.0;
  for (int p = -gal.K; p <= gal.K; ++p)
  {
    if (p == pair.k || p == partner)
      continue;
    tail += (sys.W.adjoint() * coefficient_block(gal, vectors, pair.index, p)).squaredNorm();
  }
  pair.tail_energy = tail;
}

struct MatchOptions
{
  std::optional<int> edge_buffer;  // default: max explicit coefficient frequency + 4
  double ambiguity_rel_tol = 1e-12;
};

inline MatchResult match_spectrum(const GalerkinMatrix& gal, const EigenDecomposition& eig,
                                  const std::vector<SweepEntry>& sweep,
                                  const BiorthogonalSystem& sys, const OperatorSpec& spec,
                                  MatchOptions options = {})
{
  const int buffer = options.edge_buffer.value_or(spec.max_explicit_frequency() + 4);
  const int interior = gal.K - buffer;
  MatchResult result;
  result.counts.reserve(sweep.size());
  std::map<std::pair<int, int>, std::size_t> count_index;
  for (const auto& entry : sweep)
  {
    count_index[{entry.k, entry.j}] = result.counts.size();
    result.counts.push_back({entry.k, entry.j, 0, 0, 0});
  }

  for (int i = 0; i < eig.eigenvalues.size(); ++i)
  {
    const Complex lambda = eig.eigenvalues[i];

    int dominant_p = 0;
    double dominant_norm = -1.0;
    for (int p = -gal.K; p <= gal.K; ++p)
    {
      const double norm = coefficient_block(gal, eig.eigenvectors, i, p).norm();
      if (norm > dominant_norm)
      {
        dominant_norm = norm;
        dominant_p = p;
      }
    }
    if (std::abs(dominant_p) > interior)
    {
      result.edge_excluded.push_back(i);
      continue;
    }

    // Disk membership; ties resolved toward the nearest center.
    const SweepEntry* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& entry : sweep)
    {
      const double dist = std::abs(lambda - entry.mu_center);
      if (dist < entry.eps)
      {
        auto& count = result.counts[count_index[{entry.k, entry.j}]];
        ++count.total;
        if (entry.refined)
        {
          if (std::abs(lambda - entry.refined->h_plus) < entry.refined->refined_radius)
            ++count.plus_count;
          if (std::abs(lambda - entry.refined->h_minus) < entry.refined->refined_radius)
            ++count.minus_count;
        }
        if (dist < best_dist)
        {
          best_dist = dist;
          best = &entry;
        }
      }
    }
    if (!best)
    {
      result.unassigned.push_back(i);
      continue;
    }

    MatchedEigenpair pair;
    pair.lambda = lambda;
    pair.index = i;
    pair.k = best->k;
    pair.j = best->j;
    pair.dominant_p = dominant_p;
    pair.residual = eig.residuals[i];
    if (best->refined)
    {
      const double d_plus = std::abs(lambda - best->refined->h_plus);
      const double d_minus = std::abs(lambda - best->refined->h_minus);
      const double scale = std::max({1.0, d_plus, d_minus});
      if (std::abs(d_plus - d_minus) <= options.ambiguity_rel_tol * scale)
        pair.ambiguous = true;
      pair.branch = d_plus <= d_minus ? +1 : -1;
    }
    extract_coordinates(gal, eig.eigenvectors, pair, sys);
    result.matched.push_back(std::move(pair));
  }
  return result;
}

/// Coefficient-space residual of the projected eigenvalue identity at row
/// (p, s):  (lambda - mu(p,s)) <c_p, w_s>  minus the omega-weighted
/// convolution of the coefficients against the eigenvector, with the mean
/// matrix C removed from the nu = 2 term.
inline Complex residual_identity14(const GalerkinMatrix& gal, const Matrix& vectors, int index,
                                   Complex lambda, int p, int s, const OperatorSpec& spec,
                                   const BiorthogonalSystem& sys)
{
  if (p < -gal.K || p > gal.K || s < 0 || s >= gal.m)
    fail(Errc::InvalidConfig, "residual_identity14: row (p, s) outside the truncation grid");
  const Complex lhs = (lambda - mu_kj(sys, gal.n, p, s, gal.bc)) *
                      sys.W.col(s).dot(coefficient_block(gal, vectors, index, p));
  Complex rhs = 0.0;
  const Matrix C = compute_C(spec);
  for (int pc = -gal.K; pc <= gal.K; ++pc)
  {
    Matrix block = Matrix::Zero(gal.m, gal.m);
    for (int nu = 2; nu <= gal.n; ++nu)
    {
      Matrix coef = spec.P(nu).coefficient(p - pc);
      if (nu == 2 && pc == p)
        coef -= C;
      if (!coef.isZero(0.0))
        block += omega_pow(gal.bc, pc, gal.n - nu) * coef;
    }
    if (!block.isZero(0.0))
      rhs += sys.W.col(s).dot(block * coefficient_block(gal, vectors, index, pc));
  }
  return lhs - rhs;
}

/// L^2 inner product (Psi_1, Psi_2) of two truncated eigenfunctions; by
/// Parseval this is the plain coefficient inner product.
inline Complex numerical_overlap(const Vector& vec1, const Vector& vec2)
{
  return vec2.dot(vec1);
}

}  // namespace rieszspec
