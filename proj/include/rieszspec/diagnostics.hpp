#pragma once

/// Basis diagnostics.  Condition C8 asks that, for every s,
///
///   ln k / (k b(s,s,+-f))  -> 0   and   b_max(f) b_max(-f) / b(s,s,+-f) -> 0,
///
/// with f the transfer frequency of pair k.  Within its scope the Riesz
/// verdict is decided by two-sided equivalence of the diagonal transfer
/// coefficients: bounded ratio with no power-law trend means basis, a
/// diverging or vanishing ratio trend means no basis.  The predicted pair
/// overlap |1 - rho| / (1 + rho), rho = |b(j,j,-f) / b(j,j,+f)|, feeds a
/// Bari-type sup test against a threshold a in (0, 1).
///
/// Analytic mode reads tail laws exactly: power tails hold C8 iff both
/// decay exponents lie strictly inside (0, 1) with nonvanishing diagonal
/// amplitudes; finitely supported coefficients fail it.  Empirical mode
/// fits  log y = c + beta log k + delta log log k  per sequence and
/// classifies by the dominant exponent, so a known logarithmic factor
/// cannot blur a decisive power law.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rieszspec/asymptotics.hpp"
#include "rieszspec/trend.hpp"

namespace rieszspec {

enum class Condition8Verdict { Holds, Fails, Inconclusive };
enum class RieszVerdict { Basis, NoBasis, Inconclusive };
enum class DiagnosticMode { Analytic, Empirical };

inline const char* to_string(Condition8Verdict v)
{
  switch (v)
  {
    case Condition8Verdict::Holds: return "holds";
    case Condition8Verdict::Fails: return "fails";
    default: return "inconclusive";
  }
}

inline const char* to_string(RieszVerdict v)
{
  switch (v)
  {
    case RieszVerdict::Basis: return "basis";
    case RieszVerdict::NoBasis: return "no_basis";
    default: return "inconclusive";
  }
}

inline const char* to_string(DiagnosticMode mode)
{
  return mode == DiagnosticMode::Analytic ? "analytic" : "empirical";
}

/// Limit behaviour of one positive sequence.
enum class SequenceClass { ToZero, Diverges, Flat, Unclear };

inline const char* to_string(SequenceClass cls)
{
  switch (cls)
  {
    case SequenceClass::ToZero: return "to_zero";
    case SequenceClass::Diverges: return "diverges";
    case SequenceClass::Flat: return "flat";
    default: return "unclear";
  }
}

struct SequenceTrend
{
  std::string label;
  SequenceClass cls = SequenceClass::Unclear;
  PowerLogFit fit;
};

namespace detail {

constexpr double kSlopeFloor = 1e-3;  // numerical noise floor for exponent tests

inline SequenceClass classify(const PowerLogFit& fit)
{
  const double tol_beta = std::max(2.0 * fit.beta_se, kSlopeFloor);
  const double tol_delta = std::max(2.0 * fit.delta_se, kSlopeFloor);
  if (fit.beta < -tol_beta)
    return SequenceClass::ToZero;
  if (fit.beta > tol_beta)
    return SequenceClass::Diverges;
  if (fit.delta < -tol_delta)
    return SequenceClass::ToZero;
  if (fit.delta > tol_delta)
    return SequenceClass::Diverges;
  return SequenceClass::Flat;
}

}  // namespace detail

struct Condition8Row
{
  int s = 0;
  Condition8Verdict verdict = Condition8Verdict::Inconclusive;
  std::string reason;
  std::vector<SequenceTrend> trends;  // empirical mode only
};

struct Condition8Report
{
  Condition8Verdict verdict = Condition8Verdict::Inconclusive;
  DiagnosticMode mode = DiagnosticMode::Analytic;
  std::vector<Condition8Row> rows;
};

inline Condition8Report condition8_verdict(const ProjectionTable& table, int k_min, int k_max,
                                           DiagnosticMode mode, Bc bc)
{
  Condition8Report report;
  report.mode = mode;
  const int m = table.dim();

  if (mode == DiagnosticMode::Analytic)
  {
    const ProjectedTail* tail = table.tail();
    for (int s = 0; s < m; ++s)
    {
      Condition8Row row;
      row.s = s;
      if (!tail)
      {
        row.verdict = Condition8Verdict::Fails;
        row.reason = "finitely supported coefficients: diagonal transfer terms vanish eventually";
      }
      else
      {
        const double amp_pos = std::abs(tail->amp_pos(s, s));
        const double amp_neg = std::abs(tail->amp_neg(s, s));
        if (amp_pos == 0.0 || amp_neg == 0.0)
        {
          row.verdict = Condition8Verdict::Fails;
          row.reason = "projected tail amplitude vanishes on the diagonal";
        }
        else if (tail->s_pos < 1.0 && tail->s_neg < 1.0)
        {
          row.verdict = Condition8Verdict::Holds;
          row.reason = "power tail with exponents strictly inside (0, 1)";
        }
        else
        {
          row.verdict = Condition8Verdict::Fails;
          row.reason = "tail decay exponent >= 1: ln k / (k b) does not vanish";
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  else
  {
    if (k_max - k_min + 1 < 8)
      fail(Errc::InvalidConfig, "empirical window needs length >= 8");
    if (k_min < 2)
      fail(Errc::InvalidConfig, "empirical window needs k_min >= 2");
    std::vector<double> ks;
    for (int k = k_min; k <= k_max; ++k)
      ks.push_back(static_cast<double>(k));

    for (int s = 0; s < m; ++s)
    {
      Condition8Row row;
      row.s = s;
      bool any_diverges = false, all_to_zero = true;
      for (const int sign : {+1, -1})
      {
        std::vector<double> log_ratio, product_ratio;
        for (int k = k_min; k <= k_max; ++k)
        {
          const int f = transfer_frequency(bc, k);
          const double diag = std::abs(table.b(s, s, sign * f));
          if (diag == 0.0)
            fail(Errc::EmptyDiagonal, "b(" + std::to_string(s) + "," + std::to_string(s) + "," +
                                          std::to_string(sign * f) + ") vanishes on the window");
          const double kd = static_cast<double>(k);
          log_ratio.push_back(std::log(kd) / (kd * diag));
          product_ratio.push_back(table.b_max(f) * table.b_max(-f) / diag);
        }
        for (const auto& [label, values] :
             {std::pair<std::string, std::vector<double>*>{sign > 0 ? "log_over_k_plus" : "log_over_k_minus", &log_ratio},
              std::pair<std::string, std::vector<double>*>{sign > 0 ? "product_plus" : "product_minus", &product_ratio}})
        {
          SequenceTrend trend;
          trend.label = label;
          trend.fit = fit_power_log(ks, *values);
          trend.cls = detail::classify(trend.fit);
          any_diverges |= trend.cls == SequenceClass::Diverges;
          all_to_zero &= trend.cls == SequenceClass::ToZero;
          row.trends.push_back(std::move(trend));
        }
      }
      if (any_diverges)
      {
        row.verdict = Condition8Verdict::Fails;
        row.reason = "a required ratio diverges on the window";
      }
      else if (all_to_zero)
      {
        row.verdict = Condition8Verdict::Holds;
        row.reason = "all required ratios decay with decisive exponents";
      }
      else
      {
        row.verdict = Condition8Verdict::Inconclusive;
        row.reason = "at least one ratio shows no decisive trend";
      }
      report.rows.push_back(std::move(row));
    }
  }

  bool any_fails = false, all_hold = true;
  for (const auto& row : report.rows)
  {
    any_fails |= row.verdict == Condition8Verdict::Fails;
    all_hold &= row.verdict == Condition8Verdict::Holds;
  }
  report.verdict = any_fails ? Condition8Verdict::Fails
                             : (all_hold ? Condition8Verdict::Holds : Condition8Verdict::Inconclusive);
  return report;
}

struct RatioStats
{
  int j = 0;
  double min_ratio = 0.0;   // over the window, |b(j,j,+f)| / |b(j,j,-f)|
  double max_ratio = 0.0;
  double trend_slope = 0.0;  // log-log slope, +-0 for a balanced pair
  double trend_se = 0.0;
  RieszVerdict verdict = RieszVerdict::Inconclusive;
  std::string reason;
};

struct RieszReport
{
  RieszVerdict verdict = RieszVerdict::Inconclusive;
  DiagnosticMode mode = DiagnosticMode::Empirical;
  std::string reason;
  std::vector<RatioStats> per_j;
};

inline RieszReport riesz_verdict(const ProjectionTable& table, int k_min, int k_max,
                                 const Condition8Report& condition8, double ratio_bound,
                                 DiagnosticMode mode, Bc bc)
{
  if (!(ratio_bound > 1.0))
    fail(Errc::InvalidConfig, "ratio bound must exceed 1");
  RieszReport report;
  report.mode = mode;
  if (condition8.verdict == Condition8Verdict::Fails)
  {
    report.verdict = RieszVerdict::Inconclusive;
    report.reason = "non-degeneracy condition fails: basis criterion not applicable";
    return report;
  }

  const int m = table.dim();
  if (mode == DiagnosticMode::Analytic)
  {
    const ProjectedTail* tail = table.tail();
    if (!tail)
    {
      report.verdict = RieszVerdict::Inconclusive;
      report.reason = "no tail law to reason about analytically";
      return report;
    }
    for (int j = 0; j < m; ++j)
    {
      RatioStats stats;
      stats.j = j;
      const double amp_pos = std::abs(tail->amp_pos(j, j));
      const double amp_neg = std::abs(tail->amp_neg(j, j));
      if (amp_pos == 0.0 || amp_neg == 0.0)
      {
        stats.verdict = RieszVerdict::NoBasis;
        stats.reason = "one-sided diagonal tail: ratio degenerates";
      }
      else if (tail->s_pos == tail->s_neg)
      {
        const double ratio = amp_pos / amp_neg;
        stats.min_ratio = stats.max_ratio = ratio;
        stats.verdict = RieszVerdict::Basis;
        stats.reason = "equal decay exponents: ratio is a nonzero constant";
      }
      else
      {
        stats.trend_slope = tail->s_neg - tail->s_pos;  // ratio ~ k^(s_neg - s_pos)
        stats.verdict = RieszVerdict::NoBasis;
        stats.reason = "unequal decay exponents: ratio follows a power law";
      }
      report.per_j.push_back(std::move(stats));
    }
  }
  else
  {
    if (k_max - k_min + 1 < 8)
      fail(Errc::InvalidConfig, "empirical window needs length >= 8");
    std::vector<double> log_k;
    for (int k = k_min; k <= k_max; ++k)
      log_k.push_back(std::log(static_cast<double>(k)));
    for (int j = 0; j < m; ++j)
    {
      RatioStats stats;
      stats.j = j;
      std::vector<double> log_ratio;
      bool degenerate = false;
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (int k = k_min; k <= k_max; ++k)
      {
        const int f = transfer_frequency(bc, k);
        const double num = std::abs(table.b(j, j, f));
        const double den = std::abs(table.b(j, j, -f));
        if (num == 0.0 || den == 0.0)
        {
          degenerate = true;
          break;
        }
        const double ratio = num / den;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        log_ratio.push_back(std::log(ratio));
      }
      if (degenerate)
      {
        stats.verdict = RieszVerdict::Inconclusive;
        stats.reason = "vanishing diagonal transfer coefficient on the window";
        report.per_j.push_back(std::move(stats));
        continue;
      }
      stats.min_ratio = lo;
      stats.max_ratio = hi;
      const LineFit fit = fit_line(log_k, log_ratio);
      stats.trend_slope = fit.slope;
      stats.trend_se = fit.slope_se;
      const double tol = std::max(2.0 * fit.slope_se, detail::kSlopeFloor);
      if (std::abs(fit.slope) > tol)
      {
        stats.verdict = RieszVerdict::NoBasis;
        stats.reason = fit.slope > 0 ? "ratio trend diverges" : "ratio trend vanishes";
      }
      else if (lo >= 1.0 / ratio_bound && hi <= ratio_bound)
      {
        stats.verdict = RieszVerdict::Basis;
        stats.reason = "ratio bounded with no trend";
      }
      else
      {
        stats.verdict = RieszVerdict::Inconclusive;
        stats.reason = "ratio exceeds the configured bound without a clear trend";
      }
      report.per_j.push_back(std::move(stats));
    }
  }

  bool any_no = false, all_basis = true;
  for (const auto& stats : report.per_j)
  {
    any_no |= stats.verdict == RieszVerdict::NoBasis;
    all_basis &= stats.verdict == RieszVerdict::Basis;
  }
  report.verdict =
      any_no ? RieszVerdict::NoBasis : (all_basis ? RieszVerdict::Basis : RieszVerdict::Inconclusive);
  if (report.reason.empty())
    report.reason = any_no ? "some mode family loses two-sided equivalence"
                           : (all_basis ? "all diagonal transfer ratios are two-sided bounded"
                                        : "no decisive classification");
  return report;
}

/// Leading-order overlap of the two normalized eigenfunctions of pair k.
inline double predicted_overlap(const ProjectionTable& table, int k, int j, Bc bc)
{
  const int f = transfer_frequency(bc, k);
  const Complex beta_plus = table.b(j, j, f);
  if (beta_plus == Complex(0.0, 0.0))
    fail(Errc::DegeneratePair, "predicted_overlap: b(j,j,+f) vanishes for k=" + std::to_string(k));
  const double rho = std::abs(table.b(j, j, -f)) / std::abs(beta_plus);
  return std::abs(1.0 - rho) / (1.0 + rho);
}

struct OverlapSample
{
  int k = 0;
  int j = 0;
  double value = 0.0;
};

struct BariResult
{
  bool pass = false;
  double sup = 0.0;
  double threshold = 0.0;
  int witness_k = 0;
  int witness_j = 0;
};

/// Sup test sup_k |overlap| < a; the witness is the attaining sample.
inline BariResult bari_check(const std::vector<OverlapSample>& overlaps, double a)
{
  if (!(a > 0.0 && a < 1.0))
    fail(Errc::InvalidConfig, "Bari threshold must lie in (0, 1)");
  BariResult out;
  out.threshold = a;
  for (const auto& sample : overlaps)
  {
    if (sample.value > out.sup)
    {
      out.sup = sample.value;
      out.witness_k = sample.k;
      out.witness_j = sample.j;
    }
  }
  out.pass = out.sup < a;
  return out;
}

struct BasisVerdict
{
  Condition8Report condition8_analytic;  // populated when a tail law exists
  bool has_analytic = false;
  Condition8Report condition8_empirical;
  Condition8Report condition8;  // headline: analytic when available
  RieszReport riesz;
  std::vector<OverlapSample> overlaps;
  BariResult bari;
};

/// Full diagnostic bundle over one k window.
inline BasisVerdict basis_verdict(const ProjectionTable& table, int k_min, int k_max,
                                  double ratio_bound, double bari_a, Bc bc)
{
  BasisVerdict out;
  out.has_analytic = table.tail() != nullptr;
  if (out.has_analytic)
    out.condition8_analytic = condition8_verdict(table, k_min, k_max, DiagnosticMode::Analytic, bc);
  try
  {
    out.condition8_empirical = condition8_verdict(table, k_min, k_max, DiagnosticMode::Empirical, bc);
  }
  catch (const Error& e)
  {
    if (e.code() != Errc::EmptyDiagonal)
      throw;
    // An identically vanishing diagonal on the window settles the limits.
    out.condition8_empirical.mode = DiagnosticMode::Empirical;
    out.condition8_empirical.verdict = Condition8Verdict::Fails;
    Condition8Row row;
    row.verdict = Condition8Verdict::Fails;
    row.reason = e.what();
    out.condition8_empirical.rows.push_back(std::move(row));
  }
  out.condition8 = out.has_analytic ? out.condition8_analytic : out.condition8_empirical;
  const DiagnosticMode riesz_mode =
      out.has_analytic ? DiagnosticMode::Analytic : DiagnosticMode::Empirical;
  out.riesz = riesz_verdict(table, k_min, k_max, out.condition8, ratio_bound, riesz_mode, bc);
  for (int k = k_min; k <= k_max; ++k)
    for (int j = 0; j < table.dim(); ++j)
    {
      try
      {
        out.overlaps.push_back({k, j, predicted_overlap(table, k, j, bc)});
      }
      catch (const Error& e)
      {
        if (e.code() != Errc::DegeneratePair)
          throw;
      }
    }
  out.bari = bari_check(out.overlaps, bari_a);
  return out;
}

}  // namespace rieszspec
