#pragma once

/// Runnable pipelines behind the command-line tool: closed-form analysis,
/// the truncated oracle, and the cross-validation of the two.  Each entry
/// point takes a validated problem plus one RunConfig and produces a JSON
/// document along with a flat CSV of the row-like payload.  All floating
/// point output uses round-trip precision so repeated runs are
/// byte-identical.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rieszspec/diagnostics.hpp"
#include "rieszspec/oracle.hpp"
#include "rieszspec/problem_json.hpp"

namespace rieszspec {

struct RunConfig
{
  int k_min = 8;
  int k_max = 16;
  int K = 64;
  double c3 = 1.0;
  double c4 = 1.0;
  double eig_tol = 1e-10;
  double ratio_bound = 100.0;
  double bari_a = 0.9;
  int size_cap = kDefaultSizeCap;
  std::optional<int> edge_buffer;             // default: max explicit frequency + 4
  std::string format = "json";                // "json" | "csv"
  std::optional<std::string> out;             // output path; stream when absent
  std::optional<std::string> projection_csv;  // optional projected-coefficient dump
};

/// Size-cap override from the environment (RIESZSPEC_SIZE_CAP).
inline int env_size_cap(int fallback)
{
  if (const char* raw = std::getenv("RIESZSPEC_SIZE_CAP"))
  {
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end != raw && *end == '\0' && v >= 1 && v <= 1000000)
      return static_cast<int>(v);
    fail(Errc::InvalidConfig, std::string("RIESZSPEC_SIZE_CAP is not a usable cap: '") + raw + "'");
  }
  return fallback;
}

inline void validate_config(const RunConfig& config)
{
  if (config.k_min < 2 || config.k_min > config.k_max)
    fail(Errc::InvalidConfig, "k window must satisfy 2 <= k_min <= k_max");
  if (config.K < 1)
    fail(Errc::InvalidConfig, "truncation K must be >= 1");
  if (!(config.c3 > 0.0) || !(config.c4 > 0.0))
    fail(Errc::InvalidConfig, "radius constants c3, c4 must be positive");
  if (!(config.eig_tol > 0.0))
    fail(Errc::InvalidConfig, "eig_tol must be positive");
  if (!(config.ratio_bound > 1.0))
    fail(Errc::InvalidConfig, "ratio bound must exceed 1");
  if (!(config.bari_a > 0.0 && config.bari_a < 1.0))
    fail(Errc::InvalidConfig, "Bari threshold must lie in (0, 1)");
  if (config.size_cap < 1)
    fail(Errc::InvalidConfig, "size cap must be >= 1");
  if (config.edge_buffer && *config.edge_buffer < 0)
    fail(Errc::InvalidConfig, "edge buffer must be >= 0");
  if (config.format != "json" && config.format != "csv")
    fail(Errc::InvalidConfig, "format must be 'json' or 'csv', got '" + config.format + "'");
}

namespace detail {

inline std::string fmt(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Json cjson(Complex z)
{
  return Json::array({z.real(), z.imag()});
}

/// One CSV row; absent optional cells stay empty.
class CsvRow
{
public:
  CsvRow& add(const std::string& cell)
  {
    if (!line_.empty())
      line_ += ',';
    line_ += cell;
    return *this;
  }
  CsvRow& add(int v) { return add(std::to_string(v)); }
  CsvRow& add(double v) { return add(fmt(v)); }
  CsvRow& add_blank() { return add(std::string()); }
  const std::string& str() const { return line_; }

private:
  std::string line_;
};

}  // namespace detail

inline Json json_of(const RunConfig& c)
{
  Json j;
  j["k_min"] = c.k_min;
  j["k_max"] = c.k_max;
  j["K"] = c.K;
  j["c3"] = c.c3;
  j["c4"] = c.c4;
  j["eig_tol"] = c.eig_tol;
  j["ratio_bound"] = c.ratio_bound;
  j["bari_a"] = c.bari_a;
  j["size_cap"] = c.size_cap;
  j["edge_buffer"] = c.edge_buffer ? Json(*c.edge_buffer) : Json(nullptr);
  j["format"] = c.format;
  return j;
}

inline Json json_of(const PowerLogFit& fit)
{
  Json j;
  j["c"] = fit.c;
  j["beta"] = fit.beta;
  j["delta"] = fit.delta;
  j["beta_se"] = fit.beta_se;
  j["delta_se"] = fit.delta_se;
  j["rms"] = fit.rms;
  j["n"] = fit.n;
  return j;
}

inline Json json_of(const LineFit& fit)
{
  Json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["slope_se"] = fit.slope_se;
  j["rms"] = fit.rms;
  j["n"] = fit.n;
  return j;
}

inline Json json_of(const Condition8Report& report)
{
  Json j;
  j["verdict"] = to_string(report.verdict);
  j["mode"] = to_string(report.mode);
  Json rows = Json::array();
  for (const Condition8Row& row : report.rows)
  {
    Json r;
    r["s"] = row.s;
    r["verdict"] = to_string(row.verdict);
    r["reason"] = row.reason;
    Json trends = Json::array();
    for (const SequenceTrend& trend : row.trends)
    {
      Json t;
      t["label"] = trend.label;
      t["class"] = to_string(trend.cls);
      t["fit"] = json_of(trend.fit);
      trends.push_back(std::move(t));
    }
    r["trends"] = std::move(trends);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline Json json_of(const RieszReport& report)
{
  Json j;
  j["verdict"] = to_string(report.verdict);
  j["mode"] = to_string(report.mode);
  j["reason"] = report.reason;
  Json per_j = Json::array();
  for (const RatioStats& stats : report.per_j)
  {
    Json s;
    s["j"] = stats.j;
    s["verdict"] = to_string(stats.verdict);
    s["reason"] = stats.reason;
    s["min_ratio"] = stats.min_ratio;
    s["max_ratio"] = stats.max_ratio;
    s["trend_slope"] = stats.trend_slope;
    s["trend_se"] = stats.trend_se;
    per_j.push_back(std::move(s));
  }
  j["per_j"] = std::move(per_j);
  return j;
}

inline Json json_of(const BasisVerdict& diag)
{
  Json j;
  j["condition8"] = json_of(diag.condition8);
  j["condition8_analytic"] = diag.has_analytic ? json_of(diag.condition8_analytic) : Json(nullptr);
  j["condition8_empirical"] = json_of(diag.condition8_empirical);
  j["riesz"] = json_of(diag.riesz);
  Json overlaps = Json::array();
  for (const OverlapSample& sample : diag.overlaps)
  {
    Json s;
    s["k"] = sample.k;
    s["j"] = sample.j;
    s["value"] = sample.value;
    overlaps.push_back(std::move(s));
  }
  j["overlaps"] = std::move(overlaps);
  Json bari;
  bari["pass"] = diag.bari.pass;
  bari["sup"] = diag.bari.sup;
  bari["threshold"] = diag.bari.threshold;
  bari["witness_k"] = diag.bari.witness_k;
  bari["witness_j"] = diag.bari.witness_j;
  j["bari"] = std::move(bari);
  return j;
}

namespace detail {

inline std::optional<double> overlap_or_null(const ProjectionTable& table, int k, int j, Bc bc)
{
  try
  {
    return predicted_overlap(table, k, j, bc);
  }
  catch (const Error& e)
  {
    if (e.code() != Errc::DegeneratePair)
      throw;
    return std::nullopt;
  }
}

inline Json sweep_json(const std::vector<SweepEntry>& sweep, const ProjectionTable& table, Bc bc)
{
  Json pairs = Json::array();
  for (const SweepEntry& entry : sweep)
  {
    Json p;
    p["k"] = entry.k;
    p["j"] = entry.j;
    p["center"] = cjson(entry.mu_center);
    p["eps"] = entry.eps;
    p["degenerate"] = entry.degenerate;
    if (entry.refined)
    {
      const PairPrediction& r = *entry.refined;
      Json refined;
      refined["beta_plus"] = cjson(r.beta_plus);
      refined["beta_minus"] = cjson(r.beta_minus);
      refined["q"] = cjson(r.q);
      refined["gamma"] = r.gamma;
      refined["d"] = r.d;
      refined["h_plus"] = cjson(r.h_plus);
      refined["h_minus"] = cjson(r.h_minus);
      refined["refined_radius"] = r.refined_radius;
      refined["alpha_plus"] = cjson(r.alpha_plus);
      refined["alpha_minus"] = cjson(r.alpha_minus);
      refined["u_plus"] = cjson(r.u_plus);
      refined["v_plus"] = cjson(r.v_plus);
      refined["u_minus"] = cjson(r.u_minus);
      refined["v_minus"] = cjson(r.v_minus);
      p["refined"] = std::move(refined);
    }
    else
      p["refined"] = nullptr;
    const auto overlap = overlap_or_null(table, entry.k, entry.j, bc);
    p["predicted_overlap"] = overlap ? Json(*overlap) : Json(nullptr);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

inline std::string sweep_csv(const std::vector<SweepEntry>& sweep, const ProjectionTable& table,
                             Bc bc)
{
  std::string out =
      "k,j,center_re,center_im,eps,degenerate,beta_plus_re,beta_plus_im,beta_minus_re,"
      "beta_minus_im,q_re,q_im,gamma,d,h_plus_re,h_plus_im,h_minus_re,h_minus_im,"
      "refined_radius,predicted_overlap\n";
  for (const SweepEntry& entry : sweep)
  {
    CsvRow row;
    row.add(entry.k).add(entry.j).add(entry.mu_center.real()).add(entry.mu_center.imag());
    row.add(entry.eps).add(entry.degenerate ? 1 : 0);
    if (entry.refined)
    {
      const PairPrediction& r = *entry.refined;
      row.add(r.beta_plus.real()).add(r.beta_plus.imag());
      row.add(r.beta_minus.real()).add(r.beta_minus.imag());
      row.add(r.q.real()).add(r.q.imag()).add(r.gamma).add(r.d);
      row.add(r.h_plus.real()).add(r.h_plus.imag()).add(r.h_minus.real()).add(r.h_minus.imag());
      row.add(r.refined_radius);
    }
    else
      for (int i = 0; i < 13; ++i)
        row.add_blank();
    const auto overlap = overlap_or_null(table, entry.k, entry.j, bc);
    if (overlap)
      row.add(*overlap);
    else
      row.add_blank();
    out += row.str();
    out += '\n';
  }
  return out;
}

inline Json unperturbed_json(const BiorthogonalSystem& sys)
{
  Json j;
  Json mu = Json::array();
  for (int i = 0; i < sys.m(); ++i)
    mu.push_back(cjson(sys.mu[i]));
  j["mu"] = std::move(mu);
  j["gap"] = sys.gap_a;
  j["norm_V"] = sys.norm_V;
  j["norm_W"] = sys.norm_W;
  return j;
}

inline Json transfer_check_json(const OperatorSpec& spec, const BiorthogonalSystem& sys,
                                const RunConfig& config)
{
  double worst_mean = 0.0, worst_transfer = 0.0;
  for (int k = config.k_min; k <= config.k_max; ++k)
  {
    const Lemma1Residuals res = verify_lemma1(spec, sys, k);
    worst_mean = std::max(worst_mean, res.mean_residual);
    worst_transfer = std::max(worst_transfer, res.transfer_residual);
  }
  Json j;
  j["max_mean_residual"] = worst_mean;
  j["max_transfer_residual"] = worst_transfer;
  return j;
}

inline void maybe_write_projection(const ProjectionTable& table, const RunConfig& config)
{
  if (!config.projection_csv)
    return;
  std::ofstream out(*config.projection_csv);
  if (!out)
    fail(Errc::IoError, "cannot open '" + *config.projection_csv + "' for writing");
  table.write_csv(out);
}

}  // namespace detail

/// Diagnostics bundle that degrades gracefully on windows too short for
/// empirical trend fits instead of rejecting the run.
inline BasisVerdict diagnostics_bundle(const ProjectionTable& table, const RunConfig& config, Bc bc)
{
  if (config.k_max - config.k_min + 1 >= 8)
    return basis_verdict(table, config.k_min, config.k_max, config.ratio_bound, config.bari_a, bc);

  BasisVerdict out;
  out.has_analytic = table.tail() != nullptr;
  if (out.has_analytic)
    out.condition8_analytic =
        condition8_verdict(table, config.k_min, config.k_max, DiagnosticMode::Analytic, bc);
  out.condition8_empirical.mode = DiagnosticMode::Empirical;
  Condition8Row row;
  row.reason = "window shorter than 8 pairs: empirical trends unavailable";
  out.condition8_empirical.rows.push_back(std::move(row));
  out.condition8 = out.has_analytic ? out.condition8_analytic : out.condition8_empirical;
  if (out.has_analytic)
    out.riesz = riesz_verdict(table, config.k_min, config.k_max, out.condition8,
                              config.ratio_bound, DiagnosticMode::Analytic, bc);
  else
  {
    out.riesz.mode = DiagnosticMode::Empirical;
    out.riesz.reason = "window shorter than 8 pairs: empirical classification unavailable";
  }
  for (int k = config.k_min; k <= config.k_max; ++k)
    for (int j = 0; j < table.dim(); ++j)
      if (const auto overlap = detail::overlap_or_null(table, k, j, bc))
        out.overlaps.push_back({k, j, *overlap});
  out.bari = bari_check(out.overlaps, config.bari_a);
  return out;
}

/// Window of cached projected coefficients covering the configured pairs.
inline int projection_window(const OperatorSpec& spec, const RunConfig& config)
{
  return std::max({transfer_frequency(spec.bc, config.k_max) + 1, spec.max_explicit_frequency(), 1});
}

struct AnalyzeResult
{
  Json json;
  std::string csv;
  bool all_degenerate = false;
};

inline AnalyzeResult run_analyze(const OperatorSpec& spec, const RunConfig& config)
{
  ensure_valid(spec);
  validate_config(config);
  const BiorthogonalSystem sys = eigensystem_C(compute_C(spec));
  const ProjectionTable table = build_projection_table(spec, sys, projection_window(spec, config));
  detail::maybe_write_projection(table, config);
  const auto sweep = predicted_spectrum(table, sys, spec.n, config.k_min, config.k_max, config.c3,
                                        config.c4, spec.bc);
  const BasisVerdict diag = diagnostics_bundle(table, config, spec.bc);

  AnalyzeResult result;
  result.all_degenerate = std::all_of(sweep.begin(), sweep.end(),
                                      [](const SweepEntry& e) { return e.degenerate; });
  Json doc;
  doc["command"] = "analyze";
  doc["problem"] = problem_to_json(spec);
  doc["config"] = json_of(config);
  doc["unperturbed"] = detail::unperturbed_json(sys);
  doc["transfer_check"] = detail::transfer_check_json(spec, sys, config);
  doc["pairs"] = detail::sweep_json(sweep, table, spec.bc);
  doc["all_degenerate"] = result.all_degenerate;
  doc["diagnostics"] = json_of(diag);
  result.json = std::move(doc);
  result.csv = detail::sweep_csv(sweep, table, spec.bc);
  return result;
}

struct OracleResult
{
  Json json;
  std::string csv;
};

inline OracleResult run_oracle(const OperatorSpec& spec, const RunConfig& config)
{
  ensure_valid(spec);
  validate_config(config);
  const GalerkinMatrix gal = assemble(spec, config.K, config.size_cap);
  const EigenDecomposition eig = eig_dense(gal.M, config.eig_tol);

  OracleResult result;
  Json doc;
  doc["command"] = "oracle";
  doc["problem"] = problem_to_json(spec);
  doc["config"] = json_of(config);
  doc["K"] = gal.K;
  doc["dim"] = gal.dim();
  doc["norm_estimate"] = gal.norm_estimate;
  doc["eig_tol"] = eig.eig_tol;
  Json values = Json::array();
  std::string csv = "index,re,im,residual\n";
  for (int i = 0; i < gal.dim(); ++i)
  {
    Json v;
    v["index"] = i;
    v["lambda"] = detail::cjson(eig.eigenvalues[i]);
    v["residual"] = eig.residuals[i];
    values.push_back(std::move(v));
    detail::CsvRow row;
    row.add(i).add(eig.eigenvalues[i].real()).add(eig.eigenvalues[i].imag()).add(eig.residuals[i]);
    csv += row.str();
    csv += '\n';
  }
  doc["eigenvalues"] = std::move(values);
  result.json = std::move(doc);
  result.csv = std::move(csv);
  return result;
}

struct CompareResult
{
  Json json;
  std::string csv;
  bool all_degenerate = false;
};

inline CompareResult run_compare(const OperatorSpec& spec, const RunConfig& config)
{
  ensure_valid(spec);
  validate_config(config);
  const int buffer = config.edge_buffer.value_or(spec.max_explicit_frequency() + 4);
  const int highest_index = config.k_max + (spec.bc == Bc::Antiperiodic ? 1 : 0);
  if (highest_index > config.K - buffer)
    fail(Errc::InvalidConfig,
         "pair window reaches the truncation edge: need k_max" +
             std::string(spec.bc == Bc::Antiperiodic ? " + 1" : "") + " <= K - edge buffer (" +
             std::to_string(config.K) + " - " + std::to_string(buffer) + ")");

  const BiorthogonalSystem sys = eigensystem_C(compute_C(spec));
  const ProjectionTable table = build_projection_table(spec, sys, projection_window(spec, config));
  detail::maybe_write_projection(table, config);
  const auto sweep = predicted_spectrum(table, sys, spec.n, config.k_min, config.k_max, config.c3,
                                        config.c4, spec.bc);
  const BasisVerdict diag = diagnostics_bundle(table, config, spec.bc);
  const GalerkinMatrix gal = assemble(spec, config.K, config.size_cap);
  const EigenDecomposition eig = eig_dense(gal.M, config.eig_tol);
  MatchOptions options;
  options.edge_buffer = buffer;
  const MatchResult match = match_spectrum(gal, eig, sweep, sys, spec, options);

  std::map<std::pair<int, int>, const SweepEntry*> sweep_by_pair;
  for (const SweepEntry& entry : sweep)
    sweep_by_pair[{entry.k, entry.j}] = &entry;

  CompareResult result;
  result.all_degenerate = std::all_of(sweep.begin(), sweep.end(),
                                      [](const SweepEntry& e) { return e.degenerate; });

  Json matched = Json::array();
  std::string csv =
      "index,k,j,branch,ambiguous,dominant_p,lambda_re,lambda_im,h_re,h_im,abs_err,"
      "normalized_err,abs_u,abs_v,ratio_err,tail_energy,residual\n";
  std::map<int, double> worst_err_by_k, worst_tail_by_k;
  std::map<std::pair<int, int>, std::map<int, int>> branch_index;  // (k,j) -> branch -> column
  double worst_identity = 0.0;
  for (const MatchedEigenpair& pair : match.matched)
  {
    const SweepEntry* entry = sweep_by_pair[{pair.k, pair.j}];
    Json row;
    row["index"] = pair.index;
    row["k"] = pair.k;
    row["j"] = pair.j;
    row["branch"] = pair.branch;
    row["ambiguous"] = pair.ambiguous;
    row["dominant_p"] = pair.dominant_p;
    row["lambda"] = detail::cjson(pair.lambda);
    detail::CsvRow line;
    line.add(pair.index).add(pair.k).add(pair.j).add(pair.branch).add(pair.ambiguous ? 1 : 0);
    line.add(pair.dominant_p).add(pair.lambda.real()).add(pair.lambda.imag());
    if (entry && entry->refined && pair.branch != 0)
    {
      const PairPrediction& r = *entry->refined;
      const Complex h = pair.branch > 0 ? r.h_plus : r.h_minus;
      const Complex alpha = pair.branch > 0 ? r.alpha_plus : r.alpha_minus;
      const double abs_err = std::abs(pair.lambda - h);
      const double kd = static_cast<double>(pair.k);
      const double normalized =
          abs_err / (std::pow(kd, spec.n - 3) * r.gamma * std::log(std::max(kd, 2.0)));
      row["h"] = detail::cjson(h);
      row["abs_err"] = abs_err;
      row["normalized_err"] = normalized;
      const double ratio_err =
          std::abs(pair.u) > 0.0 ? std::abs(pair.v / pair.u - alpha)
                                 : std::numeric_limits<double>::infinity();
      row["ratio_err"] = ratio_err;
      line.add(h.real()).add(h.imag()).add(abs_err).add(normalized);
      line.add(std::abs(pair.u)).add(std::abs(pair.v)).add(ratio_err);
      auto it = worst_err_by_k.find(pair.k);
      worst_err_by_k[pair.k] = it == worst_err_by_k.end() ? abs_err : std::max(it->second, abs_err);
      branch_index[{pair.k, pair.j}][pair.branch] = pair.index;
    }
    else
    {
      row["h"] = nullptr;
      row["abs_err"] = nullptr;
      row["normalized_err"] = nullptr;
      row["ratio_err"] = nullptr;
      line.add_blank().add_blank().add_blank().add_blank();
      line.add(std::abs(pair.u)).add(std::abs(pair.v));
      line.add_blank();
    }
    row["u"] = detail::cjson(pair.u);
    row["v"] = detail::cjson(pair.v);
    row["tail_energy"] = pair.tail_energy;
    row["residual"] = pair.residual;
    line.add(pair.tail_energy).add(pair.residual);
    csv += line.str();
    csv += '\n';
    matched.push_back(std::move(row));

    auto it = worst_tail_by_k.find(pair.k);
    worst_tail_by_k[pair.k] =
        it == worst_tail_by_k.end() ? pair.tail_energy : std::max(it->second, pair.tail_energy);
    const int partner = pair_partner(spec.bc, pair.k);
    for (int p : {pair.k, partner})
      worst_identity = std::max(
          worst_identity, std::abs(residual_identity14(gal, eig.eigenvectors, pair.index,
                                                       pair.lambda, p, pair.j, spec, sys)));
  }

  Json counts = Json::array();
  for (const DiskCount& count : match.counts)
  {
    Json c;
    c["k"] = count.k;
    c["j"] = count.j;
    c["total"] = count.total;
    c["plus"] = count.plus_count;
    c["minus"] = count.minus_count;
    counts.push_back(std::move(c));
  }

  // Numerical pair overlaps wherever both branches were matched.
  Json pair_overlaps = Json::array();
  for (const auto& [key, branches] : branch_index)
  {
    const auto plus = branches.find(+1);
    const auto minus = branches.find(-1);
    if (plus == branches.end() || minus == branches.end())
      continue;
    const double numerical = std::abs(
        numerical_overlap(eig.eigenvectors.col(plus->second), eig.eigenvectors.col(minus->second)));
    Json o;
    o["k"] = key.first;
    o["j"] = key.second;
    o["numerical"] = numerical;
    const auto predicted = detail::overlap_or_null(table, key.first, key.second, spec.bc);
    o["predicted"] = predicted ? Json(*predicted) : Json(nullptr);
    o["abs_diff"] = predicted ? Json(std::abs(numerical - *predicted)) : Json(nullptr);
    pair_overlaps.push_back(std::move(o));
  }

  // Decay trends of the leading errors across the window.
  auto loglog_fit = [](const std::map<int, double>& by_k) -> std::optional<LineFit> {
    std::vector<double> xs, ys;
    for (const auto& [k, value] : by_k)
    {
      if (!(value > 0.0))
        return std::nullopt;
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(std::log(value));
    }
    if (xs.size() < 3)
      return std::nullopt;
    return fit_line(xs, ys);
  };
  const auto err_fit = loglog_fit(worst_err_by_k);
  const auto tail_fit = loglog_fit(worst_tail_by_k);

  // Smallest k from which counting is clean through the end of the window.
  std::optional<int> onset;
  {
    std::map<int, bool> clean_by_k;
    for (const DiskCount& count : match.counts)
    {
      const bool good = count.total == 2 && count.plus_count == 1 && count.minus_count == 1;
      auto it = clean_by_k.find(count.k);
      clean_by_k[count.k] = it == clean_by_k.end() ? good : (it->second && good);
    }
    for (auto it = clean_by_k.rbegin(); it != clean_by_k.rend() && it->second; ++it)
      onset = it->first;
  }

  Json doc;
  doc["command"] = "compare";
  doc["problem"] = problem_to_json(spec);
  doc["config"] = json_of(config);
  doc["unperturbed"] = detail::unperturbed_json(sys);
  doc["transfer_check"] = detail::transfer_check_json(spec, sys, config);
  doc["pairs"] = detail::sweep_json(sweep, table, spec.bc);
  doc["all_degenerate"] = result.all_degenerate;
  doc["diagnostics"] = json_of(diag);
  Json oracle;
  oracle["K"] = gal.K;
  oracle["dim"] = gal.dim();
  oracle["norm_estimate"] = gal.norm_estimate;
  oracle["eig_tol"] = eig.eig_tol;
  oracle["edge_buffer"] = buffer;
  doc["oracle"] = std::move(oracle);
  Json match_json;
  match_json["matched"] = std::move(matched);
  match_json["counts"] = std::move(counts);
  match_json["edge_excluded"] = match.edge_excluded;
  match_json["unassigned_count"] = static_cast<int>(match.unassigned.size());
  doc["match"] = std::move(match_json);
  doc["pair_overlaps"] = std::move(pair_overlaps);
  Json identity;
  identity["max_residual"] = worst_identity;
  identity["certified_bound"] = eig.eig_tol * gal.norm_estimate;
  doc["identity_check"] = std::move(identity);
  Json trends;
  trends["eigenvalue_error"] = err_fit ? json_of(*err_fit) : Json(nullptr);
  trends["tail_energy"] = tail_fit ? json_of(*tail_fit) : Json(nullptr);
  trends["clean_counting_onset"] = onset ? Json(*onset) : Json(nullptr);
  doc["trends"] = std::move(trends);

  result.json = std::move(doc);
  result.csv = std::move(csv);
  return result;
}

}  // namespace rieszspec
