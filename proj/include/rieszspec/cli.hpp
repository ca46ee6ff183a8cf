#pragma once

/// Command-line front end.  Subcommands:
///
///   analyze <input>   closed-form pair predictions + basis diagnostics
///   oracle  <input>   truncated Galerkin spectrum with residual certificates
///   compare <input>   oracle vs prediction cross-validation
///   scenario <name>   export a named preset problem as JSON (--list to enumerate)
///
/// <input> is a problem JSON file or preset:<name>.  run_main is pure with
/// respect to its streams so the whole surface is testable in-process.

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rieszspec/report.hpp"
#include "rieszspec/scenarios.hpp"

namespace rieszspec {

namespace detail {

inline OperatorSpec resolve_problem(const std::string& input)
{
  const std::string prefix = "preset:";
  if (input.rfind(prefix, 0) == 0)
    return preset(input.substr(prefix.size())).spec;
  return load_problem_file(input);
}

inline void emit(const std::string& text, const RunConfig& config, std::ostream& out)
{
  if (config.out)
  {
    std::ofstream file(*config.out);
    if (!file)
      fail(Errc::IoError, "cannot open '" + *config.out + "' for writing");
    file << text;
  }
  else
    out << text;
}

inline std::string render(const Json& doc, const std::string& csv, const std::string& format)
{
  if (format == "csv")
    return csv;
  return doc.dump(2) + "\n";
}

}  // namespace detail

/// CLI driver over explicit argument/stream handles.  Returns the process
/// exit code: 0 on success, 1 on any error, 2 when every pair in the
/// window is degenerate (no refined prediction exists anywhere).
inline int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Spectral asymptotics and Riesz-basis diagnostics for periodic ODE systems"};
  app.name("rieszspec");
  app.require_subcommand(1);

  struct State
  {
    std::string input;
    RunConfig config;
    std::vector<int> k_window;
  };
  State states[3];
  const char* names[3] = {"analyze", "oracle", "compare"};
  const char* blurbs[3] = {"closed-form pair predictions and basis diagnostics",
                           "truncated Galerkin spectrum with residual certificates",
                           "cross-validate the oracle against the predictions"};
  CLI::App* subs[3];
  for (int i = 0; i < 3; ++i)
  {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    State& st = states[i];
    sub->add_option("input", st.input, "problem JSON file or preset:<name>")->required();
    sub->add_option("--k-window", st.k_window, "pair index window: k_min k_max")
        ->expected(2);
    sub->add_option("--K", st.config.K, "Fourier truncation half-width");
    sub->add_option("--c3", st.config.c3, "first-order disk radius constant");
    sub->add_option("--c4", st.config.c4, "refined disk radius constant");
    sub->add_option("--eig-tol", st.config.eig_tol, "relative eigenpair residual tolerance");
    sub->add_option("--ratio-bound", st.config.ratio_bound,
                    "acceptable two-sided bound on transfer ratios");
    sub->add_option("--bari-a", st.config.bari_a, "overlap sup-test threshold in (0,1)");
    sub->add_option("--size-cap", st.config.size_cap, "hard cap on the Galerkin dimension");
    sub->add_option("--edge-buffer", st.config.edge_buffer,
                    "frequencies near the truncation edge to distrust");
    sub->add_option("--format", st.config.format, "output format: json or csv");
    sub->add_option("--out", st.config.out, "write the report to this path");
    sub->add_option("--projection-csv", st.config.projection_csv,
                    "also dump the projected coefficient table to this path");
    subs[i] = sub;
  }

  std::string scenario_name;
  bool scenario_list = false;
  std::optional<std::string> scenario_out;
  CLI::App* sub_scenario = app.add_subcommand("scenario", "export a preset problem as JSON");
  sub_scenario->add_option("name", scenario_name, "preset name");
  sub_scenario->add_flag("--list", scenario_list, "list the preset names");
  sub_scenario->add_option("--out", scenario_out, "write the problem to this path");

  try
  {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  }
  catch (const CLI::ParseError& e)
  {
    return app.exit(e, out, err);
  }

  try
  {
    if (sub_scenario->parsed())
    {
      if (scenario_list)
      {
        for (const auto& name : preset_names())
          out << name << "\n";
        return 0;
      }
      if (scenario_name.empty())
        fail(Errc::InvalidConfig, "scenario needs a preset name or --list");
      const std::string text = problem_to_json(preset(scenario_name).spec).dump(2) + "\n";
      RunConfig sink;
      sink.out = scenario_out;
      detail::emit(text, sink, out);
      return 0;
    }

    int which = 0;
    for (int i = 0; i < 3; ++i)
      if (subs[i]->parsed())
        which = i;
    State& st = states[which];
    if (st.k_window.size() == 2)
    {
      st.config.k_min = st.k_window[0];
      st.config.k_max = st.k_window[1];
    }
    if (subs[which]->count("--size-cap") == 0)
      st.config.size_cap = env_size_cap(st.config.size_cap);
    const OperatorSpec spec = detail::resolve_problem(st.input);
    if (which == 0)
    {
      const AnalyzeResult res = run_analyze(spec, st.config);
      detail::emit(detail::render(res.json, res.csv, st.config.format), st.config, out);
      return res.all_degenerate ? 2 : 0;
    }
    if (which == 1)
    {
      const OracleResult res = run_oracle(spec, st.config);
      detail::emit(detail::render(res.json, res.csv, st.config.format), st.config, out);
      return 0;
    }
    const CompareResult res = run_compare(spec, st.config);
    detail::emit(detail::render(res.json, res.csv, st.config.format), st.config, out);
    return res.all_degenerate ? 2 : 0;
  }
  catch (const Error& e)
  {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rieszspec
