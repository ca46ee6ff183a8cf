#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rieszspec/cli.hpp"

namespace {

struct CliRun
{
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args)
{
  std::ostringstream out, err;
  CliRun result;
  result.code = rieszspec::run_main(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::filesystem::path temp_file(const std::string& name)
{
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("analyze runs a preset end to end")
{
  const CliRun r = run({"analyze", "preset:hill-symmetric", "--k-window", "8", "16"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const rieszspec::Json doc = rieszspec::Json::parse(r.out);
  CHECK(doc["command"] == "analyze");
  CHECK(doc["all_degenerate"] == false);
  CHECK(doc["diagnostics"]["condition8"]["verdict"] == "holds");
  CHECK(doc["diagnostics"]["riesz"]["verdict"] == "basis");
  CHECK(doc["diagnostics"]["bari"]["pass"] == true);
  CHECK(doc["pairs"].size() == 9);
}

TEST_CASE("asymmetric tails report no_basis but still exit cleanly")
{
  const CliRun r = run({"analyze", "preset:hill-asymmetric"});
  REQUIRE(r.code == 0);
  const rieszspec::Json doc = rieszspec::Json::parse(r.out);
  CHECK(doc["diagnostics"]["condition8"]["verdict"] == "holds");
  CHECK(doc["diagnostics"]["riesz"]["verdict"] == "no_basis");
}

TEST_CASE("fully degenerate windows exit with status 2")
{
  for (const char* name : {"preset:constant-P2", "preset:trigpoly"})
  {
    const CliRun r = run({"analyze", name});
    INFO(name);
    CHECK(r.code == 2);
    const rieszspec::Json doc = rieszspec::Json::parse(r.out);
    CHECK(doc["all_degenerate"] == true);
    CHECK(doc["diagnostics"]["riesz"]["verdict"] == "inconclusive");
  }
}

TEST_CASE("errors surface as exit 1 with the offending detail")
{
  {
    const CliRun r = run({"analyze", "/no/such/problem.json"});
    CHECK(r.code == 1);
    CHECK(r.err.find("/no/such/problem.json") != std::string::npos);
    CHECK(r.out.empty());
  }
  {
    const CliRun r = run({"analyze", "preset:hill-symmetric", "--k-window", "1", "5"});
    CHECK(r.code == 1);
    CHECK(r.err.find("k_min") != std::string::npos);
  }
  {
    const CliRun r = run({"compare", "preset:hill-symmetric", "--k-window", "8", "40", "--K", "24"});
    CHECK(r.code == 1);
    CHECK(r.err.find("edge") != std::string::npos);
  }
  {
    const CliRun r = run({"analyze", "preset:no-such-scenario"});
    CHECK(r.code == 1);
    CHECK(r.err.find("no-such-scenario") != std::string::npos);
  }
}

TEST_CASE("repeated runs are byte-identical")
{
  const std::vector<std::string> args = {"analyze", "preset:matrix-n4", "--k-window", "8", "16"};
  const CliRun first = run(args);
  const CliRun second = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);

  const std::vector<std::string> cmp = {"compare", "preset:hill-symmetric", "--k-window",
                                        "8",       "12",                    "--K",
                                        "24"};
  const CliRun c1 = run(cmp);
  const CliRun c2 = run(cmp);
  REQUIRE(c1.code == 0);
  CHECK(c1.out == c2.out);
}

TEST_CASE("oracle emits certified eigenvalues in both formats")
{
  const CliRun json_run = run({"oracle", "preset:trigpoly", "--K", "8"});
  REQUIRE(json_run.code == 0);
  const rieszspec::Json doc = rieszspec::Json::parse(json_run.out);
  CHECK(doc["command"] == "oracle");
  CHECK(doc["dim"] == 17);
  CHECK(doc["eigenvalues"].size() == 17);

  const CliRun csv_run = run({"oracle", "preset:trigpoly", "--K", "8", "--format", "csv"});
  REQUIRE(csv_run.code == 0);
  std::istringstream lines(csv_run.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "index,re,im,residual");
  int rows = 0;
  while (std::getline(lines, line))
    ++rows;
  CHECK(rows == 17);
}

TEST_CASE("compare cross-validates a short window")
{
  const CliRun r = run({"compare", "preset:hill-symmetric", "--k-window", "4", "6", "--K", "16"});
  REQUIRE(r.code == 0);
  const rieszspec::Json doc = rieszspec::Json::parse(r.out);
  CHECK(doc["match"]["matched"].size() == 6);
  for (const auto& count : doc["match"]["counts"])
  {
    CHECK(count["total"] == 2);
    CHECK(count["plus"] == 1);
    CHECK(count["minus"] == 1);
  }
  CHECK(doc["trends"]["clean_counting_onset"] == 4);
  CHECK(doc["identity_check"]["max_residual"].get<double>() <
        doc["identity_check"]["certified_bound"].get<double>() * 10.0);
}

TEST_CASE("scenario subcommand lists and exports presets")
{
  const CliRun list = run({"scenario", "--list"});
  REQUIRE(list.code == 0);
  std::istringstream lines(list.out);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(lines, line))
    names.push_back(line);
  CHECK(names == rieszspec::preset_names());

  const CliRun exported = run({"scenario", "matrix-n4"});
  REQUIRE(exported.code == 0);
  const rieszspec::Json doc = rieszspec::Json::parse(exported.out);
  CHECK(doc["n"] == 4);
  CHECK(doc["m"] == 2);

  CHECK(run({"scenario", "nope"}).code == 1);
  CHECK(run({"scenario"}).code == 1);
}

TEST_CASE("reports can be routed to a file")
{
  const auto path = temp_file("rieszspec_cli_out.json");
  std::filesystem::remove(path);
  const CliRun r =
      run({"analyze", "preset:hill-symmetric", "--k-window", "8", "12", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  rieszspec::Json doc;
  in >> doc;
  CHECK(doc["command"] == "analyze");
  std::filesystem::remove(path);
}

TEST_CASE("problem files load through the same path the docs describe")
{
  const auto path = temp_file("rieszspec_cli_problem.json");
  {
    const CliRun exported = run({"scenario", "hill-asymmetric", "--out", path.string()});
    REQUIRE(exported.code == 0);
  }
  const CliRun r = run({"analyze", path.string(), "--k-window", "8", "16"});
  REQUIRE(r.code == 0);
  const rieszspec::Json doc = rieszspec::Json::parse(r.out);
  CHECK(doc["problem"]["bc"] == "periodic");
  CHECK(doc["diagnostics"]["riesz"]["verdict"] == "no_basis");
  std::filesystem::remove(path);
}

TEST_CASE("help is reachable and not an error")
{
  const CliRun top = run({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("analyze") != std::string::npos);
  const CliRun sub = run({"analyze", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--k-window") != std::string::npos);
}
