#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "awscheme/cli.hpp"

using namespace awscheme;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "awscheme");
  std::ostringstream out, err;
  int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, EigencheckPasses) {
  CliRun r = run_cli({"eigencheck", "--family", "aw", "--samples", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 1u + 3u);  // one record per sample
  EXPECT_EQ(r.out.find("false"), std::string::npos);
}

TEST(Cli, TinyToleranceFails) {
  CliRun r = run_cli({"eigencheck", "--family", "little-jacobi", "--samples", "2", "--tol", "1e-300"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("false"), std::string::npos);
}

TEST(Cli, ParameterViolationIsInvalidInput) {
  CliRun r = run_cli({"eval", "--family", "big-jacobi", "--a", "0.2", "--b", "0.7", "--gamma", "1", "--x", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("a >= b"), std::string::npos) << r.err;
}

TEST(Cli, UnknownFlagAndFamilyAreInvalidInput) {
  EXPECT_EQ(run_cli({"eval", "--family", "aw", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run_cli({"eval", "--family", "nonesuch", "--gamma", "1", "--x", "1"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, 0); }

TEST(Cli, EvalLittleBesselAtOrigin) {
  CliRun r = run_cli({"eval", "--family", "little-qbessel", "--a", "0.4", "--x", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, EvalPrintsComplexValues) {
  CliRun r = run_cli({"eval", "--family", "little-jacobi", "--gamma", "0.6,0.8", "--x", "0.25"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find('i'), std::string::npos);
}

TEST(Cli, ReportsAreDeterministic) {
  CliRun a = run_cli({"eigencheck", "--family", "big-bessel", "--samples", "4", "--format", "json"});
  CliRun b = run_cli({"eigencheck", "--family", "big-bessel", "--samples", "4", "--format", "json"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  EXPECT_EQ(parse_json(in).records.size(), 4u);
}

TEST(Cli, DrawUsesRandomAdmissibleParameters) {
  CliRun r = run_cli({"eigencheck", "--family", "big-jacobi", "--samples", "5", "--draw"});
  EXPECT_EQ(r.code, 0) << r.err;
  RunConfig cfg;
  cfg.command = Command::eigencheck;
  cfg.selector = "dual-big-jacobi";
  cfg.samples = 3;
  cfg.draw = true;
  VerificationReport rep = run_checks(cfg);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_NE(rep.records.front().parameters.at("a"), rep.records.back().parameters.at("a"));
}

TEST(Cli, ParameterFileCellsAndOverrides) {
  fs::path f = write_temp("awscheme_cells.json",
                          R"({"level": "little", "params": {"a": 0.5}, "cells": [{"b": 0.1}, {"b": 0.3, "gamma": [0.6, 0.8]}]})");
  CliRun r = run_cli({"eigencheck", "--family", "little-jacobi", "--samples", "1", "--params", f.string(), "--a", "0.7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 1u + 2u);
  EXPECT_NE(r.out.find("cell0/eigen/little-jacobi/0,little-jacobi-eigen,"), std::string::npos);
  EXPECT_NE(r.out.find(",true,0,0.7,0.1,"), std::string::npos);
  EXPECT_NE(r.out.find(",true,0,0.7,0.3,0.8,0.6,"), std::string::npos);
  fs::remove(f);
}

TEST(Cli, ParameterFileLevelMustMatch) {
  fs::path f = write_temp("awscheme_level.json", R"({"level": "aw", "params": {"a": 0.5}})");
  CliRun r = run_cli({"eigencheck", "--family", "little-jacobi", "--params", f.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("tagged 'aw'"), std::string::npos) << r.err;
  fs::remove(f);
}

TEST(Cli, ParameterFileRejectsUnknownKeys) {
  fs::path f = write_temp("awscheme_unknown.json", R"({"level": "little", "params": {"d": 0.5}})");
  EXPECT_EQ(run_cli({"eigencheck", "--family", "little-jacobi", "--params", f.string()}).code, 2);
  fs::remove(f);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path dir = fs::temp_directory_path() / "awscheme_env_out";
  fs::create_directories(dir);
  ::setenv(output_dir_env, dir.c_str(), 1);
  CliRun r = run_cli({"dualcheck", "--which", "little-bessel-self-dual", "--format", "json"});
  ::unsetenv(output_dir_env);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(fs::exists(dir / "dualcheck.json"));
  fs::remove_all(dir);
}

TEST(Cli, UnwritableOutputIsInvalidInput) {
  CliRun r = run_cli({"dualcheck", "--output", "/nonexistent-dir/out.csv"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/nonexistent-dir/out.csv"), std::string::npos);
}

TEST(Cli, OrthocheckRecordsDiagonalPositivity) {
  CliRun r = run_cli({"orthocheck", "--family", "little-bessel"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("diagonal"), std::string::npos);
}

TEST(Cli, LimitcheckAcceptsOnlyQ) {
  EXPECT_EQ(run_cli({"limitcheck", "--transition", "aw-to-aw-bessel"}).code, 0);
  EXPECT_EQ(run_cli({"limitcheck", "--a", "0.3"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(exit_code(ErrorKind::validation), 2);
  EXPECT_EQ(exit_code(ErrorKind::pole), 2);
  EXPECT_EQ(exit_code(ErrorKind::genericity), 2);
  EXPECT_EQ(exit_code(ErrorKind::write), 2);
  EXPECT_EQ(exit_code(ErrorKind::divergence), 3);
  EXPECT_EQ(exit_code(ErrorKind::quadrature), 3);
  EXPECT_EQ(exit_code(ErrorKind::instability), 3);
}
