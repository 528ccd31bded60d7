// Copyright 2026 The vqubit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqubit/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"

namespace vqubit {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("vqubit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string &name, const std::string &text) {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
  }

  std::filesystem::path dir_;
};

TEST(Cli, TruthTableCnotR) {
  const Result r = run({"truth-table", "--gate", "cnot-R"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[1], "|11> -> |10>");
  EXPECT_EQ(l[2], "|10> -> -|11>");
  EXPECT_EQ(l[3], "|01> -> |01>");
  EXPECT_EQ(l[4], "|00> -> |00>");
}

TEST(Cli, TruthTableCnotSAndRotation) {
  auto l = lines(run({"truth-table", "--gate", "cnot-S"}).out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[1], "|11> -> |01>");
  EXPECT_EQ(l[3], "|01> -> -|11>");
  l = lines(run({"truth-table", "--gate", "rot-R-Y-pi"}).out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[1], "|11> -> |01>");
  EXPECT_EQ(l[2], "|10> -> |00>");
  EXPECT_EQ(l[3], "|01> -> -|11>");
  EXPECT_EQ(l[4], "|00> -> -|10>");
  l = lines(run({"truth-table", "--gate", "identity"}).out);
  EXPECT_EQ(l[4], "|00> -> |00>");
}

TEST(Cli, EigensystemDiagonalCase) {
  const Result r = run({"eigensystem", "--omega0", "0.1", "--eta", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::vector<double> energies = {1.15, 0.85, -0.95, -1.05};
  const std::vector<std::string> bits = {"11", "10", "01", "00"};
  int found = 0;
  for (const auto &line : lines(r.out)) {
    std::istringstream in(line);
    int label = 0;
    std::string ket;
    double energy = 0.0;
    if (!(in >> label >> ket >> energy) || label < 1 || label > 4) continue;
    EXPECT_EQ(ket, "|" + bits[label - 1] + ">");
    EXPECT_NEAR(energy, energies[label - 1], 1e-14);
    ++found;
  }
  EXPECT_EQ(found, 4) << r.out;
}

TEST(Cli, TransitionsCsv) {
  const Result r = run({"--omega0", "0.1", "--eta", "0", "transitions"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 7u);
  EXPECT_EQ(l[0], "m,n,omega,abs_ix,abs_iy,abs_iz,collision");
  EXPECT_EQ(l[1].substr(0, 4), "1,2,");
  EXPECT_NE(l[1].find(",no"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"truth-table"}).code, 2);
  EXPECT_EQ(run({"truth-table", "--gate", "swap"}).code, 2);
  EXPECT_EQ(run({"eigensystem", "--eta", "3"}).code, 2);
  EXPECT_EQ(run({"compile-gate", "--kind", "rot", "--target", "S"}).code, 2);
  EXPECT_EQ(run({"compile-gate", "--kind", "cnot", "--control", "R", "--target", "R"}).code, 2);
  EXPECT_EQ(run({"simulate", "/nonexistent/program.pulse"}).code, 2);
  EXPECT_EQ(run({"oracle-check", "--ratio", "-1"}).code, 2);
  // Numeric-contract violations.
  EXPECT_EQ(run({"compile-gate", "--kind", "cnot", "--control", "R", "--hrf", "0.01"}).code, 3);
  EXPECT_EQ(run({"eigensystem", "--omega0", "0", "--eta", "0"}).code, 3);
  EXPECT_EQ(run({"truth-table", "--gate", "cnot-R", "--eta", "0"}).code, 3);
}

TEST(Cli, CompileGateEmitsParsableProgram) {
  const Result r = run({"compile-gate", "--kind", "rot", "--target", "S", "--axis", "X", "--angle", "pi/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const PulseProgram p = parse_pulse_program(r.out);
  ASSERT_EQ(p.steps.size(), 1u);
  const auto &s = std::get<SimultaneousPulse>(p.steps[0]);
  EXPECT_EQ(s.a.transition, (Transition{1, 2}));
  EXPECT_EQ(s.b.transition, (Transition{3, 4}));
  EXPECT_EQ(s.a.flip, kPi / 2.0);
  EXPECT_NE(r.out.find("# unitary (eigenbasis)"), std::string::npos);

  const Result c = run({"compile-gate", "--kind", "cnot", "--target", "R"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(std::get<PulseSpec>(parse_pulse_program(c.out).steps[0]).transition, (Transition{1, 3}));
}

TEST_F(TempDir, SimulateEmptyProgramEchoesInput) {
  std::mt19937_64 rng(77);
  const Operator4 rho = oracle::random_density(rng);
  const std::string rho_text = format_density_matrix(rho);
  const std::string prog = write("empty.pulse", "system omega0=0.2 omegaQ=1 eta=0.5 gamma=1 hrf=1e-5\n");
  const Result r = run({"simulate", prog, "--rho", write("rho.txt", rho_text)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, rho_text);
}

TEST_F(TempDir, SimulateCnotOnDefaultState) {
  const std::string prog = write("cnot.pulse",
                                 "system omega0=0.2 omegaQ=1 eta=0.5 gamma=1 hrf=1e-5\n"
                                 "pulse t=1,2 axis=Y phase=0 flip=pi\n");
  const Result r = run({"simulate", prog});
  ASSERT_EQ(r.code, 0) << r.err;
  Operator4 p44 = Operator4::Zero();
  p44(3, 3) = 1.0;
  EXPECT_LT(max_abs(parse_density_matrix(r.out) - p44), 1e-15);
  const std::string bad = write("bad.pulse", "system omega0=0.2 omegaQ=1 eta=0.5 gamma=1 hrf=1e-5\npulse t=1\n");
  const Result b = run({"simulate", bad});
  EXPECT_EQ(b.code, 2);
  EXPECT_NE(b.err.find("line 2"), std::string::npos);
}

TEST_F(TempDir, PseudoPureWritesState) {
  const std::string path = (dir_ / "pp.txt").string();
  const Result r = run({"pseudo-pure", "--beta-scale", "1e-4", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const Operator4 rho = parse_density_matrix(cli_detail::read_file(path));
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
  EXPECT_LE(std::abs(rho(0, 0) - rho(2, 2)), 1e-14);
  EXPECT_GT(rho(3, 3).real(), rho(0, 0).real());
  EXPECT_NE(r.out.find("\nalpha "), std::string::npos);
  EXPECT_NE(r.out.find("\nbeta "), std::string::npos);
}

TEST(Cli, OracleCheckCsv) {
  const Result r = run({"oracle-check", "--ratio", "3e-2,1e-2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "ratio,infidelity");
  EXPECT_EQ(l[1].rfind("0.029999999999999999,", 0), 0u);
  EXPECT_EQ(l[2].rfind("0.01,", 0), 0u);
}

TEST(Cli, Deterministic) {
  for (const auto &args : std::vector<std::vector<std::string>>{
           {"eigensystem"}, {"transitions"}, {"pseudo-pure"}, {"compile-gate", "--kind", "rot", "--target", "R", "--angle", "-3*pi/4"}}) {
    const Result a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

}  // namespace
}  // namespace vqubit
