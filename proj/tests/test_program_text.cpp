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

#include "vqubit/program_text.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "oracles.hpp"

namespace vqubit {
namespace {

constexpr const char *kSystem = "system omega0=0.2 omegaQ=1 eta=0.5 gamma=1 hrf=1e-5\n";

PulseProgram parse(const std::string &body) { return parse_pulse_program(std::string(kSystem) + body); }

struct Diagnostic {
  ErrorKind kind;
  int line;
  int column;
  std::string what;
};

Diagnostic diagnose(const std::string &text) {
  try {
    parse_pulse_program(text);
  } catch (const TextError &e) {
    return {e.kind(), e.line(), e.column(), e.what()};
  }
  ADD_FAILURE() << "expected a diagnostic for:\n" << text;
  return {};
}

TEST(ProgramText, SinglePulse) {
  const PulseProgram p = parse("pulse t=1,2 axis=Y phase=0 flip=pi\n");
  EXPECT_EQ(p.params.omega0, 0.2);
  EXPECT_EQ(p.params.h_rf, 1e-5);
  ASSERT_EQ(p.steps.size(), 1u);
  const auto &s = std::get<PulseSpec>(p.steps[0]);
  EXPECT_EQ(s.transition, (Transition{1, 2}));
  EXPECT_EQ(s.axis, Axis::Y);
  EXPECT_EQ(s.phase, 0.0);
  EXPECT_EQ(s.flip, kPi);
}

TEST(ProgramText, AngleExpressions) {
  EXPECT_EQ(parse_angle("pi/2"), 1.5707963267948966);
  EXPECT_EQ(format_double(parse_angle("pi/2")), "1.5707963267948966");
  EXPECT_EQ(parse_angle("3*pi/4"), 3.0 * kPi / 4.0);
  EXPECT_EQ(parse_angle("-pi"), -kPi);
  EXPECT_EQ(parse_angle("(1+1)*pi"), 2.0 * kPi);
  EXPECT_EQ(parse_angle("0.25"), 0.25);
  EXPECT_EQ(parse_angle("2*-pi"), -2.0 * kPi);
  const auto &s = std::get<PulseSpec>(parse("pulse t=1,3 axis=X phase=-pi/4 flip=pi/2\n").steps[0]);
  EXPECT_EQ(s.flip, 1.5707963267948966);
  EXPECT_EQ(s.phase, -kPi / 4.0);
  EXPECT_VQ_ERROR(parse_angle("pi/"), ErrorKind::kSyntaxError);
  EXPECT_VQ_ERROR(parse_angle("2pi"), ErrorKind::kSyntaxError);
  EXPECT_VQ_ERROR(parse_angle(""), ErrorKind::kSyntaxError);
}

TEST(ProgramText, AllDirectivesAndComments) {
  const PulseProgram p = parse(
      "# comment line\n"
      "\n"
      "pulse2 a=1,2 b=3,4 axis=X phase=pi flip=pi/2 flip2=pi/2  # trailing\n"
      "free dt=2.5\n"
      "pulse t=4,2 axis=Y phase=0 flip=0\n");
  ASSERT_EQ(p.steps.size(), 3u);
  const auto &two = std::get<SimultaneousPulse>(p.steps[0]);
  EXPECT_EQ(two.a.transition, (Transition{1, 2}));
  EXPECT_EQ(two.b.transition, (Transition{3, 4}));
  EXPECT_EQ(two.a.axis, Axis::X);
  EXPECT_EQ(two.b.phase, kPi);
  EXPECT_EQ(std::get<FreeEvolutionStep>(p.steps[1]).dt, 2.5);
  EXPECT_EQ(std::get<PulseSpec>(p.steps[2]).transition, (Transition{2, 4}));
}

TEST(ProgramText, SharedLevelIsSemanticError) {
  const Diagnostic d = diagnose(std::string(kSystem) + "pulse2 a=1,2 b=2,3 axis=Y phase=0 flip=pi flip2=pi\n");
  EXPECT_EQ(d.kind, ErrorKind::kSemanticError);
  EXPECT_EQ(d.line, 2);
  EXPECT_EQ(d.column, 16);
  EXPECT_NE(d.what.find("SharedLevel"), std::string::npos);
}

TEST(ProgramText, PositionedDiagnostics) {
  Diagnostic d = diagnose(std::string(kSystem) + "  rotate t=1,2\n");
  EXPECT_EQ(d.kind, ErrorKind::kSyntaxError);
  EXPECT_EQ(d.line, 2);
  EXPECT_EQ(d.column, 3);

  d = diagnose(std::string(kSystem) + "pulse t=1,2 axis=Z phase=0 flip=pi\n");
  EXPECT_EQ(d.kind, ErrorKind::kSyntaxError);
  EXPECT_EQ(d.column, 18);

  d = diagnose(std::string(kSystem) + "pulse t=1,5 axis=Y phase=0 flip=pi\n");
  EXPECT_EQ(d.kind, ErrorKind::kSemanticError);
  EXPECT_EQ(d.column, 9);

  d = diagnose(std::string(kSystem) + "pulse t=1,2 axis=Y phase=0 flip=pi*\n");
  EXPECT_EQ(d.kind, ErrorKind::kSyntaxError);
  EXPECT_EQ(d.column, 36);

  d = diagnose(std::string(kSystem) + "pulse t=1,2 axis=Y phase=0\n");
  EXPECT_EQ(d.kind, ErrorKind::kSyntaxError);
  EXPECT_NE(d.what.find("missing key 'flip'"), std::string::npos);

  d = diagnose(std::string(kSystem) + "pulse t=1,2 axis=Y phase=0 flip=pi color=red\n");
  EXPECT_EQ(d.kind, ErrorKind::kSyntaxError);
  EXPECT_EQ(d.column, 36);

  d = diagnose(std::string(kSystem) + "pulse t=1,2 t=1,3 axis=Y phase=0 flip=pi\n");
  EXPECT_NE(d.what.find("duplicate key"), std::string::npos);

  d = diagnose(std::string(kSystem) + "free dt=1.5x\n");
  EXPECT_EQ(d.kind, ErrorKind::kSyntaxError);
  EXPECT_EQ(d.column, 9);

  d = diagnose(std::string(kSystem) + "pulse t=1,2 axis=Y phase=0 flip=-pi\n");
  EXPECT_EQ(d.kind, ErrorKind::kSemanticError);
}

TEST(ProgramText, SystemLineRules) {
  Diagnostic d = diagnose("pulse t=1,2 axis=Y phase=0 flip=pi\n");
  EXPECT_EQ(d.kind, ErrorKind::kSemanticError);
  EXPECT_EQ(d.line, 1);
  d = diagnose("# nothing here\n");
  EXPECT_EQ(d.kind, ErrorKind::kSemanticError);
  d = diagnose(std::string(kSystem) + kSystem);
  EXPECT_EQ(d.kind, ErrorKind::kSemanticError);
  EXPECT_EQ(d.line, 2);
  d = diagnose("system omega0=0.2 omegaQ=1 eta=2 gamma=1 hrf=0\n");
  EXPECT_EQ(d.kind, ErrorKind::kSemanticError);
  d = diagnose("system omega0=0.2 omegaQ=1 eta=0.5 gamma=1\n");
  EXPECT_EQ(d.kind, ErrorKind::kSyntaxError);
}

TEST(ProgramText, FormatParseRoundTrip) {
  const PulseProgram p = parse(
      "pulse t=1,3 axis=X phase=0.1 flip=pi\n"
      "pulse2 a=1,3 b=2,4 axis=Y phase=-pi/3 flip=0.5 flip2=2.5\n"
      "free dt=1e-7\n");
  const std::string text = format_pulse_program(p);
  const PulseProgram q = parse_pulse_program(text);
  EXPECT_EQ(format_pulse_program(q), text);
  EXPECT_EQ(std::get<SimultaneousPulse>(q.steps[1]).a.phase, -kPi / 3.0);
  EXPECT_EQ(std::get<FreeEvolutionStep>(q.steps[2]).dt, 1e-7);
}

TEST(ProgramText, ParserIsTotal) {
  // Every mutated line either parses or raises exactly one positioned diagnostic.
  const std::string base = "pulse2 a=1,3 b=2,4 axis=Y phase=pi/2 flip=pi flip2=pi";
  const std::string alphabet = "=,./*-+() pi1234XYabtflz#\t";
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pos(0, base.size() - 1), ch(0, alphabet.size() - 1);
  int diagnostics = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string line = base;
    for (int k = 0; k < 3; ++k) line[pos(rng)] = alphabet[ch(rng)];
    try {
      parse(line + "\n");
    } catch (const TextError &e) {
      ++diagnostics;
      EXPECT_EQ(e.line(), 2) << line;
      EXPECT_GE(e.column(), 1) << line;
    } catch (...) {
      ADD_FAILURE() << "unpositioned failure for: " << line;
    }
  }
  EXPECT_GT(diagnostics, 0);
}

TEST(DensityText, IdentityQuarter) {
  const std::string text = format_density_matrix(Operator4::Identity() / 4.0);
  EXPECT_EQ(text,
            "rho 4x4 basis=eigen\n"
            "(0.25,0) (0,0) (0,0) (0,0)\n"
            "(0,0) (0.25,0) (0,0) (0,0)\n"
            "(0,0) (0,0) (0.25,0) (0,0)\n"
            "(0,0) (0,0) (0,0) (0.25,0)\n");
}

TEST(DensityText, GroundProjector) {
  Operator4 p44 = Operator4::Zero();
  p44(3, 3) = 1.0;
  const std::string text = format_density_matrix(p44);
  EXPECT_NE(text.find("(0,0) (0,0) (0,0) (1,0)\n"), std::string::npos);
  EXPECT_EQ(text.find("(1,0)"), text.rfind("(1,0)"));
}

TEST(DensityText, BitExactRoundTrip) {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 200; ++i) {
    const Operator4 rho = oracle::random_density(rng);
    const Operator4 back = parse_density_matrix(format_density_matrix(rho));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const double a[2] = {rho(r, c).real(), rho(r, c).imag()};
        const double b[2] = {back(r, c).real(), back(r, c).imag()};
        ASSERT_EQ(std::memcmp(a, b, sizeof a), 0);
      }
  }
}

TEST(DensityText, MalformedInput) {
  const std::string good = format_density_matrix(Operator4::Identity() / 4.0);
  EXPECT_VQ_ERROR(parse_density_matrix(""), ErrorKind::kParseError);
  EXPECT_VQ_ERROR(parse_density_matrix("rho 3x3\n"), ErrorKind::kParseError);
  std::string bad = good;
  bad.replace(bad.find("(0.25,0)"), 8, "(0.25;0)");
  EXPECT_VQ_ERROR(parse_density_matrix(bad), ErrorKind::kParseError);
  bad = good;
  bad.replace(bad.find("(0,0)"), 5, "(x,0)");
  EXPECT_VQ_ERROR(parse_density_matrix(bad), ErrorKind::kParseError);
  bad = good.substr(0, good.rfind("(0.25,0)"));
  EXPECT_VQ_ERROR(parse_density_matrix(bad), ErrorKind::kParseError);
}

}  // namespace
}  // namespace vqubit
