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

#ifndef VQUBIT_PROGRAM_TEXT_HPP
#define VQUBIT_PROGRAM_TEXT_HPP

// Line-oriented pulse-program format and the density-matrix dump.
//
//   system omega0=<f> omegaQ=<f> eta=<f> gamma=<f> hrf=<f>
//   pulse  t=<m>,<n> axis=<X|Y> phase=<angle> flip=<angle>
//   pulse2 a=<m>,<n> b=<p>,<q> axis=<X|Y> phase=<angle> flip=<angle> flip2=<angle>
//   free   dt=<f>
//
// '#' starts a comment. Exactly one system line, before anything else.
// <angle> is a small arithmetic expression over numbers and `pi`.
// Numbers are written with 17 significant digits, which round-trips binary64.

#include "vqubit/core.hpp"
#include "vqubit/pulse_engine.hpp"
#include "vqubit/spin_system.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace vqubit {

/// Positioned diagnostic; line and column are 1-based.
class TextError : public Error {
 public:
  TextError(ErrorKind kind, int line, int column, const std::string &msg)
      : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline bool parse_full_double(std::string_view s, double &out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

// expr := term (('+'|'-') term)*
// term := unary (('*'|'/') unary)*
// unary := '-' unary | '+' unary | primary
// primary := number | 'pi' | '(' expr ')'
class AngleParser {
 public:
  explicit AngleParser(std::string_view text) : text_(text) {}

  // Returns false and sets `error_pos` (0-based) on failure.
  bool parse(double &value, std::size_t &error_pos) {
    if (!expr(value) || pos_ != text_.size()) {
      error_pos = pos_;
      return false;
    }
    return true;
  }

 private:
  bool expr(double &v) {
    if (!term(v)) return false;
    while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char op = text_[pos_++];
      double rhs = 0.0;
      if (!term(rhs)) return false;
      v = op == '+' ? v + rhs : v - rhs;
    }
    return true;
  }

  bool term(double &v) {
    if (!unary(v)) return false;
    while (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '/')) {
      const char op = text_[pos_++];
      double rhs = 0.0;
      if (!unary(rhs)) return false;
      v = op == '*' ? v * rhs : v / rhs;
    }
    return true;
  }

  bool unary(double &v) {
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      const bool neg = text_[pos_++] == '-';
      if (!unary(v)) return false;
      if (neg) v = -v;
      return true;
    }
    return primary(v);
  }

  bool primary(double &v) {
    if (pos_ >= text_.size()) return false;
    if (text_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      v = kPi;
      return true;
    }
    if (text_[pos_] == '(') {
      ++pos_;
      if (!expr(v)) return false;
      if (pos_ >= text_.size() || text_[pos_] != ')') return false;
      ++pos_;
      return true;
    }
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) return false;
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct Token {
  std::string_view text;
  int column = 1;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

struct Field {
  std::string_view value;
  int column = 1;        // column of the key
  int value_column = 1;  // column of the value
};

class LineParser {
 public:
  LineParser(int line_no, const std::vector<Token> &tokens,
             std::initializer_list<std::string_view> allowed, int end_column)
      : line_(line_no), end_column_(end_column) {
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const Token &t = tokens[i];
      const auto eq = t.text.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw TextError(ErrorKind::kSyntaxError, line_, t.column, "expected key=value, got '" + std::string(t.text) + "'");
      const std::string key(t.text.substr(0, eq));
      bool known = false;
      for (auto a : allowed) known = known || a == key;
      if (!known) throw TextError(ErrorKind::kSyntaxError, line_, t.column, "unknown key '" + key + "'");
      if (fields_.count(key)) throw TextError(ErrorKind::kSyntaxError, line_, t.column, "duplicate key '" + key + "'");
      fields_[key] = {t.text.substr(eq + 1), t.column, t.column + static_cast<int>(eq) + 1};
    }
  }

  const Field &get(const std::string &key) const {
    const auto it = fields_.find(key);
    if (it == fields_.end()) throw TextError(ErrorKind::kSyntaxError, line_, end_column_, "missing key '" + key + "'");
    return it->second;
  }

  double number(const std::string &key) const {
    const Field &f = get(key);
    double v = 0.0;
    if (!parse_full_double(f.value, v))
      throw TextError(ErrorKind::kSyntaxError, line_, f.value_column, "malformed number '" + std::string(f.value) + "'");
    return v;
  }

  double angle(const std::string &key) const {
    const Field &f = get(key);
    double v = 0.0;
    std::size_t bad = 0;
    AngleParser parser(f.value);
    if (!parser.parse(v, bad))
      throw TextError(ErrorKind::kSyntaxError, line_, f.value_column + static_cast<int>(bad),
                      "malformed angle '" + std::string(f.value) + "'");
    if (!std::isfinite(v)) throw TextError(ErrorKind::kSemanticError, line_, f.value_column, "angle is not finite");
    return v;
  }

  Axis axis(const std::string &key) const {
    const Field &f = get(key);
    if (f.value == "X") return Axis::X;
    if (f.value == "Y") return Axis::Y;
    throw TextError(ErrorKind::kSyntaxError, line_, f.value_column, "axis must be X or Y");
  }

  Transition transition(const std::string &key) const {
    const Field &f = get(key);
    const auto comma = f.value.find(',');
    int a = 0, b = 0;
    auto parse_int = [](std::string_view s, int &out) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
    };
    if (comma == std::string_view::npos || !parse_int(f.value.substr(0, comma), a) ||
        !parse_int(f.value.substr(comma + 1), b))
      throw TextError(ErrorKind::kSyntaxError, line_, f.value_column, "transition must be <m>,<n>");
    if (a < 1 || a > 4 || b < 1 || b > 4 || a == b)
      throw TextError(ErrorKind::kSemanticError, line_, f.value_column,
                      "unknown transition " + std::string(f.value) + " (levels are 1..4 and distinct)");
    return make_transition(a, b);
  }

  double flip(const std::string &key) const {
    const double v = angle(key);
    if (v < 0.0) throw TextError(ErrorKind::kSemanticError, line_, get(key).value_column, "flip angle must be >= 0");
    return v;
  }

 private:
  int line_;
  int end_column_;
  std::map<std::string, Field> fields_;
};

}  // namespace detail

/// Evaluates an angle expression such as `3*pi/4`.
inline double parse_angle(std::string_view text) {
  double v = 0.0;
  std::size_t bad = 0;
  detail::AngleParser parser(text);
  if (!parser.parse(v, bad))
    throw TextError(ErrorKind::kSyntaxError, 1, static_cast<int>(bad) + 1, "malformed angle '" + std::string(text) + "'");
  return v;
}

inline PulseProgram parse_pulse_program(std::string_view text) {
  PulseProgram prog;
  bool have_system = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    const int end_col = static_cast<int>(line.size()) + 1;
    const std::string_view directive = tokens[0].text;
    const int col = tokens[0].column;

    if (directive == "system") {
      if (have_system) throw TextError(ErrorKind::kSemanticError, line_no, col, "duplicate system line");
      if (!prog.steps.empty())
        throw TextError(ErrorKind::kSemanticError, line_no, col, "system line must come first");
      detail::LineParser lp(line_no, tokens, {"omega0", "omegaQ", "eta", "gamma", "hrf"}, end_col);
      prog.params = {lp.number("omega0"), lp.number("omegaQ"), lp.number("eta"), lp.number("gamma"), lp.number("hrf")};
      try {
        prog.params.validate();
      } catch (const Error &e) {
        throw TextError(ErrorKind::kSemanticError, line_no, col, e.what());
      }
      have_system = true;
      continue;
    }
    if (directive != "pulse" && directive != "pulse2" && directive != "free")
      throw TextError(ErrorKind::kSyntaxError, line_no, col, "unknown directive '" + std::string(directive) + "'");
    if (!have_system) throw TextError(ErrorKind::kSemanticError, line_no, col, "missing system line before first step");

    if (directive == "pulse") {
      detail::LineParser lp(line_no, tokens, {"t", "axis", "phase", "flip"}, end_col);
      prog.steps.emplace_back(PulseSpec{lp.transition("t"), lp.axis("axis"), lp.angle("phase"), lp.flip("flip"), std::nullopt});
    } else if (directive == "pulse2") {
      detail::LineParser lp(line_no, tokens, {"a", "b", "axis", "phase", "flip", "flip2"}, end_col);
      const Transition a = lp.transition("a");
      const Transition b = lp.transition("b");
      if (a.shares_level(b))
        throw TextError(ErrorKind::kSemanticError, line_no, lp.get("b").value_column,
                        "SharedLevel: simultaneous transitions must have no common energy levels");
      const Axis axis = lp.axis("axis");
      const double phase = lp.angle("phase");
      prog.steps.emplace_back(SimultaneousPulse{PulseSpec{a, axis, phase, lp.flip("flip"), std::nullopt},
                                                PulseSpec{b, axis, phase, lp.flip("flip2"), std::nullopt}});
    } else {
      detail::LineParser lp(line_no, tokens, {"dt"}, end_col);
      const double dt = lp.number("dt");
      if (!(dt >= 0.0) || !std::isfinite(dt))
        throw TextError(ErrorKind::kSemanticError, line_no, lp.get("dt").value_column, "dt must be finite and >= 0");
      prog.steps.emplace_back(FreeEvolutionStep{dt});
    }
  }
  if (!have_system) throw TextError(ErrorKind::kSemanticError, line_no > 0 ? line_no : 1, 1, "missing system line");
  return prog;
}

/// Serializes a program; flips are written as stored (normalize realized
/// pulses first).
inline std::string format_pulse_program(const PulseProgram &prog) {
  std::ostringstream out;
  const auto &p = prog.params;
  out << "system omega0=" << format_double(p.omega0) << " omegaQ=" << format_double(p.omegaQ)
      << " eta=" << format_double(p.eta) << " gamma=" << format_double(p.gamma) << " hrf=" << format_double(p.h_rf)
      << "\n";
  for (const auto &step : prog.steps) {
    if (const auto *s = std::get_if<PulseSpec>(&step)) {
      out << "pulse t=" << s->transition.m << "," << s->transition.n << " axis=" << axis_name(s->axis)
          << " phase=" << format_double(s->phase) << " flip=" << format_double(s->flip) << "\n";
    } else if (const auto *s = std::get_if<SimultaneousPulse>(&step)) {
      if (s->a.axis != s->b.axis || s->a.phase != s->b.phase)
        throw Error(ErrorKind::kSemanticError, "pulse2 requires a shared axis and phase");
      out << "pulse2 a=" << s->a.transition.m << "," << s->a.transition.n << " b=" << s->b.transition.m << ","
          << s->b.transition.n << " axis=" << axis_name(s->a.axis) << " phase=" << format_double(s->a.phase)
          << " flip=" << format_double(s->a.flip) << " flip2=" << format_double(s->b.flip) << "\n";
    } else {
      out << "free dt=" << format_double(std::get<FreeEvolutionStep>(step).dt) << "\n";
    }
  }
  return out.str();
}

inline constexpr std::string_view kDensityHeader = "rho 4x4 basis=eigen";

inline std::string format_density_matrix(const Operator4 &rho) {
  std::string out(kDensityHeader);
  out += '\n';
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j) out += ' ';
      out += '(' + format_double(rho(i, j).real()) + ',' + format_double(rho(i, j).imag()) + ')';
    }
    out += '\n';
  }
  return out;
}

inline Operator4 parse_density_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
  }
  if (lines.size() != 5 || lines[0] != kDensityHeader)
    throw TextError(ErrorKind::kParseError, 1, 1, "expected header '" + std::string(kDensityHeader) + "' and 4 rows");
  Operator4 rho;
  for (int i = 0; i < 4; ++i) {
    const auto tokens = detail::tokenize(lines[static_cast<std::size_t>(i) + 1]);
    if (tokens.size() != 4) throw TextError(ErrorKind::kParseError, i + 2, 1, "expected 4 entries");
    for (int j = 0; j < 4; ++j) {
      const auto tok = tokens[static_cast<std::size_t>(j)];
      const auto comma = tok.text.find(',');
      double re = 0.0, im = 0.0;
      if (tok.text.size() < 5 || tok.text.front() != '(' || tok.text.back() != ')' || comma == std::string_view::npos ||
          !detail::parse_full_double(tok.text.substr(1, comma - 1), re) ||
          !detail::parse_full_double(tok.text.substr(comma + 1, tok.text.size() - comma - 2), im))
        throw TextError(ErrorKind::kParseError, i + 2, tok.column, "malformed entry '" + std::string(tok.text) + "'");
      rho(i, j) = cplx(re, im);
    }
  }
  return rho;
}

}  // namespace vqubit

#endif  // VQUBIT_PROGRAM_TEXT_HPP
