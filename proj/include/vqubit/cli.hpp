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

#ifndef VQUBIT_CLI_HPP
#define VQUBIT_CLI_HPP

// Command-line front end. run_command() is the whole CLI; tools/vqubit_cli.cpp
// only forwards argv. Exit codes: 0 success, 2 usage or input error,
// 3 numeric-contract violation.

#include "vqubit/core.hpp"
#include "vqubit/lab_frame_oracle.hpp"
#include "vqubit/program_text.hpp"
#include "vqubit/pulse_engine.hpp"
#include "vqubit/spin_system.hpp"
#include "vqubit/state_prep.hpp"
#include "vqubit/virtual_qubits.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace vqubit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameters:
    case ErrorKind::kIndexOutOfRange:
    case ErrorKind::kSyntaxError:
    case ErrorKind::kSemanticError:
    case ErrorKind::kParseError:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

namespace cli_detail {

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline VirtualQubit parse_qubit(const std::string &s) {
  if (s == "R") return VirtualQubit::R;
  if (s == "S") return VirtualQubit::S;
  throw Error(ErrorKind::kInvalidParameters, "virtual qubit must be R or S, got '" + s + "'");
}

inline Axis parse_axis(const std::string &s) {
  if (s == "X") return Axis::X;
  if (s == "Y") return Axis::Y;
  throw Error(ErrorKind::kInvalidParameters, "axis must be X or Y, got '" + s + "'");
}

/// identity | cnot-R | cnot-S | rot-<R|S>-<X|Y>-<angle>; cnot-Q names the control.
inline std::optional<GateRequest> parse_gate_spec(const std::string &spec) {
  if (spec == "identity") return std::nullopt;
  GateRequest req;
  if (spec == "cnot-R" || spec == "cnot-S") {
    req.kind = GateKind::kCnot;
    req.qubit = parse_qubit(spec.substr(5));
    return req;
  }
  if (spec.rfind("rot-", 0) == 0 && spec.size() > 8 && spec[5] == '-' && spec[7] == '-') {
    req.kind = GateKind::kRotation;
    req.qubit = parse_qubit(spec.substr(4, 1));
    req.axis = parse_axis(spec.substr(6, 1));
    req.angle = parse_angle(spec.substr(8));
    return req;
  }
  throw Error(ErrorKind::kInvalidParameters,
              "gate spec must be identity, cnot-R, cnot-S or rot-<R|S>-<X|Y>-<angle>, got '" + spec + "'");
}

inline void print_matrix_comment(std::ostream &out, const std::string &title, const Operator4 &m) {
  out << "# " << title << "\n";
  for (int i = 0; i < 4; ++i) {
    out << "#";
    for (int j = 0; j < 4; ++j)
      out << " (" << format_double(m(i, j).real()) << "," << format_double(m(i, j).imag()) << ")";
    out << "\n";
  }
}

}  // namespace cli_detail

inline int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Spin-3/2 virtual-qubit simulator and gate-to-pulse compiler", "vqubit_cli"};
  app.require_subcommand(1);
  app.fallthrough();

  SpinParameters params{0.2, 1.0, 0.5, 1.0, 1e-5};
  bool include_free = false;
  app.add_option("--omega0", params.omega0, "Zeeman angular frequency (rad/s)")->capture_default_str();
  app.add_option("--omegaQ", params.omegaQ, "quadrupole angular frequency (rad/s)")->capture_default_str();
  app.add_option("--eta", params.eta, "asymmetry parameter")->capture_default_str();
  app.add_option("--gamma", params.gamma, "gyromagnetic ratio")->capture_default_str();
  app.add_option("--hrf", params.h_rf, "RF amplitude")->capture_default_str();
  app.add_flag("--include-free-evolution", include_free, "apply D(t) for each step's duration");

  auto *eig_cmd = app.add_subcommand("eigensystem", "closed-form energies and eigenstates");
  auto *tr_cmd = app.add_subcommand("transitions", "transition frequencies and couplings");
  double margin = -1.0;
  tr_cmd->add_option("--margin", margin, "collision margin in rad/s (default 1e-6 omegaQ)");

  auto *sim_cmd = app.add_subcommand("simulate", "apply a pulse-program file to a density matrix");
  std::string program_path, rho_path;
  sim_cmd->add_option("program", program_path, "pulse-program file")->required();
  sim_cmd->add_option("--rho", rho_path, "initial density matrix file (default |00><00|)");

  auto *cg_cmd = app.add_subcommand("compile-gate", "compile a gate to a pulse program");
  std::string kind, target, control, axis_str = "Y", angle_str;
  cg_cmd->add_option("--kind", kind, "rot or cnot")->required()->check(CLI::IsMember({"rot", "cnot"}));
  cg_cmd->add_option("--target", target, "target qubit R or S")->check(CLI::IsMember({"R", "S"}));
  cg_cmd->add_option("--control", control, "control qubit for cnot, R or S")->check(CLI::IsMember({"R", "S"}));
  cg_cmd->add_option("--axis", axis_str, "rotation axis X or Y")->check(CLI::IsMember({"X", "Y"}));
  cg_cmd->add_option("--angle", angle_str, "rotation angle, e.g. pi/2");

  auto *pp_cmd = app.add_subcommand("pseudo-pure", "thermal state and pseudo-pure state by temporal averaging");
  double beta_scale = 1e-4;
  std::string pp_out;
  pp_cmd->add_option("--beta-scale", beta_scale, "hbar omegaQ / (k_B T)")->capture_default_str();
  pp_cmd->add_option("--out", pp_out, "also write the pseudo-pure density matrix to this file");

  auto *tt_cmd = app.add_subcommand("truth-table", "basis-state truth table of a gate");
  std::string gate_spec;
  tt_cmd->add_option("--gate", gate_spec, "identity | cnot-R | cnot-S | rot-<R|S>-<X|Y>-<angle>")->required();

  auto *oc_cmd = app.add_subcommand("oracle-check", "lab-frame vs rotating-wave infidelity of a pi pulse on W12");
  std::vector<double> ratios;
  oc_cmd->add_option("--ratio", ratios, "drive ratio gamma*hrf*|element| / gap")->required()->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    params.validate();
    if (*eig_cmd) {
      const EigenSystem e = closed_form_eigensystem(params);
      out << "# omega0=" << format_double(params.omega0) << " omegaQ=" << format_double(params.omegaQ)
          << " eta=" << format_double(params.eta) << "\n";
      out << "# labels by descending energy; bits: first=R second=S; states in |chi> basis (m=+3/2,+1/2,-1/2,-3/2)\n";
      out << "regime_ok " << (e.regime_ok ? "true" : "false") << "\n";
      if (e.mixing_angles)
        out << "alpha_plus " << format_double(e.mixing_angles->alpha_plus) << "\nalpha_minus "
            << format_double(e.mixing_angles->alpha_minus) << "\n";
      for (int m = 1; m <= 4; ++m) {
        out << m << " |" << label_to_bits(m) << "> " << format_double(e.energy(m));
        for (int i = 0; i < 4; ++i)
          out << " (" << format_double(e.states(i, m - 1).real()) << "," << format_double(e.states(i, m - 1).imag())
              << ")";
        out << "\n";
      }
    } else if (*tr_cmd) {
      const EigenSystem e = closed_form_eigensystem(params);
      const TransitionTable t = transition_table(e, margin);
      out << "m,n,omega,abs_ix,abs_iy,abs_iz,collision\n";
      for (const auto &r : t.rows)
        out << r.transition.m << "," << r.transition.n << "," << format_double(r.frequency) << ","
            << format_double(r.coupling[0]) << "," << format_double(r.coupling[1]) << ","
            << format_double(r.coupling[2]) << "," << (r.collision ? "yes" : "no") << "\n";
    } else if (*sim_cmd) {
      const PulseProgram prog = parse_pulse_program(cli_detail::read_file(program_path));
      Operator4 rho0 = Operator4::Zero();
      rho0(3, 3) = 1.0;
      if (!rho_path.empty()) rho0 = parse_density_matrix(cli_detail::read_file(rho_path));
      out << format_density_matrix(apply_pulse_program(prog, rho0, include_free));
    } else if (*cg_cmd) {
      const EigenSystem e = closed_form_eigensystem(params);
      CompiledGate g;
      if (kind == "cnot") {
        if (!control.empty() && !target.empty() && control == target) {
          err << "usage error: --control and --target must differ\n";
          return kExitUsage;
        }
        VirtualQubit ctrl = VirtualQubit::R;
        if (!control.empty()) ctrl = cli_detail::parse_qubit(control);
        else if (!target.empty()) ctrl = target == "S" ? VirtualQubit::R : VirtualQubit::S;
        g = compile_cnot(ctrl, e, params);
      } else {
        if (target.empty() || angle_str.empty()) {
          err << "usage error: rotations need --target and --angle\n";
          return kExitUsage;
        }
        g = compile_single_qubit_rotation(cli_detail::parse_qubit(target), cli_detail::parse_axis(axis_str),
                                          parse_angle(angle_str), e, params);
      }
      out << format_pulse_program(g.program);
      cli_detail::print_matrix_comment(out, "unitary (eigenbasis)", g.unitary);
    } else if (*pp_cmd) {
      const EigenSystem e = closed_form_eigensystem(params);
      const ThermalSpec spec{beta_scale};
      const Operator4 rho_eq = thermal_state(e, spec);
      const PseudoPureResult pp = temporal_average(rho_eq, e, params);
      out << "# beta_scale=" << format_double(beta_scale) << "\n";
      cli_detail::print_matrix_comment(out, "thermal state", rho_eq);
      out << "alpha " << format_double(pp.alpha) << "\n";
      out << "beta " << format_double(pp.beta) << "\n";
      out << format_density_matrix(pp.rho);
      if (!pp_out.empty()) {
        std::ofstream f(pp_out, std::ios::binary);
        if (!f) throw Error(ErrorKind::kParseError, "cannot write '" + pp_out + "'");
        f << format_density_matrix(pp.rho);
      }
    } else if (*tt_cmd) {
      const auto req = cli_detail::parse_gate_spec(gate_spec);
      Operator4 u = Operator4::Identity();
      if (req) u = compile_gate(*req, closed_form_eigensystem(params), params).unitary;
      out << "# " << gate_spec << " (bits: first=R second=S)\n";
      for (const auto &row : truth_table(u)) out << format_truth_row(row) << "\n";
    } else if (*oc_cmd) {
      for (double r : ratios)
        if (!(r > 0.0) || !std::isfinite(r)) {
          err << "usage error: --ratio values must be positive\n";
          return kExitUsage;
        }
      out << "ratio,infidelity\n";
      for (const auto &c : rwa_sweep(params, {1, 2}, ratios))
        out << format_double(c.ratio) << "," << format_double(c.infidelity) << "\n";
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitOk;
}

}  // namespace vqubit

#endif  // VQUBIT_CLI_HPP
