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

#ifndef VQUBIT_VQUBIT_HPP
#define VQUBIT_VQUBIT_HPP

#include "vqubit/core.hpp"
#include "vqubit/lab_frame_oracle.hpp"
#include "vqubit/matrix_exp.hpp"
#include "vqubit/operator_algebra.hpp"
#include "vqubit/program_text.hpp"
#include "vqubit/pulse_engine.hpp"
#include "vqubit/spin_system.hpp"
#include "vqubit/state_prep.hpp"
#include "vqubit/virtual_qubits.hpp"

#endif  // VQUBIT_VQUBIT_HPP
