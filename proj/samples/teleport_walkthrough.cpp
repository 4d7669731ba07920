// Copyright 2026 The Ancilla Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Prepares the single-register ancilla for n = 3, teleports a qubit through
// it, then runs the controlled-sign gate on |+>|+>.

#include <iomanip>
#include <iostream>

#include "ancilla/ancilla.hpp"

int main() {
  using namespace ancilla;
  constexpr int n = 3;
  const AmplitudeProfile profile = AmplitudeProfile::constant(n);

  const PreparedState single = build_single_register(n, profile);
  std::cout << std::setprecision(17);
  std::cout << "single-register ancilla, " << single.state.size() << " terms\n";
  for (const auto& [occ, amp] : single.state) {
    std::cout << "  " << detail::occupation_string(occ) << "  " << amp << "\n";
  }

  const InputQubit q = InputQubit::normalized({0.6, 0.0}, {0.0, 0.8});
  const TeleportReport report = teleport(q, single.state, n);
  std::cout << "teleport: success " << report.success_probability << ", failure " << report.failure_probability
            << ", worst success fidelity " << report.min_success_fidelity << "\n";

  const PreparedState pair = build_entangled_pair(n, profile, PhaseMethod::ParityAncilla);
  const InputQubit plus = InputQubit::normalized(1.0, 1.0);
  const CzReport cz = cz_via_double_teleportation(plus, plus, pair.state, n);
  std::cout << "controlled sign: success " << cz.success_probability << ", worst fidelity " << cz.min_fidelity
            << "\n";

  const GateCountReport counts = gate_counts(n, PhaseMethod::PairwiseGates);
  std::cout << "pairwise preparation: " << counts.total_gates << " gates, success " << counts.success_probability
            << "\n";
  return 0;
}
