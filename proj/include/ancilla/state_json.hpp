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

// State interchange format:
//   {"modes": M, "terms": [{"occ": [ints], "re": float, "im": float}, ...]}
// Terms are emitted in lexicographic order of "occ". Unknown keys are ignored
// on input, which lets reports carry extra fields next to the state.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "ancilla/fock.hpp"

namespace ancilla {

inline nlohmann::json state_to_json(const SparseState& state) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [occ, amp] : state) {
    terms.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return {{"modes", state.modes()}, {"terms", std::move(terms)}};
}

inline SparseState state_from_json(const nlohmann::json& j, double tolerance = kDefaultTolerance) {
  try {
    const auto modes = j.at("modes").get<std::size_t>();
    SparseState state(modes, tolerance);
    for (const auto& term : j.at("terms")) {
      const auto occ = term.at("occ").get<Occupation>();
      state.add(occ, Amplitude{term.at("re").get<double>(), term.value("im", 0.0)});
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline SparseState load_state(const std::string& path, double tolerance = kDefaultTolerance) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return state_from_json(j, tolerance);
}

}  // namespace ancilla
