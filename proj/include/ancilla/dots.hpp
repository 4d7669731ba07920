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

// Quantum-dot array preparation of the register-pair ancilla.
//
// A register pair occupies 2n dots: x~ on dots 0..n-1 and y~ on dots n..2n-1,
// where x~_i = x_(n+1-i) and y~_i = y_(n+1-i). The branch with j transfers is
// then a contiguous block of n electrons on (1-based) dots n-j+1 .. 2n-j.
// A state may hold several register pairs side by side; schedules are written
// for one pair and drive every pair in parallel.
//
// Each dot holds at most one excitation. Rabi pulses act on neighbouring
// dots and leave |00> and |11> untouched.

#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ancilla/fock.hpp"
#include "ancilla/profile.hpp"

namespace ancilla {

namespace pulse {

struct Thermalize {};

struct Load {
  std::size_t dot = 0;
};

/// Excitation leaves `from` for `to` with probability sin^2(theta).
struct Rabi {
  std::size_t from = 0;
  std::size_t to = 1;
  double theta = 0.0;
};

struct InteractionPhase {
  double kappa_t = 0.0;
  double lambda = 0.0;
};

/// Phase phases[N] on every register pair whose x~ holds N excitations.
struct UGate {
  std::vector<double> phases;
};

}  // namespace pulse

using Pulse = std::variant<pulse::Thermalize, pulse::Load, pulse::Rabi, pulse::InteractionPhase, pulse::UGate>;

struct PulseSchedule {
  int n = 0;  ///< register size; a pair spans 2n dots
  std::vector<Pulse> pulses;

  std::size_t size() const noexcept { return pulses.size(); }
  std::size_t pair_dots() const noexcept { return 2 * static_cast<std::size_t>(n); }
};

/// Pulses emitted by compile_schedule for one register pair: 3n^2/2 + 7n/2 - 2.
constexpr long long expected_pulse_count(long long n) { return (3 * n * n + 7 * n - 4) / 2; }

// ---------------------------------------------------------------------------
// Elementary operations.

namespace detail {

inline void require_blockade(const SparseState& state) {
  for (const auto& [occ, amp] : state) {
    for (std::size_t d = 0; d < occ.size(); ++d) {
      if (occ[d] < 0 || occ[d] > 1) {
        throw Error(ErrorKind::BlockadeViolation,
                    "dot " + std::to_string(d) + " holds " + std::to_string(occ[d]) + " in " + occupation_string(occ));
      }
    }
  }
}

inline void require_dot(const SparseState& state, std::size_t dot) {
  if (dot >= state.modes()) {
    throw Error(ErrorKind::DotOutOfRange,
                "dot " + std::to_string(dot) + " outside array of " + std::to_string(state.modes()));
  }
}

inline int count_range(const Occupation& occ, std::size_t first, std::size_t count) {
  int c = 0;
  for (std::size_t i = 0; i < count; ++i) c += occ[first + i];
  return c;
}

}  // namespace detail

/// Rabi pulse with the transferred amplitude made real non-negative:
///   |1_i 0_j> -> cos(theta)|1_i 0_j> + sin(theta)|0_i 1_j>
///   |0_i 1_j> -> -sin(theta)|1_i 0_j> + cos(theta)|0_i 1_j>
/// i.e. a -pi/2 phase on dot j conjugating the raw (cos, i sin) mixing.
inline SparseState rabi(const SparseState& state, std::size_t dot_i, std::size_t dot_j, double theta) {
  detail::require_dot(state, dot_i);
  detail::require_dot(state, dot_j);
  if (dot_i == dot_j) throw Error(ErrorKind::DotOutOfRange, "Rabi pulse needs two distinct dots");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  SparseState::TermMap out;
  for (const auto& [occ, amp] : state) {
    const int a = occ[dot_i];
    const int b = occ[dot_j];
    if (a > 1 || b > 1) throw Error(ErrorKind::BlockadeViolation, "doubly occupied dot " + detail::occupation_string(occ));
    if (a == b) {
      out[occ] += amp;
      continue;
    }
    Occupation ten = occ;
    ten[dot_i] = 1;
    ten[dot_j] = 0;
    Occupation one = occ;
    one[dot_i] = 0;
    one[dot_j] = 1;
    if (a == 1) {
      out[ten] += c * amp;
      out[one] += s * amp;
    } else {
      out[ten] += -s * amp;
      out[one] += c * amp;
    }
  }
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(out));
}

/// -lambda * j(j-1)/2 reduced mod 2pi, for j = 0..n.
inline std::vector<double> intra_register_corrections(int n, double lambda) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    c[static_cast<std::size_t>(j)] = std::remainder(-lambda * 0.5 * j * (j - 1), 2.0 * std::numbers::pi);
  }
  return c;
}

/// Charge-charge phase between x~ and x~' of a two-pair array (4n dots):
/// exp(i[kappa_t j j' + lambda (j(j-1)/2 + j'(j'-1)/2)]) times
/// exp(i[corrections[j] + corrections[j']]). y~ registers are shielded.
inline SparseState interaction_phase(const SparseState& state, double kappa_t, double lambda,
                                     const std::vector<double>& corrections) {
  if (state.modes() == 0 || state.modes() % 4 != 0) {
    throw Error(ErrorKind::ShapeMismatch, "interaction phase needs two register pairs");
  }
  const std::size_t n = state.modes() / 4;
  if (!corrections.empty() && corrections.size() != n + 1) {
    throw Error(ErrorKind::ShapeMismatch, "correction table needs n+1 entries");
  }
  detail::require_blockade(state);
  return apply_basis_phase(state, [&](const Occupation& occ) {
    const int j = detail::count_range(occ, 0, n);
    const int jp = detail::count_range(occ, 2 * n, n);
    double phase = kappa_t * j * jp + lambda * 0.5 * (j * (j - 1) + jp * (jp - 1));
    if (!corrections.empty()) {
      phase += corrections[static_cast<std::size_t>(j)] + corrections[static_cast<std::size_t>(jp)];
    }
    return phase;
  });
}

/// Converts dot occupancies to photonic modes, undoing the register rotation.
/// `n` is the register size; the array may hold any number of pairs.
inline SparseState emit_photons(const SparseState& state, int n) {
  const auto size = static_cast<std::size_t>(n);
  if (n < 1 || state.modes() % (2 * size) != 0) {
    throw Error(ErrorKind::ShapeMismatch, "array size is not a multiple of 2n");
  }
  SparseState::TermMap out;
  for (const auto& [occ, amp] : state) {
    Occupation photons(occ.size());
    for (std::size_t reg = 0; reg < occ.size() / size; ++reg) {
      for (std::size_t i = 0; i < size; ++i) photons[reg * size + i] = occ[reg * size + size - 1 - i];
    }
    out[std::move(photons)] += amp;
  }
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(out));
}

// ---------------------------------------------------------------------------
// Schedules.

namespace detail {

// 1-based dot index to 0-based.
inline std::size_t dot(int one_based) { return static_cast<std::size_t>(one_based - 1); }

inline void full_shift(std::vector<Pulse>& out, int from, int to) {
  out.push_back(pulse::Rabi{dot(from), dot(to), std::numbers::pi / 2});
}

}  // namespace detail

/// Reservoir loads fill y~; step k then moves one electron across the x~/y~
/// boundary with probability P_k on the branch with k-1 transfers:
///  - the x~ electrons step left so the hole sits next to the boundary,
///  - the boundary pulse fires (for k >= 2 as an echo whose U gates cancel it
///    on branches with fewer than k-1 transfers),
///  - the x~ electrons step back,
///  - the hole in y~ is shifted right to its final place.
inline PulseSchedule compile_schedule(int n, const AmplitudeProfile& profile) {
  if (n < 1 || profile.n() != n) throw Error(ErrorKind::InvalidProfile, "profile does not match n");
  if (!profile.non_negative()) throw Error(ErrorKind::InvalidProfile, "dot preparation needs non-negative weights");
  const TransferSchedule transfers = schedule_from_profile(profile);

  PulseSchedule s;
  s.n = n;
  auto& out = s.pulses;
  out.emplace_back(pulse::Thermalize{});
  for (int d = n + 1; d <= 2 * n; ++d) out.emplace_back(pulse::Load{detail::dot(d)});

  for (int k = 1; k <= n; ++k) {
    const double theta = std::asin(std::sqrt(std::clamp(transfers(k), 0.0, 1.0)));
    for (int p = n - k + 1; p <= n - 1; ++p) detail::full_shift(out, p + 1, p);
    if (k == 1) {
      out.emplace_back(pulse::Rabi{detail::dot(n + 1), detail::dot(n), theta});
    } else {
      std::vector<double> g(static_cast<std::size_t>(n) + 1);
      for (int N = 0; N <= n; ++N) g[static_cast<std::size_t>(N)] = std::numbers::pi * std::min(N, k - 1);
      out.emplace_back(pulse::Rabi{detail::dot(n + 1), detail::dot(n), theta / 2});
      out.emplace_back(pulse::UGate{g});
      out.emplace_back(pulse::Rabi{detail::dot(n + 1), detail::dot(n), theta / 2});
      out.emplace_back(pulse::UGate{g});
    }
    for (int p = n - 1; p >= n - k + 1; --p) detail::full_shift(out, p, p + 1);
    for (int p = n + 1; p <= 2 * n - k; ++p) detail::full_shift(out, p + 1, p);
  }
  return s;
}

/// Structural checks: dot indices inside one pair, distinct Rabi dots,
/// theta in [0, pi/2] and U tables of length n+1.
inline void validate(const PulseSchedule& schedule) {
  if (schedule.n < 1) throw Error(ErrorKind::InvalidSchedule, "schedule needs n >= 1");
  const std::size_t dots = schedule.pair_dots();
  for (const Pulse& p : schedule.pulses) {
    if (const auto* load = std::get_if<pulse::Load>(&p)) {
      if (load->dot >= dots) throw Error(ErrorKind::DotOutOfRange, "load dot " + std::to_string(load->dot));
    } else if (const auto* r = std::get_if<pulse::Rabi>(&p)) {
      if (r->from >= dots || r->to >= dots) throw Error(ErrorKind::DotOutOfRange, "Rabi dot out of range");
      if (r->from == r->to) throw Error(ErrorKind::InvalidSchedule, "Rabi pulse on a single dot");
      if (!(r->theta >= 0.0 && r->theta <= std::numbers::pi / 2 + 1e-15)) {
        throw Error(ErrorKind::InvalidSchedule, "Rabi angle outside [0, pi/2]");
      }
    } else if (const auto* u = std::get_if<pulse::UGate>(&p)) {
      if (u->phases.size() != static_cast<std::size_t>(schedule.n) + 1) {
        throw Error(ErrorKind::InvalidSchedule, "U gate table needs n+1 phases");
      }
    }
  }
}

/// Largest dot occupancy seen while executing, and the number of states checked.
struct ExecutionTrace {
  int max_occupancy = 0;
  std::size_t states_checked = 0;
};

/// Array of `pairs` register pairs with every dot empty.
inline SparseState empty_array(int n, int pairs = 1) {
  return SparseState::vacuum(2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(pairs));
}

namespace detail {

inline SparseState load_dot(const SparseState& state, std::size_t d) {
  bool any_empty = false;
  bool any_full = false;
  for (const auto& [occ, amp] : state) (occ[d] == 0 ? any_empty : any_full) = true;
  if (!any_empty) return state;
  if (any_full) throw Error(ErrorKind::InvalidSchedule, "load on a dot that is occupied in some branches only");
  SparseState::TermMap out;
  for (const auto& [occ, amp] : state) {
    Occupation o = occ;
    o[d] = 1;
    out[std::move(o)] += amp;
  }
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(out));
}

inline void observe(const SparseState& state, ExecutionTrace* trace) {
  if (trace) {
    for (const auto& [occ, amp] : state) {
      for (int v : occ) trace->max_occupancy = std::max(trace->max_occupancy, v);
    }
    ++trace->states_checked;
  }
  require_blockade(state);
}

}  // namespace detail

/// Runs the pulses in order on every register pair of `state`. The blockade
/// rule is asserted after each pulse on each pair.
inline SparseState execute(const PulseSchedule& schedule, const SparseState& state, ExecutionTrace* trace = nullptr) {
  validate(schedule);
  const std::size_t width = schedule.pair_dots();
  if (state.modes() == 0 || state.modes() % width != 0) {
    throw Error(ErrorKind::DotOutOfRange, "array of " + std::to_string(state.modes()) +
                                              " dots is not a whole number of register pairs");
  }
  const std::size_t pairs = state.modes() / width;
  const auto n = static_cast<std::size_t>(schedule.n);

  SparseState s = state;
  detail::observe(s, trace);
  for (const Pulse& p : schedule.pulses) {
    if (std::holds_alternative<pulse::Thermalize>(p)) {
      s = SparseState::vacuum(s.modes(), s.tolerance());
      detail::observe(s, trace);
    } else if (const auto* ip = std::get_if<pulse::InteractionPhase>(&p)) {
      s = interaction_phase(s, ip->kappa_t, ip->lambda, {});
      detail::observe(s, trace);
    } else {
      for (std::size_t pair = 0; pair < pairs; ++pair) {
        const std::size_t base = pair * width;
        if (const auto* load = std::get_if<pulse::Load>(&p)) {
          s = detail::load_dot(s, base + load->dot);
        } else if (const auto* r = std::get_if<pulse::Rabi>(&p)) {
          s = rabi(s, base + r->from, base + r->to, r->theta);
        } else if (const auto* u = std::get_if<pulse::UGate>(&p)) {
          s = apply_basis_phase(s, [&](const Occupation& occ) {
            return u->phases[static_cast<std::size_t>(detail::count_range(occ, base, n))];
          });
        }
        detail::observe(s, trace);
      }
    }
  }
  return s;
}

/// Full dot-array route to the photonic register-pair ancilla: compile,
/// execute on two pairs, Coulomb phase with kappa_t = pi and the intra-register
/// term cancelled, then emission.
inline SparseState prepare_dot_pair(int n, const AmplitudeProfile& profile, double lambda = 0.0,
                                    ExecutionTrace* trace = nullptr) {
  const PulseSchedule schedule = compile_schedule(n, profile);
  SparseState dots = execute(schedule, empty_array(n, 2), trace);
  dots = interaction_phase(dots, std::numbers::pi, lambda, intra_register_corrections(n, lambda));
  return emit_photons(dots, n);
}

// ---------------------------------------------------------------------------
// JSON lines: one {"op": name, "args": [...]} object per pulse.

inline nlohmann::json pulse_to_json(const Pulse& p) {
  using nlohmann::json;
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, pulse::Thermalize>) {
          return {{"op", "thermalize"}, {"args", json::array()}};
        } else if constexpr (std::is_same_v<T, pulse::Load>) {
          return {{"op", "load"}, {"args", {v.dot}}};
        } else if constexpr (std::is_same_v<T, pulse::Rabi>) {
          return {{"op", "rabi"}, {"args", {v.from, v.to, v.theta}}};
        } else if constexpr (std::is_same_v<T, pulse::InteractionPhase>) {
          return {{"op", "interaction_phase"}, {"args", {v.kappa_t, v.lambda}}};
        } else {
          return {{"op", "ugate"}, {"args", v.phases}};
        }
      },
      p);
}

inline Pulse pulse_from_json(const nlohmann::json& j) {
  try {
    const auto op = j.at("op").get<std::string>();
    const auto& args = j.at("args");
    auto expect = [&](std::size_t count) {
      if (args.size() != count) throw Error(ErrorKind::Parse, op + " expects " + std::to_string(count) + " args");
    };
    if (op == "thermalize") {
      expect(0);
      return pulse::Thermalize{};
    }
    if (op == "load") {
      expect(1);
      return pulse::Load{args[0].get<std::size_t>()};
    }
    if (op == "rabi") {
      expect(3);
      return pulse::Rabi{args[0].get<std::size_t>(), args[1].get<std::size_t>(), args[2].get<double>()};
    }
    if (op == "interaction_phase") {
      expect(2);
      return pulse::InteractionPhase{args[0].get<double>(), args[1].get<double>()};
    }
    if (op == "ugate") return pulse::UGate{args.get<std::vector<double>>()};
    throw Error(ErrorKind::Parse, "unknown pulse '" + op + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

/// First line is a header {"n": n}; each further line is one pulse.
inline void write_schedule(std::ostream& os, const PulseSchedule& schedule) {
  os << nlohmann::json{{"n", schedule.n}}.dump() << '\n';
  for (const Pulse& p : schedule.pulses) os << pulse_to_json(p).dump() << '\n';
}

inline PulseSchedule read_schedule(std::istream& is) {
  PulseSchedule s;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
    if (!header) {
      if (!j.contains("n")) throw Error(ErrorKind::Parse, "schedule header {\"n\": ...} missing");
      s.n = j.at("n").get<int>();
      header = true;
      continue;
    }
    s.pulses.push_back(pulse_from_json(j));
  }
  if (!header) throw Error(ErrorKind::Parse, "empty schedule");
  validate(s);
  return s;
}

inline std::string schedule_to_string(const PulseSchedule& schedule) {
  std::ostringstream os;
  write_schedule(os, schedule);
  return os.str();
}

inline PulseSchedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return read_schedule(in);
}

}  // namespace ancilla
