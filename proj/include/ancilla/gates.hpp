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

// Conditional photon transfer interferometer and logical-level gates used by
// the ancilla preparation pipeline.
//
// The transfer gadget is two beamsplitters of transmission T with a phase
// shifter between them on the source path. With a single photon entering on
// `src` it leaves
//   phi = pi : -|src>
//   phi = 0  : -(1 - 2T^2)|src> + 2iRT|dst>
// so the photon moves to `dst` with probability 4T^2(1 - T^2).

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ancilla/fock.hpp"

namespace ancilla {

/// Beamsplitter coefficients and phase setting of the transfer gadget.
struct TransferSetting {
  double transmission = 0.0;
  double reflection = 1.0;
  double phase = 0.0;  ///< exactly 0 or pi

  static TransferSetting make(double transmission, double phase) {
    if (!(transmission >= 0.0 && transmission <= 1.0)) {
      throw Error(ErrorKind::InvalidCoefficient, "transmission outside [0,1]");
    }
    if (phase != 0.0 && phase != std::numbers::pi) {
      throw Error(ErrorKind::InvalidCoefficient, "gadget phase must be 0 or pi");
    }
    return {transmission, std::sqrt(1.0 - transmission * transmission), phase};
  }

  bool valid() const {
    return transmission >= 0.0 && transmission <= 1.0 &&
           std::abs(transmission * transmission + reflection * reflection - 1.0) <= 1e-12 &&
           (phase == 0.0 || phase == std::numbers::pi);
  }

  /// Probability that a photon on `src` ends up on `dst`.
  double transfer_probability() const {
    return phase == 0.0 ? 4.0 * reflection * reflection * transmission * transmission : 0.0;
  }
};

/// Smaller root of 4T^2(1 - T^2) = P, so T <= 1/sqrt(2) and T -> 0 as P -> 0.
inline TransferSetting transmission_for_probability(double probability, double phase = 0.0) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "transfer probability " + std::to_string(probability));
  }
  const double t2 = 0.5 * (1.0 - std::sqrt(1.0 - probability));
  return TransferSetting::make(std::sqrt(t2), phase);
}

/// The bare interferometer: beamsplitter, phase on the source path,
/// beamsplitter. No phase fixup is applied.
inline SparseState apply_transfer_gadget(const SparseState& state, std::size_t src, std::size_t dst,
                                         const TransferSetting& setting) {
  if (src == dst) throw Error(ErrorKind::ModeOutOfRange, "transfer needs distinct modes");
  if (!setting.valid()) throw Error(ErrorKind::InvalidCoefficient, "invalid transfer setting");
  SparseState s = apply_beamsplitter(state, src, dst, setting.transmission);
  s = apply_phase(s, src, setting.phase);
  return apply_beamsplitter(s, src, dst, setting.transmission);
}

/// Single-mode phases that make both single-photon outputs of the gadget real
/// and non-negative: stay -> +sqrt(1-P), transfer -> +sqrt(P). The same fixup
/// turns the phi = pi output -|src> into +|src>.
inline SparseState apply_transfer_fixup(const SparseState& state, std::size_t src, std::size_t dst) {
  return apply_phase(apply_phase(state, src, std::numbers::pi), dst, -std::numbers::pi / 2);
}

inline SparseState conditional_transfer(const SparseState& state, std::size_t src, std::size_t dst,
                                        const TransferSetting& setting) {
  return apply_transfer_fixup(apply_transfer_gadget(state, src, dst, setting), src, dst);
}

/// The gadget with its phase selected by a control mode: terms with `control`
/// occupied see phi = 0 (transfer with `probability`), all others phi = pi.
/// This is the state-level action of setting phi with a controlled sign gate.
inline SparseState controlled_transfer(const SparseState& state, std::size_t control, std::size_t src,
                                       std::size_t dst, double probability) {
  state.check_mode(control);
  if (control == src || control == dst) throw Error(ErrorKind::ModeOutOfRange, "control overlaps gadget");
  const SparseState on = filter(state, [&](const Occupation& o) { return o[control] > 0; });
  const SparseState off = filter(state, [&](const Occupation& o) { return o[control] == 0; });
  return add(conditional_transfer(on, src, dst, transmission_for_probability(probability, 0.0)),
             conditional_transfer(off, src, dst, transmission_for_probability(probability, std::numbers::pi)));
}

/// Sign flip on terms where every control and the target are occupied.
inline SparseState controlled_sign(const SparseState& state, std::span<const std::size_t> controls,
                                   std::size_t target) {
  state.check_mode(target);
  for (std::size_t c : controls) {
    state.check_mode(c);
    if (c == target) throw Error(ErrorKind::ModeOutOfRange, "control equals target");
  }
  return apply_basis_phase(state, [&](const Occupation& o) {
    if (o[target] == 0) return 0.0;
    for (std::size_t c : controls) {
      if (o[c] == 0) return 0.0;
    }
    return std::numbers::pi;
  });
}

inline SparseState controlled_sign(const SparseState& state, std::size_t control, std::size_t target) {
  const std::size_t controls[] = {control};
  return controlled_sign(state, controls, target);
}

namespace detail {

inline void require_binary(const SparseState& state, std::size_t mode) {
  for (const auto& [occ, amp] : state) {
    if (occ[mode] > 1) {
      throw Error(ErrorKind::NonBinaryTarget,
                  "mode " + std::to_string(mode) + " holds " + std::to_string(occ[mode]) + " quanta");
    }
  }
}

}  // namespace detail

/// Logical NOT on the binary `target` mode for terms where `control` is occupied.
inline SparseState cnot_logical(const SparseState& state, std::size_t control, std::size_t target) {
  state.check_mode(control);
  state.check_mode(target);
  if (control == target) throw Error(ErrorKind::ModeOutOfRange, "control equals target");
  detail::require_binary(state, target);
  SparseState::TermMap out;
  for (const auto& [occ, amp] : state) {
    Occupation key = occ;
    if (key[control] > 0) key[target] = 1 - key[target];
    out[std::move(key)] += amp;
  }
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(out));
}

/// Logical Hadamard on a binary mode: |0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2.
inline SparseState hadamard_logical(const SparseState& state, std::size_t mode) {
  state.check_mode(mode);
  detail::require_binary(state, mode);
  const double h = std::numbers::sqrt2 / 2;
  SparseState::TermMap out;
  for (const auto& [occ, amp] : state) {
    Occupation key = occ;
    const bool one = occ[mode] == 1;
    key[mode] = 0;
    out[key] += amp * h;
    key[mode] = 1;
    out[key] += one ? -amp * h : amp * h;
  }
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(out));
}

/// Toffoli built as H(target) * CCZ * H(target).
inline SparseState toffoli_logical(const SparseState& state, std::size_t c1, std::size_t c2,
                                   std::size_t target) {
  const std::size_t controls[] = {c1, c2};
  SparseState s = hadamard_logical(state, target);
  s = controlled_sign(s, controls, target);
  return hadamard_logical(s, target);
}

}  // namespace ancilla
