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

// Probabilistic teleportation of a single-rail qubit through the
// single-register ancilla, and the controlled-sign gate obtained by teleporting
// two qubits through the entangled register pair.
//
// Protocol: Fourier transform over the n+1 modes (q, x_1..x_n), count photons
// on all of them. A total of k photons with 1 <= k <= n leaves the qubit in
// y_k up to an outcome-dependent phase; k = 0 and k = n+1 are failures. All
// outcomes are enumerated exactly.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "ancilla/fock.hpp"
#include "ancilla/pipeline.hpp"

namespace ancilla {

/// alpha |0 photons> + beta |1 photon> in a single mode.
struct InputQubit {
  Amplitude alpha{1.0, 0.0};
  Amplitude beta{0.0, 0.0};

  static InputQubit make(Amplitude alpha, Amplitude beta) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > 1e-12) throw Error(ErrorKind::OutOfRange, "qubit amplitudes are not normalized");
    return {alpha, beta};
  }

  /// Rescales arbitrary (not both zero) amplitudes to a unit vector.
  static InputQubit normalized(Amplitude alpha, Amplitude beta) {
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(norm > 0.0)) throw Error(ErrorKind::ZeroState, "qubit with zero amplitudes");
    return {alpha / norm, beta / norm};
  }

  SparseState state() const {
    SparseState s(1);
    s.add({0}, alpha);
    s.add({1}, beta);
    return s;
  }
};

inline double qubit_fidelity(const InputQubit& a, const InputQubit& b) {
  return std::clamp(std::norm(std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta), 0.0, 1.0);
}

/// creation(l) -> N^(-1/2) sum_m exp(2 pi i l m / N) creation(m).
inline ModeTransform qft_transform(std::size_t size) {
  if (size == 0) throw Error(ErrorKind::ModeOutOfRange, "Fourier transform over zero modes");
  ModeTransform u(size);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (std::size_t l = 0; l < size; ++l) {
    for (std::size_t m = 0; m < size; ++m) {
      // l*m reduced mod N before scaling.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((l * m) % size) / static_cast<double>(size);
      u.at(l, m) = std::polar(scale, angle);
    }
  }
  return u;
}

inline SparseState apply_qft(const SparseState& state, std::span<const std::size_t> modes) {
  return apply_mode_transform(state, modes, qft_transform(modes.size()));
}

inline SparseState apply_inverse_qft(const SparseState& state, std::span<const std::size_t> modes) {
  return apply_mode_transform(state, modes, qft_transform(modes.size()).adjoint());
}

/// Output phase correction per measured photon pattern on (q, x_1..x_n).
struct FeedForwardEntry {
  double phase = 0.0;       ///< applied to the one-photon component of the output
  bool phase_only = true;   ///< false if a pure phase cannot restore the input
};

struct FeedForwardTable {
  int n = 0;
  std::map<Occupation, FeedForwardEntry> entries;

  FeedForwardEntry lookup(const Occupation& counts) const {
    auto it = entries.find(counts);
    return it == entries.end() ? FeedForwardEntry{0.0, false} : it->second;
  }
};

enum class TeleportClass { Success, Failure };

struct TeleportOutcome {
  Occupation counts;    ///< photons per mode on (q, x_1..x_n)
  int k = 0;            ///< total photons counted
  double probability = 0.0;
  TeleportClass classification = TeleportClass::Failure;
  int output_register = 0;  ///< 1-based y mode holding the qubit on success
  InputQubit output;        ///< corrected output on success
  double fidelity = 0.0;    ///< against the input, success only
  bool phase_only = true;
};

struct TeleportReport {
  int n = 0;
  std::vector<TeleportOutcome> outcomes;
  double success_probability = 0.0;
  double failure_probability = 0.0;
  double min_success_fidelity = 1.0;
};

namespace detail {

inline std::vector<std::size_t> iota_modes(std::size_t first, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

inline void require_single_shape(const SparseState& ancilla, int n) {
  const auto size = static_cast<std::size_t>(n);
  if (n < 1 || ancilla.modes() != 2 * size) {
    throw Error(ErrorKind::ShapeMismatch, "ancilla must span 2n modes");
  }
  for (const auto& [occ, amp] : ancilla) {
    const int j = count_ones(occ, 0, n);
    Occupation expect(occ.size());
    write_register_term(expect, 0, size, n, j);
    if (occ != expect) {
      throw Error(ErrorKind::ShapeMismatch, "term " + occupation_string(occ) + " is not of ancilla form");
    }
  }
}

// Amplitudes of y_k = 0 and y_k = 1 in `residual`, where the y register
// starts at `y0`; the other y modes must read 0 before k and 1 after it.
struct ExtractedQubit {
  Amplitude zero{};
  Amplitude one{};
  bool clean = true;
};

inline bool y_pattern_matches(const Occupation& occ, std::size_t y0, int n, int k) {
  for (int i = 1; i <= n; ++i) {
    if (i == k) continue;
    const int expect = i < k ? 0 : 1;
    if (occ[y0 + static_cast<std::size_t>(i) - 1] != expect) return false;
  }
  return occ[y0 + static_cast<std::size_t>(k) - 1] <= 1;
}

inline ExtractedQubit extract_output(const SparseState& residual, std::size_t y0, int n, int k) {
  ExtractedQubit q;
  for (const auto& [occ, amp] : residual) {
    if (!y_pattern_matches(occ, y0, n, k)) {
      q.clean = false;
      continue;
    }
    (occ[y0 + static_cast<std::size_t>(k) - 1] == 0 ? q.zero : q.one) += amp;
  }
  return q;
}

inline bool is_success(int k, int n) { return k >= 1 && k <= n; }

inline int total(const Occupation& counts) {
  int t = 0;
  for (int c : counts) t += c;
  return t;
}

}  // namespace detail

/// Determines the output phase for every success pattern from a reference
/// qubit (|0> + |1>)/sqrt2 sent through the constant-profile ancilla. The
/// phase does not depend on the profile as long as f(j) > 0.
inline FeedForwardTable calibrate_feed_forward(int n) {
  const SparseState ancilla = direct_oracle_single(n, AmplitudeProfile::constant(n));
  const InputQubit reference = InputQubit::normalized(1.0, 1.0);
  const SparseState joint = tensor(reference.state(), ancilla);
  const auto measured = detail::iota_modes(0, static_cast<std::size_t>(n) + 1);
  const SparseState mixed = apply_qft(joint, measured);

  FeedForwardTable table;
  table.n = n;
  for (const auto& outcome : measure_modes(mixed, measured)) {
    const int k = detail::total(outcome.counts);
    if (!detail::is_success(k, n)) continue;
    const auto q = detail::extract_output(outcome.residual, 0, n, k);
    FeedForwardEntry entry;
    const double a0 = std::abs(q.zero);
    const double a1 = std::abs(q.one);
    if (a0 > 1e-9 && a1 > 1e-9) {
      entry.phase = std::arg(q.zero) - std::arg(q.one);
      entry.phase_only = q.clean && std::abs(a0 - a1) <= 1e-9;
    } else {
      entry.phase_only = false;
    }
    table.entries.emplace(outcome.counts, entry);
  }
  return table;
}

inline TeleportReport teleport(const InputQubit& qubit, const SparseState& ancilla, int n,
                               const FeedForwardTable& table) {
  detail::require_single_shape(ancilla, n);
  if (table.n != n) throw Error(ErrorKind::ShapeMismatch, "feed-forward table built for another n");
  const SparseState joint = tensor(qubit.state(), ancilla);
  const auto measured = detail::iota_modes(0, static_cast<std::size_t>(n) + 1);
  const SparseState mixed = apply_qft(joint, measured);

  TeleportReport report;
  report.n = n;
  for (auto& outcome : measure_modes(mixed, measured)) {
    TeleportOutcome row;
    row.counts = outcome.counts;
    row.k = detail::total(outcome.counts);
    row.probability = outcome.probability;
    if (!detail::is_success(row.k, n)) {
      row.classification = TeleportClass::Failure;
      report.failure_probability += row.probability;
      report.outcomes.push_back(std::move(row));
      continue;
    }
    row.classification = TeleportClass::Success;
    row.output_register = row.k;
    const auto q = detail::extract_output(outcome.residual, 0, n, row.k);
    const FeedForwardEntry fix = table.lookup(outcome.counts);
    row.phase_only = fix.phase_only && q.clean;
    const Amplitude corrected_one = q.one * std::polar(1.0, fix.phase);
    const double norm = std::sqrt(std::norm(q.zero) + std::norm(corrected_one));
    row.output = norm > 0.0 ? InputQubit{q.zero / norm, corrected_one / norm} : InputQubit{0.0, 0.0};
    row.fidelity = qubit_fidelity(qubit, row.output);
    report.success_probability += row.probability;
    report.min_success_fidelity = std::min(report.min_success_fidelity, row.fidelity);
    report.outcomes.push_back(std::move(row));
  }
  return report;
}

inline TeleportReport teleport(const InputQubit& qubit, const SparseState& ancilla, int n) {
  return teleport(qubit, ancilla, n, calibrate_feed_forward(n));
}

// ---------------------------------------------------------------------------
// Controlled sign by double teleportation.

struct CzOutcome {
  Occupation counts;        ///< first teleport pattern
  Occupation counts_prime;  ///< second teleport pattern
  int k = 0;
  int k_prime = 0;
  double probability = 0.0;
  double fidelity = 0.0;
  SparseState output{2};    ///< corrected two-qubit state over (y_k, y'_k')
};

struct CzReport {
  int n = 0;
  double success_probability = 0.0;
  double failure_probability = 0.0;
  double min_fidelity = 1.0;
  std::vector<CzOutcome> successes;
  std::optional<SparseState> output;  ///< first post-selected output, if any
};

/// Two-mode state CZ * (q (x) q').
inline SparseState ideal_cz(const InputQubit& q, const InputQubit& qp) {
  SparseState s(2);
  s.add({0, 0}, q.alpha * qp.alpha);
  s.add({0, 1}, q.alpha * qp.beta);
  s.add({1, 0}, q.beta * qp.alpha);
  s.add({1, 1}, -q.beta * qp.beta);
  return s;
}

/// Teleports q through (x, y) and q' through (x', y') of the entangled pair.
/// Besides the per-teleport phase, an outcome-dependent Z^(k') on the first
/// output and Z^(k) on the second removes the cross terms of (-1)^(j j').
inline CzReport cz_via_double_teleportation(const InputQubit& q, const InputQubit& qp,
                                            const SparseState& ancilla_pair, int n,
                                            const FeedForwardTable& table) {
  if (n < 1 || !has_pair_shape(ancilla_pair, n)) {
    throw Error(ErrorKind::ShapeMismatch, "ancilla must be a register pair of the expected form");
  }
  if (table.n != n) throw Error(ErrorKind::ShapeMismatch, "feed-forward table built for another n");
  const auto size = static_cast<std::size_t>(n);

  // Modes: q, q', x, y, x', y'.
  const SparseState joint = tensor(tensor(q.state(), qp.state()), ancilla_pair);
  std::vector<std::size_t> first{0};
  for (std::size_t i = 0; i < size; ++i) first.push_back(2 + i);
  const SparseState mixed = apply_qft(joint, first);

  const SparseState expected = ideal_cz(q, qp);
  CzReport report;
  report.n = n;

  // Residual after the first measurement: q', y, x', y'.
  std::vector<std::size_t> second{0};
  for (std::size_t i = 0; i < size; ++i) second.push_back(1 + size + i);

  for (const auto& o1 : measure_modes(mixed, first)) {
    const int k = detail::total(o1.counts);
    if (!detail::is_success(k, n)) {
      report.failure_probability += o1.probability;
      continue;
    }
    const SparseState mixed2 = apply_qft(o1.residual, second);
    // Residual after the second measurement: y, y'.
    for (const auto& o2 : measure_modes(mixed2, second)) {
      const double p = o1.probability * o2.probability;
      const int kp = detail::total(o2.counts);
      if (!detail::is_success(kp, n)) {
        report.failure_probability += p;
        continue;
      }
      const double phase1 = table.lookup(o1.counts).phase + std::numbers::pi * (kp % 2);
      const double phase2 = table.lookup(o2.counts).phase + std::numbers::pi * (k % 2);
      SparseState::TermMap terms;
      for (const auto& [occ, amp] : o2.residual) {
        if (!detail::y_pattern_matches(occ, 0, n, k) || !detail::y_pattern_matches(occ, size, n, kp)) continue;
        const int b = occ[static_cast<std::size_t>(k) - 1];
        const int bp = occ[size + static_cast<std::size_t>(kp) - 1];
        terms[{b, bp}] += amp * std::polar(1.0, b * phase1 + bp * phase2);
      }
      CzOutcome row;
      row.counts = o1.counts;
      row.counts_prime = o2.counts;
      row.k = k;
      row.k_prime = kp;
      row.probability = p;
      row.output = SparseState::from_terms(2, kDefaultTolerance, std::move(terms));
      row.fidelity = row.output.empty() ? 0.0 : fidelity(normalize(row.output), expected);
      if (!row.output.empty()) row.output = normalize(row.output);
      report.success_probability += p;
      report.min_fidelity = std::min(report.min_fidelity, row.fidelity);
      if (!report.output) report.output = row.output;
      report.successes.push_back(std::move(row));
    }
  }
  return report;
}

inline CzReport cz_via_double_teleportation(const InputQubit& q, const InputQubit& qp,
                                            const SparseState& ancilla_pair, int n) {
  return cz_via_double_teleportation(q, qp, ancilla_pair, n, calibrate_feed_forward(n));
}

}  // namespace ancilla
