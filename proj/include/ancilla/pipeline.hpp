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

// Post-selected preparation of the ancilla states
//
//   single register:  sum_j f(j) |1^j 0^(n-j)>_x |0^j 1^(n-j)>_y
//   register pair:    sum_{j,j'} (-1)^(j j') f(j) f(j') (...)_{x,y} (...)_{x',y'}
//
// together with literal constructions of the same states used as oracles.
// Register order is x, y (single) and x, y, x', y' (pair); every register has
// n modes.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "ancilla/fock.hpp"
#include "ancilla/gates.hpp"
#include "ancilla/profile.hpp"

namespace ancilla {

enum class PhaseMethod { PairwiseGates, ParityAncilla, DirectOracle };

inline std::string_view to_string(PhaseMethod m) {
  switch (m) {
    case PhaseMethod::PairwiseGates: return "pairwise";
    case PhaseMethod::ParityAncilla: return "parity";
    case PhaseMethod::DirectOracle: return "direct";
  }
  return "unknown";
}

inline PhaseMethod parse_phase_method(std::string_view name) {
  if (name == "pairwise") return PhaseMethod::PairwiseGates;
  if (name == "parity") return PhaseMethod::ParityAncilla;
  if (name == "direct") return PhaseMethod::DirectOracle;
  throw Error(ErrorKind::Parse, "unknown phase method '" + std::string(name) + "'");
}

/// Elementary gates applied while building a state.
struct GateTally {
  int unconditional_transfers = 0;
  int conditional_transfers = 0;  ///< transfers whose phase is set by a controlled sign
  int controlled_signs = 0;       ///< pairwise x-x' sign gates
  int cnots = 0;                  ///< parity computation and uncomputation
  int toffolis = 0;               ///< fixed overhead of the parity method
  int ancilla_signs = 0;          ///< q_c-controlled sign, fixed overhead of the parity method

  GateTally& operator+=(const GateTally& o) {
    unconditional_transfers += o.unconditional_transfers;
    conditional_transfers += o.conditional_transfers;
    controlled_signs += o.controlled_signs;
    cnots += o.cnots;
    toffolis += o.toffolis;
    ancilla_signs += o.ancilla_signs;
    return *this;
  }
};

struct PreparedState {
  SparseState state;
  GateTally tally;
};

inline RegisterLayout single_register_layout(int n) {
  RegisterLayout layout;
  layout.add("x", static_cast<std::size_t>(n)).add("y", static_cast<std::size_t>(n));
  return layout;
}

inline RegisterLayout pair_layout(int n) {
  RegisterLayout layout;
  const auto size = static_cast<std::size_t>(n);
  layout.add("x", size).add("y", size).add("xp", size).add("yp", size);
  return layout;
}

/// One photon in every mode of the listed registers, vacuum elsewhere.
inline SparseState inject_singles(const RegisterLayout& layout, std::span<const std::string_view> registers) {
  Occupation occ(layout.total(), 0);
  for (std::string_view name : registers) {
    for (std::size_t m : layout.modes(name)) occ[m] = 1;
  }
  return SparseState::basis(std::move(occ));
}

namespace detail {

inline void require_matching_profile(int n, const AmplitudeProfile& profile) {
  if (n < 1) throw Error(ErrorKind::InvalidProfile, "n must be >= 1");
  if (profile.n() != n) {
    throw Error(ErrorKind::InvalidProfile,
                "profile has n=" + std::to_string(profile.n()) + ", expected " + std::to_string(n));
  }
}

// Occupation of one register half for a given j: first j modes of x filled,
// the last n-j modes of y filled.
inline void write_register_term(Occupation& occ, std::size_t x0, std::size_t y0, int n, int j) {
  for (int i = 0; i < n; ++i) {
    occ[x0 + static_cast<std::size_t>(i)] = i < j ? 1 : 0;
    occ[y0 + static_cast<std::size_t>(i)] = i < j ? 0 : 1;
  }
}

inline int count_ones(const Occupation& occ, std::size_t offset, int n) {
  int c = 0;
  for (int i = 0; i < n; ++i) c += occ[offset + static_cast<std::size_t>(i)];
  return c;
}

}  // namespace detail

/// Literal construction of the single-register ancilla. Signed weights are allowed.
inline SparseState direct_oracle_single(int n, const AmplitudeProfile& profile) {
  detail::require_matching_profile(n, profile);
  SparseState::TermMap terms;
  Occupation occ(2 * static_cast<std::size_t>(n));
  for (int j = 0; j <= n; ++j) {
    detail::write_register_term(occ, 0, static_cast<std::size_t>(n), n, j);
    terms[occ] += profile[j];
  }
  return normalize(SparseState::from_terms(occ.size(), kDefaultTolerance, std::move(terms)));
}

/// Literal construction of the register-pair ancilla; `entangled = false`
/// drops the (-1)^(j j') factor, leaving the plain tensor product.
inline SparseState direct_oracle_pair(int n, const AmplitudeProfile& profile, bool entangled = true) {
  detail::require_matching_profile(n, profile);
  const auto size = static_cast<std::size_t>(n);
  SparseState::TermMap terms;
  Occupation occ(4 * size);
  for (int j = 0; j <= n; ++j) {
    detail::write_register_term(occ, 0, size, n, j);
    for (int jp = 0; jp <= n; ++jp) {
      detail::write_register_term(occ, 2 * size, 3 * size, n, jp);
      const double sign = entangled && (j * jp) % 2 == 1 ? -1.0 : 1.0;
      terms[occ] += sign * profile[j] * profile[jp];
    }
  }
  return normalize(SparseState::from_terms(occ.size(), kDefaultTolerance, std::move(terms)));
}

/// Single photons injected into y, then transfers y_k -> x_k with probability
/// P_k. The first transfer is unconditional; transfer k >= 2 acts only on
/// branches where x_{k-1} is occupied.
inline PreparedState build_single_register(int n, const AmplitudeProfile& profile) {
  detail::require_matching_profile(n, profile);
  if (!profile.non_negative()) {
    throw Error(ErrorKind::InvalidProfile, "the transfer pipeline needs non-negative weights");
  }
  const RegisterLayout layout = single_register_layout(n);
  const std::string_view fill[] = {"y"};
  SparseState state = inject_singles(layout, fill);
  const TransferSchedule schedule = schedule_from_profile(profile);

  GateTally tally;
  for (int k = 1; k <= n; ++k) {
    const std::size_t src = layout.mode("y", static_cast<std::size_t>(k - 1));
    const std::size_t dst = layout.mode("x", static_cast<std::size_t>(k - 1));
    if (k == 1) {
      state = conditional_transfer(state, src, dst, transmission_for_probability(schedule(k)));
      ++tally.unconditional_transfers;
    } else {
      const std::size_t control = layout.mode("x", static_cast<std::size_t>(k - 2));
      state = controlled_transfer(state, control, src, dst, schedule(k));
      ++tally.conditional_transfers;
    }
  }
  return {std::move(state), tally};
}

/// True when every term has exactly n quanta in each x/y half, all counts are
/// 0/1, x is a filled prefix and y the complementary suffix.
inline bool has_pair_shape(const SparseState& state, int n) {
  const auto size = static_cast<std::size_t>(n);
  if (state.modes() != 4 * size) return false;
  for (const auto& [occ, amp] : state) {
    for (std::size_t half : {std::size_t{0}, 2 * size}) {
      const int j = detail::count_ones(occ, half, n);
      Occupation expect(occ.begin(), occ.end());
      detail::write_register_term(expect, half, half + size, n, j);
      for (std::size_t m = half; m < half + 2 * size; ++m) {
        if (occ[m] != expect[m]) return false;
      }
    }
  }
  return true;
}

/// Multiplies each term of a register-pair state by (-1)^(j j'), j and j'
/// being the photon counts of x and x'.
inline PreparedState apply_entangling_phase(const SparseState& state, int n, PhaseMethod method) {
  if (n < 1 || !has_pair_shape(state, n)) {
    throw Error(ErrorKind::ShapeMismatch, "expected a product of two single-register ancillas");
  }
  const RegisterLayout layout = pair_layout(n);
  const auto size = static_cast<std::size_t>(n);
  GateTally tally;

  switch (method) {
    case PhaseMethod::DirectOracle: {
      SparseState out = apply_basis_phase(state, [&](const Occupation& occ) {
        const int j = detail::count_ones(occ, 0, n);
        const int jp = detail::count_ones(occ, 2 * size, n);
        return std::numbers::pi * static_cast<double>((j * jp) % 2);
      });
      return {std::move(out), tally};
    }

    case PhaseMethod::PairwiseGates: {
      SparseState out = state;
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t k = 0; k < size; ++k) {
          out = controlled_sign(out, layout.mode("x", i), layout.mode("xp", k));
          ++tally.controlled_signs;
        }
      }
      return {std::move(out), tally};
    }

    case PhaseMethod::ParityAncilla: {
      const std::size_t qa = layout.total();
      const std::size_t qb = qa + 1;
      const std::size_t qc = qa + 2;
      SparseState out = tensor(state, SparseState::vacuum(3));

      auto parities = [&](SparseState s) {
        for (std::size_t i = 0; i < size; ++i) {
          s = cnot_logical(s, layout.mode("x", i), qa);
          ++tally.cnots;
        }
        for (std::size_t i = 0; i < size; ++i) {
          s = cnot_logical(s, layout.mode("xp", i), qb);
          ++tally.cnots;
        }
        return s;
      };

      out = parities(std::move(out));
      out = toffoli_logical(out, qa, qb, qc);
      ++tally.toffolis;
      // j >= 1 exactly when x_1 is occupied, and q_c = 1 requires odd j.
      out = controlled_sign(out, qc, layout.mode("x", 0));
      ++tally.ancilla_signs;
      out = toffoli_logical(out, qa, qb, qc);
      ++tally.toffolis;
      out = parities(std::move(out));

      const std::size_t ancillas[] = {qa, qb, qc};
      double stray = 0.0;
      SparseState reduced = drop_modes(out, ancillas, Occupation{0, 0, 0}, &stray);
      if (stray > 1e-12) {
        throw Error(ErrorKind::AncillaNotDisentangled,
                    "parity ancillas left with amplitude " + std::to_string(stray));
      }
      return {std::move(reduced), tally};
    }
  }
  throw Error(ErrorKind::Parse, "unhandled phase method");
}

/// Two independently prepared registers followed by the entangling phase.
inline PreparedState build_entangled_pair(int n, const AmplitudeProfile& profile, PhaseMethod method) {
  PreparedState first = build_single_register(n, profile);
  PreparedState second = build_single_register(n, profile);
  PreparedState out = apply_entangling_phase(tensor(first.state, second.state), n, method);
  GateTally tally = first.tally;
  tally += second.tally;
  tally += out.tally;
  return {std::move(out.state), tally};
}

}  // namespace ancilla
