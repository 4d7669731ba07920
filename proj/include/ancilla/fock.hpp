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

// Exact sparse Fock-space states of a fixed set of bosonic modes, and the
// linear-optical primitives acting on them. Every operation is a pure function:
// inputs are never modified and results are fresh values.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ancilla/error.hpp"

namespace ancilla {

using Amplitude = std::complex<double>;

/// Photon (or electron) count per global mode; one Fock basis label.
using Occupation = std::vector<int>;

inline constexpr double kDefaultTolerance = 1e-12;

namespace detail {

inline double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// std::pow(complex, 0) is not guaranteed to be exactly 1 for a zero base.
inline Amplitude ipow(Amplitude base, int exponent) {
  Amplitude r{1.0, 0.0};
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

inline std::string occupation_string(const Occupation& occ) {
  std::string s = "|";
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(occ[i]);
  }
  return s + ">";
}

}  // namespace detail

/// Superposition of Fock basis states over a fixed number of modes.
///
/// Terms are kept in lexicographic order of their occupation vectors, which
/// makes iteration (and every serialized dump) deterministic. Amplitudes whose
/// magnitude falls below `tolerance()` are never stored.
class SparseState {
 public:
  using TermMap = std::map<Occupation, Amplitude>;

  explicit SparseState(std::size_t modes, double tolerance = kDefaultTolerance)
      : modes_(modes), tolerance_(tolerance) {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
      throw Error(ErrorKind::InvalidCoefficient, "tolerance must be positive and finite");
    }
  }

  /// Single basis state with amplitude 1.
  static SparseState basis(Occupation occ, double tolerance = kDefaultTolerance) {
    SparseState s(occ.size(), tolerance);
    s.add(occ, 1.0);
    return s;
  }

  static SparseState vacuum(std::size_t modes, double tolerance = kDefaultTolerance) {
    return basis(Occupation(modes, 0), tolerance);
  }

  /// Builds a state from accumulated terms, dropping those below tolerance.
  static SparseState from_terms(std::size_t modes, double tolerance, TermMap terms) {
    SparseState s(modes, tolerance);
    for (auto it = terms.begin(); it != terms.end();) {
      s.check_key(it->first);
      check_finite(it->second);
      if (std::abs(it->second) < tolerance) {
        it = terms.erase(it);
      } else {
        ++it;
      }
    }
    s.terms_ = std::move(terms);
    return s;
  }

  std::size_t modes() const noexcept { return modes_; }
  double tolerance() const noexcept { return tolerance_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  Amplitude amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Amplitude{} : it->second;
  }

  /// Accumulates `amp` onto the term labelled `occ`.
  void add(const Occupation& occ, Amplitude amp) {
    check_key(occ);
    check_finite(amp);
    Amplitude& slot = terms_[occ];
    slot += amp;
    if (std::abs(slot) < tolerance_) terms_.erase(occ);
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& [occ, amp] : terms_) s += std::norm(amp);
    return s;
  }

  double norm() const { return std::sqrt(norm_squared()); }

  /// Total photon count of every term, or -1 if the terms disagree.
  int photon_number() const {
    int total = -1;
    for (const auto& [occ, amp] : terms_) {
      int t = 0;
      for (int c : occ) t += c;
      if (total < 0) {
        total = t;
      } else if (total != t) {
        return -1;
      }
    }
    return total;
  }

  void check_mode(std::size_t mode) const {
    if (mode >= modes_) {
      throw Error(ErrorKind::ModeOutOfRange,
                  "mode " + std::to_string(mode) + " outside 0.." + std::to_string(modes_));
    }
  }

 private:
  void check_key(const Occupation& occ) const {
    if (occ.size() != modes_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "occupation of length " + std::to_string(occ.size()) + " in a " +
                      std::to_string(modes_) + "-mode state");
    }
    for (int c : occ) {
      if (c < 0) throw Error(ErrorKind::OutOfRange, "negative occupation " + detail::occupation_string(occ));
    }
  }

  static void check_finite(Amplitude amp) {
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      throw Error(ErrorKind::InvalidCoefficient, "non-finite amplitude");
    }
  }

  std::size_t modes_;
  double tolerance_;
  TermMap terms_;
};

/// Contiguous named ranges of global mode indices. Registers are appended in
/// order, so the ranges are disjoint and cover 0..total()-1 by construction.
class RegisterLayout {
 public:
  struct Range {
    std::size_t offset = 0;
    std::size_t size = 0;
  };

  RegisterLayout& add(std::string name, std::size_t size) {
    for (const auto& [existing, range] : registers_) {
      if (existing == name) throw Error(ErrorKind::DimensionMismatch, "duplicate register " + name);
    }
    registers_.emplace_back(std::move(name), Range{total_, size});
    total_ += size;
    return *this;
  }

  std::size_t total() const noexcept { return total_; }

  bool contains(std::string_view name) const {
    return std::any_of(registers_.begin(), registers_.end(),
                       [&](const auto& r) { return r.first == name; });
  }

  Range range(std::string_view name) const {
    for (const auto& [existing, range] : registers_) {
      if (existing == name) return range;
    }
    throw Error(ErrorKind::ModeOutOfRange, "unknown register " + std::string(name));
  }

  /// Global index of mode `index` (0-based) inside register `name`.
  std::size_t mode(std::string_view name, std::size_t index) const {
    Range r = range(name);
    if (index >= r.size) {
      throw Error(ErrorKind::ModeOutOfRange, std::string(name) + "[" + std::to_string(index) + "]");
    }
    return r.offset + index;
  }

  std::vector<std::size_t> modes(std::string_view name) const {
    Range r = range(name);
    std::vector<std::size_t> out(r.size);
    for (std::size_t i = 0; i < r.size; ++i) out[i] = r.offset + i;
    return out;
  }

  const std::vector<std::pair<std::string, Range>>& registers() const noexcept { return registers_; }

 private:
  std::vector<std::pair<std::string, Range>> registers_;
  std::size_t total_ = 0;
};

/// Square matrix describing a passive linear-optical transform on N modes:
/// the creation operator of input l maps to sum_m at(l, m) * creation(m).
class ModeTransform {
 public:
  explicit ModeTransform(std::size_t size) : size_(size), entries_(size * size) {}

  std::size_t size() const noexcept { return size_; }
  Amplitude& at(std::size_t l, std::size_t m) { return entries_[l * size_ + m]; }
  Amplitude at(std::size_t l, std::size_t m) const { return entries_[l * size_ + m]; }

  ModeTransform adjoint() const {
    ModeTransform out(size_);
    for (std::size_t l = 0; l < size_; ++l) {
      for (std::size_t m = 0; m < size_; ++m) out.at(l, m) = std::conj(at(m, l));
    }
    return out;
  }

 private:
  std::size_t size_;
  std::vector<Amplitude> entries_;
};

// ---------------------------------------------------------------------------
// Scalar functionals.

inline Amplitude inner_product(const SparseState& a, const SparseState& b) {
  if (a.modes() != b.modes()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(a.modes()) + " vs " + std::to_string(b.modes()) + " modes");
  }
  const SparseState& small = a.size() <= b.size() ? a : b;
  const SparseState& large = a.size() <= b.size() ? b : a;
  Amplitude sum{};
  for (const auto& [occ, amp] : small) {
    auto it = large.terms().find(occ);
    if (it == large.terms().end()) continue;
    sum += (&small == &a) ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return sum;
}

/// |<a|b>|^2, clamped to [0, 1]. Both arguments are expected to be normalized.
inline double fidelity(const SparseState& a, const SparseState& b) {
  return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

inline SparseState normalize(const SparseState& state) {
  const double n = state.norm();
  if (state.empty() || n < state.tolerance()) {
    throw Error(ErrorKind::ZeroState, "cannot normalize a state with no amplitude above tolerance");
  }
  SparseState::TermMap terms = state.terms();
  for (auto& [occ, amp] : terms) amp /= n;
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(terms));
}

inline SparseState scale(const SparseState& state, Amplitude factor) {
  SparseState::TermMap terms = state.terms();
  for (auto& [occ, amp] : terms) amp *= factor;
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(terms));
}

/// a + b (same mode count); used to recombine branches of conditional operations.
inline SparseState add(const SparseState& a, const SparseState& b) {
  if (a.modes() != b.modes()) throw Error(ErrorKind::DimensionMismatch, "adding states of different size");
  SparseState::TermMap terms = a.terms();
  for (const auto& [occ, amp] : b) terms[occ] += amp;
  return SparseState::from_terms(a.modes(), std::min(a.tolerance(), b.tolerance()), std::move(terms));
}

/// Modes of `a` followed by modes of `b`.
inline SparseState tensor(const SparseState& a, const SparseState& b) {
  SparseState::TermMap terms;
  for (const auto& [oa, aa] : a) {
    for (const auto& [ob, ab] : b) {
      Occupation occ = oa;
      occ.insert(occ.end(), ob.begin(), ob.end());
      terms[std::move(occ)] += aa * ab;
    }
  }
  return SparseState::from_terms(a.modes() + b.modes(), std::min(a.tolerance(), b.tolerance()),
                                 std::move(terms));
}

/// Keeps only the terms for which `keep(occ)` holds (unnormalized projection).
inline SparseState filter(const SparseState& state, const std::function<bool(const Occupation&)>& keep) {
  SparseState::TermMap terms;
  for (const auto& [occ, amp] : state) {
    if (keep(occ)) terms.emplace(occ, amp);
  }
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Diagonal operations.

inline SparseState apply_basis_phase(const SparseState& state,
                                     const std::function<double(const Occupation&)>& phase_fn) {
  SparseState::TermMap terms = state.terms();
  for (auto& [occ, amp] : terms) amp *= std::polar(1.0, phase_fn(occ));
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(terms));
}

/// Phase shifter: creation operator on `mode` picks up exp(i*phi), so each
/// term gains exp(i * phi * count(mode)).
inline SparseState apply_phase(const SparseState& state, std::size_t mode, double phi) {
  state.check_mode(mode);
  return apply_basis_phase(state, [&](const Occupation& occ) { return phi * occ[mode]; });
}

// ---------------------------------------------------------------------------
// Mode-mixing operations.

/// Lossless beamsplitter acting in place on modes (m1, m2):
///   a1^dag -> T a1^dag + iR a2^dag,   a2^dag -> iR a1^dag + T a2^dag,
/// with R = sqrt(1 - T^2). Multi-photon terms are expanded exactly.
inline SparseState apply_beamsplitter(const SparseState& state, std::size_t m1, std::size_t m2, double t) {
  state.check_mode(m1);
  state.check_mode(m2);
  if (m1 == m2) throw Error(ErrorKind::ModeOutOfRange, "beamsplitter needs two distinct modes");
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::InvalidCoefficient, "transmission " + std::to_string(t) + " outside [0,1]");
  }
  const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
  const Amplitude T{t, 0.0};
  const Amplitude iR{0.0, r};

  SparseState::TermMap out;
  for (const auto& [occ, amp] : state) {
    const int n1 = occ[m1];
    const int n2 = occ[m2];
    const int total = n1 + n2;
    const double in_norm = 1.0 / std::sqrt(detail::factorial(n1) * detail::factorial(n2));
    Occupation key = occ;
    for (int k = 0; k <= n1; ++k) {
      // (T a1 + iR a2)^n1 -> a1^k a2^(n1-k)
      const Amplitude c1 = detail::binomial(n1, k) * detail::ipow(T, k) * detail::ipow(iR, n1 - k);
      for (int l = 0; l <= n2; ++l) {
        // (iR a1 + T a2)^n2 -> a1^l a2^(n2-l)
        const Amplitude c2 = detail::binomial(n2, l) * detail::ipow(iR, l) * detail::ipow(T, n2 - l);
        const int p = k + l;
        const int q = total - p;
        key[m1] = p;
        key[m2] = q;
        out[key] += amp * in_norm * c1 * c2 * std::sqrt(detail::factorial(p) * detail::factorial(q));
      }
    }
  }
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(out));
}

/// General passive transform on an ordered list of modes. Creation operator on
/// modes[l] maps to sum_m u.at(l, m) * creation(modes[m]); each distinct input
/// pattern on those modes is expanded once and reused.
inline SparseState apply_mode_transform(const SparseState& state, std::span<const std::size_t> modes,
                                        const ModeTransform& u) {
  const std::size_t n = modes.size();
  if (u.size() != n) throw Error(ErrorKind::DimensionMismatch, "transform size does not match mode list");
  for (std::size_t i = 0; i < n; ++i) {
    state.check_mode(modes[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (modes[i] == modes[j]) throw Error(ErrorKind::ModeOutOfRange, "repeated mode in transform");
    }
  }

  using Expansion = std::vector<std::pair<Occupation, Amplitude>>;
  std::map<Occupation, Expansion> memo;
  auto expand = [&](const Occupation& pattern) -> const Expansion& {
    auto found = memo.find(pattern);
    if (found != memo.end()) return found->second;
    std::map<Occupation, Amplitude> poly{{Occupation(n, 0), Amplitude{1.0, 0.0}}};
    double in_fact = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
      in_fact *= detail::factorial(pattern[l]);
      for (int rep = 0; rep < pattern[l]; ++rep) {
        std::map<Occupation, Amplitude> next;
        for (const auto& [mono, c] : poly) {
          for (std::size_t m = 0; m < n; ++m) {
            const Amplitude w = u.at(l, m);
            if (w == Amplitude{}) continue;
            Occupation e = mono;
            ++e[m];
            next[std::move(e)] += c * w;
          }
        }
        poly = std::move(next);
      }
    }
    Expansion ex;
    ex.reserve(poly.size());
    for (auto& [mono, c] : poly) {
      double out_fact = 1.0;
      for (int e : mono) out_fact *= detail::factorial(e);
      ex.emplace_back(mono, c * std::sqrt(out_fact / in_fact));
    }
    return memo.emplace(pattern, std::move(ex)).first->second;
  };

  SparseState::TermMap out;
  Occupation pattern(n);
  for (const auto& [occ, amp] : state) {
    for (std::size_t i = 0; i < n; ++i) pattern[i] = occ[modes[i]];
    Occupation key = occ;
    for (const auto& [mono, c] : expand(pattern)) {
      for (std::size_t i = 0; i < n; ++i) key[modes[i]] = mono[i];
      out[key] += amp * c;
    }
  }
  return SparseState::from_terms(state.modes(), state.tolerance(), std::move(out));
}

// ---------------------------------------------------------------------------
// Measurement.

struct MeasurementOutcome {
  Occupation counts;    ///< photon count per measured mode, in the order requested
  double probability = 0.0;
  SparseState residual; ///< normalized post-measurement state over the unmeasured modes
};

/// Projective photon-number measurement of `modes`. Outcomes are returned in
/// lexicographic order of their counts.
inline std::vector<MeasurementOutcome> measure_modes(const SparseState& state,
                                                     std::span<const std::size_t> modes) {
  std::vector<bool> measured(state.modes(), false);
  for (std::size_t m : modes) {
    state.check_mode(m);
    if (measured[m]) throw Error(ErrorKind::ModeOutOfRange, "mode measured twice");
    measured[m] = true;
  }
  const std::size_t rest = state.modes() - modes.size();

  std::map<Occupation, SparseState::TermMap> groups;
  for (const auto& [occ, amp] : state) {
    Occupation counts(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) counts[i] = occ[modes[i]];
    Occupation residual;
    residual.reserve(rest);
    for (std::size_t m = 0; m < occ.size(); ++m) {
      if (!measured[m]) residual.push_back(occ[m]);
    }
    groups[std::move(counts)][std::move(residual)] += amp;
  }

  const double total = state.norm_squared();
  std::vector<MeasurementOutcome> out;
  out.reserve(groups.size());
  for (auto& [counts, terms] : groups) {
    double p = 0.0;
    for (const auto& [occ, amp] : terms) p += std::norm(amp);
    const double scale = 1.0 / std::sqrt(p);
    for (auto& [occ, amp] : terms) amp *= scale;
    out.push_back({counts, p / total, SparseState::from_terms(rest, state.tolerance(), std::move(terms))});
  }
  return out;
}

/// Discards `modes`, keeping only terms holding exactly `expected` counts on
/// them. The largest amplitude magnitude among discarded terms is reported
/// through `stray_amplitude`.
inline SparseState drop_modes(const SparseState& state, std::span<const std::size_t> modes,
                              const Occupation& expected, double* stray_amplitude = nullptr) {
  std::vector<bool> dropped(state.modes(), false);
  for (std::size_t m : modes) {
    state.check_mode(m);
    dropped[m] = true;
  }
  SparseState::TermMap terms;
  double stray = 0.0;
  for (const auto& [occ, amp] : state) {
    bool match = true;
    for (std::size_t i = 0; i < modes.size(); ++i) match = match && occ[modes[i]] == expected[i];
    if (!match) {
      stray = std::max(stray, std::abs(amp));
      continue;
    }
    Occupation kept;
    for (std::size_t m = 0; m < occ.size(); ++m) {
      if (!dropped[m]) kept.push_back(occ[m]);
    }
    terms[std::move(kept)] += amp;
  }
  if (stray_amplitude) *stray_amplitude = stray;
  return SparseState::from_terms(state.modes() - modes.size(), state.tolerance(), std::move(terms));
}

}  // namespace ancilla
