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

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "ancilla/error.hpp"
#include "ancilla/pipeline.hpp"

namespace ancilla {

struct GateCountReport {
  int n = 0;
  PhaseMethod method = PhaseMethod::PairwiseGates;
  int conditional_transfer_gates = 0;
  int phase_gates = 0;
  int total_gates = 0;
  int fixed_overhead = 0;  ///< parity method: 2 Toffoli + 1 sign, not part of total_gates
  double per_gate_success = 0.25;
  double success_probability = 0.0;
};

/// Raised when Monte Carlo sampling would need more than 1e6 attempts on average.
class InfeasibleParameters : public Error {
 public:
  explicit InfeasibleParameters(double analytic_attempts)
      : Error(ErrorKind::InfeasibleParameters, describe(analytic_attempts)), analytic_(analytic_attempts) {}

  double analytic_attempts() const noexcept { return analytic_; }

 private:
  static std::string describe(double v) {
    std::ostringstream os;
    os.precision(17);
    os << "expected attempts " << v << " exceed the sampling limit; analytic value reported";
    return os.str();
  }

  double analytic_;
};

namespace detail {

inline void require_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "per-gate success must lie in (0, 1]");
}

}  // namespace detail

inline GateCountReport gate_counts(int n, PhaseMethod method, double per_gate_success = 0.25) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "n must be >= 1");
  GateCountReport r;
  r.n = n;
  r.method = method;
  r.conditional_transfer_gates = 2 * (n - 1);
  switch (method) {
    case PhaseMethod::PairwiseGates: r.phase_gates = n * n; break;
    case PhaseMethod::ParityAncilla:
      r.phase_gates = 4 * n;
      r.fixed_overhead = 3;
      break;
    case PhaseMethod::DirectOracle: r.phase_gates = 0; break;
  }
  r.total_gates = r.conditional_transfer_gates + r.phase_gates;
  r.per_gate_success = per_gate_success;
  r.success_probability = std::pow(per_gate_success, r.total_gates);
  return r;
}

inline double success_probability(int n, PhaseMethod method, double per_gate_success = 0.25) {
  detail::require_probability(per_gate_success);
  return gate_counts(n, method, per_gate_success).success_probability;
}

struct FailureScaling {
  double klm = 0.0;            ///< 2/(n+1)
  double high_fidelity = 0.0;  ///< 4/(n+1)^2
};

inline FailureScaling failure_scaling(int n) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "n must be >= 1");
  const double m = n + 1.0;
  return {2.0 / m, 4.0 / (m * m)};
}

struct AttemptEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  double analytic = 0.0;  ///< 1 / p^G
  long long trials = 0;
};

inline constexpr double kMaxMeanAttempts = 1e6;

/// Each attempt runs the G gates of the pipeline in order, each succeeding
/// independently with probability p, and stops at the first failure. The
/// number of attempts up to the first full success is averaged over `trials`.
inline AttemptEstimate expected_attempts(int n, PhaseMethod method, double p, long long trials, std::uint64_t seed) {
  detail::require_probability(p);
  if (trials < 1) throw Error(ErrorKind::OutOfRange, "trials must be >= 1");
  const GateCountReport counts = gate_counts(n, method, p);
  AttemptEstimate est;
  est.trials = trials;
  est.analytic = 1.0 / counts.success_probability;
  if (!(est.analytic <= kMaxMeanAttempts)) throw InfeasibleParameters(est.analytic);

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution gate(p);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    double attempts = 0.0;
    bool done = false;
    while (!done) {
      attempts += 1.0;
      done = true;
      for (int g = 0; g < counts.total_gates && done; ++g) done = gate(rng);
    }
    sum += attempts;
    sum_sq += attempts * attempts;
  }
  const double count = static_cast<double>(trials);
  est.mean = sum / count;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - count * est.mean * est.mean) / (count - 1.0)) : 0.0;
  est.standard_error = std::sqrt(var / count);
  return est;
}

}  // namespace ancilla
