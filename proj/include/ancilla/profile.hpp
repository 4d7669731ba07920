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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ancilla/error.hpp"

namespace ancilla {

/// Real weights f(0)..f(n) of the ancilla superposition, stored normalized so
/// that sum_j f(j)^2 = 1.
class AmplitudeProfile {
 public:
  /// `raw` holds n+1 values; they are rescaled to unit 2-norm.
  explicit AmplitudeProfile(std::vector<double> raw) : f_(std::move(raw)) {
    if (f_.size() < 2) throw Error(ErrorKind::InvalidProfile, "profile needs n >= 1 (at least two weights)");
    double sum = 0.0;
    for (double v : f_) {
      if (!std::isfinite(v)) throw Error(ErrorKind::InvalidProfile, "non-finite weight");
      sum += v * v;
    }
    if (!(sum > 0.0)) throw Error(ErrorKind::InvalidProfile, "all weights are zero");
    const double norm = std::sqrt(sum);
    for (double& v : f_) v /= norm;
  }

  /// f(j) = 1 for every j (the original KLM ancilla).
  static AmplitudeProfile constant(int n) {
    check_n(n);
    return AmplitudeProfile(std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0));
  }

  /// All weight on a single j (defaults to j = n, which forces every transfer).
  static AmplitudeProfile delta(int n, int at = -1) {
    check_n(n);
    if (at < 0) at = n;
    if (at > n) throw Error(ErrorKind::InvalidProfile, "delta position beyond n");
    std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);
    f[static_cast<std::size_t>(at)] = 1.0;
    return AmplitudeProfile(std::move(f));
  }

  int n() const noexcept { return static_cast<int>(f_.size()) - 1; }
  double operator[](int j) const { return f_.at(static_cast<std::size_t>(j)); }
  const std::vector<double>& weights() const noexcept { return f_; }

  bool non_negative() const {
    for (double v : f_) {
      if (v < 0.0) return false;
    }
    return true;
  }

 private:
  static void check_n(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidProfile, "n must be >= 1");
  }

  std::vector<double> f_;
};

/// Profile file: {"n": int, "f": [floats]} with raw (unnormalized) weights.
inline AmplitudeProfile profile_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    auto f = j.at("f").get<std::vector<double>>();
    if (n < 1 || f.size() != static_cast<std::size_t>(n) + 1) {
      throw Error(ErrorKind::InvalidProfile, "expected n+1 weights for n=" + std::to_string(n));
    }
    return AmplitudeProfile(std::move(f));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline nlohmann::json profile_to_json(const AmplitudeProfile& profile) {
  return {{"n", profile.n()}, {"f", profile.weights()}};
}

inline AmplitudeProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return profile_from_json(j);
}

/// Conditional transfer probabilities P_1..P_n.
struct TransferSchedule {
  std::vector<double> probabilities;

  int n() const noexcept { return static_cast<int>(probabilities.size()); }

  /// P_k for k = 1..n (1-based, as in the transfer order).
  double operator()(int k) const { return probabilities.at(static_cast<std::size_t>(k - 1)); }

  /// Probability of ending with exactly j transfers: every transfer up to j
  /// succeeded and transfer j+1 (if any) did not.
  std::vector<double> branch_weights() const {
    const int count = n();
    std::vector<double> w(static_cast<std::size_t>(count) + 1);
    double reach = 1.0;
    for (int j = 0; j <= count; ++j) {
      const double next = j < count ? probabilities[static_cast<std::size_t>(j)] : 0.0;
      w[static_cast<std::size_t>(j)] = reach * (1.0 - next);
      reach *= next;
    }
    return w;
  }
};

/// P_k = sum_{j>=k} f(j)^2 / sum_{j>=k-1} f(j)^2, i.e. the probability that
/// mode k of x is filled given that mode k-1 is. An exhausted tail gives 0.
inline TransferSchedule schedule_from_profile(const AmplitudeProfile& profile) {
  const int n = profile.n();
  std::vector<double> tail(static_cast<std::size_t>(n) + 2, 0.0);
  for (int j = n; j >= 0; --j) {
    tail[static_cast<std::size_t>(j)] = tail[static_cast<std::size_t>(j) + 1] + profile[j] * profile[j];
  }
  TransferSchedule schedule;
  schedule.probabilities.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double above = tail[static_cast<std::size_t>(k) - 1];
    const double p = above > 0.0 ? tail[static_cast<std::size_t>(k)] / above : 0.0;
    schedule.probabilities.push_back(std::clamp(p, 0.0, 1.0));
  }
  return schedule;
}

}  // namespace ancilla
