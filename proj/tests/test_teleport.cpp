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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ancilla/teleport.hpp"
#include "support.hpp"

using namespace ancilla;
using Catch::Matchers::WithinAbs;
namespace ts = testing_support;

namespace {

InputQubit random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return InputQubit::normalized({g(rng), g(rng)}, {g(rng), g(rng)});
}

SparseState single(int n) { return direct_oracle_single(n, AmplitudeProfile::constant(n)); }

}  // namespace

TEST_CASE("input qubit validation", "[teleport]") {
  REQUIRE_NOTHROW(InputQubit::make(0.6, 0.8));
  REQUIRE_THROWS_AS(InputQubit::make(1.0, 1.0), Error);
  REQUIRE_THROWS_AS(InputQubit::normalized(0.0, 0.0), Error);
}

TEST_CASE("outcomes are complete and classified by photon count", "[teleport]") {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 4; ++n) {
    const TeleportReport r = teleport(random_qubit(rng), single(n), n);
    double total = 0.0;
    for (const auto& o : r.outcomes) {
      total += o.probability;
      const bool success = o.k >= 1 && o.k <= n;
      REQUIRE((o.classification == TeleportClass::Success) == success);
      if (success) REQUIRE(o.output_register == o.k);
    }
    REQUIRE_THAT(total, WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(r.success_probability + r.failure_probability, WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("vacuum input fails with probability f(0)^2", "[teleport]") {
  for (int n = 1; n <= 4; ++n) {
    const TeleportReport r = teleport(InputQubit{1.0, 0.0}, single(n), n);
    REQUIRE_THAT(r.failure_probability, WithinAbs(1.0 / (n + 1), 1e-12));
  }
}

TEST_CASE("failure probability follows |a|^2 f(0)^2 + |b|^2 f(n)^2", "[teleport]") {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 3; ++n) {
    const AmplitudeProfile p(ts::random_weights(n, rng));
    const InputQubit q = random_qubit(rng);
    const TeleportReport r = teleport(q, direct_oracle_single(n, p), n);
    const double expect = std::norm(q.alpha) * p[0] * p[0] + std::norm(q.beta) * p[n] * p[n];
    REQUIRE_THAT(r.failure_probability, WithinAbs(expect, 1e-12));
  }
}

TEST_CASE("n=1 balanced input fails half the time", "[teleport]") {
  const TeleportReport r = teleport(InputQubit::normalized(1.0, 1.0), single(1), 1);
  REQUIRE_THAT(r.failure_probability, WithinAbs(0.5, 1e-12));
}

TEST_CASE("n=3 constant: failure 1/4, perfect successes", "[teleport]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const TeleportReport r = teleport(random_qubit(rng), single(3), 3);
    REQUIRE_THAT(r.failure_probability, WithinAbs(0.25, 1e-12));
    REQUIRE(r.min_success_fidelity >= 1 - 1e-10);
  }
}

TEST_CASE("property: success branches reproduce random inputs", "[teleport][property]") {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 3; ++n) {
    const FeedForwardTable table = calibrate_feed_forward(n);
    for (const auto& [counts, entry] : table.entries) REQUIRE(entry.phase_only);
    for (int trial = 0; trial < 20; ++trial) {
      const InputQubit q = random_qubit(rng);
      const TeleportReport r = teleport(q, single(n), n, table);
      for (const auto& o : r.outcomes) {
        if (o.classification == TeleportClass::Success) REQUIRE(o.fidelity >= 1 - 1e-10);
      }
    }
  }
}

TEST_CASE("averaged over basis inputs, failure is 1/(n+1)", "[teleport]") {
  for (int n = 1; n <= 4; ++n) {
    const double f0 = teleport(InputQubit{1.0, 0.0}, single(n), n).failure_probability;
    const double f1 = teleport(InputQubit{0.0, 1.0}, single(n), n).failure_probability;
    REQUIRE_THAT(0.5 * (f0 + f1), WithinAbs(1.0 / (n + 1), 1e-12));
  }
}

TEST_CASE("teleport rejects malformed ancillas", "[teleport][errors]") {
  try {
    teleport(InputQubit{1.0, 0.0}, SparseState::vacuum(4), 2);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::ShapeMismatch);
  }
  REQUIRE_THROWS_AS(teleport(InputQubit{1.0, 0.0}, single(2), 3), Error);
  REQUIRE_THROWS_AS(teleport(InputQubit{1.0, 0.0}, single(2), 2, calibrate_feed_forward(3)), Error);
}

TEST_CASE("double teleport on |1>|1> gives -|1,1>", "[teleport][cz]") {
  const SparseState pair = direct_oracle_pair(2, AmplitudeProfile::constant(2));
  const CzReport r = cz_via_double_teleportation(InputQubit{0.0, 1.0}, InputQubit{0.0, 1.0}, pair, 2);
  REQUIRE(r.output.has_value());
  REQUIRE(r.min_fidelity >= 1 - 1e-10);
  SparseState minus(2);
  minus.add({1, 1}, -1.0);
  for (const auto& s : r.successes) REQUIRE(fidelity(s.output, minus) >= 1 - 1e-10);
}

TEST_CASE("controlled sign truth table", "[teleport][cz]") {
  for (int n = 1; n <= 3; ++n) {
    const SparseState pair = direct_oracle_pair(n, AmplitudeProfile::constant(n));
    const FeedForwardTable table = calibrate_feed_forward(n);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const InputQubit qa{a ? 0.0 : 1.0, a ? 1.0 : 0.0};
        const InputQubit qb{b ? 0.0 : 1.0, b ? 1.0 : 0.0};
        const CzReport r = cz_via_double_teleportation(qa, qb, pair, n, table);
        REQUIRE(r.min_fidelity >= 1 - 1e-10);
        REQUIRE_THAT(r.success_probability + r.failure_probability, WithinAbs(1.0, 1e-9));
      }
    }
  }
}

TEST_CASE("controlled sign on random product inputs", "[teleport][cz][property]") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 3; ++n) {
    const SparseState pair = direct_oracle_pair(n, AmplitudeProfile::constant(n));
    const FeedForwardTable table = calibrate_feed_forward(n);
    for (int trial = 0; trial < 4; ++trial) {
      const InputQubit qa = random_qubit(rng);
      const InputQubit qb = random_qubit(rng);
      const CzReport r = cz_via_double_teleportation(qa, qb, pair, n, table);
      REQUIRE(r.min_fidelity >= 1 - 1e-10);
    }
    const InputQubit plus = InputQubit::normalized(1.0, 1.0);
    const CzReport r = cz_via_double_teleportation(plus, plus, pair, n, table);
    const double s = n / (n + 1.0);
    REQUIRE_THAT(r.failure_probability, WithinAbs(1 - s * s, 1e-12));
  }
}

TEST_CASE("n=3 gate failure is 7/16", "[teleport][cz]") {
  const SparseState pair = direct_oracle_pair(3, AmplitudeProfile::constant(3));
  const InputQubit plus = InputQubit::normalized(1.0, 1.0);
  const CzReport r = cz_via_double_teleportation(plus, InputQubit::normalized(1.0, -1.0), pair, 3);
  REQUIRE_THAT(r.failure_probability, WithinAbs(7.0 / 16.0, 1e-12));
}

TEST_CASE("control in |0> leaves the target untouched", "[teleport][cz]") {
  const SparseState pair = direct_oracle_pair(2, AmplitudeProfile::constant(2));
  const InputQubit minus = InputQubit::normalized(1.0, -1.0);
  const CzReport r = cz_via_double_teleportation(InputQubit{1.0, 0.0}, minus, pair, 2);
  SparseState expect(2);
  expect.add({0, 0}, minus.alpha);
  expect.add({0, 1}, minus.beta);
  for (const auto& s : r.successes) REQUIRE(fidelity(s.output, expect) >= 1 - 1e-10);
}

TEST_CASE("double teleport rejects a single-register ancilla", "[teleport][cz][errors]") {
  REQUIRE_THROWS_AS(cz_via_double_teleportation(InputQubit{1.0, 0.0}, InputQubit{1.0, 0.0}, single(2), 2), Error);
}
