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
#include <numbers>
#include <random>

#include "ancilla/fock.hpp"
#include "ancilla/state_json.hpp"
#include "ancilla/teleport.hpp"
#include "support.hpp"

using namespace ancilla;
using Catch::Matchers::WithinAbs;
namespace ts = testing_support;

namespace {

ts::Matrix bs_matrix(double t) {
  const double r = std::sqrt(1.0 - t * t);
  return {{t, Amplitude{0.0, r}}, {Amplitude{0.0, r}, t}};
}

ts::Matrix to_matrix(const ModeTransform& u) {
  ts::Matrix m(u.size(), std::vector<Amplitude>(u.size()));
  for (std::size_t l = 0; l < u.size(); ++l) {
    for (std::size_t c = 0; c < u.size(); ++c) m[l][c] = u.at(l, c);
  }
  return m;
}

ModeTransform from_matrix(const ts::Matrix& m) {
  ModeTransform u(m.size());
  for (std::size_t l = 0; l < m.size(); ++l) {
    for (std::size_t c = 0; c < m.size(); ++c) u.at(l, c) = m[l][c];
  }
  return u;
}

}  // namespace

TEST_CASE("basis and vacuum states", "[fock]") {
  const SparseState v = SparseState::vacuum(3);
  REQUIRE(v.size() == 1);
  REQUIRE(v.amplitude({0, 0, 0}) == Amplitude{1.0, 0.0});
  REQUIRE(v.photon_number() == 0);
  REQUIRE(SparseState::basis({2, 0, 1}).photon_number() == 3);
}

TEST_CASE("terms below tolerance are pruned", "[fock]") {
  SparseState s(2);
  s.add({1, 0}, 1.0);
  s.add({0, 1}, 1e-13);
  REQUIRE(s.size() == 1);
  s.add({1, 0}, -1.0);
  REQUIRE(s.empty());
}

TEST_CASE("malformed occupations are rejected", "[fock]") {
  SparseState s(2);
  REQUIRE_THROWS_AS(s.add({1, 0, 0}, 1.0), Error);
  REQUIRE_THROWS_AS(s.add({-1, 0}, 1.0), Error);
  REQUIRE_THROWS_AS(s.add({1, 0}, Amplitude{std::nan(""), 0.0}), Error);
  try {
    s.check_mode(5);
    FAIL("expected ModeOutOfRange");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::ModeOutOfRange);
  }
}

TEST_CASE("normalize rejects the zero state", "[fock]") {
  try {
    normalize(SparseState(2));
    FAIL("expected ZeroState");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::ZeroState);
  }
}

TEST_CASE("fidelity ignores global phase but not relative phase", "[fock]") {
  SparseState a(2);
  a.add({1, 0}, std::sqrt(0.5));
  a.add({0, 1}, std::sqrt(0.5));
  REQUIRE_THAT(fidelity(a, scale(a, std::polar(1.0, 1.3))), WithinAbs(1.0, 1e-15));
  SparseState b(2);
  b.add({1, 0}, std::sqrt(0.5));
  b.add({0, 1}, -std::sqrt(0.5));
  REQUIRE_THAT(fidelity(a, b), WithinAbs(0.0, 1e-15));
  REQUIRE_THROWS_AS(fidelity(a, SparseState::vacuum(3)), Error);
}

TEST_CASE("beamsplitter on one photon", "[fock][beamsplitter]") {
  const double t = 0.3;
  const double r = std::sqrt(1 - t * t);
  const SparseState out = apply_beamsplitter(SparseState::basis({1, 0}), 0, 1, t);
  REQUIRE(std::abs(out.amplitude({1, 0}) - Amplitude{t, 0}) < 1e-15);
  REQUIRE(std::abs(out.amplitude({0, 1}) - Amplitude{0, r}) < 1e-15);
}

TEST_CASE("balanced beamsplitter on |1,1> bunches", "[fock][beamsplitter]") {
  // Hand expansion: (T a + iR b)(iR a + T b) at T = R = 1/sqrt2 gives
  // (i/2)(a^2 + b^2), i.e. (i/sqrt2)(|2,0> + |0,2>).
  const SparseState out = apply_beamsplitter(SparseState::basis({1, 1}), 0, 1, std::numbers::sqrt2 / 2);
  REQUIRE(out.size() == 2);
  REQUIRE(std::abs(out.amplitude({2, 0}) - Amplitude{0, std::numbers::sqrt2 / 2}) < 1e-15);
  REQUIRE(std::abs(out.amplitude({0, 2}) - Amplitude{0, std::numbers::sqrt2 / 2}) < 1e-15);
}

TEST_CASE("beamsplitter matches the permanent oracle", "[fock][beamsplitter][oracle]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double t = ut(rng);
    const SparseState in = ts::random_state(3, 5, 3, rng);
    const SparseState out = apply_beamsplitter(in, 2, 0, t);
    const auto expect = ts::permanent_apply(in, {2, 0}, bs_matrix(t));
    REQUIRE(ts::map_distance(expect, out) < 1e-12);
  }
}

TEST_CASE("general mode transform matches the permanent oracle", "[fock][transform][oracle]") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const ts::Matrix u = ts::random_unitary(3, rng);
    const SparseState in = ts::random_state(4, 4, 2, rng);
    const std::size_t modes[] = {3, 1, 0};
    const SparseState out = apply_mode_transform(in, modes, from_matrix(u));
    REQUIRE(ts::map_distance(ts::permanent_apply(in, {3, 1, 0}, u), out) < 1e-12);
  }
}

TEST_CASE("transform validates its arguments", "[fock][transform]") {
  const SparseState s = SparseState::vacuum(3);
  const std::size_t repeated[] = {0, 0};
  REQUIRE_THROWS_AS(apply_mode_transform(s, repeated, ModeTransform(2)), Error);
  const std::size_t two[] = {0, 1};
  REQUIRE_THROWS_AS(apply_mode_transform(s, two, ModeTransform(3)), Error);
  const std::size_t bad[] = {0, 7};
  REQUIRE_THROWS_AS(apply_mode_transform(s, bad, ModeTransform(2)), Error);
  REQUIRE_THROWS_AS(apply_beamsplitter(s, 0, 0, 0.5), Error);
  REQUIRE_THROWS_AS(apply_beamsplitter(s, 0, 1, 1.5), Error);
}

TEST_CASE("Fourier transform small cases", "[fock][qft]") {
  const std::size_t one[] = {0};
  const SparseState s = SparseState::basis({2});
  REQUIRE(fidelity(apply_qft(s, one), s) > 1 - 1e-15);

  const std::size_t two[] = {0, 1};
  const SparseState single = apply_qft(SparseState::basis({1, 0}), two);
  SparseState plus(2);
  plus.add({1, 0}, std::numbers::sqrt2 / 2);
  plus.add({0, 1}, std::numbers::sqrt2 / 2);
  REQUIRE(fidelity(single, plus) > 1 - 1e-15);

  // Two-photon expansion by hand: (a + b)(a - b)/2 = (a^2 - b^2)/2, so
  // |1,1> -> (|2,0> - |0,2>)/sqrt2 up to a global phase.
  SparseState hom(2);
  hom.add({2, 0}, std::numbers::sqrt2 / 2);
  hom.add({0, 2}, -std::numbers::sqrt2 / 2);
  const SparseState pair = apply_qft(SparseState::basis({1, 1}), two);
  REQUIRE(fidelity(pair, hom) > 1 - 1e-14);
  REQUIRE(pair.amplitude({1, 1}) == Amplitude{});
}

TEST_CASE("Fourier transform matrix is unitary and matches the oracle", "[fock][qft][oracle]") {
  std::mt19937_64 rng(13);
  for (std::size_t n = 1; n <= 5; ++n) {
    const ModeTransform u = qft_transform(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        Amplitude dot = 0.0;
        for (std::size_t m = 0; m < n; ++m) dot += u.at(a, m) * std::conj(u.at(b, m));
        REQUIRE(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-14);
      }
    }
    std::vector<std::size_t> modes(n);
    for (std::size_t i = 0; i < n; ++i) modes[i] = i;
    const SparseState in = ts::random_state(n, 4, 2, rng);
    REQUIRE(ts::map_distance(ts::permanent_apply(in, modes, to_matrix(u)), apply_qft(in, modes)) < 1e-12);
    const SparseState back = apply_inverse_qft(apply_qft(in, modes), modes);
    REQUIRE(fidelity(back, in) > 1 - 1e-12);
    REQUIRE(std::abs(inner_product(in, back) - 1.0) < 1e-12);
  }
}

TEST_CASE("property: mode transforms preserve the norm", "[fock][property]") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const SparseState in = ts::random_state(4, 6, 3, rng);
    const SparseState bs = apply_beamsplitter(in, trial % 4, (trial + 1) % 4, ut(rng));
    REQUIRE_THAT(bs.norm(), WithinAbs(1.0, 1e-12));
    const std::size_t modes[] = {0, 2, 3};
    const SparseState mt = apply_mode_transform(in, modes, from_matrix(ts::random_unitary(3, rng)));
    REQUIRE_THAT(mt.norm(), WithinAbs(1.0, 1e-12));
    REQUIRE(mt.photon_number() == in.photon_number());
  }
}

TEST_CASE("property: beamsplitter inverse", "[fock][property]") {
  // The adjoint of the (T, iR) beamsplitter is the (T, -iR) one, reached by
  // conjugating with pi phases on the second mode.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = ut(rng);
    const SparseState in = ts::random_state(2, 5, 3, rng);
    SparseState s = apply_beamsplitter(in, 0, 1, t);
    s = apply_phase(s, 1, std::numbers::pi);
    s = apply_beamsplitter(s, 0, 1, t);
    s = apply_phase(s, 1, std::numbers::pi);
    REQUIRE(std::abs(inner_product(in, s) - 1.0) < 1e-12);
  }
}

TEST_CASE("measurement enumerates outcomes with unit total probability", "[fock][measure]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const SparseState in = ts::random_state(4, 8, 2, rng);
    const std::size_t modes[] = {3, 1};
    const auto outcomes = measure_modes(in, modes);
    double total = 0.0;
    for (const auto& o : outcomes) {
      total += o.probability;
      REQUIRE(o.residual.modes() == 2);
      REQUIRE_THAT(o.residual.norm(), WithinAbs(1.0, 1e-12));
    }
    REQUIRE_THAT(total, WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("measurement residual keeps the unmeasured modes in order", "[fock][measure]") {
  SparseState s(3);
  s.add({1, 0, 2}, std::sqrt(0.25));
  s.add({0, 1, 0}, std::sqrt(0.75));
  const std::size_t modes[] = {1};
  const auto outcomes = measure_modes(s, modes);
  REQUIRE(outcomes.size() == 2);
  REQUIRE(outcomes[0].counts == Occupation{0});
  REQUIRE_THAT(outcomes[0].probability, WithinAbs(0.25, 1e-15));
  REQUIRE(outcomes[0].residual.amplitude({1, 2}) == Amplitude{1.0, 0.0});
  REQUIRE(outcomes[1].residual.amplitude({0, 0}) == Amplitude{1.0, 0.0});
}

TEST_CASE("drop_modes reports stray amplitude", "[fock]") {
  SparseState s(3);
  s.add({1, 0, 0}, 0.8);
  s.add({0, 1, 1}, 0.6);
  const std::size_t modes[] = {2};
  double stray = 0.0;
  const SparseState kept = drop_modes(s, modes, {0}, &stray);
  REQUIRE(kept.modes() == 2);
  REQUIRE(kept.size() == 1);
  REQUIRE_THAT(stray, WithinAbs(0.6, 1e-15));
}

TEST_CASE("register layout", "[fock][layout]") {
  RegisterLayout layout;
  layout.add("x", 3).add("y", 2);
  REQUIRE(layout.total() == 5);
  REQUIRE(layout.mode("y", 1) == 4);
  REQUIRE(layout.modes("x") == std::vector<std::size_t>{0, 1, 2});
  REQUIRE_THROWS_AS(layout.mode("x", 3), Error);
  REQUIRE_THROWS_AS(layout.mode("z", 0), Error);
}

TEST_CASE("state JSON round trip is exact and sorted", "[fock][json]") {
  std::mt19937_64 rng(3);
  const SparseState s = ts::random_state(3, 6, 2, rng);
  const nlohmann::json j = state_to_json(s);
  const SparseState back = state_from_json(nlohmann::json::parse(j.dump()));
  REQUIRE(back.terms() == s.terms());
  for (std::size_t i = 1; i < j["terms"].size(); ++i) {
    REQUIRE(j["terms"][i - 1]["occ"].get<Occupation>() < j["terms"][i]["occ"].get<Occupation>());
  }
  nlohmann::json extra = j;
  extra["report"] = {{"fidelity", 1.0}};
  REQUIRE(state_from_json(extra).terms() == s.terms());
  try {
    state_from_json(nlohmann::json{{"modes", 2}});
    FAIL("expected Parse");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::Parse);
  }
}
