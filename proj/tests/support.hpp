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

// Independent reference constructions and seeded generators shared by the
// test binaries. Nothing here calls the library's transform code.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "ancilla/fock.hpp"

namespace testing_support {

using ancilla::Amplitude;
using ancilla::Occupation;
using Matrix = std::vector<std::vector<Amplitude>>;

inline double fact(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

/// Permanent by expansion over permutations (fine for up to ~8 photons).
inline Amplitude permanent(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Amplitude total = 0.0;
  do {
    Amplitude p = 1.0;
    for (std::size_t r = 0; r < n; ++r) p *= m[r][perm[r]];
    total += p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// All occupations of `modes` modes holding exactly `photons` quanta.
inline std::vector<Occupation> compositions(std::size_t modes, int photons) {
  std::vector<Occupation> out;
  Occupation cur(modes, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == modes) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (modes == 0) return out;
  rec(rec, 0, photons);
  return out;
}

/// Output amplitudes of a linear mode transform applied to a Fock basis
/// state, via permanents: a_l^dagger -> sum_m u[l][m] a_m^dagger.
inline std::map<Occupation, Amplitude> permanent_transform(const Occupation& in, const Matrix& u) {
  std::vector<std::size_t> rows;
  for (std::size_t l = 0; l < in.size(); ++l) {
    for (int c = 0; c < in[l]; ++c) rows.push_back(l);
  }
  double in_norm = 1.0;
  for (int c : in) in_norm *= fact(c);
  std::map<Occupation, Amplitude> out;
  for (const Occupation& t : compositions(in.size(), static_cast<int>(rows.size()))) {
    std::vector<std::size_t> cols;
    double out_norm = 1.0;
    for (std::size_t m = 0; m < t.size(); ++m) {
      for (int c = 0; c < t[m]; ++c) cols.push_back(m);
      out_norm *= fact(t[m]);
    }
    Matrix sub(rows.size(), std::vector<Amplitude>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) sub[r][c] = u[rows[r]][cols[c]];
    }
    const Amplitude a = permanent(sub) / std::sqrt(in_norm * out_norm);
    if (std::abs(a) > 1e-14) out[t] = a;
  }
  return out;
}

/// Applies a transform restricted to `modes` of a wider state by permanents.
inline std::map<Occupation, Amplitude> permanent_apply(const ancilla::SparseState& s, const std::vector<std::size_t>& modes,
                                                       const Matrix& u) {
  std::map<Occupation, Amplitude> out;
  for (const auto& [occ, amp] : s) {
    Occupation sub(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) sub[i] = occ[modes[i]];
    for (const auto& [t, a] : permanent_transform(sub, u)) {
      Occupation full = occ;
      for (std::size_t i = 0; i < modes.size(); ++i) full[modes[i]] = t[i];
      out[full] += amp * a;
    }
  }
  return out;
}

inline double map_distance(const std::map<Occupation, Amplitude>& a, const ancilla::SparseState& b) {
  double worst = 0.0;
  for (const auto& [occ, amp] : a) worst = std::max(worst, std::abs(amp - b.amplitude(occ)));
  for (const auto& [occ, amp] : b) {
    auto it = a.find(occ);
    worst = std::max(worst, std::abs(amp - (it == a.end() ? Amplitude{} : it->second)));
  }
  return worst;
}

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
inline Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n, std::vector<Amplitude>(n));
  for (auto& row : m) {
    for (auto& v : row) v = {g(rng), g(rng)};
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t p = 0; p < r; ++p) {
      Amplitude dot = 0.0;
      for (std::size_t c = 0; c < n; ++c) dot += std::conj(m[p][c]) * m[r][c];
      for (std::size_t c = 0; c < n; ++c) m[r][c] -= dot * m[p][c];
    }
    double norm = 0.0;
    for (const auto& v : m[r]) norm += std::norm(v);
    norm = std::sqrt(norm);
    for (auto& v : m[r]) v /= norm;
  }
  return m;
}

/// Random normalized state with up to `terms` basis terms and at most
/// `max_photons` quanta per mode.
inline ancilla::SparseState random_state(std::size_t modes, std::size_t terms, int max_photons, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> occ(0, max_photons);
  std::normal_distribution<double> g;
  ancilla::SparseState s(modes);
  for (std::size_t t = 0; t < terms; ++t) {
    Occupation o(modes);
    for (auto& v : o) v = occ(rng);
    s.add(o, {g(rng), g(rng)});
  }
  return ancilla::normalize(s);
}

/// Random state whose occupancies are 0/1 only.
inline ancilla::SparseState random_binary_state(std::size_t modes, std::size_t terms, std::mt19937_64& rng) {
  return random_state(modes, terms, 1, rng);
}

inline std::vector<double> random_weights(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> f(static_cast<std::size_t>(n) + 1);
  for (auto& v : f) v = u(rng);
  return f;
}

/// Hand-written single-register superposition: sum_j f_j |1^j 0^(n-j)>|0^j 1^(n-j)>.
inline std::map<Occupation, Amplitude> literal_single(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  double norm = 0.0;
  for (double v : f) norm += v * v;
  norm = std::sqrt(norm);
  std::map<Occupation, Amplitude> out;
  for (int j = 0; j <= n; ++j) {
    Occupation o(2 * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < j; ++i) o[static_cast<std::size_t>(i)] = 1;
    for (int i = j; i < n; ++i) o[static_cast<std::size_t>(n + i)] = 1;
    if (f[static_cast<std::size_t>(j)] != 0.0) out[o] = f[static_cast<std::size_t>(j)] / norm;
  }
  return out;
}

/// Register pair with the (-1)^(j j') sign, written out term by term.
inline std::map<Occupation, Amplitude> literal_pair(const std::vector<double>& f) {
  const auto single = literal_single(f);
  const std::size_t half = single.begin()->first.size();
  const std::size_t n = half / 2;
  std::map<Occupation, Amplitude> out;
  for (const auto& [a, fa] : single) {
    const int j = std::accumulate(a.begin(), a.begin() + static_cast<long>(n), 0);
    for (const auto& [b, fb] : single) {
      const int jp = std::accumulate(b.begin(), b.begin() + static_cast<long>(n), 0);
      Occupation o = a;
      o.insert(o.end(), b.begin(), b.end());
      out[o] = ((j * jp) % 2 ? -1.0 : 1.0) * fa * fb;
    }
  }
  return out;
}

inline ancilla::SparseState to_state(const std::map<Occupation, Amplitude>& m) {
  ancilla::SparseState s(m.begin()->first.size());
  for (const auto& [o, a] : m) s.add(o, a);
  return s;
}

}  // namespace testing_support
