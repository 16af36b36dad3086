// Copyright 2026 The latdft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "latdft/selftest/oracles.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace latdft::oracles {
namespace {

std::int64_t mod(std::int64_t v, std::int64_t n) {
  const std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

// Points of L_N in lexicographic (x_2, ..., x_n) order.
std::vector<Coords> ln_points(const Instance& s) {
  std::vector<Coords> out;
  for (const Coords& tail : grid(s.N, s.b.size())) {
    Coords x(s.dimension());
    std::int64_t first = 0;
    for (std::size_t j = 0; j < tail.size(); ++j) {
      x[j + 1] = tail[j];
      first = mod(first + s.b[j] * tail[j], s.N);
    }
    x[0] = first;
    out.push_back(std::move(x));
  }
  return out;
}

std::int64_t inner_mod(const Coords& x, const Coords& z, std::int64_t n) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = mod(acc + mod(x[i] * z[i], n), n);
  return acc;
}

}  // namespace

bool in_ln(const Instance& s, const Coords& x) {
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < s.b.size(); ++j) acc += s.b[j] * x[j + 1];
  return mod(acc - x[0], s.N) == 0;
}

bool in_scaled_dual(const Instance& s, const Coords& y) {
  // Column 1 is (N, 0, ..., 0): its inner product always vanishes mod N.
  for (std::size_t j = 0; j < s.b.size(); ++j) {
    if (mod(s.b[j] * y[0] + y[j + 1], s.N) != 0) return false;
  }
  return true;
}

std::vector<Coords> grid(std::int64_t n, std::size_t dimension) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < dimension; ++i) total *= static_cast<std::size_t>(n);
  std::vector<Coords> out(total, Coords(dimension));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (std::size_t i = dimension; i-- > 0;) {
      out[idx][i] = static_cast<std::int64_t>(r % static_cast<std::size_t>(n));
      r /= static_cast<std::size_t>(n);
    }
  }
  return out;
}

std::int64_t gcd_condition(const Instance& s) {
  std::int64_t c = 1;
  for (auto v : s.b) c += v * v;
  return std::gcd(c, s.N);
}

std::vector<std::int64_t> phi3_candidates(const Instance& s, const Coords& x) {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 0; a < s.N; ++a) {
    Coords y(s.dimension());
    y[0] = mod(x[0] + a, s.N);
    for (std::size_t j = 0; j < s.b.size(); ++j) y[j + 1] = mod(x[j + 1] - s.b[j] * a, s.N);
    if (in_ln(s, y)) out.push_back(a);
  }
  return out;
}

Complex root(std::int64_t k, std::int64_t n) {
  return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(mod(k, n)) /
                             static_cast<double>(n));
}

std::vector<std::vector<Complex>> character_matrix(const Instance& s) {
  const auto pts = ln_points(s);
  const double scale = 1.0 / std::sqrt(static_cast<double>(pts.size()));
  std::vector<std::vector<Complex>> out(pts.size(), std::vector<Complex>(pts.size()));
  for (std::size_t r = 0; r < pts.size(); ++r) {
    for (std::size_t c = 0; c < pts.size(); ++c) out[r][c] = scale * root(inner_mod(pts[r], pts[c], s.N), s.N);
  }
  return out;
}

std::vector<Complex> full_grid_dft_restricted(const Instance& s, const std::vector<Complex>& f) {
  const std::size_t dim = s.dimension();
  const auto n = static_cast<std::size_t>(s.N);
  const auto pts = ln_points(s);
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= n;
  auto flat = [&](const Coords& x) {
    std::size_t idx = 0;
    for (auto c : x) idx = idx * n + static_cast<std::size_t>(c);
    return idx;
  };
  std::vector<Complex> g(total);
  for (std::size_t i = 0; i < pts.size(); ++i) g[flat(pts[i])] = f[i];
  // One-dimensional DFT along every axis in turn.
  std::size_t stride = total;
  for (std::size_t axis = 0; axis < dim; ++axis) {
    stride /= n;
    std::vector<Complex> h(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      const std::size_t k = (idx / stride) % n;
      const std::size_t base = idx - k * stride;
      Complex acc = 0.0;
      for (std::size_t y = 0; y < n; ++y) {
        acc += g[base + y * stride] * root(static_cast<std::int64_t>(k * y), s.N);
      }
      h[idx] = acc;
    }
    g.swap(h);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(pts.size()));
  std::vector<Complex> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = scale * g[flat(pts[i])];
  return out;
}

bool lattice_member(const ExactMatrix& b, const RatVector& v) {
  return is_integral(solve(b, v));
}

Rational cvp_squared_distance(const ExactMatrix& b, const RatVector& u, const IntVector& centre,
                              long bound) {
  const std::size_t n = b.cols();
  std::vector<long> off(n, -bound);
  bool have = false;
  Rational best;
  while (true) {
    RatVector diff = u;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational c(centre[j] + off[j]);
      for (std::size_t r = 0; r < n; ++r) diff[r] -= b(r, j) * c;
    }
    Rational d = 0;
    for (const auto& e : diff) d += e * e;
    if (!have || d < best) {
      best = d;
      have = true;
    }
    std::size_t i = 0;
    while (i < n && off[i] == bound) off[i++] = -bound;
    if (i == n) break;
    ++off[i];
  }
  return best;
}

}  // namespace latdft::oracles
