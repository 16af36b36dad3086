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

#include "latdft/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "latdft/dft.hpp"
#include "latdft/error.hpp"
#include "latdft/intlat.hpp"
#include "latdft/parallel.hpp"
#include "latdft/qcirc.hpp"

namespace latdft::sampler {
namespace {

constexpr double kCarryingAmplitude = 1e-12;

// Calls visit(p) for every integer p with |scale * p| <= radius.
template <class Visit>
void for_each_grid_point(std::size_t dimension, double radius, double scale, std::size_t guard,
                         Visit&& visit) {
  const double rho = radius / scale;
  const auto half = static_cast<std::int64_t>(std::floor(rho));
  double box = 1.0;
  for (std::size_t i = 0; i < dimension; ++i) box *= static_cast<double>(2 * half + 1);
  if (box > static_cast<double>(guard)) {
    throw SizeGuardError("sampler: grid box of " + std::to_string(box) +
                         " points exceeds the guard " + std::to_string(guard));
  }
  const double r2 = rho * rho;
  Point p(dimension, -half);
  while (true) {
    double q = 0.0;
    for (auto c : p) q += static_cast<double>(c) * static_cast<double>(c);
    if (q <= r2) visit(p);
    std::size_t i = dimension;
    while (i > 0) {
      --i;
      if (p[i] < half) {
        ++p[i];
        break;
      }
      p[i] = -half;
      if (i == 0) return;
    }
    if (dimension == 0) return;
  }
}

// Smallest p / 64 with (p / 64)^2 >= n.
Rational sqrt_upper_bound(std::size_t n) {
  auto p = static_cast<long>(std::ceil(64.0 * std::sqrt(static_cast<double>(n))));
  while (p * p < 4096 * static_cast<long>(n)) ++p;
  return Rational(p, 64);
}

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto c : p) {
      h ^= static_cast<std::size_t>(c);
      h *= 1099511628211ull;
    }
    return h;
  }
};

void require_integer_square(const ExactMatrix& b) {
  if (!b.is_square() || b.empty()) throw DimensionError("sampler: basis must be square");
  if (!b.is_integral()) throw ParameterError("sampler: basis must be an integer matrix");
}

}  // namespace

QESSpec gaussian_spec(double s, double grid_radius) {
  if (!(s > 0.0)) throw ParameterError("sampler: Gaussian parameter must be positive");
  if (!(grid_radius > 0.0)) throw ParameterError("sampler: grid radius must be positive");
  const double k = std::numbers::pi / (2.0 * s * s);
  std::ostringstream label;
  label << "gaussian(" << s << ")";
  return {[k](std::span<const double> x) {
            double q = 0.0;
            for (double c : x) q += c * c;
            return Complex(std::exp(-k * q), 0.0);
          },
          grid_radius, label.str()};
}

QESSpec gaussian_fourier_spec(double s, double radius_factor) {
  if (!(s > 0.0)) throw ParameterError("sampler: Gaussian parameter must be positive");
  QESSpec spec = gaussian_spec(1.0 / (2.0 * s), radius_factor / (2.0 * s));
  std::ostringstream label;
  label << "fourier(gaussian(" << s << "))";
  spec.label = label.str();
  return spec;
}

BoundednessReport bounded_check(const QESSpec& f, double s, std::size_t dimension, double scale,
                                std::size_t size_guard) {
  if (!(s > 0.0)) throw ParameterError("sampler: boundedness radius must be positive");
  if (!(scale > 0.0)) throw ParameterError("sampler: grid scale must be positive");
  double total = 0.0, inside = 0.0;
  std::vector<double> x(dimension);
  for_each_grid_point(dimension, f.support_radius, scale, size_guard, [&](const Point& p) {
    double q = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) {
      x[i] = scale * static_cast<double>(p[i]);
      q += x[i] * x[i];
    }
    const double m = std::norm(f.amplitude(x));
    total += m;
    if (q <= s * s) inside += m;
  });
  if (!(total > 0.0)) throw ZeroMassError("sampler: " + f.label + " has zero mass on its support");
  return {s, std::clamp(1.0 - inside / total, 0.0, 1.0)};
}

void DiscreteDistribution::validate(double tolerance) const {
  if (points.size() != probabilities.size()) {
    throw ParameterError("sampler: distribution has mismatched points and probabilities");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw ParameterError("sampler: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw ParameterError("sampler: probabilities sum to " + std::to_string(sum));
  }
  std::unordered_map<Point, int, PointHash> seen;
  for (const auto& p : points) {
    if (!seen.emplace(p, 0).second) throw ParameterError("sampler: repeated support point");
  }
}

double DiscreteDistribution::probability_of(const Point& x) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == x) return probabilities[i];
  }
  return 0.0;
}

DiscreteDistribution brute_force_target(const std::function<Complex(std::span<const double>)>& f,
                                        const ExactMatrix& b, double box_radius,
                                        std::size_t size_guard) {
  require_integer_square(b);
  const std::size_t n = b.rows();
  const ExactMatrix h = intlat::hnf(b).H;
  std::vector<std::vector<std::int64_t>> hh(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) hh[i][j] = to_int64(h(i, j).get_num());
  }
  DiscreteDistribution out;
  std::vector<std::int64_t> z(n), x(n);
  std::vector<double> xd(n);
  double total = 0.0;
  // Coordinates of H z are fixed from the last row upward.
  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    const std::size_t i = level - 1;
    std::int64_t partial = 0;
    for (std::size_t j = i + 1; j < n; ++j) partial += hh[i][j] * z[j];
    const auto d = static_cast<double>(hh[i][i]);
    const auto lo = static_cast<std::int64_t>(std::ceil((-box_radius - static_cast<double>(partial)) / d));
    const auto hi = static_cast<std::int64_t>(std::floor((box_radius - static_cast<double>(partial)) / d));
    for (std::int64_t c = lo; c <= hi; ++c) {
      z[i] = c;
      x[i] = hh[i][i] * c + partial;
      if (i == 0) {
        for (std::size_t k = 0; k < n; ++k) xd[k] = static_cast<double>(x[k]);
        const double m = std::norm(f(xd));
        if (m > 0.0) {
          if (out.points.size() >= size_guard) {
            throw SizeGuardError("sampler: target enumeration exceeds the guard");
          }
          out.points.push_back(x);
          out.probabilities.push_back(m);
          total += m;
        }
      } else {
        rec(level - 1);
      }
    }
  };
  rec(n);
  if (!(total > 0.0)) throw EmptySupportError("sampler: no lattice point in the box carries mass");
  for (double& p : out.probabilities) p /= total;
  return out;
}

PacDistance pac_distance(const DiscreteDistribution& observed, const DiscreteDistribution& target,
                         double match_radius) {
  if (!(match_radius >= 0.0)) throw ParameterError("sampler: match radius must be non-negative");
  auto normalized = [](const DiscreteDistribution& d) {
    double s = 0.0;
    for (double p : d.probabilities) s += p;
    std::vector<double> out(d.probabilities);
    if (s > 0.0) {
      for (double& p : out) p /= s;
    }
    return out;
  };
  std::vector<double> po = normalized(observed), pt = normalized(target);
  const double cell = match_radius > 0.0 ? match_radius : 1.0;
  auto key_of = [&](const Point& p) {
    Point k(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      k[i] = static_cast<std::int64_t>(std::floor(static_cast<double>(p[i]) / cell));
    }
    return k;
  };
  std::unordered_map<Point, std::vector<std::size_t>, PointHash> grid;
  for (std::size_t j = 0; j < target.points.size(); ++j) grid[key_of(target.points[j])].push_back(j);

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < observed.points.size(); ++i) {
    const Point& o = observed.points[i];
    const Point base = key_of(o);
    const std::size_t dim = o.size();
    Point k(dim);
    // Visit the 3^dim neighbouring cells.
    std::size_t combos = 1;
    for (std::size_t d = 0; d < dim; ++d) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t r = c;
      for (std::size_t d = 0; d < dim; ++d) {
        k[d] = base[d] + static_cast<std::int64_t>(r % 3) - 1;
        r /= 3;
      }
      const auto it = grid.find(k);
      if (it == grid.end()) continue;
      for (std::size_t j : it->second) {
        const Point& t = target.points[j];
        if (t.size() != dim) continue;
        double q = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
          const double diff = static_cast<double>(o[d] - t[d]);
          q += diff * diff;
        }
        const double dist = std::sqrt(q);
        if (dist <= match_radius) pairs.emplace_back(dist, i, j);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  double moved = 0.0, displacement = 0.0;
  for (const auto& [dist, i, j] : pairs) {
    const double m = std::min(po[i], pt[j]);
    if (m <= 0.0) continue;
    po[i] -= m;
    pt[j] -= m;
    moved += m;
    displacement = std::max(displacement, dist);
  }
  return {std::clamp(1.0 - moved, 0.0, 1.0), displacement};
}

std::vector<Point> draw_samples(const DiscreteDistribution& d, std::size_t shots,
                                std::uint64_t seed) {
  if (shots == 0) return {};
  if (d.points.empty()) throw EmptySupportError("sampler: cannot draw from an empty distribution");
  std::vector<double> cdf(d.probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) cdf[i] = acc += d.probabilities[i];
  if (!(acc > 0.0)) throw ZeroMassError("sampler: distribution has zero mass");
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.push_back(d.points[static_cast<std::size_t>(it - cdf.begin())]);
  }
  return out;
}

SampleResult sample(const QESSpec& fourier, const ExactMatrix& b, const SampleOptions& options) {
  require_integer_square(b);
  if (options.epsilon <= 0) throw ParameterError("sampler: epsilon must be positive");
  const std::size_t n = b.rows();

  // Step 1: SysNF approximation with parameter eps / (sqrt(n) det B), using
  // a rational upper bound for sqrt(n).
  const Integer det = abs(intlat::determinant(b));
  if (det == 0) throw RankError("sampler: basis is singular");
  const Rational reduction_epsilon = options.epsilon / (sqrt_upper_bound(n) * Rational(det));
  SampleResult res{.certificate = sysnf::reduce_to_sysnf(b, reduction_epsilon, options.reduction),
                   .reduction_epsilon = reduction_epsilon};
  const sysnf::SysNFBasis& basis = res.certificate.basis;
  const std::int64_t big_n = basis.small_modulus();
  const double scale = Rational(res.certificate.T, basis.modulus()).get_d();

  // Boundedness hypothesis: F is (nu, t)-bounded for t <= lambda_1(L*) / 2^{n/2+2}.
  res.dual_lambda1 = intlat::shortest_vector_length(intlat::dual_basis(b));
  res.t_bound = res.dual_lambda1 / std::pow(2.0, static_cast<double>(n) / 2.0 + 2.0);
  res.boundedness = bounded_check(fourier, res.t_bound, n, scale, options.grid_guard);
  if (res.boundedness.epsilon > options.boundedness_threshold) {
    res.warnings.push_back("boundedness: mass " + std::to_string(res.boundedness.epsilon) +
                           " of |F|^2 lies outside radius t = " + std::to_string(res.t_bound));
  }

  // Step 2: psi_1 = sum_p F(T p / N) |p> over the declared support.
  std::vector<Point> grid;
  std::vector<Complex> amps;
  std::vector<double> arg(n);
  for_each_grid_point(n, fourier.support_radius, scale, options.grid_guard, [&](const Point& p) {
    for (std::size_t i = 0; i < n; ++i) arg[i] = scale * static_cast<double>(p[i]);
    const Complex a = fourier.amplitude(arg);
    if (a == Complex(0.0, 0.0)) return;
    grid.push_back(p);
    amps.push_back(a);
  });
  double mass = 0.0;
  for (const Complex& a : amps) mass += std::norm(a);
  if (!(mass > 0.0)) throw ZeroMassError("sampler: initial state has zero norm");
  const double inv_norm = 1.0 / std::sqrt(mass);
  for (Complex& a : amps) a *= inv_norm;
  res.grid_points = grid.size();

  // Steps 3-4: x = p + phi3(p) with phi3(p) held in the ancilla, then the
  // nearest-plane decode against N B'^{-T} is subtracted from the ancilla.
  const ExactMatrix dual = intlat::lll_reduce(basis.scaled_dual_matrix());
  const intlat::GramSchmidtData gs = intlat::gram_schmidt(dual);
  std::vector<std::size_t> ln_pos(grid.size());
  std::vector<sysnf::ModVector> residual(grid.size());
  parallel_for(
      0, grid.size(),
      [&](std::size_t k) {
        const sysnf::ModVector p(big_n, grid[k]);
        const sysnf::ModVector y = sysnf::phi3(basis, p);
        const sysnf::ModVector x = p + y;
        RatVector u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = Rational(x[i]);
        const RatVector decoded = intlat::nearest_plane(dual, gs, u);
        std::vector<std::int64_t> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = to_int64(decoded[i].get_num());
        residual[k] = y - sysnf::ModVector(big_n, std::move(d));
        ln_pos[k] = sysnf::ln_index(basis, x);
      },
      64);

  const sysnf::ModVector zero(big_n, std::vector<std::int64_t>(n, 0));
  std::map<sysnf::ModVector, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool carrying = std::abs(amps[k]) >= kCarryingAmplitude;
    if (carrying) ++res.carrying_points;
    if (!(residual[k] == zero)) {
      if (carrying) ++res.decode_mismatches;
      res.ancilla_residual += std::norm(amps[k]);
    }
    groups[residual[k]].push_back(k);
  }
  res.decode_mismatch_rate =
      res.carrying_points == 0 ? 0.0
                               : static_cast<double>(res.decode_mismatches) /
                                     static_cast<double>(res.carrying_points);
  if (res.decode_mismatch_rate > options.mismatch_threshold || res.ancilla_residual > 1e-10) {
    res.warnings.push_back("decode: mismatch rate " + std::to_string(res.decode_mismatch_rate) +
                           ", ancilla residual mass " + std::to_string(res.ancilla_residual));
  }

  // Step 5: the lattice QFT on each ancilla branch; branches are orthogonal
  // so their output probabilities add.
  const std::size_t order = sysnf::ln_order(basis, options.lattice_guard);
  std::vector<double> prob(order, 0.0);
  for (const auto& [anc, members] : groups) {
    dft::LatticeFunction g{basis, std::vector<Complex>(order)};
    for (std::size_t k : members) g.values[ln_pos[k]] += amps[k];
    const dft::LatticeFunction out = qcirc::lattice_qft(g, options.lattice_guard);
    for (std::size_t i = 0; i < order; ++i) prob[i] += std::norm(out.values[i]);
  }

  // Step 6: centered representatives of L'_N mapped back through sigma^{-1}.
  double total = 0.0;
  for (double p : prob) total += p;
  res.normalization_error = std::abs(total - 1.0);
  const ExactMatrix sigma_inv = inverse(res.certificate.sigma);
  std::vector<Point> points(order);
  std::vector<unsigned char> bad(order, 0);
  parallel_for(
      0, order,
      [&](std::size_t i) {
        if (!(prob[i] > 0.0)) return;
        const auto z = sysnf::ln_point(basis, i).centered();
        const RatVector v = sigma_inv * to_rational(z);
        if (!is_integral(v)) {
          bad[i] = 1;
          return;
        }
        Point pt(n);
        for (std::size_t r = 0; r < n; ++r) pt[r] = to_int64(v[r].get_num());
        points[i] = std::move(pt);
      },
      256);
  if (std::find(bad.begin(), bad.end(), 1) != bad.end()) {
    throw Error("sampler: sigma^{-1} produced a non-integral point");
  }
  for (std::size_t i = 0; i < order; ++i) {
    if (!(prob[i] > 0.0)) continue;
    res.distribution.points.push_back(std::move(points[i]));
    res.distribution.probabilities.push_back(prob[i] / total);
  }
  res.samples = draw_samples(res.distribution, options.shots, options.seed);
  return res;
}

}  // namespace latdft::sampler
