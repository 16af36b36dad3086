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

#ifndef LATDFT_SAMPLER_HPP_
#define LATDFT_SAMPLER_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latdft/exact.hpp"
#include "latdft/sysnf.hpp"

// Exact-amplitude simulation of the quantum lattice sampler: SysNF
// approximation, state preparation, coset alignment, nearest-plane decoding,
// lattice QFT and measurement, plus brute-force targets and a PAC distance.
namespace latdft::sampler {

using Complex = std::complex<double>;
using Point = std::vector<std::int64_t>;

// Amplitude oracle F on real points with the support declared as the ball
// of radius support_radius around the origin.
struct QESSpec {
  std::function<Complex(std::span<const double>)> amplitude;
  double support_radius = 0.0;
  std::string label;
};

// F(x) = exp(-pi |x|^2 / (2 s^2)), so |F|^2 is the Gaussian of parameter s.
QESSpec gaussian_spec(double s, double grid_radius);

// The continuous Fourier transform of the amplitude whose square is the
// Gaussian of parameter s: gaussian_spec(1 / (2 s), radius_factor / (2 s)).
QESSpec gaussian_fourier_spec(double s, double radius_factor = 5.0);

struct BoundednessReport {
  double s;
  double epsilon;  // mass fraction outside the ball of radius s
};

// Mass of |F|^2 outside the ball of radius s, summed over the grid points
// scale * p (p integer) inside the declared support. Throws ZeroMassError on
// zero total mass and SizeGuardError above size_guard grid points.
BoundednessReport bounded_check(const QESSpec& f, double s, std::size_t dimension,
                                double scale = 1.0,
                                std::size_t size_guard = std::size_t{1} << 24);

struct DiscreteDistribution {
  std::vector<Point> points;
  std::vector<double> probabilities;

  // Throws ParameterError unless probabilities are non-negative, sum to 1
  // within tolerance and points are pairwise distinct.
  void validate(double tolerance = 1e-12) const;
  double probability_of(const Point& x) const;
};

// P(x) proportional to |f(x)|^2 over L(B) intersected with the box
// [-box_radius, box_radius]^n. B must be an integer basis. Throws
// EmptySupportError if no point carries mass.
DiscreteDistribution brute_force_target(const std::function<Complex(std::span<const double>)>& f,
                                        const ExactMatrix& b, double box_radius,
                                        std::size_t size_guard = std::size_t{1} << 24);

struct PacDistance {
  double tv_distance;       // 1 - mass moved by the greedy matching
  double max_displacement;  // longest distance that carried mass
};

// Greedy transport: pairs within match_radius are matched in order of
// increasing distance, each moving the smaller of the remaining masses.
PacDistance pac_distance(const DiscreteDistribution& observed, const DiscreteDistribution& target,
                         double match_radius);

struct SampleOptions {
  Rational epsilon{1, 16};
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  // Warn when the fraction of amplitude-carrying grid points decoded to the
  // wrong dual point exceeds this.
  double mismatch_threshold = 0.0;
  // Warn when the boundedness mass outside radius t exceeds this.
  double boundedness_threshold = 1e-6;
  sysnf::ReductionOptions reduction;
  std::size_t grid_guard = std::size_t{1} << 22;
  std::size_t lattice_guard = std::size_t{1} << 24;
};

struct SampleResult {
  sysnf::ReductionCertificate certificate;
  Rational reduction_epsilon;
  DiscreteDistribution distribution{};  // over L(B), after sigma^{-1}
  std::vector<Point> samples{};
  std::size_t grid_points = 0;
  std::size_t carrying_points = 0;  // grid points with |amplitude| >= 1e-12
  std::size_t decode_mismatches = 0;
  double decode_mismatch_rate = 0.0;
  double ancilla_residual = 0.0;  // mass left in nonzero ancilla states
  double normalization_error = 0.0;
  double dual_lambda1 = 0.0;
  double t_bound = 0.0;
  BoundednessReport boundedness{0.0, 0.0};
  std::vector<std::string> warnings{};
};

// Runs the sampler for the target whose Fourier transform is F. B must be a
// square, full-rank integer matrix.
SampleResult sample(const QESSpec& fourier, const ExactMatrix& b, const SampleOptions& options);

// Inverse-CDF draws from a 64-bit Mersenne Twister (std::mt19937_64) seeded
// with seed. Uniforms take the top 53 bits of each output, so draws are
// identical on every platform.
std::vector<Point> draw_samples(const DiscreteDistribution& d, std::size_t shots,
                                std::uint64_t seed);

}  // namespace latdft::sampler

#endif  // LATDFT_SAMPLER_HPP_
