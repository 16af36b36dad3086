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


#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "latdft/error.hpp"
#include "latdft/intlat.hpp"
#include "latdft/sampler.hpp"
#include "latdft/selftest/oracles.hpp"
#include "latdft/sysnf.hpp"

namespace latdft::sampler {
namespace {

double norm_of(const Point& p) {
  double q = 0.0;
  for (auto c : p) q += double(c) * double(c);
  return std::sqrt(q);
}

DiscreteDistribution shifted(const DiscreteDistribution& d, const Point& v) {
  DiscreteDistribution out = d;
  for (auto& p : out.points)
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += v[i];
  return out;
}

// Gaussian of parameter s = 2^{n/2+2} sqrt(n) lambda_1 on the lattice of
// [[2,1],[0,1]]; lambda_1 = sqrt(2) gives s = 16.
class GaussianSampling : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    basis_ = new ExactMatrix{{2, 1}, {0, 1}};
    const double lambda1 = intlat::shortest_vector_length(*basis_);
    s_ = std::pow(2.0, 3.0) * std::sqrt(2.0) * lambda1;
    SampleOptions opt;
    opt.shots = 100000;
    opt.seed = 10;
    result_ = new SampleResult(sample(gaussian_fourier_spec(s_), *basis_, opt));
  }
  static void TearDownTestSuite() {
    delete result_;
    delete basis_;
  }
  static ExactMatrix* basis_;
  static SampleResult* result_;
  static double s_;
};

ExactMatrix* GaussianSampling::basis_ = nullptr;
SampleResult* GaussianSampling::result_ = nullptr;
double GaussianSampling::s_ = 0.0;

TEST(GaussianSpec, Identities) {
  const QESSpec f = gaussian_spec(3.0, 30.0);
  const double origin[2] = {0.0, 0.0};
  EXPECT_EQ(f.amplitude(origin), Complex(1.0));
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> d(-6.0, 6.0);
  for (int t = 0; t < 100; ++t) {
    const double x[2] = {d(rng), d(rng)};
    const double y[2] = {d(rng), d(rng)};
    const double qx = x[0] * x[0] + x[1] * x[1], qy = y[0] * y[0] + y[1] * y[1];
    EXPECT_NEAR(std::norm(f.amplitude(x)), std::exp(-std::numbers::pi * qx / 9.0), 1e-15);
    if (qx <= qy) {
      EXPECT_GE(std::abs(f.amplitude(x)), std::abs(f.amplitude(y)));
    }
  }
  EXPECT_DOUBLE_EQ(f.support_radius, 30.0);
  const QESSpec g = gaussian_fourier_spec(16.0);
  EXPECT_DOUBLE_EQ(g.support_radius, 5.0 / 32.0);
  EXPECT_THROW(gaussian_spec(0.0, 1.0), ParameterError);
}

TEST(BoundedCheck, Examples) {
  const QESSpec delta{[](std::span<const double> x) {
                        return Complex(std::all_of(x.begin(), x.end(), [](double c) { return c == 0.0; }));
                      },
                      5.0, "delta"};
  for (double s : {0.1, 1.0, 3.0}) EXPECT_EQ(bounded_check(delta, s, 2).epsilon, 0.0);

  const QESSpec g = gaussian_spec(3.0, 30.0);
  const double radius = 3.0 * std::sqrt(2.0);
  double inside = 0.0, total = 0.0;
  for (int a = -30; a <= 30; ++a)
    for (int b = -30; b <= 30; ++b) {
      const double q = a * a + b * b;
      if (q > 900.0) continue;
      const double m = std::exp(-std::numbers::pi * q / 9.0);
      total += m;
      if (q <= radius * radius) inside += m;
    }
  const double eps = bounded_check(g, radius, 2).epsilon;
  EXPECT_NEAR(eps, 1.0 - inside / total, 1e-14);
  EXPECT_LE(eps, 0.25);
  EXPECT_EQ(bounded_check(g, 30.0, 2).epsilon, 0.0);

  const QESSpec zero{[](std::span<const double>) { return Complex(0.0); }, 3.0, "zero"};
  EXPECT_THROW(bounded_check(zero, 1.0, 2), ZeroMassError);
}

TEST(BruteForceTarget, Examples) {
  const ExactMatrix b{{2, 1}, {0, 1}};
  const auto one = [](std::span<const double>) { return Complex(1.0); };
  const DiscreteDistribution single = brute_force_target(one, b, 0.5);
  ASSERT_EQ(single.points.size(), 1u);
  EXPECT_EQ(single.points[0], (Point{0, 0}));
  EXPECT_EQ(single.probabilities[0], 1.0);

  const auto gauss = gaussian_spec(4.0, 100.0).amplitude;
  const DiscreteDistribution d = brute_force_target(gauss, b, 24.0);
  d.validate(1e-12);
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    EXPECT_TRUE(oracles::lattice_member(b, to_rational(d.points[i])));
    const Point neg{-d.points[i][0], -d.points[i][1]};
    EXPECT_NEAR(d.probability_of(neg), d.probabilities[i], 1e-15);
  }

  // Doubling the box moves at most the tail mass.
  const DiscreteDistribution small = brute_force_target(gauss, b, 6.0);
  const DiscreteDistribution big = brute_force_target(gauss, b, 12.0);
  double tail = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < big.points.size(); ++i) {
    const auto& p = big.points[i];
    const bool in_small = std::abs(p[0]) <= 6 && std::abs(p[1]) <= 6;
    if (!in_small) tail += big.probabilities[i];
    l1 += std::abs(big.probabilities[i] - small.probability_of(p));
  }
  EXPECT_LE(0.5 * l1, tail + 1e-12);

  const auto none = [](std::span<const double>) { return Complex(0.0); };
  EXPECT_THROW(brute_force_target(none, b, 3.0), EmptySupportError);
}

TEST(PacDistance, Examples) {
  const ExactMatrix b{{2, 1}, {0, 1}};
  const DiscreteDistribution d = brute_force_target(gaussian_spec(3.0, 50.0).amplitude, b, 15.0);
  const PacDistance same = pac_distance(d, d, 1.0);
  EXPECT_NEAR(same.tv_distance, 0.0, 1e-12);
  EXPECT_EQ(same.max_displacement, 0.0);

  // Well separated support, so every point has a unique partner.
  const DiscreteDistribution sparse{{{0, 0}, {10, 0}, {0, 10}, {-10, -10}}, {0.4, 0.3, 0.2, 0.1}};
  const PacDistance moved = pac_distance(shifted(sparse, {1, 1}), sparse, 1.5);
  EXPECT_NEAR(moved.tv_distance, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(moved.max_displacement, std::sqrt(2.0));

  const PacDistance far = pac_distance(shifted(d, {100, 0}), d, 1.5);
  EXPECT_NEAR(far.tv_distance, 1.0, 1e-12);
  EXPECT_THROW(pac_distance(d, d, -1.0), ParameterError);
}

TEST(DrawSamples, DeterministicAndFaithful) {
  DiscreteDistribution d{{{0, 0}, {1, 0}, {0, 1}}, {0.5, 0.25, 0.25}};
  d.validate();
  const auto a = draw_samples(d, 4000, 7);
  EXPECT_EQ(a, draw_samples(d, 4000, 7));
  EXPECT_NE(a, draw_samples(d, 4000, 8));
  const auto zeros = std::count(a.begin(), a.end(), Point{0, 0});
  EXPECT_NEAR(double(zeros) / 4000.0, 0.5, 0.03);
  EXPECT_TRUE(draw_samples(d, 0, 1).empty());
  EXPECT_THROW(draw_samples(DiscreteDistribution{}, 3, 1), EmptySupportError);
  DiscreteDistribution twice{{{0, 0}, {0, 0}}, {0.5, 0.5}};
  EXPECT_THROW(twice.validate(), ParameterError);
}

TEST_F(GaussianSampling, CloseToTargetDistribution) {
  const SampleResult& r = *result_;
  EXPECT_TRUE(r.warnings.empty()) << r.warnings.front();
  EXPECT_EQ(r.decode_mismatches, 0u);
  EXPECT_LE(r.normalization_error, 1e-10);
  r.distribution.validate(1e-9);
  for (const auto& p : r.distribution.points)
    ASSERT_TRUE(oracles::lattice_member(*basis_, to_rational(p)));
  const DiscreteDistribution target = brute_force_target(gaussian_spec(s_, 1e9).amplitude, *basis_, 6 * s_);
  const PacDistance d = pac_distance(r.distribution, target, 1.0);
  EXPECT_LE(d.tv_distance, 0.05);
  EXPECT_LE(d.max_displacement, 1.0);
}

TEST_F(GaussianSampling, ShotsPassChiSquare) {
  const SampleResult& r = *result_;
  ASSERT_EQ(r.samples.size(), 100000u);
  std::map<Point, double> counts;
  for (const auto& p : r.samples) counts[p] += 1.0;
  double stat = 0.0, lump_exp = 0.0, lump_obs = 0.0;
  std::size_t bins = 0;
  for (std::size_t i = 0; i < r.distribution.points.size(); ++i) {
    const double e = 1e5 * r.distribution.probabilities[i];
    const auto it = counts.find(r.distribution.points[i]);
    const double o = it == counts.end() ? 0.0 : it->second;
    if (e >= 5.0) {
      stat += (o - e) * (o - e) / e;
      ++bins;
    } else {
      lump_exp += e;
      lump_obs += o;
    }
  }
  if (lump_exp > 0.0) {
    stat += (lump_obs - lump_exp) * (lump_obs - lump_exp) / lump_exp;
    ++bins;
  }
  ASSERT_GT(bins, 10u);
  const boost::math::chi_squared chi(static_cast<double>(bins - 1));
  const double p_value = boost::math::cdf(boost::math::complement(chi, stat));
  EXPECT_GT(p_value, 1e-3) << "chi2 = " << stat << " over " << bins << " bins";
}

// The decoded dual point must be the exact closest point of N L'^*, which for
// the aligned state x = p + phi3(p) is the ancilla value itself.
TEST_F(GaussianSampling, DecodeMatchesExactClosestPoint) {
  const SampleResult& r = *result_;
  const sysnf::ReductionCertificate again = sysnf::reduce_to_sysnf(*basis_, r.reduction_epsilon);
  ASSERT_EQ(sysnf::to_json(again), sysnf::to_json(r.certificate));
  const auto& s = r.certificate.basis;
  const std::int64_t big_n = s.small_modulus();
  const ExactMatrix dual = intlat::lll_reduce(s.scaled_dual_matrix());
  const double scale = Rational(r.certificate.T, s.modulus()).get_d();
  const double rho = gaussian_fourier_spec(s_).support_radius / scale;
  const auto half = static_cast<std::int64_t>(rho);
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<std::int64_t> coord(-half, half);
  int checked = 0;
  while (checked < 300) {
    const Point p{coord(rng), coord(rng)};
    if (norm_of(p) > rho) continue;
    const sysnf::ModVector y = sysnf::phi3(s, sysnf::ModVector(big_n, p));
    const sysnf::ModVector x = sysnf::ModVector(big_n, p) + y;
    RatVector u{Rational(x[0]), Rational(x[1])};
    const RatVector decoded = intlat::nearest_plane(dual, u);
    RatVector yi{u[0] - p[0], u[1] - p[1]};
    ASSERT_TRUE(intlat::membership(dual, yi));
    const Rational best = oracles::cvp_squared_distance(dual, u, intlat::coefficients_in_basis(dual, yi), 3);
    EXPECT_EQ(best, Rational(p[0] * p[0] + p[1] * p[1]));
    EXPECT_EQ(decoded, yi);
    ++checked;
  }
}

TEST(Sampling, DeterministicAcrossRuns) {
  const ExactMatrix b{{2, 1}, {0, 1}};
  SampleOptions opt;
  opt.epsilon = Rational(1, 4);
  opt.shots = 500;
  opt.seed = 3;
  const QESSpec f = gaussian_fourier_spec(8.0);
  const SampleResult a = sample(f, b, opt);
  const SampleResult c = sample(f, b, opt);
  EXPECT_EQ(a.samples, c.samples);
  EXPECT_EQ(a.distribution.points, c.distribution.points);
  EXPECT_EQ(a.distribution.probabilities, c.distribution.probabilities);
  opt.seed = 4;
  EXPECT_NE(sample(f, b, opt).samples, a.samples);
}

TEST(Sampling, ConstantFourierSideConcentratesAtOrigin) {
  const ExactMatrix b{{2, 1}, {0, 1}};
  SampleOptions opt;
  const double t = intlat::shortest_vector_length(intlat::dual_basis(b)) / 8.0;
  const QESSpec flat{[](std::span<const double>) { return Complex(1.0); }, t, "flat"};
  const SampleResult r = sample(flat, b, opt);
  EXPECT_EQ(r.decode_mismatches, 0u);
  const DiscreteDistribution& d = r.distribution;
  const double p0 = d.probability_of({0, 0});
  double near = 0.0;
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    EXPECT_LE(d.probabilities[i], p0 + 1e-15);
    EXPECT_NEAR(d.probability_of({-d.points[i][0], -d.points[i][1]}), d.probabilities[i], 1e-9);
    if (norm_of(d.points[i]) <= 20.0) near += d.probabilities[i];
  }
  EXPECT_GT(near, 0.8);
}

TEST(Sampling, WideFourierSideRaisesWarnings) {
  const ExactMatrix b{{2, 1}, {0, 1}};
  SampleOptions opt;
  opt.epsilon = Rational(1, 4);
  const SampleResult r = sample(gaussian_fourier_spec(1.0), b, opt);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_GT(r.boundedness.epsilon, opt.boundedness_threshold);
  bool decode = false;
  for (const auto& w : r.warnings) decode |= w.rfind("decode", 0) == 0;
  EXPECT_TRUE(decode);
  EXPECT_GT(r.decode_mismatch_rate, 0.0);
}

TEST(Sampling, Errors) {
  const QESSpec f = gaussian_fourier_spec(16.0);
  SampleOptions opt;
  opt.epsilon = 0;
  EXPECT_THROW(sample(f, ExactMatrix{{2, 1}, {0, 1}}, opt), ParameterError);
  EXPECT_THROW(sample(f, ExactMatrix{{1, 2}, {2, 4}}, SampleOptions{}), RankError);
  EXPECT_THROW(sample(f, ExactMatrix(2, 3), SampleOptions{}), DimensionError);
}

}  // namespace
}  // namespace latdft::sampler
