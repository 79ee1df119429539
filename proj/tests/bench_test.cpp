// Copyright 2026 The Shadowcarve Authors.
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

#include "shadowcarve/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "shadowcarve/carve.hpp"

namespace {

using namespace shadowcarve;

std::vector<BenchSample> synthetic(double scale, double power) {
  std::vector<BenchSample> out;
  for (std::size_t n : {4, 8, 16, 32, 64}) {
    out.push_back({SolverKind::Carve, n,
                   scale * std::pow(static_cast<double>(n), power), 3});
  }
  return out;
}

TEST(FitExponent, ExactCube) {
  ExponentFit fit = fit_exponent(synthetic(1.0, 3.0));
  EXPECT_NEAR(fit.slope, 3.0, 1e-9);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(FitExponent, ScaledSquare) {
  ExponentFit fit = fit_exponent(synthetic(5.0, 2.0));
  EXPECT_NEAR(fit.slope, 2.0, 1e-9);
  EXPECT_NEAR(fit.intercept, std::log(5.0), 1e-9);
}

TEST(FitExponent, InvariantUnderTimeScaling) {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> noise(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BenchSample> a = synthetic(1.0, 2.5);
    for (auto& s : a) s.wall_seconds *= noise(rng);
    const double c = noise(rng) * 10.0;
    std::vector<BenchSample> b = a;
    for (auto& s : b) s.wall_seconds *= c;
    ExponentFit fa = fit_exponent(a);
    ExponentFit fb = fit_exponent(b);
    EXPECT_NEAR(fa.slope, fb.slope, 1e-9);
    EXPECT_NEAR(fb.intercept - fa.intercept, std::log(c), 1e-9);
  }
}

TEST(FitExponent, NeedsThreeDistinctSizes) {
  std::vector<BenchSample> two{{SolverKind::Carve, 4, 1.0, 3},
                               {SolverKind::Carve, 8, 2.0, 3},
                               {SolverKind::Carve, 8, 2.1, 3}};
  EXPECT_THROW(fit_exponent(two), ContractError);
  two[0].wall_seconds = 0.0;
  EXPECT_THROW(fit_exponent(two), ContractError);
}

TEST(TimeSolver, SingleSizeGivesOneSample) {
  auto samples = time_solver(SolverKind::Carve, {2}, random_consistent_targets(1));
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_EQ(samples[0].n, 2u);
  EXPECT_EQ(samples[0].repetitions, 3u);
  EXPECT_GE(samples[0].wall_seconds, 0.0);
}

TEST(TimeSolver, LpRefusedAboveCap) {
  EXPECT_THROW(time_solver(SolverKind::Lp, {64}, random_consistent_targets(1)),
               LpSizeCapError);
}

TEST(TimeSolver, LpSmallSizes) {
  auto samples = time_solver(SolverKind::Lp, {2, 3, 4}, random_consistent_targets(2));
  ASSERT_EQ(samples.size(), 3u);
  for (const auto& s : samples) EXPECT_EQ(s.solver, SolverKind::Lp);
}

TEST(TimeSolver, RejectsBadArguments) {
  auto gen = random_consistent_targets(3);
  EXPECT_THROW(time_solver(SolverKind::Carve, {4, 2}, gen), ContractError);
  EXPECT_THROW(time_solver(SolverKind::Carve, {4, 4}, gen), ContractError);
  BenchOptions opts;
  opts.repetitions = 2;
  EXPECT_THROW(time_solver(SolverKind::Carve, {4}, gen, opts), ContractError);
  auto inconsistent = [](std::size_t n) {
    TargetSet t{Bitmap(n, 1), Bitmap(n), std::nullopt};
    return t;
  };
  EXPECT_THROW(time_solver(SolverKind::Carve, {4}, inconsistent), ContractError);
}

TEST(Generator, ProducesConsistentDeterministicTargets) {
  auto gen = random_consistent_targets(7);
  for (std::size_t n : {2, 5, 16, 40}) {
    TargetSet t = gen(n);
    EXPECT_TRUE(carve3(t).consistent) << n;
    EXPECT_EQ(t.p, gen(n).p);
    EXPECT_GT(t.p.count(), 0u);
  }
}

TEST(Generator, HalfCoverageDensity) {
  for (std::size_t n : {1, 4, 64}) {
    const double rho = half_coverage_density(n);
    EXPECT_NEAR(std::pow(1.0 - rho, static_cast<double>(n)), 0.5, 1e-12);
  }
}

TEST(Output, CsvAndSummary) {
  std::vector<BenchSample> s{{SolverKind::Carve, 64, 0.25, 3},
                             {SolverKind::Lp, 4, 1.5, 3}};
  EXPECT_EQ(samples_to_csv(s), "solver,n,seconds\ncarve,64,0.25\nlp,4,1.5\n");
  ExponentFit fit = fit_exponent(synthetic(1.0, 3.0));
  const std::string text = summarize(s, &fit);
  EXPECT_NE(text.find("fitted exponent 3.000"), std::string::npos);
  EXPECT_EQ(summarize(s, nullptr).find("fitted"), std::string::npos);
  EXPECT_EQ(parse_solver(to_string(SolverKind::Lp)), SolverKind::Lp);
  EXPECT_THROW(parse_solver("ilp"), ContractError);
}

}  // namespace
