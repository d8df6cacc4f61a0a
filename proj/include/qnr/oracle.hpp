/**
 * Copyright 2026 The qnr-herald Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "qnr/model.hpp"

namespace qnr {

/// Upper limit on M^n for the literal photon-assignment enumerator.
inline constexpr double kMaxAssignments = 1e8;

/// Photon-number cap of the composition oracle.
inline constexpr int kMaxOraclePhotons = 150;

/// Enumeration limits for the exact oracle.
class ExactOracleConfig {
 public:
  ExactOracleConfig(int max_photons, std::int64_t modes);

  int max_photons() const noexcept { return max_photons_; }
  std::int64_t modes() const noexcept { return modes_; }

  /// M^max_photons, the number of distinguishable-photon assignments.
  double assignment_count() const;

  /// True when the literal M^n enumerator may be run.
  bool enumerable() const { return assignment_count() <= kMaxAssignments; }

 private:
  int max_photons_;
  std::int64_t modes_;
};

// The physical model behind every oracle: n photons, each sent to one of M
// modes uniformly at random; a mode holding k photons stays dark with
// probability (1-delta)(1-eta)^k, independently of every other mode. The
// dark-count event is an independent per-mode coin, which coincides with the
// (1-delta) prefactor of the no-click POVM element for every delta in [0,1).

/// Click-count distribution (index m = 0..M) for exactly n photons. Sums over
/// occupation compositions by sequential binomial splitting across modes and
/// convolves per-mode click probabilities, so cost is polynomial in n and M.
std::vector<double> exact_click_given_n(int n, const ExactOracleConfig& config,
                                        const DetectorParams& detector);

/// Same quantity by walking all M^n assignments of distinguishable photons in
/// odometer order. Throws std::length_error when M^n exceeds kMaxAssignments.
std::vector<double> enumerate_click_given_n(int n, std::int64_t modes,
                                            const DetectorParams& detector);

/// Click-count distribution m = 0..M of the thermal source truncated at n_max.
std::vector<double> exact_click_distribution(std::int64_t modes, const SourceParams& source,
                                             const DetectorParams& detector, int n_max);

double exact_click_probability(const QnrConfig& config, const SourceParams& source,
                               const DetectorParams& detector, int n_max);

/// Heralded-arm distribution given exactly config.clicks() clicks, normalized
/// over the truncated series. Throws std::domain_error on zero probability.
NumberDistribution exact_heralded_distribution(const QnrConfig& config, const SourceParams& source,
                                               const DetectorParams& detector, int n_max);

struct McConfig {
  std::int64_t trials;
  std::uint64_t seed;

  McConfig(std::int64_t trials, std::uint64_t seed);
};

struct McEstimate {
  double estimate;
  double std_error;
  std::int64_t hits;
  std::int64_t trials;
};

/// Trials per independently seeded block. Block b draws from a generator
/// seeded by (seed, b), so estimates do not depend on the thread count.
inline constexpr std::int64_t kMcBlockTrials = std::int64_t{1} << 16;

/// Monte Carlo estimate of the m-click probability with its binomial standard
/// error. Blocks are distributed over OpenMP threads.
McEstimate mc_click_probability(const QnrConfig& config, const SourceParams& source,
                                const DetectorParams& detector, const McConfig& mc);

/// Single-threaded reference; returns results identical to the parallel version.
McEstimate mc_click_probability_serial(const QnrConfig& config, const SourceParams& source,
                                       const DetectorParams& detector, const McConfig& mc);

}  // namespace qnr
