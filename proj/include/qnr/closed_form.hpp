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
#include <string>
#include <vector>

#include "qnr/model.hpp"

namespace qnr {

__extension__ typedef unsigned __int128 Stirling;

/// Largest n for which Stirling numbers are produced as exact integers.
inline constexpr int kStirlingExactMax = 30;

/// Above this many modes, single-click probabilities switch from the
/// alternating inclusion-exclusion series to the summed closed form.
inline constexpr std::int64_t kClosedFormSwitchModes = 10000;

/// Stirling number of the second kind S(n, m), exact for n <= 30.
/// S(n, m) = 0 for m > n, except S(0, 0) = 1.
Stirling stirling2_exact(int n, int m);

/// log S(n, m) for any n, m >= 0; -infinity where S(n, m) = 0.
double log_stirling2(int n, int m);

/// S(n, m) as a double: exact integers converted for n <= 30, log space beyond.
double stirling2(int n, int m);

std::string to_string(Stirling value);

struct ClickStatistics {
  double probability;
  QnrConfig config;
  SourceParams source;
  DetectorParams detector;
};

/// Probability of exactly m clicks across M equally split on-off detectors,
///
///   P = C(M,m) sum_j (-1)^(m-j) C(m,j) (1-delta)^(M-j) sum_n |c_n|^2 [(1-eta) + j eta/M]^n,
///
/// with the photon-number series truncated at n_max. The alternating sum runs
/// over j ascending with compensated summation. For m = 1 and M above
/// kClosedFormSwitchModes the untruncated single-click closed form is returned.
double click_probability(const QnrConfig& config, const SourceParams& source,
                         const DetectorParams& detector, int n_max);

ClickStatistics click_statistics(const QnrConfig& config, const SourceParams& source,
                                 const DetectorParams& detector, int n_max);

/// Probabilities for every click count m = 0..M.
std::vector<double> click_distribution(std::int64_t modes, const SourceParams& source,
                                       const DetectorParams& detector, int n_max);

/// Perfect-efficiency, dark-count-free limit written with Stirling numbers:
/// sum_{n>=m} |c_n|^2 M! S(n,m) / ((M-m)! M^n).
double click_probability_ideal(const QnrConfig& config, const SourceParams& source, int n_max);

/// xi = M (1-delta)^(M-1); cancels from every conditional single-click quantity.
double xi(std::int64_t modes, const DetectorParams& detector);

/// Exact single-click probability (geometric series summed analytically).
double single_click_probability(std::int64_t modes, const SourceParams& source,
                                const DetectorParams& detector);

struct HeraldedState {
  NumberDistribution distribution;
  double herald_probability;
  double fidelity_to_single;
};

/// Photon-number distribution of the heralded arm conditioned on exactly one
/// click. Entries are normalized by the exact single-click probability, so
/// they sum to 1 minus the thermal tail beyond n_max.
///
/// Throws std::domain_error when a single click has zero probability
/// (eta = 0 and delta = 0, or mu = 0 and delta = 0).
HeraldedState heralded_distribution(std::int64_t modes, const SourceParams& source,
                                    const DetectorParams& detector, int n_max);

/// Fidelity of the single-click heralded state to the one-photon Fock state.
double single_photon_fidelity(std::int64_t modes, const SourceParams& source,
                              const DetectorParams& detector);

/// mu (1 + eta mu)(1 - eta) / (1 + mu)^2, the M -> infinity fidelity when
/// dark counts are present. Throws std::domain_error for delta = 0.
double fidelity_large_m_limit(const SourceParams& source, const DetectorParams& detector);

}  // namespace qnr
