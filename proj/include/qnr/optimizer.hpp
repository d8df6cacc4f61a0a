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
#include <optional>
#include <vector>

#include "qnr/model.hpp"

namespace qnr {

/// Continuous-M location of the fidelity maximum,
///   M ~ eta mu / (1 + (2 eta - 1) mu) * (1 + sqrt((1 + [2 eta - 1 - (eta - 1) delta] mu) / ((1 + eta mu) delta))).
/// Throws std::domain_error for delta = 0 or where the expression is not real and positive.
double approx_fidelity_opt(const SourceParams& source, const DetectorParams& detector);

/// Continuous-M location of the single-click probability local maximum,
///   M ~ (5 - eta mu) / (2 delta (3 + eta mu)).
/// Throws std::domain_error for delta = 0.
double approx_prob_local_max(const SourceParams& source, const DetectorParams& detector);

/// ceil(4 / delta); throws std::domain_error for delta = 0.
std::int64_t default_search_bound(const DetectorParams& detector);

/// Single-click probability and fidelity sampled at M = first..last.
struct SingleClickCurve {
  std::int64_t first_modes;
  std::vector<double> probability;
  std::vector<double> fidelity;
};

SingleClickCurve evaluate_curve(const SourceParams& source, const DetectorParams& detector,
                                std::int64_t first_modes, std::int64_t last_modes);
SingleClickCurve evaluate_curve_serial(const SourceParams& source, const DetectorParams& detector,
                                       std::int64_t first_modes, std::int64_t last_modes);

struct FidelityOptimum {
  std::int64_t modes;
  double fidelity;
  /// The argmax sits on the search bound; the true optimum may lie beyond it.
  bool at_bound;
};

/// Exhaustive scan of the single-photon fidelity over M = 1..search_bound.
/// Ties go to the smallest M.
FidelityOptimum find_fidelity_opt(const SourceParams& source, const DetectorParams& detector,
                                  std::int64_t search_bound);
FidelityOptimum find_fidelity_opt_serial(const SourceParams& source, const DetectorParams& detector,
                                         std::int64_t search_bound);

struct ProbabilityLocalMax {
  std::int64_t modes;
  double probability;
};

/// Smallest M in 2..search_bound-1 with P(M-1) < P(M) >= P(M+1) that comes
/// after at least one strictly decreasing step from M = 1. Absent if the scan
/// finds none.
std::optional<ProbabilityLocalMax> find_prob_local_max(const SourceParams& source,
                                                       const DetectorParams& detector,
                                                       std::int64_t search_bound);
std::optional<ProbabilityLocalMax> find_prob_local_max_serial(const SourceParams& source,
                                                              const DetectorParams& detector,
                                                              std::int64_t search_bound);

struct OptimaReport {
  std::int64_t m_fidelity_opt;
  double fidelity_at_opt;
  bool fidelity_at_bound;
  std::optional<double> m_fidelity_approx;
  std::optional<std::int64_t> m_prob_local_max;
  std::optional<double> prob_at_local_max;
  std::optional<double> m_prob_approx;
  std::int64_t search_bound;
};

/// Scans both optima and attaches the continuous approximations (absent when
/// delta = 0). Without an explicit bound, default_search_bound is used.
OptimaReport optimize(const SourceParams& source, const DetectorParams& detector,
                      std::optional<std::int64_t> search_bound = std::nullopt);

}  // namespace qnr
