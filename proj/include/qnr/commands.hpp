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
#include <string>
#include <vector>

#include "qnr/model.hpp"
#include "qnr/oracle.hpp"
#include "qnr/table.hpp"
#include "qnr/verify.hpp"

namespace qnr {

/// Representative operating point used when no flags are given.
inline constexpr double kDefaultMu = 1.0;
inline constexpr double kDefaultEta = 0.8;
inline constexpr double kDefaultDelta = 0.0005;

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Largest M for which `distribution` adds the exact-oracle column.
inline constexpr std::int64_t kOracleColumnMaxModes = 256;

struct ModeRange {
  std::int64_t first;
  std::int64_t last;
  std::int64_t stride = 1;

  std::vector<std::int64_t> values() const;
};

/// "M", "first:last" or "first:last:stride".
ModeRange parse_mode_range(const std::string& text);

/// Comma list "a,b,c", or "start:stop:count" with an optional ":log" or
/// ":lin" suffix.
std::vector<double> parse_real_grid(const std::string& text);

struct CommandResult {
  Table table;
  /// Human-readable lines for stderr.
  std::vector<std::string> notes;
  int exit_code = kExitOk;
};

/// Heralded-arm number distribution rows n = 0..n_display: thermal
/// pre-herald weight, closed-form post-herald weight and the exact oracle
/// (empty beyond kOracleColumnMaxModes). `n_max` sets the series truncation.
CommandResult cmd_distribution(std::int64_t modes, const SourceParams& source,
                               const DetectorParams& detector, int n_display, int n_max);

/// Single-click probability and fidelity per M.
CommandResult cmd_sweep_m(const ModeRange& range, const SourceParams& source,
                          const DetectorParams& detector);

/// Fidelity-optimal M over an eta x delta grid: continuous approximation next
/// to the scanned integer argmax. Every delta must be positive.
CommandResult cmd_contour(const std::vector<double>& etas, const std::vector<double>& deltas,
                          const SourceParams& source,
                          std::optional<std::int64_t> search_bound = std::nullopt);

/// Closed form versus exact oracle on a grid; exit code 2 when the largest
/// deviation exceeds `tolerance`.
CommandResult cmd_verify(const VerifyGrid& grid, double tolerance);

/// Scanned optima with their continuous approximations.
CommandResult cmd_optimize(const SourceParams& source, const DetectorParams& detector,
                           std::optional<std::int64_t> search_bound);

/// Seeded Monte Carlo estimate of the m-click probability next to the
/// inclusion-exclusion value truncated at n_max.
CommandResult cmd_mc(const QnrConfig& config, const SourceParams& source,
                     const DetectorParams& detector, const McConfig& mc, int n_max);

}  // namespace qnr
