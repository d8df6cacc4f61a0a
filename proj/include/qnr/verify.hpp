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

namespace qnr {

/// Parameter grid for the closed-form versus exact-oracle regression check.
struct VerifyGrid {
  std::int64_t max_modes = 5;
  int n_max = 8;
  std::vector<double> mus{0.2, 1.0, 2.0};
  std::vector<double> etas{0.3, 0.8, 1.0};
  std::vector<double> deltas{0.0, 0.0005, 0.01};
};

/// One (M, m, mu, eta, delta) comparison.
struct VerifyPoint {
  std::int64_t modes;
  std::int64_t clicks;
  double mu;
  double eta;
  double delta;
  double closed_form;
  double oracle;
  /// Stirling-number form; only meaningful where eta = 1 and delta = 0.
  double ideal;
  bool has_ideal;

  double deviation() const;
};

struct VerifyReport {
  std::vector<VerifyPoint> points;
  double max_deviation;
  std::size_t worst_index;
};

/// Evaluates every grid point, one (M, mu, eta, delta) combination per task
/// spread over OpenMP threads. Points are stored in grid order.
VerifyReport verify_oracle_grid(const VerifyGrid& grid);
VerifyReport verify_oracle_grid_serial(const VerifyGrid& grid);

}  // namespace qnr
