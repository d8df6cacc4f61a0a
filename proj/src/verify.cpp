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

#include "qnr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnr/closed_form.hpp"
#include "qnr/oracle.hpp"

namespace qnr {

namespace {

struct Combo {
  std::int64_t modes;
  double mu;
  double eta;
  double delta;
};

std::vector<Combo> combos(const VerifyGrid& grid) {
  if (grid.max_modes < 1 || grid.n_max < 0 || grid.mus.empty() || grid.etas.empty() ||
      grid.deltas.empty()) {
    throw std::invalid_argument("verification grid must be nonempty");
  }
  static_cast<void>(ExactOracleConfig(grid.n_max, grid.max_modes));
  std::vector<Combo> out;
  for (std::int64_t modes = 1; modes <= grid.max_modes; ++modes) {
    for (double mu : grid.mus) {
      for (double eta : grid.etas) {
        for (double delta : grid.deltas) {
          // Validate outside any parallel region.
          static_cast<void>(SourceParams(mu));
          static_cast<void>(DetectorParams(eta, delta));
          out.push_back(Combo{modes, mu, eta, delta});
        }
      }
    }
  }
  return out;
}

std::vector<VerifyPoint> evaluate(const Combo& c, int n_max) {
  const SourceParams source(c.mu);
  const DetectorParams detector(c.eta, c.delta);
  const auto oracle = exact_click_distribution(c.modes, source, detector, n_max);
  const bool ideal = c.eta == 1.0 && c.delta == 0.0;
  std::vector<VerifyPoint> points;
  for (std::int64_t m = 0; m <= c.modes; ++m) {
    const QnrConfig config(c.modes, m);
    VerifyPoint p{c.modes, m, c.mu, c.eta, c.delta,
                  click_probability(config, source, detector, n_max),
                  oracle[static_cast<std::size_t>(m)], 0.0, ideal};
    if (ideal) {
      p.ideal = click_probability_ideal(config, source, n_max);
    }
    points.push_back(p);
  }
  return points;
}

VerifyReport assemble(std::vector<std::vector<VerifyPoint>> chunks) {
  VerifyReport report{{}, 0.0, 0};
  for (auto& chunk : chunks) {
    report.points.insert(report.points.end(), chunk.begin(), chunk.end());
  }
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const double d = report.points[i].deviation();
    if (d > report.max_deviation || std::isnan(d)) {
      report.max_deviation = d;
      report.worst_index = i;
    }
  }
  return report;
}

}  // namespace

double VerifyPoint::deviation() const {
  double d = std::abs(closed_form - oracle);
  if (has_ideal) {
    d = std::max({d, std::abs(ideal - closed_form), std::abs(ideal - oracle)});
  }
  return d;
}

VerifyReport verify_oracle_grid(const VerifyGrid& grid) {
  const auto work = combos(grid);
  std::vector<std::vector<VerifyPoint>> chunks(work.size());
  const auto count = static_cast<std::int64_t>(work.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    chunks[static_cast<std::size_t>(i)] = evaluate(work[static_cast<std::size_t>(i)], grid.n_max);
  }
  return assemble(std::move(chunks));
}

VerifyReport verify_oracle_grid_serial(const VerifyGrid& grid) {
  std::vector<std::vector<VerifyPoint>> chunks;
  for (const auto& c : combos(grid)) {
    chunks.push_back(evaluate(c, grid.n_max));
  }
  return assemble(std::move(chunks));
}

}  // namespace qnr
