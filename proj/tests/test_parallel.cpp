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

#include <doctest.h>

#include <omp.h>

#include "qnr/oracle.hpp"
#include "qnr/optimizer.hpp"
#include "qnr/verify.hpp"

using namespace qnr;

namespace {

// Runs fn with the given OpenMP thread count, restoring the previous one.
template <typename Fn>
auto with_threads(int threads, Fn fn) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  auto result = fn();
  omp_set_num_threads(saved);
  return result;
}

const SourceParams kMu1(1.0);
const DetectorParams kRep(0.8, 0.0005);

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference") {
  for (int threads : {1, 2, 3, 8}) {
    CAPTURE(threads);
    const auto curve = with_threads(threads, [] { return evaluate_curve(kMu1, kRep, 5, 4000); });
    const auto ref = evaluate_curve_serial(kMu1, kRep, 5, 4000);
    CHECK(curve.probability == ref.probability);
    CHECK(curve.fidelity == ref.fidelity);

    const auto fid = with_threads(threads, [] { return find_fidelity_opt(kMu1, kRep, 7777); });
    const auto fid_ref = find_fidelity_opt_serial(kMu1, kRep, 7777);
    CHECK(fid.modes == fid_ref.modes);
    CHECK(fid.fidelity == fid_ref.fidelity);

    const auto local = with_threads(threads, [] { return find_prob_local_max(kMu1, kRep, 6000); });
    const auto local_ref = find_prob_local_max_serial(kMu1, kRep, 6000);
    REQUIRE(local.has_value());
    REQUIRE(local_ref.has_value());
    CHECK(local->modes == local_ref->modes);
    CHECK(local->probability == local_ref->probability);

    // Trial count not a multiple of the block size.
    const McConfig mc(3 * kMcBlockTrials + 123, 99);
    const auto est = with_threads(threads, [&] { return mc_click_probability(QnrConfig(8, 1), kMu1, kRep, mc); });
    const auto est_ref = mc_click_probability_serial(QnrConfig(8, 1), kMu1, kRep, mc);
    CHECK(est.hits == est_ref.hits);
    CHECK(est.estimate == est_ref.estimate);

    VerifyGrid grid;
    grid.max_modes = 3;
    grid.n_max = 12;
    const auto report = with_threads(threads, [&] { return verify_oracle_grid(grid); });
    const auto report_ref = verify_oracle_grid_serial(grid);
    REQUIRE(report.points.size() == report_ref.points.size());
    CHECK(report.max_deviation == report_ref.max_deviation);
    CHECK(report.worst_index == report_ref.worst_index);
    for (std::size_t i = 0; i < report.points.size(); ++i) {
      CHECK(report.points[i].closed_form == report_ref.points[i].closed_form);
      CHECK(report.points[i].oracle == report_ref.points[i].oracle);
    }
  }
}

TEST_CASE("fidelity ties resolve toward the smallest M across threads") {
  // With eta = 0 the fidelity is the same for every M.
  const DetectorParams flat(0.0, 0.01);
  for (int threads : {1, 4}) {
    const auto opt = with_threads(threads, [&] { return find_fidelity_opt(kMu1, flat, 1000); });
    CHECK(opt.modes == 1);
  }
}
