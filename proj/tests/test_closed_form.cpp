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

#include <cmath>
#include <stdexcept>
#include <functional>
#include <vector>

#include "qnr/closed_form.hpp"
#include "qnr/oracle.hpp"

using namespace qnr;

namespace {

const SourceParams kMu1(1.0);
const DetectorParams kRep(0.8, 0.0005);

// Counts set partitions of {0..n-1} into exactly m blocks by walking
// restricted growth strings.
std::uint64_t count_partitions(int n, int m) {
  if (n == 0) return m == 0 ? 1 : 0;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::uint64_t count = 0;
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      count += blocks == m ? 1 : 0;
      return;
    }
    for (int b = 0; b <= blocks && b < m; ++b) {
      a[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return count;
}

// High-precision references evaluated independently at mu=1, eta=0.8, delta=5e-4.
constexpr double kP1 = 0.444722222222222222;
constexpr double kP4 = 0.278470764687361111;
constexpr double kP8 = 0.262738703324187695;
constexpr double kF1 = 0.449775140537164272;
constexpr double kF4 = 0.717490039840637450;
constexpr double kF8 = 0.759310857709469509;
constexpr double kF22 = 0.776977167328644019;

}  // namespace

TEST_CASE("Stirling numbers of the second kind") {
  CHECK(stirling2_exact(0, 0) == 1);
  CHECK(stirling2_exact(4, 4) == 1);
  CHECK(stirling2_exact(4, 2) == 7);
  CHECK(stirling2_exact(3, 5) == 0);
  CHECK(stirling2_exact(5, 0) == 0);
  for (int n = 1; n <= 30; ++n) CHECK(stirling2_exact(n, 1) == 1);
  CHECK(to_string(stirling2_exact(30, 15)) == "12879868072770626040000");
  CHECK_THROWS_AS(stirling2_exact(31, 2), std::out_of_range);

  SUBCASE("agrees with set-partition enumeration") {
    for (int n = 0; n <= 9; ++n) {
      for (int m = 0; m <= n; ++m) {
        CHECK(static_cast<std::uint64_t>(stirling2_exact(n, m)) == count_partitions(n, m));
      }
    }
  }

  SUBCASE("log-space branch continues the exact table") {
    // S(n, 2) = 2^(n-1) - 1 and S(n, n-1) = C(n, 2).
    CHECK(log_stirling2(40, 2) == doctest::Approx(std::log(std::pow(2.0, 39) - 1.0)).epsilon(1e-14));
    CHECK(stirling2(45, 44) == doctest::Approx(990.0).epsilon(1e-12));
    CHECK(stirling2(31, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::isinf(log_stirling2(40, 0)));
    // Recurrence across the n = 30 boundary.
    for (int m = 1; m <= 31; ++m) {
      const double lhs = stirling2(31, m);
      const double rhs = m * stirling2(30, m) + stirling2(30, m - 1);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
  }
}

TEST_CASE("xi") {
  CHECK(xi(7, DetectorParams(0.5, 0.0)) == 7.0);
  CHECK(xi(1, DetectorParams(0.5, 0.3)) == 1.0);
  CHECK(xi(4, kRep) == doctest::Approx(3.9940029995).epsilon(1e-14));
}

TEST_CASE("single-click closed form") {
  CHECK(single_click_probability(1, kMu1, kRep) == doctest::Approx(kP1).epsilon(1e-14));
  CHECK(single_click_probability(4, kMu1, kRep) == doctest::Approx(kP4).epsilon(1e-14));
  CHECK(single_click_probability(8, kMu1, kRep) == doctest::Approx(kP8).epsilon(1e-14));
  CHECK(single_click_probability(8, kMu1, kRep) == doctest::Approx(0.26).epsilon(0.005 / 0.26));

  // Perfect single detector clicks iff n >= 1.
  CHECK(single_click_probability(1, SourceParams(1.0), DetectorParams(1.0, 0.0)) == doctest::Approx(0.5));
  const SourceParams s(0.7);
  const DetectorParams d(0.6, 0.0);
  CHECK(single_click_probability(1, s, d) == doctest::Approx(0.42 / 1.42).epsilon(1e-15));

  // Local maximum shape: rises after its initial fall, then collapses.
  const double peak = single_click_probability(1102, kMu1, kRep);
  CHECK(peak > single_click_probability(100, kMu1, kRep));
  CHECK(peak > single_click_probability(10000, kMu1, kRep));

  // Stays inside [0, 1] everywhere.
  for (std::int64_t m : {1, 2, 3, 10, 1000, 100000, 10000000}) {
    const double p = single_click_probability(m, SourceParams(3.0), DetectorParams(0.9, 0.05));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("general click probability") {
  const int n_max = truncation_cutoff(kMu1);

  CHECK(click_probability(QnrConfig(1, 1), kMu1, kRep, n_max) == doctest::Approx(kP1).epsilon(1e-11));
  CHECK(click_probability(QnrConfig(4, 1), kMu1, kRep, n_max) == doctest::Approx(kP4).epsilon(1e-11));
  CHECK(click_probability(QnrConfig(5, 1), kMu1, DetectorParams(0.0, 0.0), n_max) == 0.0);

  SUBCASE("ideal M=2, m=2 equals 1/6 minus the truncated tail") {
    // sum_{n>=2} 0.5^(n+1) * 2 S(n,2) / 2^n = 1/4 - 1/12.
    const double p = click_probability(QnrConfig(2, 2), kMu1, DetectorParams(1.0, 0.0), 60);
    CHECK(p == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    double stirling_form = 0.0;
    for (int n = 2; n <= 60; ++n) {
      stirling_form += std::pow(0.5, n + 1) * 2.0 * stirling2(n, 2) / std::pow(2.0, n);
    }
    CHECK(p == doctest::Approx(stirling_form).epsilon(1e-14));
  }

  SUBCASE("m = 1 converges to the closed form within the tail bound") {
    for (double mu : {0.3, 1.0, 2.0}) {
      const SourceParams s(mu);
      for (int n_max : {5, 10, 20, 40}) {
        for (std::int64_t m : {1, 3, 8}) {
          const double diff = std::abs(click_probability(QnrConfig(m, 1), s, kRep, n_max) -
                                       single_click_probability(m, s, kRep));
          CHECK(diff <= thermal_tail(s, n_max) + 1e-14);
        }
      }
    }
  }

  SUBCASE("normalization over click counts") {
    for (double mu : {0.2, 1.0, 2.0}) {
      const SourceParams s(mu);
      const int cutoff = truncation_cutoff(s);
      for (double eta : {0.0, 0.3, 1.0}) {
        for (double delta : {0.0, 0.01, 0.4}) {
          for (std::int64_t m = 1; m <= 8; ++m) {
            const auto probs = click_distribution(m, s, DetectorParams(eta, delta), cutoff);
            double total = 0.0;
            for (double p : probs) total += p;
            CHECK(total == doctest::Approx(1.0).epsilon(kDefaultTailTol * 2));
          }
        }
      }
    }
  }

  SUBCASE("large M with one click switches to the closed form") {
    const std::int64_t big = kClosedFormSwitchModes + 1;
    CHECK(click_probability(QnrConfig(big, 1), kMu1, kRep, 3) == single_click_probability(big, kMu1, kRep));
  }

  CHECK(click_statistics(QnrConfig(4, 1), kMu1, kRep, n_max).probability ==
        doctest::Approx(kP4).epsilon(1e-11));
  CHECK_THROWS_AS(click_probability(QnrConfig(4, 1), kMu1, kRep, -1), std::invalid_argument);
}

TEST_CASE("ideal-limit Stirling form") {
  const int n_max = 45;
  CHECK(click_probability_ideal(QnrConfig(1, 1), kMu1, n_max) == doctest::Approx(0.5).epsilon(1e-13));
  for (std::int64_t m = 1; m <= 6; ++m) {
    CHECK(click_probability_ideal(QnrConfig(m, 0), kMu1, n_max) == 0.5);
  }
  CHECK(click_probability_ideal(QnrConfig(2, 2), kMu1, n_max) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  const DetectorParams perfect(1.0, 0.0);
  for (double mu : {0.2, 1.0, 2.0}) {
    const SourceParams s(mu);
    for (std::int64_t modes = 1; modes <= 6; ++modes) {
      for (std::int64_t m = 0; m <= modes; ++m) {
        const QnrConfig c(modes, m);
        CHECK(std::abs(click_probability(c, s, perfect, 60) - click_probability_ideal(c, s, 60)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("heralded distribution") {
  const int n_max = truncation_cutoff(kMu1);

  const auto h4 = heralded_distribution(4, kMu1, kRep, n_max);
  CHECK(h4.fidelity_to_single == doctest::Approx(kF4).epsilon(1e-13));
  CHECK(h4.fidelity_to_single == h4.distribution[1]);
  CHECK(h4.herald_probability == doctest::Approx(kP4).epsilon(1e-14));
  CHECK(h4.distribution.total() == doctest::Approx(1.0).epsilon(1e-9));

  const auto h8 = heralded_distribution(8, kMu1, kRep, n_max);
  CHECK(h8.fidelity_to_single == doctest::Approx(kF8).epsilon(1e-13));
  CHECK(std::abs(h8.fidelity_to_single - 0.76) <= 0.005);

  // Dark counts raise the vacuum weight as M grows.
  const auto h1 = heralded_distribution(1, kMu1, kRep, n_max);
  CHECK(h1.distribution[0] < h4.distribution[0]);
  CHECK(h4.distribution[0] < h8.distribution[0]);

  // A perfect, dark-count-free click implies at least one photon.
  for (std::int64_t m : {1, 16, 1000000}) {
    CHECK(heralded_distribution(m, kMu1, DetectorParams(1.0, 0.0), n_max).distribution[0] == 0.0);
  }

  CHECK_THROWS_AS(heralded_distribution(4, kMu1, DetectorParams(0.0, 0.0), n_max), std::domain_error);
  CHECK_THROWS_AS(heralded_distribution(4, SourceParams(0.0), DetectorParams(0.8, 0.0), n_max),
                  std::domain_error);
  CHECK_THROWS_AS(heralded_distribution(4, kMu1, kRep, 0), std::invalid_argument);

  SUBCASE("xi drops out: unnormalized weights with any prefactor give the same state") {
    for (double scale : {1.0, 0.125, 37.0, 1e-6}) {
      for (std::int64_t modes : {1, 3, 22, 500}) {
        const auto thermal = thermal_distribution(kMu1, n_max);
        const double x = 0.2 + 0.8 / static_cast<double>(modes);
        std::vector<double> w(thermal.probs.size());
        double norm = 0.0;
        for (std::size_t n = 0; n < w.size(); ++n) {
          w[n] = scale * thermal.probs[n] *
                 (std::pow(x, static_cast<double>(n)) - 0.9995 * std::pow(0.2, static_cast<double>(n)));
          norm += w[n];
        }
        const auto h = heralded_distribution(modes, kMu1, kRep, n_max);
        for (std::size_t n = 0; n < w.size(); ++n) {
          CHECK(h.distribution.probs[n] == doctest::Approx(w[n] / norm).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("single-photon fidelity") {
  CHECK(single_photon_fidelity(1, kMu1, kRep) == doctest::Approx(kF1).epsilon(1e-13));
  CHECK(std::abs(single_photon_fidelity(1, kMu1, kRep) - 0.45) <= 0.005);
  CHECK(single_photon_fidelity(22, kMu1, kRep) == doctest::Approx(kF22).epsilon(1e-13));
  CHECK(std::abs(single_photon_fidelity(10000000, kMu1, kRep) - 0.09) <= 1e-4);
  CHECK_THROWS_AS(single_photon_fidelity(3, kMu1, DetectorParams(0.0, 0.0)), std::domain_error);

  SUBCASE("matches the heralded distribution entry") {
    for (double mu : {0.1, 1.0, 3.0}) {
      for (double eta : {0.2, 0.8, 1.0}) {
        for (double delta : {0.0, 1e-4, 0.05}) {
          const SourceParams s(mu);
          const DetectorParams d(eta, delta);
          for (std::int64_t modes : {1, 2, 7, 64, 10000}) {
            const auto h = heralded_distribution(modes, s, d, truncation_cutoff(s));
            CHECK(std::abs(single_photon_fidelity(modes, s, d) - h.distribution[1]) <= 1e-9);
          }
        }
      }
    }
  }

  SUBCASE("monotone without dark counts") {
    const DetectorParams clean(0.8, 0.0);
    double prev = single_photon_fidelity(1, kMu1, clean);
    for (std::int64_t m = 2; m <= 1000; ++m) {
      const double f = single_photon_fidelity(m, kMu1, clean);
      CHECK(f > prev);
      prev = f;
    }
  }

  SUBCASE("a peak exists with dark counts") {
    bool fell = false;
    for (std::int64_t m = 1; m < 1000 && !fell; ++m) {
      fell = single_photon_fidelity(m + 1, kMu1, kRep) < single_photon_fidelity(m, kMu1, kRep);
    }
    CHECK(fell);
  }
}

TEST_CASE("large-M fidelity limit") {
  CHECK(fidelity_large_m_limit(kMu1, kRep) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(fidelity_large_m_limit(kMu1, DetectorParams(1.0, 0.01)) == 0.0);
  CHECK(fidelity_large_m_limit(SourceParams(0.0), kRep) == 0.0);
  CHECK_THROWS_AS(fidelity_large_m_limit(kMu1, DetectorParams(0.8, 0.0)), std::domain_error);
  for (double mu : {0.5, 2.0}) {
    for (double eta : {0.3, 0.9}) {
      const SourceParams s(mu);
      const DetectorParams d(eta, 0.001);
      CHECK(single_photon_fidelity(1000000000, s, d) ==
            doctest::Approx(fidelity_large_m_limit(s, d)).epsilon(1e-3));
    }
  }
}
