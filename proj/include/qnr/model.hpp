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
#include <span>
#include <string>
#include <vector>

namespace qnr {

/// Default tail tolerance for truncating series over the photon number.
inline constexpr double kDefaultTailTol = 1e-12;

/// Thermal pair source, characterized by its mean pair number per pump pulse.
class SourceParams {
 public:
  explicit SourceParams(double mu);

  double mu() const noexcept { return mu_; }

  /// Geometric ratio mu/(1+mu) of the thermal law.
  double ratio() const noexcept { return mu_ / (1.0 + mu_); }

 private:
  double mu_;
};

/// On-off detector parameters shared by every mode: efficiency eta in [0,1]
/// and dark-count probability delta in [0,1) per detection window.
class DetectorParams {
 public:
  DetectorParams(double eta, double delta);

  double eta() const noexcept { return eta_; }
  double delta() const noexcept { return delta_; }

 private:
  double eta_;
  double delta_;
};

/// Threshold above which the small dark-count assumption is questionable.
inline constexpr double kDarkCountWarnThreshold = 0.1;

/// Soft warning for large dark-count probabilities. The POVM algebra holds
/// for any delta in [0,1), so this is never an error.
std::optional<std::string> dark_count_warning(const DetectorParams& detector);

/// Number of detection modes M and number of registered clicks m.
class QnrConfig {
 public:
  QnrConfig(std::int64_t modes, std::int64_t clicks);

  /// Configuration realized by a binary tree of 50/50 splitters with the
  /// given number of layers (M = 2^layers).
  static QnrConfig binary_tree(int layers, std::int64_t clicks);

  std::int64_t modes() const noexcept { return modes_; }
  std::int64_t clicks() const noexcept { return clicks_; }

 private:
  std::int64_t modes_;
  std::int64_t clicks_;
};

/// Probability vector over photon number, indexed n = 0..n_max.
struct NumberDistribution {
  std::vector<double> probs;

  int n_max() const noexcept { return static_cast<int>(probs.size()) - 1; }
  double operator[](std::size_t n) const { return probs.at(n); }
  double total() const;
};

/// |c_n|^2 = mu^n / (1+mu)^(1+n) for n = 0..n_max.
NumberDistribution thermal_distribution(const SourceParams& source, int n_max);

/// Mass of the thermal law beyond n_max: (mu/(1+mu))^(n_max+1).
double thermal_tail(const SourceParams& source, int n_max);

/// Smallest n_max whose thermal tail is at most tail_tol.
int truncation_cutoff(const SourceParams& source, double tail_tol = kDefaultTailTol);

/// Exact n! for n <= 20.
std::uint64_t factorial_exact(int n);

/// log(n!) for any n >= 0.
double log_factorial(int n);

/// Population weight n! / (M^n k_1! ... k_M!) of the occupation (k_1..k_M),
/// with M = composition.size() and n the total photon count. Exact integer
/// arithmetic for n <= 20, log space beyond.
double multinomial_weight(std::span<const int> composition);

/// Binomial coefficient C(n, k) as a double; zero when k is out of range.
double binomial(std::int64_t n, std::int64_t k);

}  // namespace qnr
