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

#include "qnr/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qnr {

SourceParams::SourceParams(double mu) : mu_(mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("mu must be a finite value >= 0");
  }
}

DetectorParams::DetectorParams(double eta, double delta) : eta_(eta), delta_(delta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in [0, 1]");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1)");
  }
}

std::optional<std::string> dark_count_warning(const DetectorParams& detector) {
  if (detector.delta() > kDarkCountWarnThreshold) {
    return "dark-count probability " + std::to_string(detector.delta()) +
           " is not small; results assume independent per-mode dark counts";
  }
  return std::nullopt;
}

QnrConfig::QnrConfig(std::int64_t modes, std::int64_t clicks) : modes_(modes), clicks_(clicks) {
  if (modes < 1) {
    throw std::invalid_argument("number of modes must be >= 1");
  }
  if (clicks < 0 || clicks > modes) {
    throw std::invalid_argument("clicks must lie in [0, modes]");
  }
}

QnrConfig QnrConfig::binary_tree(int layers, std::int64_t clicks) {
  if (layers < 0 || layers > 62) {
    throw std::invalid_argument("tree layers must lie in [0, 62]");
  }
  return QnrConfig(std::int64_t{1} << layers, clicks);
}

double NumberDistribution::total() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

NumberDistribution thermal_distribution(const SourceParams& source, int n_max) {
  if (n_max < 0) {
    throw std::invalid_argument("n_max must be >= 0");
  }
  NumberDistribution dist;
  dist.probs.resize(static_cast<std::size_t>(n_max) + 1);
  const double r = source.ratio();
  double p = 1.0 / (1.0 + source.mu());
  for (auto& entry : dist.probs) {
    entry = p;
    p *= r;
  }
  return dist;
}

double thermal_tail(const SourceParams& source, int n_max) {
  return std::pow(source.ratio(), n_max + 1);
}

int truncation_cutoff(const SourceParams& source, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::invalid_argument("tail_tol must lie in (0, 1)");
  }
  const double r = source.ratio();
  if (r == 0.0) {
    return 0;
  }
  // Start from the logarithmic estimate and correct for rounding either way.
  int n = std::max(0, static_cast<int>(std::floor(std::log(tail_tol) / std::log(r))) - 2);
  while (n > 0 && thermal_tail(source, n - 1) <= tail_tol) {
    --n;
  }
  while (thermal_tail(source, n) > tail_tol) {
    ++n;
  }
  return n;
}

std::uint64_t factorial_exact(int n) {
  if (n < 0 || n > 20) {
    throw std::out_of_range("exact factorial only defined for 0 <= n <= 20");
  }
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

double log_factorial(int n) {
  if (n < 0) {
    throw std::invalid_argument("factorial of a negative number");
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double multinomial_weight(std::span<const int> composition) {
  if (composition.empty()) {
    throw std::invalid_argument("composition needs at least one mode");
  }
  int n = 0;
  for (int k : composition) {
    if (k < 0) {
      throw std::invalid_argument("occupation numbers must be >= 0");
    }
    n += k;
  }
  const auto modes = static_cast<double>(composition.size());
  if (n <= 20) {
    std::uint64_t coeff = factorial_exact(n);
    for (int k : composition) {
      coeff /= factorial_exact(k);
    }
    return static_cast<double>(coeff) / std::pow(modes, n);
  }
  double log_w = log_factorial(n) - n * std::log(modes);
  for (int k : composition) {
    log_w -= log_factorial(k);
  }
  return std::exp(log_w);
}

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  // Exact integers below 2^53 are recovered by rounding.
  return c < 9.0e15 ? std::round(c) : c;
}

}  // namespace qnr
