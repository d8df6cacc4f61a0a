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

#include "qnr/closed_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qnr/numeric.hpp"

namespace qnr {

namespace {

using StirlingTable = std::array<std::array<Stirling, kStirlingExactMax + 1>, kStirlingExactMax + 1>;

StirlingTable make_stirling_table() {
  StirlingTable s{};
  s[0][0] = 1;
  for (int n = 1; n <= kStirlingExactMax; ++n) {
    for (int m = 1; m <= n; ++m) {
      s[n][m] = static_cast<Stirling>(m) * s[n - 1][m] + s[n - 1][m - 1];
    }
  }
  return s;
}

const StirlingTable& stirling_table() {
  static const StirlingTable table = make_stirling_table();
  return table;
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Bracketed single-click factor 1/(1+a(1-1/M)) - (1-delta)/(1+a), a = eta mu,
// in a form free of cancellation.
double single_click_bracket(std::int64_t modes, const SourceParams& source,
                            const DetectorParams& detector) {
  const double a = detector.eta() * source.mu();
  const double inv_m = 1.0 / static_cast<double>(modes);
  const double delta = detector.delta();
  const double numer = delta * (1.0 + a) + (1.0 - delta) * a * inv_m;
  const double denom = (1.0 + a * (1.0 - inv_m)) * (1.0 + a);
  return numer / denom;
}

void require_modes(std::int64_t modes) {
  if (modes < 1) {
    throw std::invalid_argument("number of modes must be >= 1");
  }
}

void require_n_max(int n_max) {
  if (n_max < 0) {
    throw std::invalid_argument("n_max must be >= 0");
  }
}

}  // namespace

Stirling stirling2_exact(int n, int m) {
  if (n < 0 || m < 0) {
    throw std::invalid_argument("Stirling numbers need n, m >= 0");
  }
  if (n > kStirlingExactMax) {
    throw std::out_of_range("exact Stirling numbers only available for n <= 30");
  }
  if (m > n) {
    return 0;
  }
  return stirling_table()[n][m];
}

double log_stirling2(int n, int m) {
  if (n < 0 || m < 0) {
    throw std::invalid_argument("Stirling numbers need n, m >= 0");
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (m > n || (m == 0 && n > 0)) {
    return kNegInf;
  }
  if (n <= kStirlingExactMax) {
    return std::log(static_cast<double>(stirling_table()[n][m]));
  }
  // Row recurrence in log space; every term is positive so nothing cancels.
  std::vector<double> row(static_cast<std::size_t>(m) + 1, kNegInf);
  row[0] = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int k = std::min(i, m); k >= 1; --k) {
      row[k] = log_add(std::log(static_cast<double>(k)) + row[k], row[k - 1]);
    }
    row[0] = kNegInf;
  }
  return row[m];
}

double stirling2(int n, int m) {
  if (n <= kStirlingExactMax) {
    return static_cast<double>(stirling2_exact(n, m));
  }
  return std::exp(log_stirling2(n, m));
}

std::string to_string(Stirling value) {
  if (value == 0) {
    return "0";
  }
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

double click_probability(const QnrConfig& config, const SourceParams& source,
                         const DetectorParams& detector, int n_max) {
  require_n_max(n_max);
  const std::int64_t modes = config.modes();
  const std::int64_t clicks = config.clicks();
  if (clicks == 1 && modes > kClosedFormSwitchModes) {
    return single_click_probability(modes, source, detector);
  }

  const NumberDistribution thermal = thermal_distribution(source, n_max);
  const double eta = detector.eta();
  const double keep = 1.0 - detector.delta();
  const auto m_real = static_cast<double>(modes);

  CompensatedSum alternating;
  for (std::int64_t j = 0; j <= clicks; ++j) {
    // Generating function of the truncated thermal law at x_j.
    const double x = (1.0 - eta) + static_cast<double>(j) * eta / m_real;
    double power = 1.0;
    CompensatedSum series;
    for (double p : thermal.probs) {
      series += p * power;
      power *= x;
    }
    const double sign = ((clicks - j) % 2 == 0) ? 1.0 : -1.0;
    const double dark = std::pow(keep, static_cast<double>(modes - j));
    alternating += sign * binomial(clicks, j) * dark * series.value();
  }
  const double result = binomial(modes, clicks) * alternating.value();
  if (!std::isfinite(result)) {
    throw std::overflow_error("click probability series overflowed for this (M, m)");
  }
  return result;
}

ClickStatistics click_statistics(const QnrConfig& config, const SourceParams& source,
                                 const DetectorParams& detector, int n_max) {
  const double p = click_probability(config, source, detector, n_max);
  return ClickStatistics{std::clamp(p, 0.0, 1.0), config, source, detector};
}

std::vector<double> click_distribution(std::int64_t modes, const SourceParams& source,
                                       const DetectorParams& detector, int n_max) {
  require_modes(modes);
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(modes) + 1);
  for (std::int64_t m = 0; m <= modes; ++m) {
    probs.push_back(click_probability(QnrConfig(modes, m), source, detector, n_max));
  }
  return probs;
}

double click_probability_ideal(const QnrConfig& config, const SourceParams& source, int n_max) {
  require_n_max(n_max);
  const std::int64_t modes = config.modes();
  const int clicks = static_cast<int>(config.clicks());
  const auto m_real = static_cast<double>(modes);
  const NumberDistribution thermal = thermal_distribution(source, n_max);

  double log_falling = 0.0;
  for (int i = 0; i < clicks; ++i) {
    log_falling += std::log(m_real - i);
  }
  double falling = 1.0;
  for (int i = 0; i < clicks; ++i) {
    falling *= m_real - i;
  }

  CompensatedSum total;
  for (int n = clicks; n <= n_max; ++n) {
    const double p = thermal.probs[static_cast<std::size_t>(n)];
    if (p == 0.0) {
      continue;
    }
    double term = 0.0;
    if (n <= kStirlingExactMax && std::isfinite(falling)) {
      term = p * falling * stirling2(n, clicks) / std::pow(m_real, n);
    } else {
      term = std::exp(std::log(p) + log_falling + log_stirling2(n, clicks) - n * std::log(m_real));
    }
    total += term;
  }
  return total.value();
}

double xi(std::int64_t modes, const DetectorParams& detector) {
  require_modes(modes);
  const auto m_real = static_cast<double>(modes);
  return m_real * std::pow(1.0 - detector.delta(), m_real - 1.0);
}

double single_click_probability(std::int64_t modes, const SourceParams& source,
                                const DetectorParams& detector) {
  return xi(modes, detector) * single_click_bracket(modes, source, detector);
}

HeraldedState heralded_distribution(std::int64_t modes, const SourceParams& source,
                                    const DetectorParams& detector, int n_max) {
  require_modes(modes);
  if (n_max < 1) {
    throw std::invalid_argument("heralded distribution needs n_max >= 1");
  }
  const double bracket = single_click_bracket(modes, source, detector);
  if (!(bracket > 0.0)) {
    throw std::domain_error("a single click has zero probability; heralded state undefined");
  }

  const double eta = detector.eta();
  const double delta = detector.delta();
  const double split = eta / static_cast<double>(modes);
  const double lost = 1.0 - eta;
  const double x = lost + split;

  NumberDistribution dist = thermal_distribution(source, n_max);
  // diff_n = x^n - lost^n, built up by diff_{n+1} = x diff_n + lost^n (x - lost).
  double diff = 0.0;
  double lost_pow = 1.0;
  for (auto& entry : dist.probs) {
    entry *= (diff + delta * lost_pow) / bracket;
    diff = x * diff + lost_pow * split;
    lost_pow *= lost;
  }

  HeraldedState state{std::move(dist), 0.0, 0.0};
  state.herald_probability = xi(modes, detector) * bracket;
  state.fidelity_to_single = state.distribution.probs[1];
  return state;
}

double single_photon_fidelity(std::int64_t modes, const SourceParams& source,
                              const DetectorParams& detector) {
  require_modes(modes);
  const double bracket = single_click_bracket(modes, source, detector);
  if (!(bracket > 0.0)) {
    throw std::domain_error("a single click has zero probability; fidelity undefined");
  }
  const double mu = source.mu();
  const double eta = detector.eta();
  const double one_pair = mu / ((1.0 + mu) * (1.0 + mu));
  const double one_click = eta / static_cast<double>(modes) + detector.delta() * (1.0 - eta);
  return one_pair * one_click / bracket;
}

double fidelity_large_m_limit(const SourceParams& source, const DetectorParams& detector) {
  if (detector.delta() == 0.0) {
    throw std::domain_error("large-M fidelity limit requires delta > 0");
  }
  const double mu = source.mu();
  const double eta = detector.eta();
  return mu * (1.0 + eta * mu) * (1.0 - eta) / ((1.0 + mu) * (1.0 + mu));
}

}  // namespace qnr
