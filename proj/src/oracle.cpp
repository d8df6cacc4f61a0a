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

#include "qnr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qnr/numeric.hpp"

namespace qnr {

namespace {

void check_photons(int n, const ExactOracleConfig& config) {
  if (n < 0) {
    throw std::invalid_argument("photon number must be >= 0");
  }
  if (n > config.max_photons()) {
    throw std::length_error("photon number exceeds the oracle enumeration bound");
  }
}

// Per-mode click probability for k incident photons.
double click_prob(int k, const DetectorParams& detector) {
  return 1.0 - (1.0 - detector.delta()) * std::pow(1.0 - detector.eta(), k);
}

// Binomial pmf table: row r holds P(k of r photons land in the current mode).
std::vector<std::vector<double>> split_table(int n, double p) {
  std::vector<std::vector<double>> table(static_cast<std::size_t>(n) + 1);
  for (int r = 0; r <= n; ++r) {
    auto& row = table[static_cast<std::size_t>(r)];
    row.resize(static_cast<std::size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) {
      row[static_cast<std::size_t>(k)] = binomial(r, k) * std::pow(p, k) * std::pow(1.0 - p, r - k);
    }
  }
  return table;
}

// Click-count distribution for n photons over `modes` modes, tracked exactly
// for counts 0..cap; counts above cap are lumped into entry cap + 1 (absent
// when cap == modes).
std::vector<double> click_count_given_n(int n, std::int64_t modes, const DetectorParams& detector,
                                        std::int64_t cap) {
  const auto top = static_cast<std::size_t>(std::min(cap + 1, modes));
  const auto rows = static_cast<std::size_t>(n) + 1;

  std::vector<double> click_k(rows);
  for (int k = 0; k <= n; ++k) {
    click_k[static_cast<std::size_t>(k)] = click_prob(k, detector);
  }

  // state[r][c]: probability that r photons are still unassigned and c of the
  // modes processed so far clicked.
  std::vector<std::vector<double>> state(rows, std::vector<double>(top + 1, 0.0));
  std::vector<std::vector<double>> next = state;
  state[static_cast<std::size_t>(n)][0] = 1.0;

  std::vector<std::vector<double>> table;
  double table_p = -1.0;
  for (std::int64_t i = 0; i < modes; ++i) {
    // Remaining photons are uniform over the modes not yet processed.
    const double p = 1.0 / static_cast<double>(modes - i);
    if (p != table_p) {
      table = split_table(n, p);
      table_p = p;
    }
    for (auto& row : next) {
      std::fill(row.begin(), row.end(), 0.0);
    }
    const std::size_t c_max = std::min(static_cast<std::size_t>(i), top);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c <= c_max; ++c) {
        const double w = state[r][c];
        if (w == 0.0) {
          continue;
        }
        const std::size_t up = std::min(c + 1, top);
        for (std::size_t k = 0; k <= r; ++k) {
          const double move = w * table[r][k];
          if (move == 0.0) {
            continue;
          }
          next[r - k][up] += move * click_k[k];
          next[r - k][c] += move * (1.0 - click_k[k]);
        }
      }
    }
    std::swap(state, next);
  }
  return state[0];
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Runs trials [0, count) of block `block` and returns the number with exactly
// config.clicks() clicks.
std::int64_t mc_block(std::int64_t block, std::int64_t count, const QnrConfig& config,
                      const SourceParams& source, const DetectorParams& detector,
                      std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(block))));
  const double mu = source.mu();
  std::geometric_distribution<int> pairs(mu > 0.0 ? 1.0 / (1.0 + mu) : 0.5);
  std::uniform_int_distribution<std::int64_t> pick_mode(0, config.modes() - 1);
  std::bernoulli_distribution survives(detector.eta());

  std::vector<std::int64_t> lit;
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < count; ++t) {
    const int n = mu > 0.0 ? pairs(rng) : 0;
    lit.clear();
    for (int photon = 0; photon < n; ++photon) {
      const std::int64_t mode = pick_mode(rng);
      if (survives(rng) && std::find(lit.begin(), lit.end(), mode) == lit.end()) {
        lit.push_back(mode);
      }
    }
    const auto lit_count = static_cast<std::int64_t>(lit.size());
    std::int64_t clicks = lit_count;
    if (detector.delta() > 0.0) {
      std::binomial_distribution<std::int64_t> dark(config.modes() - lit_count, detector.delta());
      clicks += dark(rng);
    }
    hits += clicks == config.clicks() ? 1 : 0;
  }
  return hits;
}

McEstimate make_estimate(std::int64_t hits, std::int64_t trials) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return McEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), hits, trials};
}

std::int64_t block_count(const McConfig& mc) {
  return (mc.trials + kMcBlockTrials - 1) / kMcBlockTrials;
}

std::int64_t block_size(std::int64_t block, const McConfig& mc) {
  return std::min(kMcBlockTrials, mc.trials - block * kMcBlockTrials);
}

}  // namespace

ExactOracleConfig::ExactOracleConfig(int max_photons, std::int64_t modes)
    : max_photons_(max_photons), modes_(modes) {
  if (modes < 1) {
    throw std::invalid_argument("number of modes must be >= 1");
  }
  if (max_photons < 0) {
    throw std::invalid_argument("max_photons must be >= 0");
  }
  if (max_photons > kMaxOraclePhotons) {
    throw std::length_error("max_photons exceeds the oracle cap of 150");
  }
}

double ExactOracleConfig::assignment_count() const {
  return std::pow(static_cast<double>(modes_), max_photons_);
}

std::vector<double> exact_click_given_n(int n, const ExactOracleConfig& config,
                                        const DetectorParams& detector) {
  check_photons(n, config);
  return click_count_given_n(n, config.modes(), detector, config.modes());
}

std::vector<double> enumerate_click_given_n(int n, std::int64_t modes,
                                            const DetectorParams& detector) {
  const ExactOracleConfig config(n, modes);
  if (!config.enumerable()) {
    throw std::length_error("M^n exceeds the assignment enumeration bound of 1e8");
  }
  const auto m_dim = static_cast<std::size_t>(modes);
  std::vector<int> assignment(static_cast<std::size_t>(n), 0);
  std::vector<int> occupation(m_dim, 0);
  std::vector<CompensatedSum> sums(m_dim + 1);
  std::vector<double> pattern(m_dim + 1);
  const auto total = static_cast<std::int64_t>(std::llround(config.assignment_count()));

  for (std::int64_t index = 0; index < total; ++index) {
    std::fill(occupation.begin(), occupation.end(), 0);
    for (int mode : assignment) {
      ++occupation[static_cast<std::size_t>(mode)];
    }
    // Distribution of the click count over the 2^M patterns, by convolution.
    std::fill(pattern.begin(), pattern.end(), 0.0);
    pattern[0] = 1.0;
    for (std::size_t i = 0; i < m_dim; ++i) {
      const double c = click_prob(occupation[i], detector);
      for (std::size_t m = i + 1; m > 0; --m) {
        pattern[m] = pattern[m] * (1.0 - c) + pattern[m - 1] * c;
      }
      pattern[0] *= 1.0 - c;
    }
    for (std::size_t m = 0; m <= m_dim; ++m) {
      sums[m] += pattern[m];
    }
    // Odometer increment over photon labels.
    for (auto& mode : assignment) {
      if (++mode < modes) {
        break;
      }
      mode = 0;
    }
  }

  std::vector<double> result(m_dim + 1);
  for (std::size_t m = 0; m <= m_dim; ++m) {
    result[m] = sums[m].value() / static_cast<double>(total);
  }
  return result;
}

std::vector<double> exact_click_distribution(std::int64_t modes, const SourceParams& source,
                                             const DetectorParams& detector, int n_max) {
  const ExactOracleConfig config(n_max, modes);
  const NumberDistribution thermal = thermal_distribution(source, n_max);
  std::vector<CompensatedSum> sums(static_cast<std::size_t>(modes) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double p = thermal.probs[static_cast<std::size_t>(n)];
    if (p == 0.0) {
      continue;
    }
    const auto given_n = exact_click_given_n(n, config, detector);
    for (std::size_t m = 0; m < given_n.size(); ++m) {
      sums[m] += p * given_n[m];
    }
  }
  std::vector<double> result(sums.size());
  std::transform(sums.begin(), sums.end(), result.begin(),
                 [](const CompensatedSum& s) { return s.value(); });
  return result;
}

double exact_click_probability(const QnrConfig& config, const SourceParams& source,
                               const DetectorParams& detector, int n_max) {
  return exact_click_distribution(config.modes(), source, detector, n_max)
      .at(static_cast<std::size_t>(config.clicks()));
}

NumberDistribution exact_heralded_distribution(const QnrConfig& config, const SourceParams& source,
                                               const DetectorParams& detector, int n_max) {
  const ExactOracleConfig oracle(n_max, config.modes());
  NumberDistribution dist = thermal_distribution(source, n_max);
  const auto m = static_cast<std::size_t>(config.clicks());
  CompensatedSum norm;
  for (int n = 0; n <= n_max; ++n) {
    auto& entry = dist.probs[static_cast<std::size_t>(n)];
    entry *= click_count_given_n(n, oracle.modes(), detector, config.clicks())[m];
    norm += entry;
  }
  const double total = norm.value();
  if (!(total > 0.0)) {
    throw std::domain_error("conditioning click count has zero probability");
  }
  for (auto& entry : dist.probs) {
    entry /= total;
  }
  return dist;
}

McConfig::McConfig(std::int64_t trials_in, std::uint64_t seed_in) : trials(trials_in), seed(seed_in) {
  if (trials < 1) {
    throw std::invalid_argument("Monte Carlo needs at least one trial");
  }
}

McEstimate mc_click_probability(const QnrConfig& config, const SourceParams& source,
                                const DetectorParams& detector, const McConfig& mc) {
  const std::int64_t blocks = block_count(mc);
  std::int64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    hits += mc_block(b, block_size(b, mc), config, source, detector, mc.seed);
  }
  return make_estimate(hits, mc.trials);
}

McEstimate mc_click_probability_serial(const QnrConfig& config, const SourceParams& source,
                                       const DetectorParams& detector, const McConfig& mc) {
  std::int64_t hits = 0;
  for (std::int64_t b = 0; b < block_count(mc); ++b) {
    hits += mc_block(b, block_size(b, mc), config, source, detector, mc.seed);
  }
  return make_estimate(hits, mc.trials);
}

}  // namespace qnr
