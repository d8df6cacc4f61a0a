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

#include "qnr/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "qnr/closed_form.hpp"

namespace qnr {

namespace {

void require_dark_counts(const DetectorParams& detector) {
  if (detector.delta() == 0.0) {
    throw std::domain_error("approximation requires delta > 0");
  }
}

void require_range(std::int64_t first, std::int64_t last) {
  if (first < 1 || last < first) {
    throw std::invalid_argument("mode range must satisfy 1 <= first <= last");
  }
}

bool better(double value, std::int64_t modes, double best_value, std::int64_t best_modes) {
  return value > best_value || (value == best_value && modes < best_modes);
}

std::optional<ProbabilityLocalMax> scan_local_max(const std::vector<double>& p) {
  // p[i] holds P at M = i + 1.
  bool descended = false;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (p[i] < p[i - 1]) {
      descended = true;
    }
    if (descended && p[i - 1] < p[i] && p[i] >= p[i + 1]) {
      return ProbabilityLocalMax{static_cast<std::int64_t>(i) + 1, p[i]};
    }
  }
  return std::nullopt;
}

void require_bound(std::int64_t search_bound, std::int64_t minimum) {
  if (search_bound < minimum) {
    throw std::invalid_argument("search bound too small");
  }
}

}  // namespace

double approx_fidelity_opt(const SourceParams& source, const DetectorParams& detector) {
  require_dark_counts(detector);
  const double mu = source.mu();
  const double eta = detector.eta();
  const double delta = detector.delta();
  const double lead_denom = 1.0 + (2.0 * eta - 1.0) * mu;
  const double radicand =
      (1.0 + (2.0 * eta - 1.0 - (eta - 1.0) * delta) * mu) / ((1.0 + eta * mu) * delta);
  if (!(lead_denom > 0.0) || !(radicand >= 0.0)) {
    throw std::domain_error("fidelity-optimum approximation is not real for these parameters");
  }
  return eta * mu / lead_denom * (1.0 + std::sqrt(radicand));
}

double approx_prob_local_max(const SourceParams& source, const DetectorParams& detector) {
  require_dark_counts(detector);
  const double a = detector.eta() * source.mu();
  return (5.0 - a) / (2.0 * detector.delta() * (3.0 + a));
}

std::int64_t default_search_bound(const DetectorParams& detector) {
  require_dark_counts(detector);
  return static_cast<std::int64_t>(std::ceil(4.0 / detector.delta()));
}

SingleClickCurve evaluate_curve(const SourceParams& source, const DetectorParams& detector,
                                std::int64_t first_modes, std::int64_t last_modes) {
  require_range(first_modes, last_modes);
  const std::int64_t count = last_modes - first_modes + 1;
  // Throws on the degenerate case before entering the parallel region.
  single_photon_fidelity(first_modes, source, detector);
  SingleClickCurve curve{first_modes, std::vector<double>(static_cast<std::size_t>(count)),
                         std::vector<double>(static_cast<std::size_t>(count))};
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t modes = first_modes + i;
    curve.probability[static_cast<std::size_t>(i)] = single_click_probability(modes, source, detector);
    curve.fidelity[static_cast<std::size_t>(i)] = single_photon_fidelity(modes, source, detector);
  }
  return curve;
}

SingleClickCurve evaluate_curve_serial(const SourceParams& source, const DetectorParams& detector,
                                       std::int64_t first_modes, std::int64_t last_modes) {
  require_range(first_modes, last_modes);
  SingleClickCurve curve{first_modes, {}, {}};
  for (std::int64_t modes = first_modes; modes <= last_modes; ++modes) {
    curve.probability.push_back(single_click_probability(modes, source, detector));
    curve.fidelity.push_back(single_photon_fidelity(modes, source, detector));
  }
  return curve;
}

FidelityOptimum find_fidelity_opt(const SourceParams& source, const DetectorParams& detector,
                                  std::int64_t search_bound) {
  require_bound(search_bound, 1);
  // Fails fast on the degenerate case before entering the parallel region.
  double best_value = single_photon_fidelity(1, source, detector);
  std::int64_t best_modes = 1;
#pragma omp parallel
  {
    double local_value = best_value;
    std::int64_t local_modes = 1;
#pragma omp for schedule(static) nowait
    for (std::int64_t modes = 2; modes <= search_bound; ++modes) {
      const double f = single_photon_fidelity(modes, source, detector);
      if (better(f, modes, local_value, local_modes)) {
        local_value = f;
        local_modes = modes;
      }
    }
#pragma omp critical(qnr_fidelity_merge)
    if (better(local_value, local_modes, best_value, best_modes)) {
      best_value = local_value;
      best_modes = local_modes;
    }
  }
  return FidelityOptimum{best_modes, best_value, best_modes == search_bound && search_bound > 1};
}

FidelityOptimum find_fidelity_opt_serial(const SourceParams& source, const DetectorParams& detector,
                                         std::int64_t search_bound) {
  require_bound(search_bound, 1);
  double best_value = single_photon_fidelity(1, source, detector);
  std::int64_t best_modes = 1;
  for (std::int64_t modes = 2; modes <= search_bound; ++modes) {
    const double f = single_photon_fidelity(modes, source, detector);
    if (better(f, modes, best_value, best_modes)) {
      best_value = f;
      best_modes = modes;
    }
  }
  return FidelityOptimum{best_modes, best_value, best_modes == search_bound && search_bound > 1};
}

std::optional<ProbabilityLocalMax> find_prob_local_max(const SourceParams& source,
                                                       const DetectorParams& detector,
                                                       std::int64_t search_bound) {
  require_bound(search_bound, 3);
  std::vector<double> p(static_cast<std::size_t>(search_bound));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < search_bound; ++i) {
    p[static_cast<std::size_t>(i)] = single_click_probability(i + 1, source, detector);
  }
  return scan_local_max(p);
}

std::optional<ProbabilityLocalMax> find_prob_local_max_serial(const SourceParams& source,
                                                              const DetectorParams& detector,
                                                              std::int64_t search_bound) {
  require_bound(search_bound, 3);
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(search_bound));
  for (std::int64_t modes = 1; modes <= search_bound; ++modes) {
    p.push_back(single_click_probability(modes, source, detector));
  }
  return scan_local_max(p);
}

OptimaReport optimize(const SourceParams& source, const DetectorParams& detector,
                      std::optional<std::int64_t> search_bound) {
  const std::int64_t bound = search_bound ? *search_bound : default_search_bound(detector);
  const FidelityOptimum fid = find_fidelity_opt(source, detector, bound);

  OptimaReport report{fid.modes, fid.fidelity, fid.at_bound, std::nullopt,
                      std::nullopt, std::nullopt, std::nullopt, bound};
  if (bound >= 3) {
    if (const auto local = find_prob_local_max(source, detector, bound)) {
      report.m_prob_local_max = local->modes;
      report.prob_at_local_max = local->probability;
    }
  }
  if (detector.delta() > 0.0) {
    try {
      report.m_fidelity_approx = approx_fidelity_opt(source, detector);
    } catch (const std::domain_error&) {
      // Left absent outside the approximation's domain.
    }
    report.m_prob_approx = approx_prob_local_max(source, detector);
  }
  return report;
}

}  // namespace qnr
