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

#include "qnr/commands.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qnr/closed_form.hpp"
#include "qnr/optimizer.hpp"

namespace qnr {

namespace {

const std::vector<std::string> kBaseColumns{"m_modes", "mu", "eta", "delta", "p_click_1", "fidelity_1"};

std::vector<std::string> columns_with(std::initializer_list<const char*> extra) {
  std::vector<std::string> cols = kBaseColumns;
  cols.insert(cols.end(), extra.begin(), extra.end());
  return cols;
}

Cell fidelity_cell(std::int64_t modes, const SourceParams& source, const DetectorParams& detector) {
  try {
    return single_photon_fidelity(modes, source, detector);
  } catch (const std::domain_error&) {
    return std::monostate{};
  }
}

std::vector<Cell> base_row(std::int64_t modes, const SourceParams& source,
                           const DetectorParams& detector) {
  return {modes, source.mu(), detector.eta(), detector.delta(),
          single_click_probability(modes, source, detector), fidelity_cell(modes, source, detector)};
}

template <typename T>
Cell optional_cell(const std::optional<T>& value) {
  if (value) {
    return *value;
  }
  return std::monostate{};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) {
    parts.push_back(part);
  }
  if (!text.empty() && text.back() == sep) {
    parts.emplace_back();
  }
  return parts;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

std::int64_t to_integer(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  if (used != s.size()) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  return v;
}

void add_warning(CommandResult& result, const DetectorParams& detector) {
  if (auto w = dark_count_warning(detector)) {
    result.notes.push_back("warning: " + *w);
  }
}

}  // namespace

std::vector<std::int64_t> ModeRange::values() const {
  std::vector<std::int64_t> out;
  for (std::int64_t m = first; m <= last; m += stride) {
    out.push_back(m);
  }
  return out;
}

ModeRange parse_mode_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty() || parts.size() > 3) {
    throw std::invalid_argument("mode range must be M, first:last or first:last:stride");
  }
  ModeRange range{to_integer(parts[0]), to_integer(parts[0]), 1};
  if (parts.size() >= 2) {
    range.last = to_integer(parts[1]);
  }
  if (parts.size() == 3) {
    range.stride = to_integer(parts[2]);
  }
  if (range.first < 1 || range.last < range.first || range.stride < 1) {
    throw std::invalid_argument("mode range needs 1 <= first <= last and stride >= 1");
  }
  return range;
}

std::vector<double> parse_real_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') == std::string::npos) {
    for (const auto& part : split(text, ',')) {
      grid.push_back(to_real(part));
    }
  } else {
    const auto parts = split(text, ':');
    if (parts.size() < 3 || parts.size() > 4) {
      throw std::invalid_argument("grid range must be start:stop:count[:lin|log]");
    }
    const double start = to_real(parts[0]);
    const double stop = to_real(parts[1]);
    const std::int64_t count = to_integer(parts[2]);
    const std::string scale = parts.size() == 4 ? parts[3] : "lin";
    if (count < 1) {
      throw std::invalid_argument("grid count must be >= 1");
    }
    if (scale != "lin" && scale != "log") {
      throw std::invalid_argument("grid scale must be lin or log");
    }
    if (scale == "log" && !(start > 0.0 && stop > 0.0)) {
      throw std::invalid_argument("logarithmic grids need positive endpoints");
    }
    for (std::int64_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      grid.push_back(scale == "lin" ? start + t * (stop - start)
                                    : std::exp(std::log(start) + t * (std::log(stop) - std::log(start))));
    }
  }
  if (grid.empty()) {
    throw std::invalid_argument("grid must be nonempty");
  }
  return grid;
}

CommandResult cmd_distribution(std::int64_t modes, const SourceParams& source,
                               const DetectorParams& detector, int n_display, int n_max) {
  if (n_display < 1) {
    throw std::invalid_argument("n_display must be >= 1");
  }
  const int series = std::max(n_display, n_max);
  const HeraldedState herald = heralded_distribution(modes, source, detector, series);
  const NumberDistribution thermal = thermal_distribution(source, series);

  std::optional<NumberDistribution> oracle;
  if (modes <= kOracleColumnMaxModes && series <= kMaxOraclePhotons) {
    oracle = exact_heralded_distribution(QnrConfig(modes, 1), source, detector, series);
  }

  CommandResult result;
  result.table.columns = columns_with({"n", "pre_herald", "post_herald", "oracle"});
  const auto base = base_row(modes, source, detector);
  for (int n = 0; n <= n_display; ++n) {
    auto row = base;
    const auto i = static_cast<std::size_t>(n);
    row.emplace_back(std::int64_t{n});
    row.emplace_back(thermal.probs[i]);
    row.emplace_back(herald.distribution.probs[i]);
    row.push_back(oracle ? Cell{oracle->probs[i]} : Cell{});
    result.table.add_row(std::move(row));
  }
  add_warning(result, detector);
  return result;
}

CommandResult cmd_sweep_m(const ModeRange& range, const SourceParams& source,
                          const DetectorParams& detector) {
  CommandResult result;
  result.table.columns = kBaseColumns;
  const bool degenerate = std::holds_alternative<std::monostate>(fidelity_cell(1, source, detector));
  if (range.stride == 1 && !degenerate) {
    const SingleClickCurve curve = evaluate_curve(source, detector, range.first, range.last);
    for (std::size_t i = 0; i < curve.probability.size(); ++i) {
      result.table.add_row({range.first + static_cast<std::int64_t>(i), source.mu(), detector.eta(),
                            detector.delta(), curve.probability[i], curve.fidelity[i]});
    }
  } else {
    for (std::int64_t modes : range.values()) {
      result.table.add_row(base_row(modes, source, detector));
    }
  }
  if (degenerate) {
    result.notes.push_back("note: a single click has zero probability; fidelity column left empty");
  }
  add_warning(result, detector);
  return result;
}

CommandResult cmd_contour(const std::vector<double>& etas, const std::vector<double>& deltas,
                          const SourceParams& source, std::optional<std::int64_t> search_bound) {
  if (etas.empty() || deltas.empty()) {
    throw std::invalid_argument("contour grids must be nonempty");
  }
  for (double d : deltas) {
    if (!(d > 0.0)) {
      throw std::invalid_argument("contour dark-count grid must be strictly positive");
    }
  }
  CommandResult result;
  result.table.columns = columns_with({"m_fidelity_approx", "search_bound", "fidelity_at_bound"});
  for (double eta : etas) {
    for (double delta : deltas) {
      const DetectorParams detector(eta, delta);
      const std::int64_t bound = search_bound ? *search_bound : default_search_bound(detector);
      const FidelityOptimum opt = find_fidelity_opt(source, detector, bound);
      auto row = base_row(opt.modes, source, detector);
      std::optional<double> approx;
      try {
        approx = approx_fidelity_opt(source, detector);
      } catch (const std::domain_error&) {
      }
      row.push_back(optional_cell(approx));
      row.emplace_back(bound);
      row.emplace_back(std::int64_t{opt.at_bound ? 1 : 0});
      result.table.add_row(std::move(row));
      if (opt.at_bound) {
        result.notes.push_back("warning: fidelity argmax at search bound for eta=" + format_number(eta) +
                               " delta=" + format_number(delta));
      }
    }
  }
  return result;
}

CommandResult cmd_verify(const VerifyGrid& grid, double tolerance) {
  if (!(tolerance >= 0.0)) {
    throw std::invalid_argument("tolerance must be >= 0");
  }
  const VerifyReport report = verify_oracle_grid(grid);
  CommandResult result;
  result.table.columns = columns_with(
      {"clicks", "n_max", "closed_form", "oracle", "ideal", "abs_deviation"});
  for (const auto& p : report.points) {
    const SourceParams source(p.mu);
    const DetectorParams detector(p.eta, p.delta);
    auto row = base_row(p.modes, source, detector);
    row.emplace_back(p.clicks);
    row.emplace_back(std::int64_t{grid.n_max});
    row.emplace_back(p.closed_form);
    row.emplace_back(p.oracle);
    row.push_back(p.has_ideal ? Cell{p.ideal} : Cell{});
    row.emplace_back(p.deviation());
    result.table.add_row(std::move(row));
  }
  const auto& worst = report.points.at(report.worst_index);
  std::ostringstream summary;
  summary << "verify: " << report.points.size() << " points, max |closed form - oracle| = "
          << format_number(report.max_deviation) << " at M=" << worst.modes << " m=" << worst.clicks
          << " mu=" << format_number(worst.mu) << " eta=" << format_number(worst.eta)
          << " delta=" << format_number(worst.delta) << ", tolerance " << format_number(tolerance);
  result.notes.push_back(summary.str());
  if (!(report.max_deviation <= tolerance)) {
    result.notes.push_back("verify: FAILED");
    result.exit_code = kExitVerifyFailed;
  } else {
    result.notes.push_back("verify: ok");
  }
  return result;
}

CommandResult cmd_optimize(const SourceParams& source, const DetectorParams& detector,
                           std::optional<std::int64_t> search_bound) {
  if (!search_bound && detector.delta() == 0.0) {
    throw std::invalid_argument("delta = 0 has no default search bound; pass --search-bound");
  }
  const OptimaReport report = optimize(source, detector, search_bound);
  CommandResult result;
  result.table.columns = columns_with({"m_fidelity_approx", "m_prob_local_max", "prob_at_local_max",
                                       "m_prob_approx", "search_bound", "fidelity_at_bound"});
  auto row = base_row(report.m_fidelity_opt, source, detector);
  row.push_back(optional_cell(report.m_fidelity_approx));
  row.push_back(optional_cell(report.m_prob_local_max));
  row.push_back(optional_cell(report.prob_at_local_max));
  row.push_back(optional_cell(report.m_prob_approx));
  row.emplace_back(report.search_bound);
  row.emplace_back(std::int64_t{report.fidelity_at_bound ? 1 : 0});
  result.table.add_row(std::move(row));
  if (report.fidelity_at_bound) {
    result.notes.push_back("warning: fidelity argmax equals the search bound; the optimum may lie beyond it");
  }
  if (!report.m_prob_local_max) {
    result.notes.push_back("note: no single-click probability local maximum within the search bound");
  }
  add_warning(result, detector);
  return result;
}

CommandResult cmd_mc(const QnrConfig& config, const SourceParams& source,
                     const DetectorParams& detector, const McConfig& mc, int n_max) {
  const McEstimate est = mc_click_probability(config, source, detector, mc);
  const double exact = click_probability(config, source, detector, n_max);
  CommandResult result;
  result.table.columns = columns_with(
      {"clicks", "trials", "seed", "mc_estimate", "mc_std_error", "exact", "z_score"});
  auto row = base_row(config.modes(), source, detector);
  row.emplace_back(config.clicks());
  row.emplace_back(mc.trials);
  row.emplace_back(mc.seed);
  row.emplace_back(est.estimate);
  row.emplace_back(est.std_error);
  row.emplace_back(exact);
  row.push_back(est.std_error > 0.0 ? Cell{(est.estimate - exact) / est.std_error} : Cell{});
  result.table.add_row(std::move(row));
  add_warning(result, detector);
  return result;
}

}  // namespace qnr
