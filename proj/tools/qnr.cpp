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

// qnr: click statistics, heralded distributions and mode-count optima for
// quasi-number-resolving heralding detectors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "qnr/commands.hpp"

namespace {

struct Common {
  double mu = qnr::kDefaultMu;
  double eta = qnr::kDefaultEta;
  double delta = qnr::kDefaultDelta;
  std::optional<int> n_max;
  double tail_tol = qnr::kDefaultTailTol;
  qnr::OutputFormat format = qnr::OutputFormat::Csv;
  std::string out;

  int resolved_n_max(const qnr::SourceParams& source) const {
    return n_max ? *n_max : qnr::truncation_cutoff(source, tail_tol);
  }
};

void add_common(CLI::App* cmd, Common& c, bool detector_flags = true) {
  cmd->add_option("--mu", c.mu, "Mean pair number per pump pulse")->capture_default_str();
  if (detector_flags) {
    cmd->add_option("--eta", c.eta, "Per-mode detection efficiency")->capture_default_str();
    cmd->add_option("--delta", c.delta, "Per-mode dark-count probability")->capture_default_str();
  }
  cmd->add_option("--n-max", c.n_max, "Photon-number truncation (default: from --tail-tol)");
  cmd->add_option("--tail-tol", c.tail_tol, "Thermal tail tolerance")->capture_default_str();
  const std::map<std::string, qnr::OutputFormat> formats{{"csv", qnr::OutputFormat::Csv},
                                                         {"json", qnr::OutputFormat::Json}};
  cmd->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("csv");
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
}

int emit(const qnr::CommandResult& result, const Common& c) {
  for (const auto& note : result.notes) {
    std::cerr << note << '\n';
  }
  if (c.out.empty()) {
    qnr::write_table(result.table, c.format, std::cout);
  } else {
    std::ofstream file(c.out);
    if (!file) {
      std::cerr << "error: cannot open " << c.out << " for writing\n";
      return qnr::kExitValidation;
    }
    qnr::write_table(result.table, c.format, file);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-number-resolving heralding statistics"};
  app.require_subcommand(1);

  Common c;
  std::string modes_text = "1";
  std::string modes_range = "1:5000";
  int n_display = 10;
  std::optional<std::int64_t> search_bound;
  std::string eta_range = "0.1:1:10";
  std::string delta_range = "1e-5:1e-2:7:log";
  std::string mu_grid = "0.2,1,2";
  std::string verify_eta = "0.3,0.8,1";
  std::string verify_delta = "0,0.0005,0.01";
  std::string verify_modes = "1:5";
  double tolerance = 1e-9;
  std::optional<std::uint64_t> seed;
  std::int64_t trials = 1000000;
  std::int64_t clicks = 1;

  auto* distribution = app.add_subcommand("distribution", "Heralded photon-number distribution");
  add_common(distribution, c);
  distribution->add_option("--modes", modes_text, "Number of detection modes M")->capture_default_str();
  distribution->add_option("--n-display", n_display, "Largest photon number shown")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep-m", "Single-click probability and fidelity versus M");
  add_common(sweep, c);
  sweep->add_option("--modes-range,--modes", modes_range, "first:last[:stride]")->capture_default_str();

  auto* contour = app.add_subcommand("contour", "Fidelity-optimal M over an eta x delta grid");
  add_common(contour, c, false);
  contour->add_option("--eta-range", eta_range, "Efficiency grid")->capture_default_str();
  contour->add_option("--delta-range", delta_range, "Dark-count grid (strictly positive)")
      ->capture_default_str();
  contour->add_option("--search-bound", search_bound, "Scan limit (default ceil(4/delta))");

  auto* verify = app.add_subcommand("verify", "Closed form versus exact oracle regression gate");
  add_common(verify, c, false);
  verify->add_option("--modes-range,--modes", verify_modes, "Mode range; its upper end is max M")
      ->capture_default_str();
  verify->add_option("--mu-grid", mu_grid, "Source grid")->capture_default_str();
  verify->add_option("--eta-range", verify_eta, "Efficiency grid")->capture_default_str();
  verify->add_option("--delta-range", verify_delta, "Dark-count grid")->capture_default_str();
  verify->add_option("--tolerance", tolerance, "Maximum allowed deviation")->capture_default_str();

  auto* optimize = app.add_subcommand("optimize", "Integer optima of fidelity and single-click probability");
  add_common(optimize, c);
  optimize->add_option("--search-bound", search_bound, "Scan limit (default ceil(4/delta))");

  auto* mc = app.add_subcommand("mc", "Seeded Monte Carlo estimate of the m-click probability");
  add_common(mc, c);
  mc->add_option("--modes", modes_text, "Number of detection modes M")->capture_default_str();
  mc->add_option("--clicks", clicks, "Click count m")->capture_default_str();
  mc->add_option("--trials", trials, "Number of trials")->capture_default_str();
  mc->add_option("--seed", seed, "RNG seed (required)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qnr::kExitOk : qnr::kExitValidation;
  }

  try {
    if (*distribution) {
      const qnr::SourceParams source(c.mu);
      const qnr::DetectorParams detector(c.eta, c.delta);
      const auto modes = qnr::parse_mode_range(modes_text).first;
      return emit(qnr::cmd_distribution(modes, source, detector, n_display, c.resolved_n_max(source)), c);
    }
    if (*sweep) {
      const qnr::SourceParams source(c.mu);
      const qnr::DetectorParams detector(c.eta, c.delta);
      return emit(qnr::cmd_sweep_m(qnr::parse_mode_range(modes_range), source, detector), c);
    }
    if (*contour) {
      const qnr::SourceParams source(c.mu);
      return emit(qnr::cmd_contour(qnr::parse_real_grid(eta_range), qnr::parse_real_grid(delta_range),
                                   source, search_bound),
                  c);
    }
    if (*verify) {
      qnr::VerifyGrid grid;
      grid.max_modes = qnr::parse_mode_range(verify_modes).last;
      grid.n_max = c.n_max ? *c.n_max : 8;
      grid.mus = qnr::parse_real_grid(mu_grid);
      grid.etas = qnr::parse_real_grid(verify_eta);
      grid.deltas = qnr::parse_real_grid(verify_delta);
      return emit(qnr::cmd_verify(grid, tolerance), c);
    }
    if (*optimize) {
      const qnr::SourceParams source(c.mu);
      const qnr::DetectorParams detector(c.eta, c.delta);
      return emit(qnr::cmd_optimize(source, detector, search_bound), c);
    }
    if (*mc) {
      if (!seed) {
        std::cerr << "error: mc requires an explicit --seed\n";
        return qnr::kExitValidation;
      }
      const qnr::SourceParams source(c.mu);
      const qnr::DetectorParams detector(c.eta, c.delta);
      const qnr::QnrConfig config(qnr::parse_mode_range(modes_text).first, clicks);
      return emit(qnr::cmd_mc(config, source, detector, qnr::McConfig(trials, *seed),
                              c.resolved_n_max(source)),
                  c);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qnr::kExitValidation;
  }
  return qnr::kExitValidation;
}
