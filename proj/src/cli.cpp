// Copyright 2026 The Georisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "georisk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "georisk/csv.hpp"
#include "georisk/errors.hpp"
#include "georisk/ingest.hpp"
#include "georisk/log.hpp"
#include "georisk/render.hpp"
#include "georisk/reports.hpp"
#include "georisk/scoring.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace georisk {

void RunConfig::validate() const {
  const auto positive = [](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidHyperparameter(std::string(name) + " must be positive, got " +
                                  csv::format_roundtrip(v));
    }
  };
  positive("--step", grid_step);
  positive("--step-size", fit.step_size);
  positive("--tol", fit.tol);
  if (fit.max_iters == 0) throw InvalidHyperparameter("--max-iters must be positive");
}

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = input;
  if (!geometry.empty()) j["geometry"] = geometry;
  j["target"] = target_name(target);
  j["grid_step"] = grid_step;
  j["alpha0"] = alpha0;
  j["beta0"] = beta0;
  j["step_size"] = fit.step_size;
  j["tol"] = fit.tol;
  j["max_iters"] = fit.max_iters;
  if (!out_dir.empty()) j["out_dir"] = out_dir;
  j["seed"] = seed;
  return j.dump();
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

void report_warnings(const ScoreTable& table, std::ostream& err) {
  for (const auto& w : table.warnings) err << "warning: " << w << '\n';
}

Target require_target(const std::string& name) {
  const auto t = parse_target(name);
  if (!t) throw InvalidHyperparameter("unknown target '" + name + "'");
  return *t;
}

std::string f4(double v) { return std::isfinite(v) ? csv::format_fixed(v, 4) : "n/a"; }

// Command bodies. Each returns an exit code; georisk::Error propagates.

int cmd_synth(const std::string& output, std::size_t regions, double alpha, double beta,
              double noise_sd, std::uint64_t seed, std::ostream& out) {
  const Dataset d =
      generate_synthetic(regions, WeightVector::from_alpha_beta(alpha, beta), noise_sd, seed);
  const fs::path path(output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_dataset(path, d);
  out << "wrote " << d.size() << " regions to " << output << '\n';
  return 0;
}

int cmd_score(const RunConfig& cfg, const std::string& output, std::ostream& out,
              std::ostream& err) {
  const Dataset d = load_dataset(cfg.input);
  const ScoreTable table = all_scores(d);
  report_warnings(table, err);
  const fs::path path(output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_score_table(path, table);
  out << "wrote " << table.rows() << " regions x " << table.column_names().size()
      << " scores to " << output << '\n';
  return 0;
}

int cmd_grid(const RunConfig& cfg, const std::string& output, std::ostream& out,
             std::ostream& err) {
  cfg.validate();
  const Dataset d = load_dataset(cfg.input);
  const ScoreTable table = all_scores(d);
  report_warnings(table, err);
  const auto targets = target_columns(cfg.target);
  const GridResult grid = grid_search(table, targets, cfg.grid_step);

  if (!output.empty()) {
    const fs::path csv_path(output);
    if (csv_path.has_parent_path()) fs::create_directories(csv_path.parent_path());
    std::ostringstream body;
    write_grid_csv(body, grid);
    write_text(csv_path, body.str());
    fs::path json_path = csv_path;
    json_path.replace_extension(".json");
    auto summary = nlohmann::ordered_json::parse(grid_summary_json(grid, targets));
    summary["config"] = nlohmann::ordered_json::parse(cfg.to_json());
    write_text(json_path, summary.dump(2));
  }
  out << grid.argmin.to_string(2) << '\n';
  out << "objective=" << csv::format_fixed(grid.min_objective, 6) << '\n';
  if (grid.argmin_on_feasibility_edge()) {
    out << "note: argmin lies on the gamma = step feasibility edge; the unconstrained "
           "optimum may have gamma = 0\n";
  }
  return 0;
}

int cmd_fit(const RunConfig& cfg, const std::string& output, std::size_t trace_every,
            std::ostream& out, std::ostream& err) {
  cfg.validate();
  const WeightVector start = WeightVector::from_alpha_beta(cfg.alpha0, cfg.beta0);
  if (!start.in_open_simplex()) {
    throw InvalidStart("start alpha0=" + csv::format_roundtrip(cfg.alpha0) +
                       " beta0=" + csv::format_roundtrip(cfg.beta0) +
                       " is not strictly inside the simplex");
  }
  const Dataset d = load_dataset(cfg.input);
  const ScoreTable table = all_scores(d);
  report_warnings(table, err);
  const Split split = alternating_split(d);

  nlohmann::ordered_json report;
  report["config"] = nlohmann::ordered_json::parse(cfg.to_json());
  report["split"] = {{"train", split.train.size()}, {"test", split.test.size()}};
  report["results"] = nlohmann::ordered_json::array();

  out << std::left << std::setw(10) << "target" << std::setw(10) << "method"
      << std::setw(12) << "train_mae" << std::setw(12) << "test_mae"
      << "parameters\n";
  for (const auto& column : target_columns(cfg.target)) {
    const auto train = make_rows(table, column, split.train);
    const auto test = make_rows(table, column, split.test);
    const FitResult fit = fit_subgradient(train, start, cfg.fit, test);
    const OlsResult ols = fit_ols(train, test);
    const std::string label = column == kPositiveScore ? "positive" : "death";

    out << std::setw(10) << label << std::setw(10) << "descent" << std::setw(12)
        << f4(fit.train_mae) << std::setw(12) << f4(fit.test_mae)
        << fit.weights.to_string(4) << " stop=" << stop_reason_name(fit.stop_reason)
        << " iters=" << fit.iterations << '\n';
    out << std::setw(10) << label << std::setw(10) << "ols" << std::setw(12)
        << f4(ols.train_mae) << std::setw(12) << f4(ols.test_mae)
        << "intercept=" << f4(ols.intercept) << " vacc=" << f4(ols.coef_vacc)
        << " dens=" << f4(ols.coef_dens) << " income=" << f4(ols.coef_income) << '\n';

    report["results"].push_back(
        {{"target", label},
         {"descent", nlohmann::ordered_json::parse(fit_result_json(fit, trace_every))},
         {"ols", nlohmann::ordered_json::parse(ols_result_json(ols))}});
  }
  report["warnings"] = table.warnings;
  if (!output.empty()) write_text(output, report.dump(2));
  return 0;
}

int cmd_eval(const RunConfig& cfg, bool with_weights, const std::string& output,
             std::ostream& out, std::ostream& err) {
  const Dataset d = load_dataset(cfg.input);
  const ScoreTable table = all_scores(d);
  report_warnings(table, err);

  std::vector<std::pair<std::string, std::vector<double>>> candidates;
  for (const char* name : kGeoScoreNames) candidates.emplace_back(name, table.column(name));
  if (with_weights) {
    const WeightVector w = WeightVector::from_alpha_beta(cfg.alpha0, cfg.beta0);
    candidates.emplace_back("mix(" + w.to_string(2) + ")", mix_scores(table, w));
  }

  nlohmann::ordered_json report;
  report["input"] = cfg.input;
  report["results"] = nlohmann::ordered_json::array();
  out << std::left << std::setw(10) << "target" << std::setw(36) << "score"
      << std::setw(12) << "mean_abs" << "max_abs\n";
  for (const auto& column : target_columns(cfg.target)) {
    const auto& truth = table.column(column);
    const std::string label = column == kPositiveScore ? "positive" : "death";
    for (const auto& [name, predicted] : candidates) {
      const double mean = mean_abs_error(predicted, truth);
      const double worst = max_abs_error(predicted, truth);
      out << std::setw(10) << label << std::setw(36) << name << std::setw(12)
          << f4(mean) << f4(worst) << '\n';
      report["results"].push_back({{"target", label},
                                   {"score", name},
                                   {"mean_abs_error", mean},
                                   {"max_abs_error", worst}});
    }
  }
  report["warnings"] = table.warnings;
  if (!output.empty()) write_text(output, report.dump(2));
  return 0;
}

int cmd_render(const std::string& scores_path, const std::string& geo_path,
               const std::string& id_prop, const std::string& column,
               const std::vector<std::string>& outputs, std::ostream& out,
               std::ostream& err) {
  const ScoreTable table = read_score_table(fs::path(scores_path));
  if (!table.has_column(column)) {
    err << "error: unknown column '" << column << "'; available columns:";
    for (const auto& c : table.column_names()) err << ' ' << c;
    err << '\n';
    return 1;
  }
  fs::path svg_path;
  fs::path geojson_path;
  for (const auto& o : outputs) {
    const std::string ext = fs::path(o).extension().string();
    if (ext == ".geojson" || ext == ".json") {
      geojson_path = o;
    } else {
      svg_path = o;
    }
  }
  if (svg_path.empty()) {
    throw IoError("render needs an --output path for the SVG");
  }
  if (geojson_path.empty()) {
    geojson_path = svg_path;
    geojson_path.replace_extension(".geojson");
  }

  const auto geometries = load_geometries(geo_path, id_prop);
  const FeatureSet features = join_geometries(table, geometries);
  for (const auto& id : features.unmatched_scores) {
    err << "warning: region " << id << " has a score but no geometry; not drawn\n";
  }
  for (const auto& id : features.unmatched_geometries) {
    err << "warning: region " << id << " has a geometry but no score; not drawn\n";
  }
  ChoroplethSpec spec;
  spec.score_column = column;
  render_svg(features, spec, svg_path);
  write_geojson(features, geojson_path);
  out << "wrote " << features.features.size() << " regions to " << svg_path.string()
      << " and " << geojson_path.string() << '\n';
  return 0;
}

int cmd_fetch(const std::string& source, const std::string& out_dir, std::ostream& out) {
  const auto s = parse_public_source(source);
  if (!s) throw InvalidHyperparameter("unknown source '" + source + "' (known: nyc)");
  const auto files = fetch_public_data(*s, out_dir);
  for (const auto& f : files) out << f.string() << '\n';
  out << (fs::path(out_dir) / "manifest.json").string() << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Percentile-based geographic risk scores: scoring, weight fitting, maps"};
  app.name("georisk");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string output;
  std::string target = "both";

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  std::size_t regions = 200;
  double alpha = 0.45, beta = 0.0, noise_sd = 0.0;
  synth->add_option("--output", output, "Output CSV path")->required();
  synth->add_option("--regions", regions, "Number of regions")->capture_default_str();
  synth->add_option("--alpha", alpha, "True vaccination weight")->capture_default_str();
  synth->add_option("--beta", beta, "True density weight (gamma = 1 - alpha - beta)")
      ->capture_default_str();
  synth->add_option("--noise-sd", noise_sd, "Outcome noise in score units")
      ->capture_default_str();
  synth->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

  auto* score = app.add_subcommand("score", "Compute Geo Scores 1-7 and outcome scores");
  score->add_option("--input", cfg.input, "Region CSV")->required();
  score->add_option("--output", output, "Score CSV to write")->required();

  const auto add_target = [&](CLI::App* cmd) {
    cmd->add_option("--target", target, "Outcome to fit: positive|death|both")
        ->check(CLI::IsMember({"positive", "death", "both"}))
        ->capture_default_str();
  };

  auto* grid = app.add_subcommand("grid", "Exhaustive search of the weight simplex");
  grid->add_option("--input", cfg.input, "Region CSV")->required();
  grid->add_option("--step", cfg.grid_step, "Grid spacing; must divide 1")
      ->capture_default_str();
  add_target(grid);
  grid->add_option("--output", output,
                   "Grid CSV path; a JSON summary is written next to it")
      ->capture_default_str();

  std::size_t trace_every = 1;
  auto* fit = app.add_subcommand(
      "fit", "Subgradient descent and least squares on an alternating train/test split");
  fit->add_option("--input", cfg.input, "Region CSV")->required();
  add_target(fit);
  fit->add_option("--alpha0", cfg.alpha0, "Starting vaccination weight")
      ->capture_default_str();
  fit->add_option("--beta0", cfg.beta0, "Starting density weight")->capture_default_str();
  fit->add_option("--step-size", cfg.fit.step_size, "Descent step (gradient of the MAE)")
      ->capture_default_str();
  fit->add_option("--tol", cfg.fit.tol, "Convergence tolerance on weight change")
      ->capture_default_str();
  fit->add_option("--max-iters", cfg.fit.max_iters, "Iteration cap")
      ->capture_default_str();
  fit->add_option("--trace-every", trace_every, "Keep every m-th trace point in the report")
      ->capture_default_str();
  fit->add_option("--output", output, "JSON report path")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Mean/max absolute error of each score");
  eval->add_option("--input", cfg.input, "Region CSV")->required();
  add_target(eval);
  auto* eval_alpha = eval->add_option("--alpha0", cfg.alpha0, "Also evaluate this mixture");
  auto* eval_beta = eval->add_option("--beta0", cfg.beta0, "Density weight of the mixture");
  eval_alpha->needs(eval_beta);
  eval_beta->needs(eval_alpha);
  eval->add_option("--output", output, "JSON report path")->capture_default_str();

  auto* render = app.add_subcommand("render", "Choropleth SVG and GeoJSON of one score");
  std::string column;
  std::string id_prop = "modzcta";
  std::vector<std::string> render_outputs;
  render->add_option("--input", cfg.input, "Score CSV (from `score`)")->required();
  render->add_option("--geo", cfg.geometry, "GeoJSON FeatureCollection")->required();
  render->add_option("--geo-id-prop", id_prop, "Region id property in the GeoJSON")
      ->capture_default_str();
  render->add_option("--column", column, "Score column to map")->required();
  render->add_option("--output", render_outputs,
                     "SVG path, optionally followed by a .geojson path")
      ->required()
      ->expected(1, 2);

  auto* fetch = app.add_subcommand("fetch", "Download public per-ZCTA data");
  std::string source = "nyc";
  fetch->add_option("source", source, "Data source")->capture_default_str();
  fetch->add_option("--out-dir", cfg.out_dir, "Directory for the raw files")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    cfg.target = require_target(target);
    if (*synth) return cmd_synth(output, regions, alpha, beta, noise_sd, cfg.seed, out);
    if (*score) return cmd_score(cfg, output, out, err);
    if (*grid) return cmd_grid(cfg, output, out, err);
    if (*fit) return cmd_fit(cfg, output, trace_every, out, err);
    if (*eval) return cmd_eval(cfg, eval_alpha->count() > 0, output, out, err);
    if (*render) {
      return cmd_render(cfg.input, cfg.geometry, id_prop, column, render_outputs, out,
                        err);
    }
    if (*fetch) return cmd_fetch(source, cfg.out_dir, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace georisk
