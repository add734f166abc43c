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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exit status is
// nonzero when any criterion fails. Criterion 10 needs a real NYC snapshot in
// canonical CSV form, named by GEORISK_NYC_SNAPSHOT; without it the line says
// SKIP and the criterion counts as not verified.

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "georisk/errors.hpp"
#include "georisk/ingest.hpp"
#include "georisk/optimize.hpp"
#include "georisk/render.hpp"
#include "georisk/scoring.hpp"
#include "oracles.hpp"

using namespace georisk;
namespace fs = std::filesystem;

namespace {

enum class Verdict { pass, fail, skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass(std::string d) { return {Verdict::pass, std::move(d)}; }
Outcome fail(std::string d) { return {Verdict::fail, std::move(d)}; }

std::string fmt(double v, int precision = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Uniform on the sub-simplex where every weight is at least `floor`.
WeightVector interior_weights(std::mt19937_64& rng, double floor) {
  std::exponential_distribution<double> e(1.0);
  const double a = e(rng), b = e(rng), c = e(rng), s = a + b + c;
  const double f = 1.0 - 3.0 * floor;
  return WeightVector::from_alpha_beta(floor + f * a / s, floor + f * b / s);
}

Dataset random_dataset(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    RegionRecord r;
    r.region_id = std::to_string(10001 + i);
    // Coarse values in some columns so ties occur.
    r.vacc_rate = std::round(u(rng) * 40.0) / 40.0;
    r.pop_density = 100.0 + u(rng) * 90000.0;
    if (u(rng) > 0.05) r.median_income = std::round(20.0 + u(rng) * 30.0) * 1000.0;
    r.positive_rate = u(rng);
    r.death_rate = u(rng) * 800.0;
    d.records.push_back(r);
  }
  return d;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) return false;
  }
  return true;
}

std::vector<std::array<double, 4>> as_arrays(const std::vector<ScoreRow>& rows) {
  std::vector<std::array<double, 4>> out;
  for (const auto& r : rows) out.push_back({r.vacc, r.dens, r.ses, r.target});
  return out;
}

Outcome criterion_1() {
  const double expected[] = {7.9, 2.5, 3.2};
  const double p[] = {0.9, 0.4, 0.5};
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(exp_score(p[k]) - expected[k]));
  const std::string d = "max |10^p - published| = " + fmt(worst);
  return worst <= 0.05 ? pass(d) : fail(d);
}

Outcome criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(10, 300);
  double worst = 0.0;
  bool in_range = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const ScoreTable t = geo_scores(random_dataset(rng, size(rng)));
    const auto& g1 = t.column("gs1");
    const auto& g2 = t.column("gs2");
    const auto& g3 = t.column("gs3");
    for (std::size_t i = 0; i < t.rows(); ++i) {
      worst = std::max({worst, std::abs(t.column("gs4")[i] - (g1[i] + g2[i]) / 2.0),
                        std::abs(t.column("gs5")[i] - (g1[i] + g3[i]) / 2.0),
                        std::abs(t.column("gs6")[i] - (g2[i] + g3[i]) / 2.0),
                        std::abs(t.column("gs7")[i] - (g1[i] + g2[i] + g3[i]) / 3.0)});
      for (const char* name : kGeoScoreNames) {
        const double v = t.column(name)[i];
        in_range = in_range && v >= 1.0 && v <= 10.0;
      }
    }
  }
  const double secs = seconds_since(t0);
  const std::string d = "max identity error " + fmt(worst) + ", all in [1,10]: " +
                        (in_range ? "yes" : "no") + ", " + fmt(secs) + " s";
  return worst <= 1e-12 && in_range && secs < 5.0 ? pass(d) : fail(d);
}

Outcome criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> size(10, 200);
  int broken = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset base = random_dataset(rng, size(rng));
    Dataset scaled = base;
    const double cv = std::pow(10.0, log_scale(rng));
    const double cd = std::pow(10.0, log_scale(rng));
    const double ci = std::pow(10.0, log_scale(rng));
    for (auto& r : scaled.records) {
      r.vacc_rate *= cv;
      r.pop_density *= cd;
      if (r.median_income) *r.median_income *= ci;
    }
    const ScoreTable a = geo_scores(base), b = geo_scores(scaled);
    for (const char* name : kGeoScoreNames) {
      if (!bit_equal(a.column(name), b.column(name))) ++broken;
    }
  }
  const double secs = seconds_since(t0);
  const std::string d = std::to_string(broken) + " score columns changed over 200 trials, " +
                        fmt(secs) + " s";
  return broken == 0 && secs < 5.0 ? pass(d) : fail(d);
}

Outcome criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4);
  std::vector<std::pair<int, int>> cells = {{9, 0}};  // (0.45, 0, 0.55)
  std::uniform_int_distribution<int> idx(0, 19);
  while (cells.size() < 20) {
    const int i = idx(rng), j = idx(rng);
    if (i + j <= 19) cells.emplace_back(i, j);
  }
  int misses = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto [i, j] = cells[k];
    const WeightVector w = WeightVector::from_alpha_beta(i / 20.0, j / 20.0);
    const ScoreTable t = all_scores(generate_synthetic(200, w, 0.0, 40 + k));
    const GridResult g = grid_search(t, target_columns(Target::both), 0.05);
    const bool exact = static_cast<int>(g.argmin_i) == i &&
                       static_cast<int>(g.argmin_j) == j && g.argmin.alpha == i / 20.0 &&
                       g.argmin.beta == j / 20.0;
    if (!exact || !(g.min_objective < 1e-9)) ++misses;
    worst = std::max(worst, g.min_objective);
  }
  const double secs = seconds_since(t0);
  const std::string d = std::to_string(misses) + "/20 missed, max objective " + fmt(worst) +
                        ", " + fmt(secs) + " s";
  return misses == 0 && secs < 10.0 ? pass(d) : fail(d);
}

// Shared by criteria 5 and 7. Starts keep every weight >= 0.1 and callers
// pick truths with every weight >= 0.2: the descent stops as soon as a step
// reaches the simplex boundary, so edge starts would end early.
struct DescentRun {
  double train_mae;
  double grid_min;
  bool on_simplex;
};

std::vector<DescentRun> descent_runs(std::uint64_t seed, std::mt19937_64& rng, int starts,
                                     WeightVector truth) {
  const Dataset d = generate_synthetic(120, truth, 0.5, seed);
  const ScoreTable t = all_scores(d);
  const Split split = alternating_split(d);
  const auto train = make_rows(t, kPositiveScore, split.train);
  const GridResult g = grid_search(t.select_rows(split.train), {kPositiveScore}, 0.05);
  std::vector<DescentRun> runs;
  for (int s = 0; s < starts; ++s) {
    const FitResult fit = fit_subgradient(train, interior_weights(rng, 0.1));
    bool ok = true;
    for (const auto& p : fit.trace) {
      ok = ok && WeightVector::from_alpha_beta(p.alpha, p.beta).on_simplex() &&
           p.alpha >= 0.0 && p.beta >= 0.0 && p.alpha + p.beta <= 1.0;
    }
    runs.push_back({fit.train_mae, g.min_objective, ok});
  }
  return runs;
}

Outcome criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(5);
  int over = 0, off_simplex = 0;
  double worst_gap = -1e300;
  for (int k = 0; k < 20; ++k) {
    const WeightVector truth = interior_weights(rng, 0.2);
    for (const auto& r : descent_runs(500 + k, rng, 5, truth)) {
      worst_gap = std::max(worst_gap, r.train_mae - r.grid_min);
      if (r.train_mae > r.grid_min + 0.05) ++over;
      if (!r.on_simplex) ++off_simplex;
    }
  }
  const double secs = seconds_since(t0);
  const std::string d = std::to_string(over) + "/100 runs above grid + 0.05 (worst gap " +
                        fmt(worst_gap) + "), " + std::to_string(off_simplex) +
                        " left the simplex, " + fmt(secs) + " s";
  return over == 0 && off_simplex == 0 && secs < 60.0 ? pass(d) : fail(d);
}

Outcome criterion_6() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.02, 0.96);
  const auto rows = make_rows(all_scores(generate_synthetic(150, {0.3, 0.3, 0.4}, 0.5, 6)),
                              kDeathScore);
  const auto arrays = as_arrays(rows);
  const auto f = [&](double a, double b) { return oracle::l1_total(arrays, a, b); };
  int tested = 0, bad = 0;
  double worst = 0.0;
  while (tested < 100) {
    const double a = u(rng), b = u(rng);
    if (a + b >= 0.98) continue;
    const WeightVector w = WeightVector::from_alpha_beta(a, b);
    double margin = 1e300, spread = 0.0, ga = 0.0, gb = 0.0;
    for (const auto& r : rows) {
      margin = std::min(margin, std::abs(r.residual(w)));
      spread = std::max({spread, std::abs(r.vacc - r.ses), std::abs(r.dens - r.ses)});
      const auto [da, db] = residual_subgradient(r, w);
      ga += da;
      gb += db;
    }
    if (margin < 1e-6) continue;  // at or too near a kink
    ++tested;
    const double h = std::min(1e-3, 0.5 * margin / spread);
    const double fa = oracle::central_difference(f, a, b, 0, h);
    const double fb = oracle::central_difference(f, a, b, 1, h);
    const double scale = std::max({std::abs(ga), std::abs(gb), 1e-300});
    const double rel = std::max(std::abs(fa - ga), std::abs(fb - gb)) / scale;
    worst = std::max(worst, rel);
    if (rel > 1e-5) ++bad;
  }
  const std::string d = std::to_string(bad) + "/100 points off, max relative error " + fmt(worst);
  return bad == 0 ? pass(d) : fail(d);
}

Outcome criterion_7() {
  std::mt19937_64 rng(7);
  const auto runs = descent_runs(777, rng, 8, {0.3, 0.25, 0.45});
  double lo = 1e300, hi = -1e300;
  for (const auto& r : runs) {
    lo = std::min(lo, r.train_mae);
    hi = std::max(hi, r.train_mae);
  }
  const std::string d = std::to_string(runs.size()) + " starts, train MAE in [" + fmt(lo, 5) +
                        ", " + fmt(hi, 5) + "], spread " + fmt(hi - lo);
  return hi - lo <= 0.02 ? pass(d) : fail(d);
}

Outcome criterion_8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> s(1.0, 10.0);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::vector<ScoreRow> exact(60), noisy(60);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    ScoreRow r{s(rng), s(rng), s(rng), 0.0};
    r.target = 0.2 + 0.5 * r.vacc - 0.1 * r.dens + 0.4 * r.ses;
    exact[i] = r;
    r.target += noise(rng);
    noisy[i] = r;
  }
  const OlsResult e = fit_ols(exact);
  const double coef_err =
      std::max({std::abs(e.intercept - 0.2), std::abs(e.coef_vacc - 0.5),
                std::abs(e.coef_dens + 0.1), std::abs(e.coef_income - 0.4)});
  const double ortho = ols_orthogonality(noisy, fit_ols(noisy));

  // Realizable mixture data, alternating split.
  double worst_gap = 0.0;
  for (int k = 0; k < 5; ++k) {
    const WeightVector truth = interior_weights(rng, 0.2);
    const Dataset d = generate_synthetic(200, truth, 0.0, 800 + k);
    const ScoreTable t = all_scores(d);
    const Split split = alternating_split(d);
    for (const auto& col : target_columns(Target::both)) {
      const auto train = make_rows(t, col, split.train);
      const auto test = make_rows(t, col, split.test);
      const FitResult fit = fit_subgradient(train, WeightVector{}, {}, test);
      const OlsResult ols = fit_ols(train, test);
      worst_gap = std::max(worst_gap, std::abs(fit.test_mae - ols.test_mae));
    }
  }
  const std::string d = "coefficient error " + fmt(coef_err) + ", orthogonality " +
                        fmt(ortho) + ", max |OLS - descent| test MAE " + fmt(worst_gap);
  return coef_err <= 1e-8 && ortho <= 1e-8 && worst_gap < 1e-3 ? pass(d) : fail(d);
}

// True when no element rises strictly above both some earlier and some later
// element, i.e. the sequence decreases and then increases.
bool unimodal(const std::vector<double>& v, double slack) {
  const std::size_t n = v.size();
  std::vector<double> prefix_min(n), suffix_min(n);
  for (std::size_t k = 0; k < n; ++k) {
    prefix_min[k] = k == 0 ? v[0] : std::min(prefix_min[k - 1], v[k]);
  }
  for (std::size_t k = n; k-- > 0;) {
    suffix_min[k] = k + 1 == n ? v[k] : std::min(suffix_min[k + 1], v[k]);
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (v[k] > std::max(prefix_min[k - 1], suffix_min[k + 1]) + slack) return false;
  }
  return true;
}

Outcome criterion_9() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto point = [&] {
    double a = u(rng), b = u(rng);
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    return std::array<double, 2>{a, b};
  };
  const auto rows = make_rows(all_scores(generate_synthetic(150, {0.4, 0.2, 0.4}, 0.6, 9)),
                              kPositiveScore);
  int convex_bad = 0;
  for (int line = 0; line < 50; ++line) {
    const auto p = point(), q = point();
    const auto f = [&](double t) {
      return l1_objective(rows, WeightVector::from_alpha_beta(p[0] + t * (q[0] - p[0]),
                                                              p[1] + t * (q[1] - p[1])));
    };
    for (int k = 0; k < 20; ++k) {
      const double x = u(rng), y = u(rng), lambda = u(rng);
      const double z = lambda * x + (1 - lambda) * y;
      if (f(z) > lambda * f(x) + (1 - lambda) * f(y) + 1e-9) ++convex_bad;
    }
  }

  int lines_bad = 0, lines = 0;
  for (std::uint64_t seed = 90; seed < 100; ++seed) {
    const ScoreTable t = all_scores(generate_synthetic(150, interior_weights(rng, 0.0), 0.6, seed));
    const GridResult g = grid_search(t, target_columns(Target::both), 0.05);
    for (std::size_t i = 0; i <= 19; ++i) {
      std::vector<double> row, col;
      for (std::size_t j = 0; i + j <= 19; ++j) row.push_back(g.value(i, j));
      for (std::size_t k = 0; k + i <= 19; ++k) col.push_back(g.value(k, i));
      lines += 2;
      if (!unimodal(row, 1e-12)) ++lines_bad;
      if (!unimodal(col, 1e-12)) ++lines_bad;
    }
  }
  const std::string d = std::to_string(convex_bad) + "/1000 convexity violations on 50 lines, " +
                        std::to_string(lines_bad) + "/" + std::to_string(lines) +
                        " grid rows/columns not unimodal";
  return convex_bad == 0 && lines_bad == 0 ? pass(d) : fail(d);
}

Outcome criterion_10() {
  const char* path = std::getenv("GEORISK_NYC_SNAPSHOT");
  if (path == nullptr || *path == '\0') {
    return {Verdict::skip,
            "not verified; set GEORISK_NYC_SNAPSHOT to a canonical CSV of the NYC snapshot"};
  }
  const Dataset d = load_dataset(path);
  const ScoreTable t = all_scores(d);
  const GridResult g = grid_search(t, target_columns(Target::both), 0.05);
  const bool grid_ok = std::abs(g.argmin.alpha - 0.45) <= 0.05 + 1e-12 &&
                       std::abs(g.argmin.beta - 0.0) <= 0.05 + 1e-12 &&
                       std::abs(g.argmin.gamma - 0.55) <= 0.05 + 1e-12;

  const Split split = alternating_split(d);
  const double published_descent[] = {1.94, 1.71};
  const double published_ols[] = {1.87, 1.75};
  bool mae_ok = true, dens_negative = true;
  std::string detail = "grid " + g.argmin.to_string(2);
  const auto cols = target_columns(Target::both);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto train = make_rows(t, cols[c], split.train);
    const auto test = make_rows(t, cols[c], split.test);
    const FitResult fit = fit_subgradient(train, WeightVector{}, {}, test);
    const OlsResult ols = fit_ols(train, test);
    mae_ok = mae_ok && std::abs(fit.test_mae - published_descent[c]) <= 0.15 &&
             std::abs(ols.test_mae - published_ols[c]) <= 0.15;
    dens_negative = dens_negative && ols.coef_dens < 0.0;
    detail += "; " + cols[c] + " descent " + fmt(fit.test_mae) + " ols " + fmt(ols.test_mae) +
              " dens coef " + fmt(ols.coef_dens);
  }
  return grid_ok && mae_ok && dens_negative ? pass(detail) : fail(detail);
}

Outcome criterion_11() {
  const fs::path data = GEORISK_TEST_DATA;
  const FeatureSet set = join_geometries(read_score_table(data / "toy_scores.csv"),
                                         load_geometries(data / "toy_regions.geojson"));
  ChoroplethSpec spec;
  spec.score_column = "gs5";
  std::ostringstream a, b;
  render_svg(a, set, spec);
  render_svg(b, set, spec);
  std::ifstream golden_in(data / "toy_gs5.svg", std::ios::binary);
  std::ostringstream golden;
  golden << golden_in.rdbuf();

  bool well_formed = true;
  std::string top_fill;
  try {
    namespace pt = boost::property_tree;
    std::istringstream in(a.str());
    pt::ptree tree;
    pt::read_xml(in, tree);
    for (const auto& [name, child] : tree.get_child("svg").get_child("g")) {
      if (name == "path" && child.get<std::string>("<xmlattr>.id") == "r10001") {
        top_fill = child.get<std::string>("<xmlattr>.fill");
      }
    }
  } catch (const std::exception&) {
    well_formed = false;
  }
  const bool identical = a.str() == b.str();
  const bool matches_golden = a.str() == golden.str();
  const bool top_ok = top_fill == spec.color_high.hex();
  const std::string d = std::string("rerun identical: ") + (identical ? "yes" : "no") +
                        ", golden match: " + (matches_golden ? "yes" : "no") +
                        ", XML well-formed: " + (well_formed ? "yes" : "no") +
                        ", score-10 fill " + top_fill;
  return identical && matches_golden && well_formed && top_ok ? pass(d) : fail(d);
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion_1},  {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
      {5, criterion_5},  {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
      {9, criterion_9},  {10, criterion_10}, {11, criterion_11},
  };
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = fail(std::string("threw ") + e.what());
    }
    const char* tag = o.verdict == Verdict::pass   ? "PASS"
                      : o.verdict == Verdict::fail ? "FAIL"
                                                   : "SKIP";
    if (o.verdict == Verdict::fail) ++failures;
    std::cout << "criterion " << id << ": " << tag << "  " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
