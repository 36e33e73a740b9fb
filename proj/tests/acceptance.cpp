// Copyright 2026 The RAD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate: one PASS/FAIL/SKIP line per criterion. Exit status is
// nonzero when any criterion fails.

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rad/harness.hpp"

using namespace rad;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void skip(int id, const std::string& detail) {
  std::printf("SKIP criterion %d: %s\n", id, detail.c_str());
  std::fflush(stdout);
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
  return buf;
}

double final_of(const ExperimentResult& r, Strategy s) {
  const auto* o = r.find(s);
  if (!o || !o->summary) return std::nan("");
  return o->summary->final_accuracy;
}

// The synthetic setup shared by criteria 1-4.
ExperimentConfig base_config() {
  auto c = ExperimentConfig::defaults();
  c.stream.num_classes = 4;
  c.stream.num_features = 20;
  c.stream.initial_batch_size = 1000;
  c.stream.batch_size = 300;
  c.stream.num_batches = 20;
  c.stream.test_size = 2000;
  c.dataset.separation = 3.0;
  c.noise.mean_level = 0.3;
  c.noise.std_dev_mode = StdDevMode::relative;
  c.repetitions = 3;
  return c;
}

ExperimentConfig variant_only(ExperimentConfig c, Strategy s) {
  c.variant = s;
  c.compare_baselines = false;
  return c;
}

std::vector<const RunResult*> all_runs(const std::vector<const ExperimentResult*>& results) {
  std::vector<const RunResult*> out;
  for (const auto* r : results) {
    for (const auto& o : r->outcomes) {
      for (const auto& run : o.runs) out.push_back(&run);
    }
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_6() {
  std::mt19937_64 rng(606);
  std::size_t knn_mismatch = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> n_dist(1, 50), f_dist(1, 6), k_dist(1, 9);
    std::uniform_int_distribution<int> c_dist(2, 5), grid(-2, 2);
    const std::size_t n = n_dist(rng), f = f_dist(rng), k = k_dist(rng);
    const int classes = c_dist(rng);
    auto points = oracle::random_points(n, f, classes, rng);
    auto query = oracle::random_points(1, f, classes, rng)[0];
    if (trial % 2 == 0) {
      for (auto& p : points) {
        for (auto& v : p.features) v = grid(rng);
      }
      for (auto& v : query.features) v = grid(rng);
    }
    std::vector<std::vector<double>> xs;
    std::vector<ClassLabel> ys;
    for (const auto& p : points) {
      xs.push_back(p.features);
      ys.push_back(p.given_label);
    }
    ClassifierSpec spec;
    spec.knn_k = k;
    Rng unused(1);
    auto model = train(spec, points, classes, unused);
    knn_mismatch += model.predict(query.features) != oracle::knn_predict(xs, ys, classes, k, query.features);
  }

  double centroid_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto data = oracle::random_points(5 + trial * 4, 6, 4, rng, 25.0);
    ClassifierSpec spec;
    spec.kind = ClassifierKind::centroid;
    Rng unused(1);
    auto model = train(spec, data, 4, unused);
    auto expected = oracle::class_means(data, 4, 6);
    for (int c = 0; c < 4; ++c) {
      auto got = model.as<NearestCentroid>()->mean(c);
      for (std::size_t j = 0; j < got.size(); ++j) {
        const double e = expected[static_cast<std::size_t>(c)][j];
        centroid_err = std::max(centroid_err, std::abs(got[j] - e) / std::max(1.0, std::abs(e)));
      }
    }
  }

  auto data = oracle::random_points(16, 5, 3, rng);
  std::vector<std::size_t> hidden = {6, 5};
  Rng init(1);
  MlpClassifier mlp(5, 3, hidden, {}, init);
  std::normal_distribution<double> normal(0.0, 0.6);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> params(mlp.parameter_count());
    for (auto& p : params) p = normal(rng);
    mlp.set_parameters(params);
    const auto analytic = mlp.gradient(data);
    MlpClassifier probe = mlp;
    const auto numeric = oracle::central_difference(
        [&](const std::vector<double>& x) {
          probe.set_parameters(x);
          return probe.loss(data);
        },
        params, 1e-6);
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
      diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
      norm += std::max(analytic[i] * analytic[i], numeric[i] * numeric[i]);
    }
    worst = std::max(worst, std::sqrt(diff) / std::max(std::sqrt(norm), 1e-12));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "knn mismatches %zu/200, centroid max rel err %.1e, mlp worst grad rel err %.1e",
                knn_mismatch, centroid_err, worst);
  verdict(6, knn_mismatch == 0 && centroid_err <= 4.0 * std::numeric_limits<double>::epsilon() && worst <= 1e-4,
          buf);
}

void criterion_7() {
  bool exact = true;
  bool self_flip = false;
  double worst_p = 1.0;
  for (int classes : {4, 11}) {
    std::mt19937_64 gen(700 + classes);
    Rng rng(7000 + classes);
    std::vector<std::size_t> offsets(static_cast<std::size_t>(classes - 1), 0);
    // 10,000 instances as 40 batches of 250
    for (int b = 0; b < 40; ++b) {
      Batch batch;
      batch.index = static_cast<std::size_t>(b + 1);
      batch.instances = oracle::random_points(250, 2, classes, gen);
      auto noisy = inject_symmetric_noise(batch, 0.4, classes, rng);
      std::size_t flipped = 0;
      for (std::size_t i = 0; i < noisy.size(); ++i) {
        const auto& inst = noisy.instances[i];
        if (inst.given_label == batch.instances[i].given_label) continue;
        ++flipped;
        self_flip = self_flip || inst.given_label == inst.true_label;
        ++offsets[static_cast<std::size_t>((inst.given_label - inst.true_label + classes) % classes - 1)];
      }
      exact = exact && flipped == 100;
    }
    boost::math::chi_squared dist(classes - 2);
    const double p = boost::math::cdf(boost::math::complement(dist, oracle::chi_square_uniform(offsets)));
    worst_p = std::min(worst_p, p);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "flip counts exact: %s, self flips: %s, min chi-square p = %.3f (K=4, K=11)",
                exact ? "yes" : "no", self_flip ? "yes" : "no", worst_p);
  verdict(7, exact && !self_flip && worst_p > 0.01, buf);
}

bool slimmed_multiset_check() {
  auto s = fixture::toy_stream(30, 40, 4, 3, 2.0, 0.4, 808);
  auto state = initialize(Variant::slimmed, s.initial, fixture::centroid_spec(), fixture::knn_spec(), 3, 1);
  OracleBudget budget;
  budget.mode = OracleBudget::Mode::per_batch_fraction;
  budget.fraction = 0.3;
  std::vector<LabeledInstance> prev;
  bool ok = true;
  for (const auto& b : s.arrivals) {
    std::vector<LabeledInstance> agreed;
    for (const auto& inst : b.instances) {
      if (state.classifier.predict(inst.features) == inst.given_label) agreed.push_back(inst);
    }
    GroundTruthOracle oracle;
    auto r = slimmed_step(state, b, oracle, budget);
    std::set<InstanceId> agreed_ids;
    for (const auto& a : agreed) agreed_ids.insert(a.id);
    std::vector<LabeledInstance> answered;
    for (const auto& inst : r.selection.selected) {
      if (!agreed_ids.count(inst.id)) answered.push_back(inst);
    }
    std::multiset<std::pair<InstanceId, ClassLabel>> expected, got;
    for (const auto* part : {&agreed, &answered, &prev}) {
      for (const auto& i : *part) expected.insert({i.id, i.given_label});
    }
    for (const auto& i : state.last_training_set) got.insert({i.id, i.given_label});
    ok = ok && expected == got && answered.size() == r.report.oracle_queries;
    prev = answered;
  }
  return ok;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto base = base_config();

  // 1: ordering
  const auto t0 = clock::now();
  const auto c1 = run_experiment(base);
  const double seconds = std::chrono::duration<double>(clock::now() - t0).count();
  const double no_sel = final_of(c1, Strategy::no_sel), opt_sel = final_of(c1, Strategy::opt_sel);
  const double full_clean = final_of(c1, Strategy::full_clean), rad = final_of(c1, Strategy::rad);
  {
    const bool ok = no_sel + 0.02 <= rad && rad <= opt_sel + 0.01 && opt_sel <= full_clean + 0.01 && seconds <= 120.0;
    char buf[200];
    std::snprintf(buf, sizeof buf, "no_sel %s, rad %s, opt_sel %s, full_clean %s, %.1f s", pct(no_sel).c_str(),
                  pct(rad).c_str(), pct(opt_sel).c_str(), pct(full_clean).c_str(), seconds);
    verdict(1, ok, buf);
  }

  // 2: active learning against full clean
  const auto active = run_experiment(variant_only(base, Strategy::active));
  auto limited_cfg = variant_only(base, Strategy::active);
  limited_cfg.budget.mode = OracleBudget::Mode::per_batch_fraction;
  limited_cfg.budget.fraction = 0.2;
  const auto limited = run_experiment(limited_cfg);
  {
    const double a = final_of(active, Strategy::active), l = final_of(limited, Strategy::active);
    const bool ok = std::abs(a - full_clean) <= 0.02 && std::abs(l - full_clean) <= 0.03;
    char buf[200];
    std::snprintf(buf, sizeof buf, "active %s, active 20%% %s, full_clean %s (gaps %.2f / %.2f pp)", pct(a).c_str(),
                  pct(l).c_str(), pct(full_clean).c_str(), 100.0 * std::abs(a - full_clean),
                  100.0 * std::abs(l - full_clean));
    verdict(2, ok, buf);
  }

  // 3: noise sweep
  std::vector<ExperimentResult> sweep;
  for (double noise : {0.0, 0.6, 0.9}) {
    auto c = base;
    c.noise.mean_level = noise;
    sweep.push_back(run_experiment(c));
  }
  {
    const double rad0 = final_of(sweep[0], Strategy::rad), rad6 = final_of(sweep[1], Strategy::rad);
    const double no0 = final_of(sweep[0], Strategy::no_sel), no6 = final_of(sweep[1], Strategy::no_sel);
    const double rad9 = final_of(sweep[2], Strategy::rad), opt9 = final_of(sweep[2], Strategy::opt_sel);
    const bool ok = rad0 - rad6 <= 0.10 && no0 - no6 >= 0.15 && rad9 >= opt9 - 0.08;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "rad drop at 0.6 %.2f pp, no_sel drop at 0.6 %.2f pp, rad at 0.9 %s vs opt_sel %s (rad 0.3: %s)",
                  100.0 * (rad0 - rad6), 100.0 * (no0 - no6), pct(rad9).c_str(), pct(opt9).c_str(),
                  pct(rad).c_str());
    verdict(3, ok, buf);
  }

  // 4: initial batch size
  std::vector<ExperimentResult> sizes;
  for (std::size_t d0 : {100u, 500u}) {
    auto c = base;
    c.stream.initial_batch_size = d0;
    sizes.push_back(run_experiment(variant_only(c, Strategy::rad)));
    sizes.push_back(run_experiment(variant_only(c, Strategy::active)));
  }
  {
    const double a100 = final_of(sizes[1], Strategy::active), a500 = final_of(sizes[3], Strategy::active);
    const double a1000 = final_of(active, Strategy::active);
    const double r100 = final_of(sizes[0], Strategy::rad), r500 = final_of(sizes[2], Strategy::rad);
    const double spread = std::max({a100, a500, a1000}) - std::min({a100, a500, a1000});
    const bool ok = spread <= 0.02 && r100 <= rad - 0.03;
    char buf[240];
    std::snprintf(buf, sizeof buf, "active %s/%s/%s (spread %.2f pp), rad %s/%s/%s at |D0| 100/500/1000",
                  pct(a100).c_str(), pct(a500).c_str(), pct(a1000).c_str(), 100.0 * spread, pct(r100).c_str(),
                  pct(r500).c_str(), pct(rad).c_str());
    verdict(4, ok, buf);
  }

  // a voting run feeds criteria 5 and 8
  const auto voting = run_experiment(variant_only(base, Strategy::voting));

  // 5: metric exactness over every logged run
  {
    std::vector<const ExperimentResult*> everything = {&c1, &active, &limited, &voting};
    for (const auto& r : sweep) everything.push_back(&r);
    for (const auto& r : sizes) everything.push_back(&r);
    std::size_t runs = 0, arrivals = 0, mismatches = 0, order = 0;
    for (const auto* run : all_runs(everything)) {
      if (run->error) {
        ++mismatches;
        continue;
      }
      ++runs;
      const auto brute = oracle::recompute_fractions(run->selections);
      for (std::size_t i = 0; i < run->trace.reports.size(); ++i) {
        const auto& rep = run->trace.reports[i];
        ++arrivals;
        mismatches += rep.cumulative_A != brute.a[i] || rep.cumulative_A_truth != brute.a_truth[i];
        order += rep.cumulative_A < rep.cumulative_A_truth;
      }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu runs, %zu arrivals, %zu mismatches, %zu arrivals with A < A-truth", runs,
                  arrivals, mismatches, order);
    verdict(5, mismatches == 0 && order == 0 && runs > 0, buf);
  }

  criterion_6();
  criterion_7();

  // 8: conservation and budget
  {
    std::size_t voting_bad = 0, active_bad = 0, budget_bad = 0, max_queries = 0;
    for (const auto& run : voting.outcomes.front().runs) {
      for (const auto& log : run.selections) voting_bad += log.selected.size() + log.deferred != log.batch_size;
    }
    for (const auto& run : active.outcomes.front().runs) {
      for (std::size_t i = 0; i < run.trace.reports.size(); ++i) {
        const auto& rep = run.trace.reports[i];
        active_bad += rep.inactive_total != 0 || rep.selected_count != rep.batch_size;
      }
    }
    for (const auto& run : limited.outcomes.front().runs) {
      for (const auto& rep : run.trace.reports) {
        budget_bad += rep.oracle_queries > static_cast<std::size_t>(std::floor(0.2 * rep.batch_size));
        max_queries = std::max(max_queries, rep.oracle_queries);
      }
    }
    const bool slim = slimmed_multiset_check();
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "voting violations %zu, active inactive/selection violations %zu, budget violations %zu "
                  "(max %zu queries), slimmed multiset %s",
                  voting_bad, active_bad, budget_bad, max_queries, slim ? "ok" : "wrong");
    verdict(8, voting_bad == 0 && active_bad == 0 && budget_bad == 0 && slim, buf);
  }

  // 9: determinism of written per-batch files
  {
    auto c = base;
    c.stream.num_batches = 5;
    c.repetitions = 2;
    const auto root = fs::temp_directory_path() / "rad_acceptance_determinism";
    fs::remove_all(root);
    std::size_t files = 0, differing = 0;
    for (auto variant : {Strategy::rad, Strategy::voting, Strategy::active, Strategy::slimmed}) {
      c.variant = variant;
      c.output_dir = root / "a";
      run_experiment(c);
      c.output_dir = root / "b";
      run_experiment(c);
    }
    for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
      if (entry.path().filename() != "batches.csv") continue;
      ++files;
      const auto twin = root / "b" / fs::relative(entry.path(), root / "a");
      differing += !fs::exists(twin) || slurp(entry.path()) != slurp(twin);
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%zu per-batch files compared, %zu differ", files, differing);
    verdict(9, files > 0 && differing == 0, buf);
  }

  // 10: full-scale IoT data, when provided
  if (const char* path = std::getenv("RAD_IOT_CSV"); path && fs::exists(path)) {
    auto c = ExperimentConfig::defaults();
    c.dataset.kind = DatasetSource::Kind::csv;
    c.dataset.path = path;
    c.stream.num_classes = 11;
    c.stream.num_features = 115;
    c.stream.initial_batch_size = 6000;
    c.stream.batch_size = 300;
    c.stream.num_batches = 90;
    c.stream.test_size = 6000;
    c.noise.mean_level = 0.3;
    const auto r = run_experiment(c);
    const double rad_iot = final_of(r, Strategy::rad), no_iot = final_of(r, Strategy::no_sel);
    char buf[120];
    std::snprintf(buf, sizeof buf, "rad %s (target 98.10), no_sel %s (target 96.10)", pct(rad_iot).c_str(),
                  pct(no_iot).c_str());
    verdict(10, std::abs(rad_iot - 0.981) <= 0.015 && std::abs(no_iot - 0.961) <= 0.015, buf);
  } else {
    skip(10, "set RAD_IOT_CSV to a 39,000-row IoT export (K=11, f=115) to run");
  }

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
