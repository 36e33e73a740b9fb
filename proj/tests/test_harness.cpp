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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "rad/error.hpp"
#include "rad/harness.hpp"

using namespace rad;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny() {
  auto c = ExperimentConfig::defaults();
  c.stream.num_classes = 3;
  c.stream.num_features = 4;
  c.stream.initial_batch_size = 60;
  c.stream.batch_size = 30;
  c.stream.num_batches = 4;
  c.stream.test_size = 90;
  c.label_model.kind = ClassifierKind::centroid;
  c.repetitions = 2;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "rad_harness_tests" / name;
  fs::remove_all(dir);
  return dir;
}

const RunResult& run_of(const ExperimentResult& r, Strategy s, std::size_t rep) {
  const auto* o = r.find(s);
  REQUIRE(o != nullptr);
  REQUIRE(o->runs.size() > rep);
  return o->runs[rep];
}

}  // namespace

TEST_CASE("one evaluation per arrival and complete reports") {
  auto c = tiny();
  auto result = run_experiment(c);
  REQUIRE(result.outcomes.size() == 4);
  CHECK(result.outcomes.front().strategy == Strategy::rad);
  for (const auto& outcome : result.outcomes) {
    REQUIRE(outcome.runs.size() == 2);
    for (const auto& run : outcome.runs) {
      CHECK_FALSE(run.error.has_value());
      REQUIRE(run.trace.reports.size() == c.stream.num_batches);
      CHECK(run.selections.size() == c.stream.num_batches);
      for (std::size_t i = 0; i < run.trace.reports.size(); ++i) {
        CHECK(run.trace.reports[i].batch_index == i + 1);
        CHECK(run.trace.reports[i].test_accuracy >= 0.0);
      }
    }
  }
  CHECK(result.row.repetitions == 2);
  CHECK(result.row.failed == 0);
  CHECK(result.row.improvement == doctest::Approx(result.row.proposed - result.row.no_sel));
}

TEST_CASE("without noise and with a perfect label model every strategy matches") {
  auto c = tiny();
  c.noise.mean_level = 0.0;
  c.dataset.separation = 60.0;
  auto result = run_experiment(c);
  for (std::size_t r = 0; r < c.repetitions; ++r) {
    const auto csv = format_batch_csv(run_of(result, Strategy::full_clean, r).trace.reports);
    for (auto s : {Strategy::rad, Strategy::no_sel, Strategy::opt_sel}) {
      CHECK(format_batch_csv(run_of(result, s, r).trace.reports) == csv);
    }
  }
}

TEST_CASE("repetitions are isolated from each other") {
  auto c = tiny();
  auto all = run_experiment(c);
  const auto dataset = load_dataset(c);
  for (std::size_t r : {1u, 0u}) {
    auto stream = prepare_stream(c, dataset, r);
    auto alone = run_strategy(c, stream, Strategy::rad);
    CHECK(format_batch_csv(alone.trace.reports) == format_batch_csv(run_of(all, Strategy::rad, r).trace.reports));
  }
  auto threaded = c;
  threaded.threads = 3;
  auto again = run_experiment(threaded);
  CHECK(format_batch_csv(run_of(again, Strategy::rad, 1).trace.reports) ==
        format_batch_csv(run_of(all, Strategy::rad, 1).trace.reports));
}

TEST_CASE("test instances never reach training and are never noisy") {
  auto c = tiny();
  c.noise.mean_level = 0.5;
  const auto dataset = load_dataset(c);
  auto stream = prepare_stream(c, dataset, 0);
  std::set<InstanceId> test;
  for (const auto& t : stream.split.test) {
    CHECK(t.is_clean);
    test.insert(t.id);
  }
  for (auto s : {Strategy::rad, Strategy::voting, Strategy::active, Strategy::slimmed, Strategy::no_sel}) {
    auto run = run_strategy(c, stream, s);
    CHECK_FALSE(run.error.has_value());
    for (const auto& log : run.selections) {
      for (const auto& inst : log.selected) CHECK(test.count(inst.id) == 0);
    }
  }
}

TEST_CASE("initial batch noise is optional") {
  auto c = tiny();
  c.noise.mean_level = 0.5;
  c.noise.std_dev = 0.0;
  const auto dataset = load_dataset(c);
  auto noisy = prepare_stream(c, dataset, 0);
  std::size_t dirty = 0;
  for (const auto& i : noisy.split.initial.instances) dirty += i.is_clean ? 0 : 1;
  CHECK(dirty == 30);
  c.initial_clean = true;
  auto clean = prepare_stream(c, dataset, 0);
  for (const auto& i : clean.split.initial.instances) CHECK(i.is_clean);
}

TEST_CASE("a failing repetition is reported with batch and stage") {
  auto c = tiny();
  c.noise.mean_level = 1.0;
  c.noise.std_dev = 0.0;
  c.compare_baselines = false;
  auto result = run_experiment(c);
  const auto& run = run_of(result, Strategy::rad, 0);
  REQUIRE(run.error.has_value());
  CHECK(run.error->find("repetition 0") != std::string::npos);
  CHECK(run.error->find("batch 0") != std::string::npos);
  CHECK(run.error->find("stage initialize") != std::string::npos);
  CHECK(result.row.failed == 2);
  CHECK_FALSE(result.outcomes.front().summary.has_value());
}

TEST_CASE("reruns write byte-identical files") {
  auto c = tiny();
  c.output_dir = scratch("first");
  run_experiment(c);
  auto d = tiny();
  d.output_dir = scratch("second");
  run_experiment(d);
  for (auto s : {Strategy::rad, Strategy::no_sel, Strategy::opt_sel, Strategy::full_clean}) {
    for (std::size_t r = 0; r < 2; ++r) {
      auto a = batch_csv_path(c.output_dir, s, 0.3, r);
      auto b = batch_csv_path(d.output_dir, s, 0.3, r);
      REQUIRE(fs::exists(a));
      CHECK(slurp(a) == slurp(b));
    }
  }
  CHECK(batch_csv_path("out", Strategy::voting, 0.3, 2) == fs::path("out/voting/0.30/2/batches.csv"));
  CHECK(fs::exists(c.output_dir / "summary.txt"));
  CHECK(slurp(c.output_dir / "summary.txt").find("evaluation = end_of_arrival") != std::string::npos);
  const auto csv = slurp(batch_csv_path(c.output_dir, Strategy::rad, 0.3, 0));
  CHECK(csv.rfind(batch_csv_header(), 0) == 0);
}

TEST_CASE("matrix cardinality, isolation and determinism") {
  Config base = tiny().to_config();
  base.set("matrix.variants", "rad,voting");
  base.set("matrix.noise_levels", "0.2,0.4");
  auto configs = expand_matrix(base);
  REQUIRE(configs.size() == 4);
  auto m1 = run_matrix(configs);
  auto m2 = run_matrix(configs);
  REQUIRE(m1.comparison.size() == 4);
  CHECK(m1.comparison[0].algorithm == "rad");
  CHECK(m1.comparison[3].algorithm == "voting");
  CHECK(m1.comparison[3].noise == 0.4);
  CHECK(format_comparison_csv(m1.comparison) == format_comparison_csv(m2.comparison));
  CHECK(format_comparison_csv(m1.comparison).rfind(
            "algorithm,noise,initial_accuracy,no_sel,opt_sel,full_clean,proposed", 0) == 0);

  // one entry that cannot load its data does not stop the others
  configs[1].dataset.kind = DatasetSource::Kind::csv;
  configs[1].dataset.path = "/nonexistent/data.csv";
  auto out = scratch("matrix");
  auto m3 = run_matrix(configs, out);
  REQUIRE(m3.entries.size() == 4);
  CHECK(m3.entries[1].error.has_value());
  CHECK(m3.entries[0].result.has_value());
  CHECK(m3.entries[2].result.has_value());
  CHECK(fs::exists(out / "summary.txt"));
  CHECK(fs::exists(out / "comparison.csv"));
}

TEST_CASE("no-sel degrades with noise while the framework holds up") {
  auto c = tiny();
  c.stream.num_batches = 6;
  c.stream.test_size = 300;
  c.repetitions = 1;
  c.dataset.separation = 4.0;
  std::vector<double> finals;
  for (double noise : {0.0, 0.3, 0.6, 0.9}) {
    c.noise.mean_level = noise;
    c.variant = Strategy::no_sel;
    c.compare_baselines = false;
    c.initial_clean = true;
    finals.push_back(run_experiment(c).row.proposed);
  }
  int inversions = 0;
  for (std::size_t i = 1; i < finals.size(); ++i) inversions += finals[i] > finals[i - 1] ? 1 : 0;
  CHECK(inversions <= 1);
  CHECK(finals.back() < finals.front());
}

TEST_CASE("dataset sizing errors surface") {
  auto c = tiny();
  c.dataset.size = 10;
  auto result = run_experiment(c);
  const auto& run = run_of(result, Strategy::rad, 0);
  REQUIRE(run.error.has_value());
  CHECK(run.error->find("dataset too small") != std::string::npos);
}

TEST_CASE("strategy names") {
  for (auto s : {Strategy::rad, Strategy::voting, Strategy::active, Strategy::slimmed, Strategy::no_sel,
                 Strategy::opt_sel, Strategy::full_clean}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
  CHECK(is_baseline(Strategy::opt_sel));
  CHECK_FALSE(is_baseline(Strategy::slimmed));
}
