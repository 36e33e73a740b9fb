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

#include "rad/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <thread>
#include <unordered_set>
#include <variant>

namespace rad {
namespace {

constexpr std::uint64_t kSplitTag = 0x5350'4c49'54ULL;  // "SPLIT"
constexpr std::uint64_t kNoiseTag = 0x4e4f'4953'45ULL;  // "NOISE"
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string, std::less<>> kKnownKeys = {
    "dataset.source", "dataset.path", "dataset.separation", "dataset.size",
    "stream.num_classes", "stream.num_features", "stream.initial_batch_size", "stream.batch_size",
    "stream.num_batches", "stream.test_size", "stream.seed", "stream.stratified",
    "stream.scale_features",
    "noise.mean", "noise.std_mode", "noise.std", "noise.seed",
    "label_model.kind", "label_model.knn_k", "label_model.mlp_hidden", "label_model.mlp_epochs",
    "label_model.mlp_learning_rate", "label_model.mlp_batch_size", "label_model.seed",
    "classifier.kind", "classifier.knn_k", "classifier.mlp_hidden", "classifier.mlp_epochs",
    "classifier.mlp_learning_rate", "classifier.mlp_batch_size", "classifier.seed",
    "framework.variant", "oracle.limit_mode", "oracle.fraction", "initial.clean",
    "experiment.repetitions", "experiment.compare_baselines", "experiment.threads", "output.dir",
    "matrix.variants", "matrix.noise_levels",
};

std::string join_sizes(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

std::string real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

ClassifierSpec read_spec(const Config& c, const std::string& prefix, ClassifierSpec spec) {
  spec.kind = parse_classifier_kind(c.get_string(prefix + ".kind", std::string(to_string(spec.kind))));
  spec.knn_k = c.get_uint(prefix + ".knn_k", spec.knn_k);
  if (c.contains(prefix + ".mlp_hidden")) {
    spec.mlp_hidden.clear();
    Config one;
    for (const auto& item : c.get_list(prefix + ".mlp_hidden")) {
      one.set("w", item);
      spec.mlp_hidden.push_back(one.get_uint("w", 0));
    }
  }
  spec.mlp_epochs = c.get_uint(prefix + ".mlp_epochs", spec.mlp_epochs);
  spec.mlp_learning_rate = c.get_double(prefix + ".mlp_learning_rate", spec.mlp_learning_rate);
  spec.mlp_batch_size = c.get_uint(prefix + ".mlp_batch_size", spec.mlp_batch_size);
  spec.seed = c.get_uint(prefix + ".seed", spec.seed);
  return spec;
}

void write_spec(Config& c, const std::string& prefix, const ClassifierSpec& spec) {
  c.set(prefix + ".kind", std::string(to_string(spec.kind)));
  c.set(prefix + ".knn_k", std::to_string(spec.knn_k));
  c.set(prefix + ".mlp_hidden", join_sizes(spec.mlp_hidden));
  c.set(prefix + ".mlp_epochs", std::to_string(spec.mlp_epochs));
  c.set(prefix + ".mlp_learning_rate", real(spec.mlp_learning_rate));
  c.set(prefix + ".mlp_batch_size", std::to_string(spec.mlp_batch_size));
  c.set(prefix + ".seed", std::to_string(spec.seed));
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

using LearnerState = std::variant<FrameworkState, BaselineState>;

const ClassifierModel& classifier_of(const LearnerState& state) {
  return std::visit([](const auto& s) -> const ClassifierModel& { return s.classifier; }, state);
}

const std::vector<LabeledInstance>& pool_of(const LearnerState& state) {
  if (const auto* f = std::get_if<FrameworkState>(&state)) return f->clean_pool;
  return std::get<BaselineState>(state).pool;
}

ClassifierSpec with_seed(ClassifierSpec spec, std::size_t repetition) {
  spec.seed ^= repetition;
  return spec;
}

}  // namespace

std::string_view to_string(Strategy strategy) noexcept {
  switch (strategy) {
    case Strategy::rad: return "rad";
    case Strategy::voting: return "voting";
    case Strategy::active: return "active";
    case Strategy::slimmed: return "slimmed";
    case Strategy::no_sel: return "no_sel";
    case Strategy::opt_sel: return "opt_sel";
    case Strategy::full_clean: return "full_clean";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  for (auto s : {Strategy::rad, Strategy::voting, Strategy::active, Strategy::slimmed, Strategy::no_sel,
                 Strategy::opt_sel, Strategy::full_clean}) {
    if (name == to_string(s)) return s;
  }
  throw ValidationError("unknown framework.variant '" + std::string(name) + "'");
}

bool is_baseline(Strategy strategy) noexcept {
  return strategy == Strategy::no_sel || strategy == Strategy::opt_sel || strategy == Strategy::full_clean;
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig config;
  config.label_model.kind = ClassifierKind::mlp;
  config.classifier.kind = ClassifierKind::knn;
  return config;
}

ExperimentConfig ExperimentConfig::from_config(const Config& c) {
  for (const auto& [key, value] : c.entries()) {
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  ExperimentConfig config = defaults();

  const auto source = c.get_string("dataset.source", "synthetic");
  if (source == "synthetic") {
    config.dataset.kind = DatasetSource::Kind::synthetic;
  } else if (source == "csv") {
    config.dataset.kind = DatasetSource::Kind::csv;
  } else {
    throw ConfigError("dataset.source must be synthetic or csv");
  }
  config.dataset.path = c.get_string("dataset.path", "");
  config.dataset.separation = c.get_double("dataset.separation", config.dataset.separation);
  config.dataset.size = c.get_uint("dataset.size", config.dataset.size);

  auto& s = config.stream;
  s.num_classes = static_cast<int>(c.get_uint("stream.num_classes", static_cast<std::uint64_t>(s.num_classes)));
  s.num_features = c.get_uint("stream.num_features", s.num_features);
  s.initial_batch_size = c.get_uint("stream.initial_batch_size", s.initial_batch_size);
  s.batch_size = c.get_uint("stream.batch_size", s.batch_size);
  s.num_batches = c.get_uint("stream.num_batches", s.num_batches);
  s.test_size = c.get_uint("stream.test_size", s.test_size);
  s.seed = c.get_uint("stream.seed", s.seed);
  s.stratified = c.get_bool("stream.stratified", s.stratified);
  config.scale_features = c.get_bool("stream.scale_features", config.scale_features);

  auto& n = config.noise;
  n.mean_level = c.get_double("noise.mean", n.mean_level);
  const auto mode = c.get_string("noise.std_mode", "relative");
  if (mode == "relative") {
    n.std_dev_mode = StdDevMode::relative;
  } else if (mode == "absolute") {
    n.std_dev_mode = StdDevMode::absolute;
  } else {
    throw ConfigError("noise.std_mode must be relative or absolute");
  }
  n.std_dev = c.get_double("noise.std", n.std_dev);
  n.seed = c.get_uint("noise.seed", n.seed);

  config.label_model = read_spec(c, "label_model", config.label_model);
  config.classifier = read_spec(c, "classifier", config.classifier);
  config.variant = parse_strategy(c.get_string("framework.variant", "rad"));

  const auto limit = c.get_string("oracle.limit_mode", "unlimited");
  if (limit == "unlimited") {
    config.budget.mode = OracleBudget::Mode::unlimited;
  } else if (limit == "per_batch_fraction") {
    config.budget.mode = OracleBudget::Mode::per_batch_fraction;
  } else {
    throw ConfigError("oracle.limit_mode must be unlimited or per_batch_fraction");
  }
  config.budget.fraction = c.get_double("oracle.fraction", config.budget.fraction);

  config.initial_clean = c.get_bool("initial.clean", config.initial_clean);
  config.repetitions = c.get_uint("experiment.repetitions", config.repetitions);
  config.compare_baselines = c.get_bool("experiment.compare_baselines", config.compare_baselines);
  config.threads = c.get_uint("experiment.threads", config.threads);
  config.output_dir = c.get_string("output.dir", "");
  config.validate();
  return config;
}

Config ExperimentConfig::to_config() const {
  Config c;
  c.set("dataset.source", dataset.kind == DatasetSource::Kind::csv ? "csv" : "synthetic");
  if (!dataset.path.empty()) c.set("dataset.path", dataset.path.string());
  c.set("dataset.separation", real(dataset.separation));
  c.set("dataset.size", std::to_string(dataset.size));
  c.set("stream.num_classes", std::to_string(stream.num_classes));
  c.set("stream.num_features", std::to_string(stream.num_features));
  c.set("stream.initial_batch_size", std::to_string(stream.initial_batch_size));
  c.set("stream.batch_size", std::to_string(stream.batch_size));
  c.set("stream.num_batches", std::to_string(stream.num_batches));
  c.set("stream.test_size", std::to_string(stream.test_size));
  c.set("stream.seed", std::to_string(stream.seed));
  c.set("stream.stratified", stream.stratified ? "true" : "false");
  c.set("stream.scale_features", scale_features ? "true" : "false");
  c.set("noise.mean", real(noise.mean_level));
  c.set("noise.std_mode", noise.std_dev_mode == StdDevMode::relative ? "relative" : "absolute");
  c.set("noise.std", real(noise.std_dev));
  c.set("noise.seed", std::to_string(noise.seed));
  write_spec(c, "label_model", label_model);
  write_spec(c, "classifier", classifier);
  c.set("framework.variant", std::string(to_string(variant)));
  c.set("oracle.limit_mode",
        budget.mode == OracleBudget::Mode::unlimited ? "unlimited" : "per_batch_fraction");
  c.set("oracle.fraction", real(budget.fraction));
  c.set("initial.clean", initial_clean ? "true" : "false");
  c.set("experiment.repetitions", std::to_string(repetitions));
  c.set("experiment.compare_baselines", compare_baselines ? "true" : "false");
  c.set("experiment.threads", std::to_string(threads));
  if (!output_dir.empty()) c.set("output.dir", output_dir.string());
  return c;
}

void ExperimentConfig::validate() const {
  stream.validate();
  noise.validate();
  label_model.validate();
  classifier.validate();
  budget.validate();
  if (repetitions < 1) throw ValidationError("experiment.repetitions must be >= 1");
  if (!(dataset.separation > 0.0)) throw ValidationError("dataset.separation must be > 0");
  if (dataset.kind == DatasetSource::Kind::csv && dataset.path.empty()) {
    throw ValidationError("dataset.path is required for csv sources");
  }
}

std::string ExperimentConfig::fingerprint() const {
  Config c = to_config();
  for (const char* key : {"stream.seed", "noise.seed", "label_model.seed", "classifier.seed",
                          "experiment.threads", "output.dir"}) {
    c.erase(key);
  }
  return c.to_text();
}

const StrategyOutcome* ExperimentResult::find(Strategy strategy) const noexcept {
  for (const auto& outcome : outcomes) {
    if (outcome.strategy == strategy) return &outcome;
  }
  return nullptr;
}

const RunSummary& ExperimentResult::summary() const {
  const auto* outcome = find(config.variant);
  if (!outcome || !outcome->summary) throw Error("no successful repetition of " + std::string(to_string(config.variant)));
  return *outcome->summary;
}

Dataset load_dataset(const ExperimentConfig& config) {
  if (config.dataset.kind == DatasetSource::Kind::csv) {
    return load_csv(config.dataset.path, config.stream.num_classes);
  }
  if (config.dataset.size > 0) {
    return generate_synthetic(config.stream, config.dataset.separation, config.dataset.size);
  }
  return generate_synthetic(config.stream, config.dataset.separation);
}

PreparedStream prepare_stream(const ExperimentConfig& config, const Dataset& dataset,
                              std::size_t repetition) {
  PreparedStream stream;
  stream.repetition = repetition;
  stream.seed = config.stream.seed ^ repetition;
  stream.num_classes = dataset.num_classes;

  Rng split_rng(derive_seed(stream.seed, kSplitTag));
  stream.split = split_stream(dataset, config.stream, split_rng);
  if (config.scale_features) {
    MinMaxScaler scaler;
    scaler.fit(stream.split.initial.instances);
    scaler.transform(stream.split);
  }

  NoiseSpec noise = config.noise;
  noise.seed ^= repetition;
  Rng noise_rng(derive_seed(noise.seed, kNoiseTag));
  if (!config.initial_clean) {
    inject_symmetric_noise_in_place(stream.split.initial, draw_batch_noise_level(noise, noise_rng),
                                    dataset.num_classes, noise_rng);
  }
  for (auto& batch : stream.split.arrivals) {
    inject_symmetric_noise_in_place(batch, draw_batch_noise_level(noise, noise_rng), dataset.num_classes,
                                    noise_rng);
  }
  return stream;
}

RunResult run_strategy(const ExperimentConfig& config, const PreparedStream& stream, Strategy strategy) {
  RunResult result;
  result.strategy = strategy;
  result.noise_mean = config.noise.mean_level;
  result.repetition = stream.repetition;
  result.trace.config_fingerprint = config.fingerprint();
  result.trace.seed = stream.seed;

  const auto& split = stream.split;
  const auto label_spec = with_seed(config.label_model, stream.repetition);
  const auto classifier_spec = with_seed(config.classifier, stream.repetition);
  std::string stage = "initialize";
  std::size_t batch_index = 0;
  try {
    LearnerState state = [&]() -> LearnerState {
      switch (strategy) {
        case Strategy::no_sel:
          return initialize_baseline(BaselineKind::no_sel, split.initial, classifier_spec, stream.num_classes);
        case Strategy::opt_sel:
          return initialize_baseline(BaselineKind::opt_sel, split.initial, classifier_spec, stream.num_classes);
        case Strategy::full_clean:
          return initialize_baseline(BaselineKind::full_clean, split.initial, classifier_spec,
                                     stream.num_classes);
        case Strategy::rad:
          return initialize(Variant::rad, split.initial, label_spec, classifier_spec, stream.num_classes, stream.seed);
        case Strategy::voting:
          return initialize(Variant::voting, split.initial, label_spec, classifier_spec, stream.num_classes,
                            stream.seed);
        case Strategy::active:
          return initialize(Variant::active, split.initial, label_spec, classifier_spec, stream.num_classes,
                            stream.seed);
        case Strategy::slimmed:
          return initialize(Variant::slimmed, split.initial, label_spec, classifier_spec, stream.num_classes,
                            stream.seed);
      }
      throw ValidationError("unknown strategy");
    }();
    stage = "evaluate";
    result.trace.initial_accuracy = evaluate_accuracy(classifier_of(state), split.test);

    GroundTruthOracle oracle;
    CumulativeMetrics metrics;
    for (const auto& batch : split.arrivals) {
      batch_index = batch.index;
      stage = "step";
      StepResult stepped = std::visit(
          [&](auto& s) -> StepResult {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, FrameworkState>) {
              return step(s, batch, oracle, config.budget);
            } else {
              return baseline_step(s, batch);
            }
          },
          state);
      stage = "evaluate";
      metrics.record(stepped.report, evaluate_accuracy(classifier_of(state), split.test));
      result.trace.reports.push_back(stepped.report);
      result.selections.push_back(std::move(stepped.selection));
    }

    stage = "audit";
    std::unordered_set<InstanceId> test_ids;
    for (const auto& inst : split.test) test_ids.insert(inst.id);
    for (const auto& inst : pool_of(state)) {
      if (test_ids.contains(inst.id)) {
        throw Error("test instance " + std::to_string(inst.id) + " entered the training pool");
      }
    }
    result.final_pool_size = pool_of(state).size();
    if (const auto* f = std::get_if<FrameworkState>(&state)) result.oracle_queries_total = f->oracle_queries_total;
  } catch (const std::exception& e) {
    result.error = "repetition " + std::to_string(stream.repetition) + ", batch " +
                   std::to_string(batch_index) + ", stage " + stage + ": " + e.what();
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  const Dataset dataset = load_dataset(config);

  std::vector<Strategy> strategies{config.variant};
  if (config.compare_baselines) {
    for (auto b : {Strategy::no_sel, Strategy::opt_sel, Strategy::full_clean}) {
      if (b != config.variant) strategies.push_back(b);
    }
  }

  std::vector<std::optional<PreparedStream>> streams(config.repetitions);
  std::vector<std::string> stream_errors(config.repetitions);
  parallel_for(config.repetitions, config.threads, [&](std::size_t r) {
    try {
      streams[r] = prepare_stream(config, dataset, r);
    } catch (const std::exception& e) {
      stream_errors[r] = "repetition " + std::to_string(r) + ", batch 0, stage prepare: " + e.what();
    }
  });

  const std::size_t per_rep = strategies.size();
  std::vector<RunResult> runs(config.repetitions * per_rep);
  parallel_for(runs.size(), config.threads, [&](std::size_t task) {
    const std::size_t r = task / per_rep;
    const Strategy strategy = strategies[task % per_rep];
    if (!streams[r]) {
      runs[task].strategy = strategy;
      runs[task].noise_mean = config.noise.mean_level;
      runs[task].repetition = r;
      runs[task].error = stream_errors[r];
      return;
    }
    runs[task] = run_strategy(config, *streams[r], strategy);
  });

  for (std::size_t s = 0; s < per_rep; ++s) {
    StrategyOutcome outcome;
    outcome.strategy = strategies[s];
    std::vector<RunTrace> traces;
    for (std::size_t r = 0; r < config.repetitions; ++r) {
      auto& run = runs[r * per_rep + s];
      if (!run.error) traces.push_back(run.trace);
      outcome.runs.push_back(std::move(run));
    }
    if (!traces.empty()) outcome.summary = aggregate_runs(traces);
    result.outcomes.push_back(std::move(outcome));
  }

  auto summary_of = [&](Strategy s) -> const RunSummary* {
    const auto* o = result.find(s);
    return o && o->summary ? &*o->summary : nullptr;
  };
  auto& main = result.outcomes.front();
  if (main.summary) {
    attach_baselines(*main.summary, summary_of(Strategy::no_sel), summary_of(Strategy::opt_sel),
                     summary_of(Strategy::full_clean));
  }

  auto& row = result.row;
  row.algorithm = std::string(to_string(config.variant));
  row.noise = config.noise.mean_level;
  row.repetitions = config.repetitions;
  for (const auto& run : main.runs) row.failed += run.error ? 1 : 0;
  auto final_of = [&](Strategy s) {
    const auto* summary = summary_of(s);
    return summary ? summary->final_accuracy : kMissing;
  };
  row.initial_accuracy = main.summary ? main.summary->initial_accuracy : kMissing;
  row.proposed = final_of(config.variant);
  row.no_sel = final_of(Strategy::no_sel);
  row.opt_sel = final_of(Strategy::opt_sel);
  row.full_clean = final_of(Strategy::full_clean);
  row.improvement = row.proposed - row.no_sel;
  row.improvement_room = row.full_clean - row.no_sel;
  row.oracle_queries = main.summary ? main.summary->oracle_queries_mean : kMissing;

  if (!config.output_dir.empty()) {
    write_run_outputs(result, config.output_dir);
    const std::vector<ExperimentResult> one{result};
    write_text_file(config.output_dir / "summary.txt", format_summary(one));
    write_text_file(config.output_dir / "comparison.csv", format_comparison_csv(std::span(&result.row, 1)));
  }
  return result;
}

std::vector<ExperimentConfig> expand_matrix(const Config& config) {
  auto variants = config.get_list("matrix.variants");
  auto noise_levels = config.get_list("matrix.noise_levels");
  Config base = config;
  base.erase("matrix.variants");
  base.erase("matrix.noise_levels");
  if (variants.empty()) variants.push_back(base.get_string("framework.variant", "rad"));
  if (noise_levels.empty()) noise_levels.push_back(base.get_string("noise.mean", "0.3"));

  std::vector<ExperimentConfig> configs;
  for (const auto& variant : variants) {
    for (const auto& noise : noise_levels) {
      Config entry = base;
      entry.set("framework.variant", variant);
      entry.set("noise.mean", noise);
      configs.push_back(ExperimentConfig::from_config(entry));
    }
  }
  return configs;
}

MatrixResult run_matrix(const std::vector<ExperimentConfig>& configs, const std::filesystem::path& output_dir) {
  MatrixResult matrix;
  std::vector<ExperimentResult> done;
  std::vector<std::string> failures;
  for (const auto& config : configs) {
    MatrixEntry entry;
    entry.config = config;
    entry.config.output_dir.clear();
    try {
      entry.result = run_experiment(entry.config);
      matrix.comparison.push_back(entry.result->row);
      if (!output_dir.empty()) write_run_outputs(*entry.result, output_dir);
      done.push_back(*entry.result);
    } catch (const std::exception& e) {
      entry.error = std::string(to_string(config.variant)) + " @ noise " + real(config.noise.mean_level) +
                    ": " + e.what();
      failures.push_back(*entry.error);
    }
    matrix.entries.push_back(std::move(entry));
  }
  if (!output_dir.empty()) {
    write_text_file(output_dir / "summary.txt", format_summary(done) + [&] {
      std::string text;
      for (const auto& f : failures) text += "\n[failed_config]\nerror = " + f + "\n";
      return text;
    }());
    write_text_file(output_dir / "comparison.csv", format_comparison_csv(matrix.comparison));
  }
  return matrix;
}

}  // namespace rad
