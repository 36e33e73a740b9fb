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

#include "rad/frameworks.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace rad {
namespace {

constexpr std::uint64_t kLabelModelTag = 0x4c41'4245'4cULL;  // "LABEL"
constexpr std::uint64_t kClassifierTag = 0x434c'4153'53ULL;  // "CLASS"
constexpr std::uint64_t kOracleTag = 0x4f52'4143'4cULL;      // "ORACL"

void append(std::vector<LabeledInstance>& to, const std::vector<LabeledInstance>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

void require_variant(const FrameworkState& state, Variant expected) {
  if (state.variant != expected) {
    throw ValidationError("step for '" + std::string(to_string(expected)) + "' called on '" +
                          std::string(to_string(state.variant)) + "' state");
  }
}

const ClassifierModel& label_model_of(const FrameworkState& state) {
  if (!state.label_model) throw ValidationError("framework state has no label model");
  return *state.label_model;
}

// Retrains both models on the pool, unless the pool is unchanged since the
// last training.
void retrain(FrameworkState& state, std::size_t arrival) {
  if (state.clean_pool.size() == state.trained_pool_size) return;
  Rng classifier_rng(training_seed(state.classifier_spec, false, arrival));
  state.classifier = train(state.classifier_spec, state.clean_pool, state.num_classes, classifier_rng);
  if (state.label_model) {
    Rng label_rng(training_seed(state.label_spec, true, arrival));
    state.label_model = train(state.label_spec, state.clean_pool, state.num_classes, label_rng);
  }
  state.trained_pool_size = state.clean_pool.size();
}

void add_inactive(FrameworkState& state, std::vector<LabeledInstance> group) {
  if (group.empty()) return;
  state.inactive.push_back(std::move(group));
  std::stable_sort(state.inactive.begin(), state.inactive.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
}

struct OracleSample {
  std::vector<LabeledInstance> queried;
  std::size_t discarded = 0;
};

// Uniform sample of at most `budget.limit(batch_size)` candidates, kept in
// their original order.
OracleSample sample_for_oracle(std::vector<LabeledInstance> candidates, const OracleBudget& budget,
                               std::size_t batch_size, Rng& rng) {
  const std::size_t limit = budget.limit(batch_size);
  OracleSample sample;
  if (candidates.size() <= limit) {
    sample.queried = std::move(candidates);
    return sample;
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < limit; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  order.resize(limit);
  std::sort(order.begin(), order.end());
  for (std::size_t i : order) sample.queried.push_back(std::move(candidates[i]));
  sample.discarded = candidates.size() - limit;
  return sample;
}

std::size_t ask_oracle(std::vector<LabeledInstance>& instances, Oracle& oracle) {
  for (auto& inst : instances) inst.relabel(oracle.answer(inst));
  return instances.size();
}

}  // namespace

std::string_view to_string(Variant variant) noexcept {
  switch (variant) {
    case Variant::rad: return "rad";
    case Variant::voting: return "voting";
    case Variant::active: return "active";
    case Variant::slimmed: return "slimmed";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  if (name == "rad") return Variant::rad;
  if (name == "voting") return Variant::voting;
  if (name == "active") return Variant::active;
  if (name == "slimmed") return Variant::slimmed;
  throw ValidationError("unknown framework variant '" + std::string(name) + "'");
}

void OracleBudget::validate() const {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ValidationError("oracle.fraction must lie in [0, 1]");
}

std::size_t OracleBudget::limit(std::size_t batch_size) const noexcept {
  if (mode == Mode::unlimited) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(fraction * static_cast<double>(batch_size));
}

std::size_t FrameworkState::inactive_total() const noexcept {
  std::size_t total = 0;
  for (const auto& group : inactive) total += group.size();
  return total;
}

std::uint64_t training_seed(const ClassifierSpec& spec, bool label_model, std::size_t arrival) noexcept {
  return derive_seed(spec.seed, label_model ? kLabelModelTag : kClassifierTag, arrival);
}

CleanseResult cleanse_with_label_model(const ClassifierModel& label_model,
                                       std::span<const LabeledInstance> batch) {
  CleanseResult result;
  result.predictions = label_model.predict_batch(batch);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (result.predictions[i] == batch[i].given_label) {
      result.predicted_clean.push_back(batch[i]);
    } else {
      result.predicted_dirty.push_back(batch[i]);
      result.dirty_predictions.push_back(result.predictions[i]);
    }
  }
  return result;
}

VotingResult voting_filter(std::span<const LabeledInstance> uncertain,
                           std::span<const ClassLabel> label_predictions,
                           const ClassifierModel& classifier) {
  if (uncertain.size() != label_predictions.size()) {
    throw ValidationError("voting_filter: one label-model prediction per instance required");
  }
  VotingResult result;
  for (std::size_t i = 0; i < uncertain.size(); ++i) {
    const ClassLabel by_classifier = classifier.predict(uncertain[i].features);
    if (by_classifier == uncertain[i].given_label) {
      result.accepted.push_back(uncertain[i]);
    } else if (by_classifier == label_predictions[i]) {
      LabeledInstance corrected = uncertain[i];
      corrected.relabel(by_classifier);
      result.accepted.push_back(std::move(corrected));
      ++result.replaced;
    } else {
      result.rejected.push_back(uncertain[i]);
    }
  }
  return result;
}

FrameworkState initialize(Variant variant, const Batch& initial, const ClassifierSpec& label_spec,
                          const ClassifierSpec& classifier_spec, int num_classes, std::uint64_t seed) {
  FrameworkState state;
  state.variant = variant;
  state.num_classes = num_classes;
  state.label_spec = label_spec;
  state.classifier_spec = classifier_spec;
  state.rng.seed(derive_seed(seed, kOracleTag));
  for (const auto& inst : initial.instances) {
    if (inst.is_clean) state.clean_pool.push_back(inst);
  }
  if (state.clean_pool.empty()) {
    throw InitializationError("initial batch contains no clean instances");
  }
  Rng classifier_rng(training_seed(classifier_spec, false, 0));
  state.classifier = train(classifier_spec, state.clean_pool, num_classes, classifier_rng);
  if (variant != Variant::slimmed) {
    Rng label_rng(training_seed(label_spec, true, 0));
    state.label_model = train(label_spec, state.clean_pool, num_classes, label_rng);
  }
  state.trained_pool_size = state.clean_pool.size();
  return state;
}

StepResult rad_step(FrameworkState& state, const Batch& batch) {
  require_variant(state, Variant::rad);
  auto cleansed = cleanse_with_label_model(label_model_of(state), batch.instances);
  append(state.clean_pool, cleansed.predicted_clean);
  retrain(state, batch.index);
  auto result = make_step_result(batch, std::move(cleansed.predicted_clean), 0, 0);
  result.selection.discarded = cleansed.predicted_dirty.size();
  return result;
}

std::size_t reprocess_history(FrameworkState& state) {
  if (state.inactive.empty()) return 0;
  const std::size_t take = std::min<std::size_t>(2, state.inactive.size());
  std::vector<std::vector<LabeledInstance>> groups(std::make_move_iterator(state.inactive.begin()),
                                                   std::make_move_iterator(state.inactive.begin() + static_cast<std::ptrdiff_t>(take)));
  state.inactive.erase(state.inactive.begin(), state.inactive.begin() + static_cast<std::ptrdiff_t>(take));

  std::size_t recovered = 0;
  for (auto& group : groups) {
    const auto predictions = label_model_of(state).predict_batch(group);
    auto voted = voting_filter(group, predictions, state.classifier);
    recovered += voted.accepted.size();
    append(state.clean_pool, voted.accepted);
    add_inactive(state, std::move(voted.rejected));
  }
  return recovered;
}

StepResult voting_step(FrameworkState& state, const Batch& batch) {
  require_variant(state, Variant::voting);
  auto cleansed = cleanse_with_label_model(label_model_of(state), batch.instances);
  auto voted = voting_filter(cleansed.predicted_dirty, cleansed.dirty_predictions, state.classifier);

  std::vector<LabeledInstance> selected = std::move(cleansed.predicted_clean);
  append(selected, voted.accepted);
  append(state.clean_pool, selected);
  const std::size_t deferred = voted.rejected.size();
  add_inactive(state, std::move(voted.rejected));

  retrain(state, batch.index);
  reprocess_history(state);

  auto result = make_step_result(batch, std::move(selected), 0, state.inactive_total());
  result.selection.deferred = deferred;
  return result;
}

StepResult active_step(FrameworkState& state, const Batch& batch, Oracle& oracle,
                       const OracleBudget& budget) {
  require_variant(state, Variant::active);
  budget.validate();
  auto cleansed = cleanse_with_label_model(label_model_of(state), batch.instances);
  auto voted = voting_filter(cleansed.predicted_dirty, cleansed.dirty_predictions, state.classifier);
  auto sample = sample_for_oracle(std::move(voted.rejected), budget, batch.size(), state.rng);
  const std::size_t queries = ask_oracle(sample.queried, oracle);
  state.oracle_queries_total += queries;

  std::vector<LabeledInstance> selected = std::move(cleansed.predicted_clean);
  append(selected, voted.accepted);
  append(selected, sample.queried);
  append(state.clean_pool, selected);
  retrain(state, batch.index);

  auto result = make_step_result(batch, std::move(selected), queries, 0);
  result.selection.discarded = sample.discarded;
  return result;
}

StepResult slimmed_step(FrameworkState& state, const Batch& batch, Oracle& oracle,
                        const OracleBudget& budget) {
  require_variant(state, Variant::slimmed);
  budget.validate();
  std::vector<LabeledInstance> agreed;
  std::vector<LabeledInstance> disputed;
  for (const auto& inst : batch.instances) {
    (state.classifier.predict(inst.features) == inst.given_label ? agreed : disputed).push_back(inst);
  }
  auto sample = sample_for_oracle(std::move(disputed), budget, batch.size(), state.rng);
  const std::size_t queries = ask_oracle(sample.queried, oracle);
  state.oracle_queries_total += queries;

  // Oracle answers are learned twice: now and again at the next arrival.
  std::vector<LabeledInstance> training = agreed;
  append(training, sample.queried);
  append(training, state.prev_oracle_batch);
  if (!training.empty()) {
    Rng rng(training_seed(state.classifier_spec, false, batch.index));
    state.classifier = state.classifier.warm_start(training, rng);
  }
  state.last_training_set = std::move(training);
  state.prev2_oracle_batch = std::move(state.prev_oracle_batch);
  state.prev_oracle_batch = sample.queried;

  std::vector<LabeledInstance> selected = std::move(agreed);
  append(selected, sample.queried);
  append(state.clean_pool, selected);
  state.trained_pool_size = state.clean_pool.size();

  auto result = make_step_result(batch, std::move(selected), queries, 0);
  result.selection.discarded = sample.discarded;
  return result;
}

StepResult step(FrameworkState& state, const Batch& batch, Oracle& oracle, const OracleBudget& budget) {
  switch (state.variant) {
    case Variant::rad: return rad_step(state, batch);
    case Variant::voting: return voting_step(state, batch);
    case Variant::active: return active_step(state, batch, oracle, budget);
    case Variant::slimmed: return slimmed_step(state, batch, oracle, budget);
  }
  throw ValidationError("unknown framework variant");
}

}  // namespace rad
