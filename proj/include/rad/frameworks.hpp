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

// The cleanse-then-classify frameworks as per-arrival step functions over an
// explicit, single-owner state: base RAD, voting with history reprocessing,
// active learning (optionally budgeted) and the slimmed single-model form.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rad/core.hpp"
#include "rad/metrics.hpp"
#include "rad/models.hpp"

namespace rad {

enum class Variant { rad, voting, active, slimmed };

std::string_view to_string(Variant variant) noexcept;
Variant parse_variant(std::string_view name);

struct OracleBudget {
  enum class Mode { unlimited, per_batch_fraction };

  Mode mode = Mode::unlimited;
  double fraction = 1.0;

  void validate() const;
  /// Maximum queries for a batch of `batch_size`: floor(fraction * N), or
  /// SIZE_MAX when unlimited.
  std::size_t limit(std::size_t batch_size) const noexcept;
};

/// Source of ground-truth labels for disputed instances.
class Oracle {
 public:
  virtual ~Oracle() = default;
  /// Throws OracleError when no answer can be given.
  virtual ClassLabel answer(const LabeledInstance& instance) = 0;
};

/// Simulated oracle: reveals the hidden true label.
class GroundTruthOracle final : public Oracle {
 public:
  ClassLabel answer(const LabeledInstance& instance) override {
    ++queries_;
    return instance.true_label;
  }
  std::size_t queries() const noexcept { return queries_; }

 private:
  std::size_t queries_ = 0;
};

/// Split of a batch by agreement between given label and label-model output.
struct CleanseResult {
  std::vector<LabeledInstance> predicted_clean;
  std::vector<LabeledInstance> predicted_dirty;
  /// Label-model prediction for each entry of `predicted_dirty`.
  std::vector<ClassLabel> dirty_predictions;
  /// Label-model prediction for every input instance, in input order.
  std::vector<ClassLabel> predictions;
};

CleanseResult cleanse_with_label_model(const ClassifierModel& label_model,
                                       std::span<const LabeledInstance> batch);

struct VotingResult {
  std::vector<LabeledInstance> accepted;
  std::vector<LabeledInstance> rejected;
  /// Accepted instances whose label was replaced by the agreed prediction.
  std::size_t replaced = 0;
};

/// For each uncertain instance with given label k, label-model prediction kL
/// and classifier prediction kC: accept unchanged if kC == k; accept relabeled
/// to kC if kC == kL; otherwise reject.
VotingResult voting_filter(std::span<const LabeledInstance> uncertain,
                           std::span<const ClassLabel> label_predictions,
                           const ClassifierModel& classifier);

struct FrameworkState {
  Variant variant = Variant::rad;
  int num_classes = 0;
  ClassifierSpec label_spec;
  ClassifierSpec classifier_spec;
  std::optional<ClassifierModel> label_model;  // absent for slimmed
  ClassifierModel classifier;
  /// Everything accepted so far; only grows.
  std::vector<LabeledInstance> clean_pool;
  /// Rejected voting groups, largest first.
  std::vector<std::vector<LabeledInstance>> inactive;
  /// Oracle-labeled sets of the previous two arrivals (slimmed).
  std::vector<LabeledInstance> prev_oracle_batch;
  std::vector<LabeledInstance> prev2_oracle_batch;
  std::size_t oracle_queries_total = 0;
  /// Pool size the current models were trained on.
  std::size_t trained_pool_size = 0;
  /// Training multiset of the most recent slimmed update.
  std::vector<LabeledInstance> last_training_set;
  /// Drives oracle sampling. Model training draws from per-arrival seeds
  /// derived from the classifier specs instead.
  Rng rng;

  std::size_t inactive_total() const noexcept;
};

/// Seeds the pool with the truly clean part of the initial batch and trains
/// the models on it. Throws InitializationError when nothing is clean.
FrameworkState initialize(Variant variant, const Batch& initial, const ClassifierSpec& label_spec,
                          const ClassifierSpec& classifier_spec, int num_classes, std::uint64_t seed);

StepResult rad_step(FrameworkState& state, const Batch& batch);
StepResult voting_step(FrameworkState& state, const Batch& batch);
/// Re-runs voting on the two largest inactive groups with the current
/// models. Returns how many instances moved into the pool.
std::size_t reprocess_history(FrameworkState& state);
StepResult active_step(FrameworkState& state, const Batch& batch, Oracle& oracle,
                       const OracleBudget& budget);
StepResult slimmed_step(FrameworkState& state, const Batch& batch, Oracle& oracle,
                        const OracleBudget& budget);

/// Dispatches on `state.variant`.
StepResult step(FrameworkState& state, const Batch& batch, Oracle& oracle, const OracleBudget& budget);

/// Seed for the model trained at `arrival` (0 = initialization).
std::uint64_t training_seed(const ClassifierSpec& spec, bool label_model, std::size_t arrival) noexcept;

}  // namespace rad
