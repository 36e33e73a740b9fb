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

#include "rad/baselines.hpp"

#include <string>

#include "rad/frameworks.hpp"

namespace rad {
namespace {

void retrain(BaselineState& state, std::size_t arrival) {
  if (state.pool.size() == state.trained_pool_size) return;
  Rng rng(training_seed(state.spec, false, arrival));
  state.classifier = train(state.spec, state.pool, state.num_classes, rng);
  state.trained_pool_size = state.pool.size();
}

void require_kind(const BaselineState& state, BaselineKind expected) {
  if (state.kind != expected) {
    throw ValidationError("step for '" + std::string(to_string(expected)) + "' called on '" +
                          std::string(to_string(state.kind)) + "' state");
  }
}

StepResult finish(BaselineState& state, const Batch& batch, std::vector<LabeledInstance> selected) {
  state.pool.insert(state.pool.end(), selected.begin(), selected.end());
  retrain(state, batch.index);
  const std::size_t dropped = batch.size() - selected.size();
  auto result = make_step_result(batch, std::move(selected), 0, 0);
  result.selection.discarded = dropped;
  return result;
}

}  // namespace

std::string_view to_string(BaselineKind kind) noexcept {
  switch (kind) {
    case BaselineKind::no_sel: return "no_sel";
    case BaselineKind::opt_sel: return "opt_sel";
    case BaselineKind::full_clean: return "full_clean";
  }
  return "?";
}

BaselineKind parse_baseline_kind(std::string_view name) {
  if (name == "no_sel") return BaselineKind::no_sel;
  if (name == "opt_sel") return BaselineKind::opt_sel;
  if (name == "full_clean") return BaselineKind::full_clean;
  throw ValidationError("unknown baseline '" + std::string(name) + "'");
}

BaselineState initialize_baseline(BaselineKind kind, const Batch& initial, const ClassifierSpec& spec,
                                  int num_classes) {
  BaselineState state;
  state.kind = kind;
  state.num_classes = num_classes;
  state.spec = spec;
  for (const auto& inst : initial.instances) {
    if (inst.is_clean) state.pool.push_back(inst);
  }
  if (state.pool.empty()) throw InitializationError("initial batch contains no clean instances");
  Rng rng(training_seed(spec, false, 0));
  state.classifier = train(spec, state.pool, num_classes, rng);
  state.trained_pool_size = state.pool.size();
  return state;
}

StepResult no_sel_step(BaselineState& state, const Batch& batch) {
  require_kind(state, BaselineKind::no_sel);
  return finish(state, batch, batch.instances);
}

StepResult opt_sel_step(BaselineState& state, const Batch& batch) {
  require_kind(state, BaselineKind::opt_sel);
  std::vector<LabeledInstance> clean;
  for (const auto& inst : batch.instances) {
    if (inst.is_clean) clean.push_back(inst);
  }
  return finish(state, batch, std::move(clean));
}

StepResult full_clean_step(BaselineState& state, const Batch& batch) {
  require_kind(state, BaselineKind::full_clean);
  std::vector<LabeledInstance> restored = batch.instances;
  for (auto& inst : restored) inst.relabel(inst.true_label);
  return finish(state, batch, std::move(restored));
}

StepResult baseline_step(BaselineState& state, const Batch& batch) {
  switch (state.kind) {
    case BaselineKind::no_sel: return no_sel_step(state, batch);
    case BaselineKind::opt_sel: return opt_sel_step(state, batch);
    case BaselineKind::full_clean: return full_clean_step(state, batch);
  }
  throw ValidationError("unknown baseline kind");
}

}  // namespace rad
