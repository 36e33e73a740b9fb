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

// Reference selection strategies: take everything, take only the truly clean
// labels, or take everything with labels restored to the truth.

#pragma once

#include <string_view>
#include <vector>

#include "rad/core.hpp"
#include "rad/metrics.hpp"
#include "rad/models.hpp"

namespace rad {

enum class BaselineKind { no_sel, opt_sel, full_clean };

std::string_view to_string(BaselineKind kind) noexcept;
BaselineKind parse_baseline_kind(std::string_view name);

struct BaselineState {
  BaselineKind kind = BaselineKind::no_sel;
  int num_classes = 0;
  ClassifierSpec spec;
  ClassifierModel classifier;
  std::vector<LabeledInstance> pool;
  std::size_t trained_pool_size = 0;
};

/// Same start as the frameworks: the truly clean part of the initial batch.
BaselineState initialize_baseline(BaselineKind kind, const Batch& initial, const ClassifierSpec& spec,
                                  int num_classes);

StepResult no_sel_step(BaselineState& state, const Batch& batch);
StepResult opt_sel_step(BaselineState& state, const Batch& batch);
StepResult full_clean_step(BaselineState& state, const Batch& batch);
StepResult baseline_step(BaselineState& state, const Batch& batch);

}  // namespace rad
