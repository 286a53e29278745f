// Copyright 2026 The Shapley Forge Authors
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

#pragma once

#include "shapley_forge/bench.hpp"
#include "shapley_forge/boosting.hpp"
#include "shapley_forge/diagnostics.hpp"
#include "shapley_forge/errors.hpp"
#include "shapley_forge/estimators.hpp"
#include "shapley_forge/game_model.hpp"
#include "shapley_forge/generators.hpp"
#include "shapley_forge/inverse_solver.hpp"
#include "shapley_forge/io.hpp"
#include "shapley_forge/mu_distribution.hpp"
#include "shapley_forge/power_indices.hpp"
#include "shapley_forge/random.hpp"
#include "shapley_forge/subset_counts.hpp"
#include "shapley_forge/vectors.hpp"
