// Copyright 2026 The nonlocality-lab Authors
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

// Umbrella header.

#pragma once

#include "box_table_io.hpp"
#include "correlation_core.hpp"
#include "crypto_bell_model.hpp"
#include "entangled_algebra.hpp"
#include "format.hpp"
#include "parallel.hpp"
#include "pr_box.hpp"
#include "pr_singlet_sim.hpp"
#include "random.hpp"
#include "theorem_verification.hpp"
#include "vec3.hpp"
