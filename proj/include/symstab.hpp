// Copyright 2026 The symstab Authors
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

#include "symstab/circuit.hpp"
#include "symstab/drift.hpp"
#include "symstab/errors.hpp"
#include "symstab/experiment.hpp"
#include "symstab/mixed.hpp"
#include "symstab/numeric.hpp"
#include "symstab/rng.hpp"
#include "symstab/serialization.hpp"
#include "symstab/stats.hpp"
#include "symstab/symspace.hpp"
#include "symstab/tensor.hpp"
#include "symstab/verify.hpp"
