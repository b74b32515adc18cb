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

#include <cstddef>

namespace symstab {

/// Tolerances shared by every module. Pass a modified copy to override.
struct NumericPolicy {
  /// Algebraic identities: normalization, Hermiticity, unitarity, trace.
  double algebraic_tol = 1e-12;
  /// Smallest eigenvalue accepted for a positive-semidefinite operator.
  double psd_tol = 1e-10;
  /// Projections with norm below this are reported as absent.
  double zero_norm = 1e-12;
};

inline constexpr NumericPolicy kDefaultPolicy{};

/// Dense storage limits.
inline constexpr std::size_t kMaxStateDimension = std::size_t{1} << 22;
inline constexpr std::size_t kMaxOperatorDimension = 1024;

}  // namespace symstab
