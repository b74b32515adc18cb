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

#include <stdexcept>
#include <string>

namespace symstab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Duplicate or unknown subsystem label.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not agree (matrix side vs. target dimensions, layouts).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A dense object would exceed the configured storage budget.
class SizeBudgetError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (normalization, Hermiticity, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace symstab
