// Copyright 2026 The mpconc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mpconc {

/// Raised when an input violates an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a requested object would exceed a configured size cap.
class CapExceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Raised when two independent evaluations of the same quantity disagree.
class ConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace mpconc
