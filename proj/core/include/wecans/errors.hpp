// Copyright 2026 The wecans Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace wecans {

// Invalid arguments and broken preconditions raise std::invalid_argument;
// the two types below separate the failures the CLI maps to distinct exit
// codes.

/// Filesystem read/write failure.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Task and ansatz disagree (qubit counts, parameter counts).
class TaskError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace wecans
