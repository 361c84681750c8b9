// Copyright 2026 The stalambda Authors
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

namespace stalambda {

/// Base class for every error raised by the toolkit. The name() is the
/// stable identifier used by the CLI when reporting failures.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define STALAMBDA_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                          \
   public:                                                             \
    explicit Type(const std::string& what) : Error(#Type, what) {}     \
  };

STALAMBDA_DEFINE_ERROR(NotHermitian)
STALAMBDA_DEFINE_ERROR(InvalidWinding)
STALAMBDA_DEFINE_ERROR(InvalidParameters)
STALAMBDA_DEFINE_ERROR(TimeOutOfRange)
STALAMBDA_DEFINE_ERROR(DegeneratePulse)
STALAMBDA_DEFINE_ERROR(DegenerateSamples)
STALAMBDA_DEFINE_ERROR(InvalidState)
STALAMBDA_DEFINE_ERROR(InvalidSteps)
STALAMBDA_DEFINE_ERROR(InvalidDensity)
STALAMBDA_DEFINE_ERROR(InvalidRates)
STALAMBDA_DEFINE_ERROR(NegativeRate)
STALAMBDA_DEFINE_ERROR(ConfigError)
STALAMBDA_DEFINE_ERROR(ComputationError)

#undef STALAMBDA_DEFINE_ERROR

}  // namespace stalambda
