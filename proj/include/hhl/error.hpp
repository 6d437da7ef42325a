// Copyright 2026 The hhl-resource-lab Authors
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

namespace hhl {

/// Whether a failure is the caller's fault (bad input) or a numeric/runtime
/// failure during evaluation. The CLI maps these to exit codes 2 and 3.
enum class ErrorKind { validation, runtime };

class Error : public std::runtime_error {
  public:
    Error(std::string name, ErrorKind kind, const std::string &message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)), kind_(kind) {
    }

    const std::string &name() const noexcept {
        return name_;
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

  private:
    std::string name_;
    ErrorKind kind_;
};

#define HHL_DEFINE_ERROR(NAME, KIND)                                                                                   \
    class NAME : public Error {                                                                                        \
      public:                                                                                                          \
        explicit NAME(const std::string &message) : Error(#NAME, ErrorKind::KIND, message) {                           \
        }                                                                                                              \
    };

HHL_DEFINE_ERROR(HermiticityViolation, validation)
HHL_DEFINE_ERROR(InvalidCut, validation)
HHL_DEFINE_ERROR(ShapeError, validation)
HHL_DEFINE_ERROR(CircuitConstantError, validation)
HHL_DEFINE_ERROR(SpectrumError, validation)
HHL_DEFINE_ERROR(EigenvalueScalingError, validation)
HHL_DEFINE_ERROR(StageError, validation)
HHL_DEFINE_ERROR(RangeError, validation)
HHL_DEFINE_ERROR(SizeError, validation)
HHL_DEFINE_ERROR(ConfigError, validation)
// Raised instead of returning a closed-form value that assumes distinct eigenvalues.
HHL_DEFINE_ERROR(DegeneracyWarning, runtime)
HHL_DEFINE_ERROR(ZeroPostselection, runtime)
HHL_DEFINE_ERROR(DegenerateReference, runtime)
HHL_DEFINE_ERROR(NumericError, runtime)

#undef HHL_DEFINE_ERROR

}  // namespace hhl
