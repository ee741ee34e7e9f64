// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace onhold {

enum class ErrorKind {
    MalformedRow,
    UnknownLabel,
    DuplicateId,
    Io,
    EmptyCorpus,
    DegenerateTraining,
    NonFiniteLoss,
    SingleClass,
    TooFewInstances,
    TooFewProjects,
    ModelFormat,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// All recoverable failures raised by the library. The CLI maps these to
/// exit code 2 (user/input error).
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace onhold
