// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace onhold {

/// Writes to a temporary sibling file, then renames it over `path`, so
/// readers never observe a partial file. Throws Error{Io}.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Whole-file read. Throws Error{Io}.
std::string read_file(const std::filesystem::path& path);

}  // namespace onhold
