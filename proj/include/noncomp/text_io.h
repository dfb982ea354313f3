// Copyright 2026 The Noncomp Authors.
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

// Small string and file helpers shared by the readers and writers.

#ifndef NONCOMP_TEXT_IO_H_
#define NONCOMP_TEXT_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace noncomp {

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string_view> Split(std::string_view text, char sep);

// Splits on runs of ASCII whitespace; empty fields are dropped.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

std::string ToLower(std::string_view text);

// Strips a trailing '\r' left by CRLF files.
std::string_view StripCr(std::string_view line);

// Strict numeric parsing: the whole field must be consumed.
bool ParseDouble(std::string_view field, double *out);
bool ParseInt64(std::string_view field, int64_t *out);

// Shortest representation that round-trips through ParseDouble.
std::string FormatDouble(double value);

// Writes `contents` to a temporary sibling and renames it over `path`, so
// readers never observe a partially written file.
void WriteFileAtomically(const std::filesystem::path &path,
                         std::string_view contents);

}  // namespace noncomp

#endif  // NONCOMP_TEXT_IO_H_
