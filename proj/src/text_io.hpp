// Copyright 2026 The fgrain Authors.
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

// Internal helpers for the line-delimited JSON formats.

#ifndef FGRAIN_SRC_TEXT_IO_HPP_
#define FGRAIN_SRC_TEXT_IO_HPP_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace fgrain::detail {

// %.9g; non-finite values are emitted as JSON strings.
std::string format_real(double value);

// JSON string literal including quotes.
std::string quote(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Calls fn(object, line_number) for every non-blank line. Header objects
// (those carrying a "config" key) are skipped. Throws kParse with the line
// number on malformed JSON or non-object lines.
void for_each_record(
    std::string_view text, std::string_view what,
    const std::function<void(const nlohmann::json&, std::size_t)>& fn);

// Typed field access that raises kParse naming the field and line.
std::string string_field(const nlohmann::json& obj, const char* key,
                         std::size_t line, std::string_view what);
double real_field(const nlohmann::json& obj, const char* key, std::size_t line,
                  std::string_view what);
long long integer_field(const nlohmann::json& obj, const char* key,
                        std::size_t line, std::string_view what);

}  // namespace fgrain::detail

#endif  // FGRAIN_SRC_TEXT_IO_HPP_
