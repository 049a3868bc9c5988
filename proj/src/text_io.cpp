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

#include "text_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "fgrain/error.hpp"

namespace fgrain::detail {

std::string format_real(double value) {
  if (std::isnan(value)) return "\"nan\"";
  if (std::isinf(value)) return value > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string quote(std::string_view text) {
  return nlohmann::json(std::string(text)).dump();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void for_each_record(
    std::string_view text, std::string_view what,
    const std::function<void(const nlohmann::json&, std::size_t)>& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string(what) + " line " +
                                         std::to_string(line_no) + ": " +
                                         e.what());
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kParse, std::string(what) + " line " +
                                         std::to_string(line_no) +
                                         ": expected a JSON object");
    }
    if (!obj.contains("config")) fn(obj, line_no);
    if (end == text.size()) break;
  }
}

namespace {

[[noreturn]] void field_error(const char* key, std::size_t line,
                              std::string_view what, const char* expected) {
  throw Error(ErrorCode::kParse, std::string(what) + " line " +
                                     std::to_string(line) + ": field '" + key +
                                     "' missing or not " + expected);
}

}  // namespace

std::string string_field(const nlohmann::json& obj, const char* key,
                         std::size_t line, std::string_view what) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) field_error(key, line, what, "a string");
  return it->get<std::string>();
}

double real_field(const nlohmann::json& obj, const char* key, std::size_t line,
                  std::string_view what) {
  auto it = obj.find(key);
  if (it != obj.end()) {
    if (it->is_number()) return it->get<double>();
    if (it->is_string()) {
      const auto& s = it->get_ref<const std::string&>();
      if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
  }
  field_error(key, line, what, "a number");
}

long long integer_field(const nlohmann::json& obj, const char* key,
                        std::size_t line, std::string_view what) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    field_error(key, line, what, "an integer");
  }
  return it->get<long long>();
}

}  // namespace fgrain::detail
