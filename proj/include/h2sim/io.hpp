// Copyright 2026 The h2sim Authors
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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace h2sim {

// Fixed formatting so equal configs produce byte-identical CSV bodies.
std::string format_double(double v);

// Minimal RFC-4180 writer: comma separator, '.' decimal point, CRLF-free
// lines, quoting only when a cell needs it.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return body_; }

 private:
  void append_line(const std::vector<std::string>& cells);
  std::size_t columns_;
  std::string body_;
};

// Writes via a temporary file in the same directory plus an atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// FNV-1a 64-bit, hex encoded; content identity for run manifests (not
// cryptographic).
std::string content_hash_hex(const std::string& data);

}  // namespace h2sim
