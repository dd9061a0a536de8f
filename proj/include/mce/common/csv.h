// Copyright 2026 The MCE Authors. All Rights Reserved.
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

#ifndef MCE_COMMON_CSV_H_
#define MCE_COMMON_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace mce {

// Minimal comma-separated reader for the project's own tables. Fields are
// not quoted; surrounding whitespace is trimmed; blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column, or -1.
  int Column(std::string_view name) const;
};

CsvTable ParseCsv(std::string_view text, bool has_header = true);

std::string Trim(std::string_view s);

// Shortest text that parses back to the same double.
std::string FormatDouble(double value);
double ParseDouble(std::string_view text);

}  // namespace mce

#endif  // MCE_COMMON_CSV_H_
