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

#ifndef MCE_TOOLS_COMMANDS_H_
#define MCE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mce::cli {

struct BuildZooArgs {
  int resolution = 224;
  double width = 1.0;
  uint64_t seed = 0;
  std::string out;
};

struct CompressArgs {
  std::string model;
  std::string precision;
  std::string calib;  // dataset directory or calibration table JSON
  std::string calib_method = "minmax";
  std::string policy;
  std::string out;
  int batch = 32;
};

struct RunArgs {
  std::string model;
  std::string input;  // tensor file or dataset directory
  std::string out;    // stdout when empty
  int batch = 32;
};

struct EvalArgs {
  std::string scores;
  std::string labels;
  double threshold = 0.5;
  std::string csv_out;
};

struct BenchArgs {
  std::vector<std::string> models;
  std::string data;
  int batch = 32;
  int warmup = 3;
  int reps = 10;
  std::vector<std::string> power_traces;
  std::string report;  // stdout when empty
};

struct InspectArgs {
  std::string model;
};

// Thrown for flag combinations the parser cannot express; exits 1.
struct UsageError {
  std::string message;
};

void BuildZoo(const BuildZooArgs& args);
void Compress(const CompressArgs& args);
void Run(const RunArgs& args);
void Eval(const EvalArgs& args);
void Bench(const BenchArgs& args);
void Inspect(const InspectArgs& args);

}  // namespace mce::cli

#endif  // MCE_TOOLS_COMMANDS_H_
