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

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "json.hpp"
#include "mce/common/error.h"

namespace {

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("mce");
  logger->set_pattern("%^%l%$: %v");
  spdlog::set_default_logger(logger);
  const char* level = std::getenv("MCE_LOG");
  const std::string name = level ? level : "info";
  if (name == "error") spdlog::set_level(spdlog::level::err);
  else if (name == "debug") spdlog::set_level(spdlog::level::debug);
  else spdlog::set_level(spdlog::level::info);
}

}  // namespace

int main(int argc, char** argv) {
  SetUpLogging();
  namespace cli = mce::cli;
  CLI::App app{"Model compression and benchmarking for MobileNetV2-style classifiers", "mce"};
  app.require_subcommand(1);

  cli::BuildZooArgs zoo;
  auto* build = app.add_subcommand("build-zoo", "Build a randomly initialised MobileNetV2 model");
  build->add_option("--res", zoo.resolution, "Input resolution, multiple of 32")->capture_default_str();
  build->add_option("--width", zoo.width, "Width multiplier")->capture_default_str();
  build->add_option("--seed", zoo.seed, "Weight initialisation seed")->capture_default_str();
  build->add_option("--out", zoo.out, "Output model file")->required();

  cli::CompressArgs comp;
  auto* compress = app.add_subcommand("compress", "Lower a model to FP16 or INT8, or re-tag it as FP32");
  compress->add_option("--model", comp.model, "FP32 model file")->required()->check(CLI::ExistingFile);
  compress->add_option("--precision", comp.precision, "Target precision")
      ->required()
      ->check(CLI::IsMember({"fp16", "int8", "fp32"}));
  compress->add_option("--calib", comp.calib, "Calibration dataset directory or table JSON")
      ->check(CLI::ExistingPath);
  compress->add_option("--calib-method", comp.calib_method, "minmax or percentile:P")
      ->capture_default_str();
  compress->add_option("--policy", comp.policy, "Precision policy JSON")->check(CLI::ExistingFile);
  compress->add_option("--batch", comp.batch, "Calibration batch size")->capture_default_str();
  compress->add_option("--out", comp.out, "Output model file")->required();

  cli::RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a model and write filename,logit CSV");
  run->add_option("--model", run_args.model, "Model file")->required()->check(CLI::ExistingFile);
  run->add_option("--input", run_args.input, "Tensor file or dataset directory")
      ->required()
      ->check(CLI::ExistingPath);
  run->add_option("--out", run_args.out, "Output CSV (default stdout)");
  run->add_option("--batch", run_args.batch, "Batch size")->capture_default_str();

  cli::EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Score logits against labels");
  eval->add_option("--scores", eval_args.scores, "filename,logit CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--labels", eval_args.labels, "filename,label CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--threshold", eval_args.threshold, "Decision threshold on sigmoid(logit)")
      ->capture_default_str();
  eval->add_option("--csv-out", eval_args.csv_out, "Also write the metrics as a CSV row");

  cli::BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Measure latency, throughput and power");
  bench->add_option("--model", bench_args.models, "Model file, repeatable")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--data", bench_args.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--batch", bench_args.batch, "Batch size")->capture_default_str();
  bench->add_option("--warmup", bench_args.warmup, "Untimed warmup batches")->capture_default_str();
  bench->add_option("--reps", bench_args.reps, "Timed latency batches")->capture_default_str();
  bench->add_option("--power-trace", bench_args.power_traces,
                    "timestamp_s,watts trace per model; t < 0 is idle")
      ->check(CLI::ExistingFile);
  bench->add_option("--report", bench_args.report, "Report CSV (JSON mirror beside it)");

  cli::InspectArgs inspect_args;
  auto* inspect = app.add_subcommand("inspect", "Print a model's manifest JSON");
  inspect->add_option("--model", inspect_args.model, "Model file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build) cli::BuildZoo(zoo);
    else if (*compress) cli::Compress(comp);
    else if (*run) cli::Run(run_args);
    else if (*eval) cli::Eval(eval_args);
    else if (*bench) cli::Bench(bench_args);
    else if (*inspect) cli::Inspect(inspect_args);
  } catch (const cli::UsageError& ex) {
    spdlog::error("{}", ex.message);
    std::cerr << app.get_subcommands().front()->help();
    return 1;
  } catch (const mce::Error& ex) {
    spdlog::error("{}: {}", mce::ErrorCodeName(ex.code()), ex.what());
    return 2;
  } catch (const std::exception& ex) {
    spdlog::error("{}", ex.what());
    return 2;
  }
  return 0;
}
