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

#include "commands.h"

#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>
#include <limits>
#include <map>

#include "mce/bench/harness.h"
#include "mce/bench/power.h"
#include "mce/bench/report.h"
#include "mce/common/byte_io.h"
#include "mce/common/csv.h"
#include "mce/common/error.h"
#include "mce/eval/labels.h"
#include "mce/eval/metrics.h"
#include "mce/exec/dataset.h"
#include "mce/exec/executor.h"
#include "mce/exec/tensor_file.h"
#include "mce/ir/manifest.h"
#include "mce/ir/mobilenet_v2.h"
#include "mce/ir/serialize.h"
#include "mce/quant/calibration.h"
#include "mce/quant/passes.h"
#include "mce/quant/size_report.h"

namespace mce::cli {
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

void Emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    WriteFileText(path, text);
    spdlog::info("wrote {}", path);
  }
}

Json ReadJson(const fs::path& path) {
  try {
    return Json::parse(ReadFileText(path));
  } catch (const Json::parse_error& ex) {
    throw Error(ErrorCode::kInvalidArgument, path.string() + ": " + ex.what());
  }
}

CalibrationTable LoadOrCalibrate(const Graph& graph, const CompressArgs& args) {
  if (fs::is_regular_file(args.calib)) {
    spdlog::info("reading calibration table {}", args.calib);
    return CalibrationTable::FromJson(ReadJson(args.calib));
  }
  const Dataset data = Dataset::Load(args.calib);
  const CalibrationMethod method = CalibrationMethod::Parse(args.calib_method);
  spdlog::info("calibrating on {} images with {}", data.size(), method.Tag());
  CalibrationTable table = Calibrate(graph, data, method, args.batch);
  const std::string table_path = args.out + ".calib.json";
  WriteFileText(table_path, table.ToJson().dump(2) + "\n");
  spdlog::info("wrote {}", table_path);
  return table;
}

std::map<std::string, std::string> ReadKeyedColumn(const fs::path& path, std::string_view column) {
  const CsvTable table = ParseCsv(ReadFileText(path));
  const int key = table.Column("filename");
  const int value = table.Column(column);
  if (key < 0 || value < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                path.string() + " needs filename," + std::string(column) + " columns");
  }
  std::map<std::string, std::string> out;
  for (const auto& row : table.rows) {
    if (row.size() <= static_cast<size_t>(std::max(key, value))) {
      throw Error(ErrorCode::kInvalidArgument, "short row in " + path.string());
    }
    if (!out.emplace(row[key], row[value]).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate filename '" + row[key] + "' in " +
                                                   path.string());
    }
  }
  return out;
}

}  // namespace

void BuildZoo(const BuildZooArgs& args) {
  MobileNetV2Config config;
  config.resolution = args.resolution;
  config.width = args.width;
  config.seed = args.seed;
  const Graph graph = BuildMobileNetV2(config);
  SaveModel(graph, args.out);
  spdlog::info("wrote {} ({} nodes) and {}", args.out, graph.nodes().size(),
               ManifestPath(args.out).string());
}

void Compress(const CompressArgs& args) {
  const Graph graph = LoadModel(args.model);
  Graph compressed;
  if (args.precision == "fp32") {
    if (!args.policy.empty()) throw UsageError{"--policy does not apply to fp32"};
    compressed = RetagFp32(graph);
  } else {
    const DType target = args.precision == "fp16" ? DType::kFP16 : DType::kINT8;
    PrecisionPolicy policy = PrecisionPolicy::Default(target);
    if (!args.policy.empty()) {
      policy = PrecisionPolicy::FromJson(ReadJson(args.policy));
      if (policy.target() != target) {
        throw UsageError{"policy target does not match --precision " + args.precision};
      }
    }
    if (target == DType::kFP16) {
      if (!args.calib.empty()) spdlog::warn("--calib is ignored for fp16");
      compressed = LowerFp16(graph, policy);
    } else {
      if (args.calib.empty()) throw UsageError{"--precision int8 requires --calib"};
      compressed = QuantizeInt8(graph, LoadOrCalibrate(graph, args), policy);
    }
  }
  SaveModel(compressed, args.out);
  const SizeReport size = MakeSizeReport(fs::path(args.model), fs::path(args.out));
  spdlog::info("wrote {}: {} -> {} bytes (ratio {}), weights {} -> {} bytes (ratio {})", args.out,
               size.bytes_before, size.bytes_after, FormatDouble(size.ratio),
               size.weight_bytes_before, size.weight_bytes_after, FormatDouble(size.weight_ratio));
}

void Run(const RunArgs& args) {
  if (args.batch < 1) throw UsageError{"--batch must be positive"};
  const Graph graph = LoadModel(args.model);
  const Executor executor(graph);
  Dataset data;
  if (fs::is_directory(args.input)) {
    data = Dataset::Load(args.input);
  } else {
    data = Dataset({Sample{fs::path(args.input).filename().string(), LoadTensorFile(args.input),
                           std::nullopt}});
  }
  if (data.empty()) throw Error(ErrorCode::kNotFound, "no images in " + args.input);
  std::string csv = "filename,logit\n";
  const std::vector<size_t> order = data.Order();
  for (size_t begin = 0; begin < order.size(); begin += args.batch) {
    const size_t end = std::min(order.size(), begin + static_cast<size_t>(args.batch));
    const std::span<const size_t> indices(order.data() + begin, end - begin);
    const RunResult result = executor.Run(data.Batch(indices));
    const std::vector<float> logits = result.outputs.at(0).ToFloats();
    const size_t per_image = logits.size() / indices.size();
    for (size_t i = 0; i < indices.size(); ++i) {
      csv += data[indices[i]].filename + "," + FormatDouble(logits[i * per_image]) + "\n";
    }
  }
  Emit(csv, args.out);
}

void Eval(const EvalArgs& args) {
  const auto logits = ReadKeyedColumn(args.scores, "logit");
  const auto labels = ReadKeyedColumn(args.labels, "label");
  std::vector<double> scores;
  std::vector<int> truth;
  for (const auto& [filename, logit] : logits) {
    auto it = labels.find(filename);
    if (it == labels.end()) throw Error(ErrorCode::kMissingEntry, "no label for '" + filename + "'");
    scores.push_back(Sigmoid(ParseDouble(logit)));
    truth.push_back(static_cast<int>(ParseBinaryLabel(it->second)));
  }
  if (scores.empty()) throw Error(ErrorCode::kInvalidArgument, "no scores in " + args.scores);
  const ConfusionMatrix cm = Confusion(scores, truth, args.threshold);
  std::optional<double> auc;
  if (cm.tp + cm.fn > 0 && cm.tn + cm.fp > 0) auc = RocAuc(scores, truth);
  else spdlog::warn("single-class labels: roc_auc omitted");
  const MetricsReport report = Metrics(cm, auc);
  std::cout << report.ToJson().dump(2) << "\n";
  if (!args.csv_out.empty()) {
    WriteFileText(args.csv_out, MetricsReport::CsvHeader() + "\n" + report.CsvRow() + "\n");
  }
}

void Bench(const BenchArgs& args) {
  if (args.batch < 1 || args.warmup < 0 || args.reps < 1) {
    throw UsageError{"--batch and --reps must be positive and --warmup non-negative"};
  }
  if (!args.power_traces.empty() && args.power_traces.size() != args.models.size()) {
    throw UsageError{"give one --power-trace per --model"};
  }
  const Dataset data = Dataset::Load(args.data);
  if (data.empty()) throw Error(ErrorCode::kNotFound, "no images in " + args.data);

  std::vector<BenchRow> rows;
  Json runs = Json::array();
  for (size_t m = 0; m < args.models.size(); ++m) {
    const Graph graph = LoadModel(args.models[m]);
    const Executor executor(graph);
    LatencyOptions options;
    options.batch_size = args.batch;
    options.warmup = args.warmup;
    options.timed = args.reps;
    const LatencyRun latency = BenchLatency(executor, data, options);
    const ThroughputStats throughput = BenchThroughput(executor, data, args.batch);

    BenchRow row;
    row.precision = std::string(PrecisionTagName(graph.precision()));
    row.size_bytes = fs::file_size(args.models[m]);
    row.mean_latency_ms = latency.stats.mean * 1e3;
    row.throughput_ips = throughput.images_per_second;
    Json run{{"precision", row.precision},
             {"model", args.models[m]},
             {"latency_median_ms", latency.stats.median * 1e3},
             {"latency_p95_ms", latency.stats.p95 * 1e3},
             {"throughput_images", throughput.images},
             {"throughput_seconds", throughput.seconds},
             {"invocations", throughput.invocations()}};
    if (!args.power_traces.empty()) {
      // Trace time is relative to the run start: negative timestamps are idle.
      const TracePowerSampler trace = TracePowerSampler::FromCsv(args.power_traces[m]);
      constexpr double kInf = std::numeric_limits<double>::infinity();
      const Microwatts idle = SamplePower(trace, {-kInf, 0.0});
      const Microwatts active = SamplePower(trace, {0.0, kInf});
      const PowerDelta delta = PowerDeltaRatio(active, idle);
      row.power_mean_w = active.watts();
      row.power_delta_w = delta.delta.watts();
      const auto active_readings = trace.Readings({0.0, kInf});
      run["power_idle_w"] = idle.watts();
      run["power_run_seconds"] = active_readings.back().timestamp_s - active_readings.front().timestamp_s;
      run["power_trace"] = args.power_traces[m];
    }
    spdlog::info("{}: {} ms/image, {} images/s", row.precision, FormatDouble(row.mean_latency_ms),
                 FormatDouble(row.throughput_ips));
    rows.push_back(std::move(row));
    runs.push_back(std::move(run));
  }

  Json metadata{{"timer", "steady_clock"},
                {"timer_resolution_s", SteadyResolution()},
                {"latency_definition", "executor wall time per image, batch assembly excluded"},
                {"batch_size", args.batch},
                {"warmup_batches", args.warmup},
                {"timed_batches", args.reps},
                {"images", data.size()},
                {"runs", runs}};
  const BenchReport report = MakeReport(std::move(rows), std::move(metadata));
  Emit(report.ToCsv(), args.report);
  if (!args.report.empty()) {
    const fs::path json_path = fs::path(args.report).replace_extension(".json");
    WriteFileText(json_path, report.ToJson().dump(2) + "\n");
    spdlog::info("wrote {}", json_path.string());
  }
}

void Inspect(const InspectArgs& args) {
  std::cout << ManifestJson(LoadModel(args.model)).dump(2) << "\n";
}

}  // namespace mce::cli
