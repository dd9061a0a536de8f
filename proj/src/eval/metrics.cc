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

#include "mce/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mce/common/csv.h"
#include "mce/common/error.h"

namespace mce {
namespace {

void CheckInputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kShapeMismatch, std::to_string(scores.size()) + " scores for " +
                                               std::to_string(labels.size()) + " labels");
  }
  if (scores.empty()) throw Error(ErrorCode::kInvalidArgument, "no samples");
  for (size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) {
      throw Error(ErrorCode::kNonFinite, "score " + std::to_string(i) + " is NaN");
    }
    if (labels[i] != 0 && labels[i] != 1) {
      throw Error(ErrorCode::kInvalidArgument, "label " + std::to_string(i) + " is not 0/1");
    }
  }
}

std::optional<double> Ratio(int64_t num, int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Field(const std::optional<double>& v) { return v ? FormatDouble(*v) : std::string(); }

}  // namespace

nlohmann::ordered_json MetricsReport::ToJson() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json json;
  json["accuracy"] = accuracy;
  json["precision"] = opt(precision);
  json["recall"] = opt(recall);
  json["f1"] = opt(f1);
  json["roc_auc"] = opt(roc_auc);
  return json;
}

std::string MetricsReport::CsvHeader() { return "accuracy,precision,recall,f1,roc_auc"; }

std::string MetricsReport::CsvRow() const {
  return FormatDouble(accuracy) + "," + Field(precision) + "," + Field(recall) + "," + Field(f1) +
         "," + Field(roc_auc);
}

double Sigmoid(double logit) {
  if (logit >= 0) return 1.0 / (1.0 + std::exp(-logit));
  const double e = std::exp(logit);
  return e / (1.0 + e);
}

ConfusionMatrix Confusion(std::span<const double> scores, std::span<const int> labels,
                          double threshold) {
  CheckInputs(scores, labels);
  ConfusionMatrix cm;
  for (size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (labels[i] == 1) (predicted ? cm.tp : cm.fn)++;
    else (predicted ? cm.fp : cm.tn)++;
  }
  return cm;
}

std::optional<double> F1(double precision, double recall) {
  if (precision + recall == 0.0) return std::nullopt;
  return 2.0 * precision * recall / (precision + recall);
}

MetricsReport Metrics(const ConfusionMatrix& cm, std::optional<double> roc_auc) {
  if (cm.tp < 0 || cm.tn < 0 || cm.fp < 0 || cm.fn < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative confusion count");
  }
  if (cm.total() == 0) throw Error(ErrorCode::kInvalidArgument, "empty confusion matrix");
  MetricsReport report;
  report.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  report.precision = Ratio(cm.tp, cm.tp + cm.fp);
  report.recall = Ratio(cm.tp, cm.tp + cm.fn);
  if (report.precision && report.recall) report.f1 = F1(*report.precision, *report.recall);
  report.roc_auc = roc_auc;
  return report;
}

double RocAuc(std::span<const double> scores, std::span<const int> labels) {
  CheckInputs(scores, labels);
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  const int64_t positives = std::count(labels.begin(), labels.end(), 1);
  const int64_t negatives = static_cast<int64_t>(labels.size()) - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kInvalidArgument, "ROC AUC needs both classes");
  }

  // Twice the area in units of one (positive, negative) pair, kept integral
  // so the only rounding is the final division.
  uint64_t twice_area = 0;
  int64_t tp = 0;
  for (size_t i = 0; i < order.size();) {
    int64_t dtp = 0;
    int64_t dfp = 0;
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      (labels[order[i]] == 1 ? dtp : dfp)++;
    }
    twice_area += static_cast<uint64_t>(dfp) * static_cast<uint64_t>(2 * tp + dtp);
    tp += dtp;
  }
  return static_cast<double>(twice_area) /
         (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

}  // namespace mce
