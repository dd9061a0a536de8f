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

#ifndef MCE_EVAL_METRICS_H_
#define MCE_EVAL_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

namespace mce {

struct ConfusionMatrix {
  int64_t tp = 0;
  int64_t tn = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  int64_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// A metric whose denominator is zero is left empty rather than reported
// as 0 or 1.
struct MetricsReport {
  double accuracy = 0.0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> roc_auc;

  // {"accuracy", "precision", "recall", "f1", "roc_auc"}; absent values
  // are null.
  nlohmann::ordered_json ToJson() const;
  static std::string CsvHeader();
  // Absent values are empty fields.
  std::string CsvRow() const;
};

double Sigmoid(double logit);

// Labels are 0/1; a score at or above `threshold` is a positive call.
ConfusionMatrix Confusion(std::span<const double> scores, std::span<const int> labels,
                          double threshold = 0.5);

// Harmonic mean; empty when p + r == 0.
std::optional<double> F1(double precision, double recall);

MetricsReport Metrics(const ConfusionMatrix& cm, std::optional<double> roc_auc = std::nullopt);

// Trapezoidal area under the ROC curve over every distinct score; tied
// scores move TPR and FPR together and so count one half. Needs both
// classes present.
double RocAuc(std::span<const double> scores, std::span<const int> labels);

}  // namespace mce

#endif  // MCE_EVAL_METRICS_H_
