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

#include "mce/exec/dataset.h"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>

#include "mce/common/byte_io.h"
#include "mce/common/csv.h"
#include "mce/common/error.h"
#include "mce/common/rng.h"
#include "mce/exec/tensor_file.h"

namespace mce {
namespace {

std::vector<int64_t> ImageShape(const Tensor& image) {
  std::vector<int64_t> shape = image.shape();
  if (shape.size() == 4 && shape[0] == 1) shape.erase(shape.begin());
  if (shape.size() != 3) {
    throw Error(ErrorCode::kShapeMismatch,
                "images must be [H,W,C] or [1,H,W,C], got " + ShapeString(image.shape()));
  }
  return shape;
}

}  // namespace

Dataset::Dataset(std::vector<Sample> samples) : samples_(std::move(samples)) {
  std::stable_sort(samples_.begin(), samples_.end(),
                   [](const Sample& a, const Sample& b) { return a.filename < b.filename; });
}

Dataset Dataset::Load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "not a directory: " + dir.string());

  std::map<std::string, std::string> labels;
  const fs::path labels_path = dir / "labels.csv";
  if (fs::exists(labels_path)) {
    const CsvTable table = ParseCsv(ReadFileText(labels_path));
    const int file_col = table.Column("filename");
    const int label_col = table.Column("label");
    if (file_col < 0 || label_col < 0) {
      throw Error(ErrorCode::kInvalidArgument, labels_path.string() +
                                                   " needs filename,label columns");
    }
    for (const auto& row : table.rows) {
      if (row.size() <= static_cast<size_t>(std::max(file_col, label_col))) {
        throw Error(ErrorCode::kInvalidArgument, "short row in " + labels_path.string());
      }
      labels[row[file_col]] = row[label_col];
    }
  }

  std::vector<Sample> samples;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".mct") continue;
    Sample s;
    s.filename = entry.path().filename().string();
    s.image = LoadTensorFile(entry.path());
    if (auto it = labels.find(s.filename); it != labels.end()) s.label = it->second;
    samples.push_back(std::move(s));
  }
  return Dataset(std::move(samples));
}

std::vector<size_t> Dataset::Order(std::optional<uint64_t> shuffle_seed) const {
  std::vector<size_t> order(samples_.size());
  std::iota(order.begin(), order.end(), size_t{0});
  if (shuffle_seed) {
    Rng rng(*shuffle_seed);
    rng.Shuffle(std::span<size_t>(order));
  }
  return order;
}

Tensor Dataset::Batch(std::span<const size_t> indices) const {
  if (indices.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  const Tensor& first = samples_.at(indices[0]).image;
  const std::vector<int64_t> image_shape = ImageShape(first);
  std::vector<int64_t> shape = {static_cast<int64_t>(indices.size())};
  shape.insert(shape.end(), image_shape.begin(), image_shape.end());
  Tensor batch(TensorSpec{shape, first.dtype(), std::nullopt});
  const size_t stride = first.bytes().size();
  uint8_t* dst = batch.mutable_bytes().data();
  for (size_t i = 0; i < indices.size(); ++i) {
    const Tensor& image = samples_.at(indices[i]).image;
    if (image.dtype() != first.dtype() || ImageShape(image) != image_shape) {
      throw Error(ErrorCode::kShapeMismatch, "image " + samples_[indices[i]].filename +
                                                 " differs in shape or dtype from the batch");
    }
    std::memcpy(dst + i * stride, image.bytes().data(), stride);
  }
  return batch;
}

void SaveDataset(const std::filesystem::path& dir, std::span<const Sample> samples) {
  std::filesystem::create_directories(dir);
  std::string labels = "filename,label\n";
  bool any_label = false;
  for (const Sample& s : samples) {
    SaveTensorFile(s.image, dir / s.filename);
    if (s.label) {
      labels += s.filename + "," + *s.label + "\n";
      any_label = true;
    }
  }
  if (any_label) WriteFileText(dir / "labels.csv", labels);
}

}  // namespace mce
