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

#ifndef MCE_TESTS_SUPPORT_FIXTURES_H_
#define MCE_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mce/common/rng.h"
#include "mce/exec/dataset.h"
#include "mce/exec/tensor.h"
#include "mce/ir/graph.h"

namespace mce::testing {

std::vector<float> RandomFloats(Rng& rng, int64_t n, double lo = -1.0, double hi = 1.0);
Tensor RandomTensor(Rng& rng, std::vector<int64_t> shape, double lo = -1.0, double hi = 1.0);

// Images in [-1, 1], the range the zoo models are built for.
Tensor RandomImage(Rng& rng, int resolution, int batch = 1);

// `count` single images of size resolution^2 x 3 named img_00000.mct, ...
// Labels alternate "Melanoma" / "Healthy" when `labelled`.
std::vector<Sample> RandomSamples(uint64_t seed, int count, int resolution, bool labelled = true);

// Fresh empty directory under the system temp dir.
std::filesystem::path FreshTempDir(const std::string& name);

// A random valid FP32 graph over a [1, h, w, c] input built from every
// non-Cast op kind, ending in Mean and MatMul.
Graph RandomGraph(uint64_t seed);

// conv -> bias -> relu6 -> mean -> matmul, on [1, 8, 8, 3] inputs.
Graph TinyNet(uint64_t seed);

}  // namespace mce::testing

#endif  // MCE_TESTS_SUPPORT_FIXTURES_H_
