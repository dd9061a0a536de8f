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

#ifndef MCE_EVAL_SPLITS_H_
#define MCE_EVAL_SPLITS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace mce {

struct FoldAssignment {
  int k = 0;
  uint64_t seed = 0;
  std::vector<int> fold;  // fold index per sample

  std::vector<int64_t> FoldSizes() const;
  // Sample ids of one fold, ascending.
  std::vector<size_t> Members(int f) const;
};

// Shuffles each class with `seed`, then deals classes in ascending label
// order onto folds with a single running counter. Fold sizes and
// per-class fold counts each differ by at most one.
FoldAssignment StratifiedKFold(std::span<const int> labels, int k, uint64_t seed);

struct HoldoutSplit {
  std::vector<size_t> train;       // ascending
  std::vector<size_t> validation;  // ascending
};

// Moves round(fraction * n_c) shuffled members of every class c into the
// validation set.
HoldoutSplit MakeHoldoutSplit(std::span<const int> labels, double fraction, uint64_t seed);

}  // namespace mce

#endif  // MCE_EVAL_SPLITS_H_
