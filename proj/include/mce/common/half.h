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

#ifndef MCE_COMMON_HALF_H_
#define MCE_COMMON_HALF_H_

#include <cstdint>

namespace mce {

inline constexpr float kHalfMax = 65504.0f;

// IEEE binary16 encode with round-to-nearest-even. Finite values beyond the
// half range saturate to +/-65504 instead of becoming infinities; NaN and
// infinity inputs are preserved.
uint16_t FloatToHalf(float value);

// Exact widening conversion.
float HalfToFloat(uint16_t bits);

// Round a float through binary16 and back.
inline float RoundToHalf(float value) { return HalfToFloat(FloatToHalf(value)); }

}  // namespace mce

#endif  // MCE_COMMON_HALF_H_
