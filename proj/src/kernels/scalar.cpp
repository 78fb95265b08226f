// Copyright 2026 The dioph Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dioph/kernels.hpp"

namespace dioph::kernels::scalar {

// Round-to-nearest subtraction loses at most half an ulp; scaling the
// difference by (1 - 2^-52) absorbs it together with the product's rounding.
static constexpr double kShrink = 1.0 - 0x1p-52;

std::size_t gap_certify(const double* lo, const double* hi, std::size_t n,
                        double gap_up, std::uint8_t* ok) {
  std::size_t certified = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = (lo[i + 1] - hi[i]) * kShrink;
    ok[i] = d > gap_up ? 1 : 0;
    certified += ok[i];
  }
  return certified;
}

void classify_boxes(const double* lo, const double* hi, std::size_t n,
                    double in_lo, double in_hi, double out_lo, double out_hi,
                    std::uint8_t* cls) {
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] >= in_lo && hi[i] <= in_hi) {
      cls[i] = kInside;
    } else if (hi[i] <= out_lo || lo[i] >= out_hi) {
      cls[i] = kOutside;
    } else {
      cls[i] = kUncertain;
    }
  }
}

}  // namespace dioph::kernels::scalar
