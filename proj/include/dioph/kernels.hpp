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

// Double-precision prefilters. A kernel answer of "certified" is sound; an
// answer of "undecided" sends the caller back to exact arithmetic.

#ifndef DIOPH_KERNELS_HPP_
#define DIOPH_KERNELS_HPP_

#include <cstddef>
#include <cstdint>

namespace dioph::kernels {

enum class Isa { kScalar, kAvx2 };

const char* to_string(Isa isa);
bool avx2_available();
// Currently dispatched ISA. DIOPH_FORCE_SCALAR=1 pins the scalar path.
Isa active_isa();
void set_isa(Isa isa);  // kAvx2 is ignored when unsupported

enum : std::uint8_t { kOutside = 0, kInside = 1, kUncertain = 2 };

// ok[i] = 1 when the open intervals (lo[i], hi[i]) and (lo[i+1], hi[i+1])
// are provably more than `gap_up` apart, that is lo[i+1] - hi[i] > gap_up.
// lo/hi are outward double enclosures, gap_up an upper bound on the gap.
// Writes n-1 flags and returns how many were certified.
std::size_t gap_certify(const double* lo, const double* hi, std::size_t n,
                        double gap_up, std::uint8_t* ok);

// Classifies each (lo[i], hi[i]) against a query interval given by an inner
// enclosure [in_lo, in_hi] and outer enclosure [out_lo, out_hi].
void classify_boxes(const double* lo, const double* hi, std::size_t n,
                    double in_lo, double in_hi, double out_lo, double out_hi,
                    std::uint8_t* cls);

namespace scalar {
std::size_t gap_certify(const double* lo, const double* hi, std::size_t n,
                        double gap_up, std::uint8_t* ok);
void classify_boxes(const double* lo, const double* hi, std::size_t n,
                    double in_lo, double in_hi, double out_lo, double out_hi,
                    std::uint8_t* cls);
}  // namespace scalar

namespace avx2 {
std::size_t gap_certify(const double* lo, const double* hi, std::size_t n,
                        double gap_up, std::uint8_t* ok);
void classify_boxes(const double* lo, const double* hi, std::size_t n,
                    double in_lo, double in_hi, double out_lo, double out_hi,
                    std::uint8_t* cls);
}  // namespace avx2

}  // namespace dioph::kernels

#endif  // DIOPH_KERNELS_HPP_
