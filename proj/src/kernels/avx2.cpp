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

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define DIOPH_X86 1
#endif

namespace dioph::kernels::avx2 {

#ifdef DIOPH_X86

namespace {
constexpr double kShrink = 1.0 - 0x1p-52;
}

__attribute__((target("avx2"))) std::size_t gap_certify(
    const double* lo, const double* hi, std::size_t n, double gap_up,
    std::uint8_t* ok) {
  if (n < 2) return 0;
  const std::size_t pairs = n - 1;
  const __m256d shrink = _mm256_set1_pd(kShrink);
  const __m256d gap = _mm256_set1_pd(gap_up);
  std::size_t certified = 0;
  std::size_t i = 0;
  for (; i + 4 <= pairs; i += 4) {
    const __m256d next_lo = _mm256_loadu_pd(lo + i + 1);
    const __m256d cur_hi = _mm256_loadu_pd(hi + i);
    const __m256d d = _mm256_mul_pd(_mm256_sub_pd(next_lo, cur_hi), shrink);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d, gap, _CMP_GT_OQ));
    for (int j = 0; j < 4; ++j) ok[i + j] = (mask >> j) & 1;
    certified += static_cast<std::size_t>(__builtin_popcount(mask));
  }
  return certified + scalar::gap_certify(lo + i, hi + i, n - i, gap_up, ok + i);
}

__attribute__((target("avx2"))) void classify_boxes(
    const double* lo, const double* hi, std::size_t n, double in_lo,
    double in_hi, double out_lo, double out_hi, std::uint8_t* cls) {
  const __m256d vin_lo = _mm256_set1_pd(in_lo);
  const __m256d vin_hi = _mm256_set1_pd(in_hi);
  const __m256d vout_lo = _mm256_set1_pd(out_lo);
  const __m256d vout_hi = _mm256_set1_pd(out_hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = _mm256_loadu_pd(lo + i);
    const __m256d h = _mm256_loadu_pd(hi + i);
    const __m256d inside = _mm256_and_pd(_mm256_cmp_pd(l, vin_lo, _CMP_GE_OQ),
                                         _mm256_cmp_pd(h, vin_hi, _CMP_LE_OQ));
    const __m256d outside = _mm256_or_pd(_mm256_cmp_pd(h, vout_lo, _CMP_LE_OQ),
                                         _mm256_cmp_pd(l, vout_hi, _CMP_GE_OQ));
    const int in_mask = _mm256_movemask_pd(inside);
    const int out_mask = _mm256_movemask_pd(outside);
    for (int j = 0; j < 4; ++j) {
      cls[i + j] = (in_mask >> j) & 1 ? kInside : ((out_mask >> j) & 1 ? kOutside : kUncertain);
    }
  }
  scalar::classify_boxes(lo + i, hi + i, n - i, in_lo, in_hi, out_lo, out_hi, cls + i);
}

#else

std::size_t gap_certify(const double* lo, const double* hi, std::size_t n,
                        double gap_up, std::uint8_t* ok) {
  return scalar::gap_certify(lo, hi, n, gap_up, ok);
}

void classify_boxes(const double* lo, const double* hi, std::size_t n,
                    double in_lo, double in_hi, double out_lo, double out_hi,
                    std::uint8_t* cls) {
  scalar::classify_boxes(lo, hi, n, in_lo, in_hi, out_lo, out_hi, cls);
}

#endif

}  // namespace dioph::kernels::avx2
