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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "dioph/kernels.hpp"

namespace dioph::kernels {

const char* to_string(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

namespace {

Isa initial_isa() {
  const char* force = std::getenv("DIOPH_FORCE_SCALAR");
  if (force != nullptr && std::strcmp(force, "0") != 0) return Isa::kScalar;
  return avx2_available() ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !avx2_available()) isa = Isa::kScalar;
  current().store(isa, std::memory_order_relaxed);
}

std::size_t gap_certify(const double* lo, const double* hi, std::size_t n,
                        double gap_up, std::uint8_t* ok) {
  return active_isa() == Isa::kAvx2 ? avx2::gap_certify(lo, hi, n, gap_up, ok)
                                    : scalar::gap_certify(lo, hi, n, gap_up, ok);
}

void classify_boxes(const double* lo, const double* hi, std::size_t n,
                    double in_lo, double in_hi, double out_lo, double out_hi,
                    std::uint8_t* cls) {
  if (active_isa() == Isa::kAvx2) {
    avx2::classify_boxes(lo, hi, n, in_lo, in_hi, out_lo, out_hi, cls);
  } else {
    scalar::classify_boxes(lo, hi, n, in_lo, in_hi, out_lo, out_hi, cls);
  }
}

}  // namespace dioph::kernels
