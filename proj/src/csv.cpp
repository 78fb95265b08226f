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

#include "dioph/csv.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace dioph {

std::string decimal_half_even(const Rational& x, int digits) {
  if (digits < 0) throw Error(ErrorKind::kInvalidInput, "negative digit count");
  const BigInt scale = pow(BigInt(10), static_cast<unsigned long>(digits));
  const Rational y = abs(x) * scale;
  BigInt q = floor(y);
  const Rational frac = y - q;
  if (frac > Rational(1, 2) || (frac == Rational(1, 2) && mpz_odd_p(q.get_mpz_t()))) ++q;
  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  return (x < 0 && q != 0 ? "-" : "") + body;
}

CsvCell csv_number(double v) {
  if (std::isnan(v)) return std::string("nan");
  if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
  return Rational(v);
}

void emit_csv(std::ostream& out, const CsvTable& table) {
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().cells.size();
  for (const auto& c : table.columns) {
    if (c.cells.size() != rows) {
      throw Error(ErrorKind::kInvalidInput, "column '" + c.name + "' has " + std::to_string(c.cells.size()) +
                                                " rows, expected " + std::to_string(rows));
    }
  }
  for (const auto& line : table.comments) out << "# " << line << '\n';
  for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j].name;
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      if (j) out << ',';
      const CsvCell& cell = table.columns[j].cells[i];
      if (const auto* r = std::get_if<Rational>(&cell)) {
        out << decimal_half_even(*r, table.digits);
      } else {
        out << std::get<std::string>(cell);
      }
    }
    out << '\n';
  }
}

void emit_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidInput, "cannot write '" + path + "'");
  emit_csv(out, table);
  if (!out) throw Error(ErrorKind::kInvalidInput, "write failed for '" + path + "'");
}

}  // namespace dioph
