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

// CSV emission with exact decimal rounding.

#ifndef DIOPH_CSV_HPP_
#define DIOPH_CSV_HPP_

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dioph/numerics.hpp"

namespace dioph {

using CsvCell = std::variant<Rational, std::string>;

struct CsvColumn {
  std::string name;
  std::vector<CsvCell> cells;
};

struct CsvTable {
  std::vector<std::string> comments;  // written first as "# ..." lines
  std::vector<CsvColumn> columns;
  int digits = 6;  // decimal places for rationals
};

// x rounded to `digits` decimal places, ties to even; "-0" is printed as "0".
std::string decimal_half_even(const Rational& x, int digits);

// Finite doubles convert exactly; others become "nan", "inf" or "-inf" cells.
CsvCell csv_number(double v);

// Throws kInvalidInput on unequal column lengths.
void emit_csv(std::ostream& out, const CsvTable& table);
void emit_csv(const std::string& path, const CsvTable& table);

}  // namespace dioph

#endif  // DIOPH_CSV_HPP_
