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

// Text persistence for both tree kinds.
//
//   #cantor-tree v1 kind=e nodes=N renormalized=1 truncated=0
//   #config <echo line>           (repeated)
//   #note <text>                  (repeated)
//   id parent level sublevel kind dir=1 center=.. radius=.. mass=.. G=.. src=p/q first=.. nchild=..
//
// Product trees add `dim=` and `depth=` to the first line, `#schedule` lines,
// and per-direction center_i= / radius_i= fields. Rationals are written as
// num/den and enclosures as lo..hi@bits, so a read-back is exact.

#ifndef DIOPH_TREE_IO_HPP_
#define DIOPH_TREE_IO_HPP_

#include <iosfwd>
#include <string>
#include <variant>

#include "dioph/cantor_e.hpp"
#include "dioph/cantor_product.hpp"

namespace dioph {

void write_tree(std::ostream& out, const ETree& tree);
void write_tree(std::ostream& out, const PTree& tree);

using AnyTree = std::variant<ETree, PTree>;

// Throws Error(kFormat) naming the offending line.
AnyTree read_tree(std::istream& in);

void save_tree(const std::string& path, const AnyTree& tree);
AnyTree load_tree(const std::string& path);

}  // namespace dioph

#endif  // DIOPH_TREE_IO_HPP_
