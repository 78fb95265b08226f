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

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "dioph/tree_io.hpp"

using namespace dioph;

namespace {

std::string dump(const AnyTree& t) {
  std::ostringstream out;
  std::visit([&](const auto& x) { write_tree(out, x); }, t);
  return out.str();
}

AnyTree parse(const std::string& text) {
  std::istringstream in(text);
  return read_tree(in);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kFormat);
    return e.what();
  }
  return "";
}

const ETree& etree() {
  static const ETree t = [] {
    EConfig cfg;
    cfg.depth = 1;
    return build_e_tree(cfg);
  }();
  return t;
}

const PTree& ptree() {
  static const PTree t = [] {
    ProductConfig cfg;
    cfg.psis = {PsiSpec::power(Rational(1), Rational(3)), PsiSpec::power(Rational(1), Rational(4))};
    cfg.depth = 3;
    return build_product_tree(cfg);
  }();
  return t;
}

}  // namespace

TEST_CASE("E-tree round trip is field-for-field") {
  const std::string text = dump(etree());
  const ETree back = std::get<ETree>(parse(text));
  CHECK(dump(back) == text);
  REQUIRE(back.nodes.size() == etree().nodes.size());
  for (std::size_t i = 0; i < back.nodes.size(); ++i) {
    const ENode &a = back.nodes[i], &b = etree().nodes[i];
    CHECK(a.mass == b.mass);
    CHECK(a.G == b.G);
    CHECK(a.pq == b.pq);
    CHECK(a.ball.center.to_string() == b.ball.center.to_string());
    CHECK(a.ball.radius.to_string() == b.ball.radius.to_string());
    CHECK(a.first_child == b.first_child);
    CHECK(a.child_count == b.child_count);
  }
  CHECK(back.header == etree().header);
  CHECK(back.notes == etree().notes);
  CHECK(back.truncated == etree().truncated);
}

TEST_CASE("product tree round trip") {
  const std::string text = dump(ptree());
  const PTree back = std::get<PTree>(parse(text));
  CHECK(dump(back) == text);
  CHECK(back.schedule.Q == ptree().schedule.Q);
  CHECK(back.schedule.epsilon == ptree().schedule.epsilon);
  CHECK(back.depth == 3);
  REQUIRE(back.nodes.size() == ptree().nodes.size());
  for (std::size_t i = 0; i < back.nodes.size(); ++i) {
    CHECK(back.nodes[i].centers == ptree().nodes[i].centers);
    CHECK(back.nodes[i].declared == ptree().nodes[i].declared);
  }
  CHECK(verify_product_tree(back).ok());
}

TEST_CASE("root-only tree is two lines") {
  ETree t;
  t.nodes.push_back(etree().nodes.front());
  t.nodes[0].child_count = 0;
  const std::string text = dump(t);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(dump(parse(text)) == text);
}

TEST_CASE("format errors carry the line number") {
  const std::string text = dump(ptree());
  std::string cut = text.substr(0, text.size() / 2);
  cut = cut.substr(0, cut.rfind('\n') + 1);
  const auto lines = std::count(cut.begin(), cut.end(), '\n');
  CHECK(error_of(cut).find("line " + std::to_string(lines) + ":") == 0);

  std::string v2 = text;
  v2.replace(0, 15, "#cantor-tree v2");
  CHECK(error_of(v2).find("unsupported version") != std::string::npos);

  std::string bad = dump(etree());
  const auto second = bad.find('\n', bad.find("\n0 -1")) + 1;
  bad.insert(second, "junk\n");
  CHECK(error_of(bad).find("line ") == 0);
  CHECK(error_of("").find("empty") != std::string::npos);
}
