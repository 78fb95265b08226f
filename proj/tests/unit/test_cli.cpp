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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/cli.hpp"

using namespace dioph;

namespace {

struct Run {
  int code;
  std::string out, err;
  bool has(const std::string& line) const { return out.find(line + "\n") != std::string::npos; }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dioph");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("classify and dim") {
  const Run r = run({"classify", "--psi", "pow:c=1,tau=3", "--s", "2/3"});
  CHECK(r.code == 0);
  CHECK(r.has("verdict=InfiniteHs"));
  CHECK(r.has("series=Divergent"));
  const Run d = run({"dim", "--psi", "pow:c=1,tau=3", "--psi", "pow:c=1,tau=4"});
  CHECK(d.code == 0);
  CHECK(d.has("dim=3/2"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"classify", "--psi", "pow:c=1,tau=3", "--s", "3/2"}).code == kExitPrecondition);
  CHECK(run({"classify", "--psi", "pow:c=1,tau=3", "--s", "1/2", "--bogus"}).code == kExitPrecondition);
  CHECK(run({}).code == kExitPrecondition);
  CHECK(run({"dim", "--psi", "pow:c=1,tau=2"}).code == kExitPrecondition);
  CHECK(run({"verify", "--tree", "/nonexistent/tree.txt"}).code == kExitPrecondition);
}

TEST_CASE("exit code mapping") {
  CHECK(exit_code_for(ErrorKind::kCertification) == kExitCertification);
  CHECK(exit_code_for(ErrorKind::kUndecided) == kExitCertification);
  CHECK(exit_code_for(ErrorKind::kBudgetExceeded) == kExitBudget);
  CHECK(exit_code_for(ErrorKind::kHypothesisViolation) == kExitPrecondition);
}

TEST_CASE("select, pack and witness") {
  const Run s = run({"select", "--psi", "pow:c=1,tau=3", "--Q", "60", "--center", "1/2", "--radius", "1/4"});
  CHECK(s.code == 0);
  CHECK(s.has("verify=pass"));
  const Run p = run({"pack", "--psi", "pow:c=1,tau=3", "--s", "2/3", "--plan-only"});
  CHECK(p.code == 0);
  CHECK(p.has("window_ok=0"));
  const Run pp = run({"pack", "--psi", "pow:c=1/1000000000,tau=3", "--s", "2/3", "--plan-only", "--constants", "strict"});
  CHECK(pp.code == 0);
  CHECK(pp.has("window_ok=1"));
  const Run w = run({"witness", "--x", "surd:-1,1,2,5", "--psi", "pow:c=1/2,tau=2", "--eps", "1/5", "--qmax", "1000"});
  CHECK(w.code == 0);
  CHECK(w.out.find("reverified") != std::string::npos);
}

TEST_CASE("product pipeline: build, verify, fit, byte-identical reruns") {
  const std::string tree = "cli_test_product.tree", tree2 = "cli_test_product2.tree", csv = "cli_test_fit.csv";
  const std::vector<std::string> build{"build-product", "--psi", "pow:c=1,tau=3", "--psi", "pow:c=1,tau=4",
                                       "--depth", "3", "--mode", "desk", "--out"};
  auto b1 = build, b2 = build;
  b1.push_back(tree);
  b2.push_back(tree2);
  CHECK(run(b1).code == 0);
  CHECK(run(b2).code == 0);
  CHECK(slurp(tree) == slurp(tree2));
  const Run v = run({"verify", "--tree", tree});
  CHECK(v.code == 0);
  CHECK(v.has("verify=pass"));
  const Run f = run({"fit-dimension", "--tree", tree, "--samples", "1", "--jmin", "2", "--jmax", "12", "--csv", csv});
  CHECK(f.code == 0);
  CHECK(f.out.find("slope=") != std::string::npos);
  const std::string text = slurp(csv);
  CHECK(text.find("sample,log_delta,log_mass,log_mass_lower\n") != std::string::npos);
  const Run m = run({"mdp", "--tree", tree, "--s", "3/2", "--samples", "6", "--seed", "3"});
  CHECK(m.code == 0);
  CHECK(m.has("seed=3"));
  std::remove(tree.c_str());
  std::remove(tree2.c_str());
  std::remove(csv.c_str());
}

TEST_CASE("E pipeline with a tampered file fails certification") {
  const std::string tree = "cli_test_e.tree";
  CHECK(run({"build-e", "--depth", "1", "--out", tree}).code == 0);
  CHECK(run({"verify", "--tree", tree}).code == 0);
  std::string text = slurp(tree);
  const auto pos = text.find("mass=", text.find("\n1 0 "));
  text.insert(pos + 5, "2");
  {
    std::ofstream out(tree, std::ios::binary);
    out << text;
  }
  CHECK(run({"verify", "--tree", tree}).code == kExitCertification);
  std::remove(tree.c_str());
}
