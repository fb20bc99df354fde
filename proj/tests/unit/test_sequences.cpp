// Copyright 2026 The qubus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "qubus/sequences.hpp"
#include "qubus/types.hpp"

using namespace qubus;

TEST_CASE("sequence element text round-trips") {
  for (const char* t : {"R0(+theta)", "R1(-theta)", "C0(+beta)", "C1(-i*beta)", "D(+i*beta)", "D(-beta)"}) {
    CHECK(to_string(parse_sym_op(t)) == t);
  }
  CHECK_THROWS_AS(parse_sym_op("R2(+theta)"), InvalidArgument);
  CHECK_THROWS_AS(parse_sym_op("C0(beta)"), InvalidArgument);
  CHECK_THROWS_AS(parse_sym_op(""), InvalidArgument);
}

TEST_CASE("alphabet indices are distinct") {
  std::set<int> seen;
  for (const char* t : {"R0(+theta)", "R0(-theta)", "R1(+theta)", "R1(-theta)", "C0(+beta)", "C0(-beta)",
                        "C0(+i*beta)", "C0(-i*beta)", "C1(+beta)", "C1(-i*beta)", "D(+beta)", "D(-i*beta)"}) {
    CHECK(seen.insert(alphabet_index(parse_sym_op(t))).second);
  }
}

TEST_CASE("instantiation") {
  const auto op = instantiate(parse_sym_op("C1(-i*beta)"), 0.1, 2.0);
  const auto* c = std::get_if<CondDisp>(&op);
  REQUIRE(c);
  CHECK(c->qubit == 1);
  CHECK(c->beta == Complex{0.0, -2.0});
  const auto rot = instantiate(parse_sym_op("R0(-theta)"), 0.1, 2.0);
  REQUIRE(std::get_if<CondRot>(&rot));
  CHECK(std::get<CondRot>(rot).theta == doctest::Approx(-0.1));
}

TEST_CASE("frozen sequences") {
  CHECK(frozen_fig11().size() == 8);
  CHECK(fig11_residual(frozen_fig11()) < 1e-9);
  CHECK(fig13_residual(frozen_fig13(), Fig13Target::kCorrected) < 1e-9);
  CHECK(fig13_residual(frozen_fig13(), Fig13Target::kNominal) > 1.0);
  // Dropping the last displacement breaks the return of the single-excitation branches.
  auto cut = frozen_fig11();
  cut.pop_back();
  CHECK(fig11_residual(cut) > 1e-3);
}

TEST_CASE("searches reproduce the frozen sequences") {
  const auto f11 = search_fig11();
  REQUIRE(f11.found);
  CHECK(f11.result.sequence == frozen_fig11());
  CHECK(f11.result.multiplicity == 2);

  const auto f13 = search_fig13(Fig13Target::kCorrected);
  REQUIRE(f13.found);
  CHECK(f13.result.sequence == frozen_fig13());
  CHECK(f13.result.multiplicity == 8);
  for (const auto& m : f13.result.matches) CHECK(fig13_residual(m, Fig13Target::kCorrected) < 1e-9);

  const auto nominal = search_fig13(Fig13Target::kNominal);
  CHECK_FALSE(nominal.found);
  CHECK(nominal.result.examined > 0);
}

TEST_CASE("grid covers small and moderate angles") {
  const auto& g = sequence_grid();
  REQUIRE_FALSE(g.empty());
  for (const auto& p : g) {
    CHECK(p.alpha > 0.0);
    CHECK(p.theta > 0.0);
    CHECK(p.theta <= 0.1 + 1e-15);
  }
}
