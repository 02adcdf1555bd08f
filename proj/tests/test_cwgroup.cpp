// Copyright 2026 The cwe developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cwe/cwgroup.hpp"
#include "cwe/matrix.hpp"
#include "cwe/typespec.hpp"
#include "cwe/util.hpp"

using namespace cwe;

namespace {

CWGroup group_of(const std::string& name, int genus) {
  auto t = builtin(name);
  GaloisSetup gs = galois_setup(*t);
  return group_for(t, gs, genus);
}

}  // namespace

TEST_CASE("generators are unitary and carry exact companions") {
  for (const char* n : {"2II", "4II_E", "3_1E", "5_1E"}) {
    for (int genus : {1, 2}) {
      CWGroup g = group_of(n, genus);
      int vq = 1;
      for (int i = 0; i < genus; ++i) vq *= g.type->q;
      CHECK(g.v == vq);
      CHECK(g.h_index >= 0);
      CHECK(g.gen_names.size() == g.gens.size());
      for (const ElemTuple& e : g.gens) {
        REQUIRE(e.comp.size() == g.gs.units.size());
        // Unitary: the conjugate transpose inverts the element.
        ElemTuple prod = e.mul(e.inverse());
        for (const CycMatrix& m : prod.comp) CHECK(m.is_identity());
        // Each component is exactly the Galois image of the base matrix.
        for (size_t j = 1; j < e.comp.size(); ++j)
          for (int r = 0; r < g.v; ++r)
            for (int c = 0; c < g.v; ++c)
              CHECK(e.comp[j].at(r, c) ==
                    e.comp[0].at(r, c).galois(g.gs.lifts[j]));
      }
    }
  }
}

TEST_CASE("transform carries the component sign on the normalizer") {
  // In components where the Galois lift flips sqrt(q), the transform's
  // 1/sqrt(q) prefactor flips with it.
  CWGroup g = group_of("2II", 1);
  const ElemTuple& h = g.gens[g.h_index];
  CycNum inv_sqrt = g.gs.sqrt_q.inv();
  for (size_t j = 0; j < g.gs.units.size(); ++j) {
    CycNum expect = inv_sqrt;
    if (g.gs.eps[j] < 0) expect = -expect;
    CHECK(h.comp[j].at(0, 0) == expect);
  }
}

TEST_CASE("full closure of the binary group has order 192") {
  CWGroup g = group_of("2II", 1);
  std::vector<ElemTuple> closure = group_closure(g, 100000);
  CHECK(closure.size() == 192);
  CHECK_THROWS_AS(group_closure(g, 10), CapError);
}

TEST_CASE("monomial pools are frozen") {
  struct Row {
    const char* name;
    int genus;
    size_t gens, h0;
  };
  const Row rows[] = {
      {"2II", 1, 4, 3},    {"2II", 2, 7, 5},   {"4II_E", 1, 10, 9},
      {"4II_E", 2, 13, 11}, {"3_1E", 1, 6, 3},  {"3_1E", 2, 11, 6},
      {"5_1E", 1, 10, 5},  {"5_1E", 2, 15, 8},
  };
  for (const Row& r : rows) {
    CWGroup g = group_of(r.name, r.genus);
    MonomialPool pool = monomial_pool(g);
    INFO(r.name, " genus ", r.genus);
    CHECK(pool.gens.size() == r.gens);
    CHECK(pool.h0_gens.size() == r.h0);
    // The symbolic and matrix forms agree on every pool generator.
    for (const MonoTuple& mt : pool.gens) {
      ElemTuple e = mt.to_matrices();
      MonoTuple back;
      REQUIRE(tuple_monomial(e, g.gs.m_amb, &back));
      CHECK(back.serialize() == mt.serialize());
    }
  }
}

TEST_CASE("monomial closure orders are frozen") {
  struct Row {
    const char* name;
    int genus;
    size_t order;
  };
  const Row rows[] = {{"2II", 1, 32},
                      {"2II", 2, 3072},
                      {"4II_E", 1, 768},
                      {"3_1E", 1, 162},
                      {"5_1E", 1, 2500}};
  for (const Row& r : rows) {
    CWGroup g = group_of(r.name, r.genus);
    MonomialPool pool = monomial_pool(g);
    std::vector<MonoTuple> closure = mono_closure(pool.gens, 100000);
    INFO(r.name, " genus ", r.genus);
    CHECK(closure.size() == r.order);
  }
}

TEST_CASE("symbolic products match matrix products") {
  CWGroup g = group_of("5_1E", 1);
  MonomialPool pool = monomial_pool(g);
  REQUIRE(pool.gens.size() >= 2);
  const MonoTuple& a = pool.gens[0];
  const MonoTuple& b = pool.gens[1];
  CHECK(a.mul(b).to_matrices() == a.to_matrices().mul(b.to_matrices()));
  CHECK(a.inverse().to_matrices() == a.to_matrices().inverse());
  CHECK(a.mul(a.inverse()).is_pure_perm());
}

TEST_CASE("transform is not monomial but its square form is sensible") {
  for (const char* n : {"2II", "3_1E"}) {
    CWGroup g = group_of(n, 1);
    MonoTuple mt;
    CHECK_FALSE(tuple_monomial(g.gens[g.h_index], g.gs.m_amb, &mt));
  }
}
