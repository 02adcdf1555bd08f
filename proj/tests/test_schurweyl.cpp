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

#include "cwe/codes.hpp"
#include "cwe/cwgroup.hpp"
#include "cwe/schurweyl.hpp"
#include "cwe/typespec.hpp"
#include "cwe/util.hpp"

using namespace cwe;

TEST_CASE("code endomorphisms are indicator matrices") {
  auto t = builtin("2II");
  // The diagonal code at genus 1 gives the identity.
  Endo e = code_to_endo(t_code(t, 1), 1);
  CHECK(e.dim == 2);
  CHECK(e.slots == 1);
  CHECK(e.vars == 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(e.at(r, c) == (r == c ? 1 : 0));

  // At genus 2 the diagonal code still marks equal pairs.
  Endo e2 = code_to_endo(t_code(t, 1), 2);
  CHECK(e2.dim == 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(e2.at(r, c) == (r == c ? 1 : 0));

  // N = 2: entries indicate membership of the interleaved word pair.
  Endo f = code_to_endo(t_code(t, 2), 1);
  CHECK(f.dim == 4);
  int ones = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) ones += f.at(r, c);
  CHECK(ones == 4);  // |C| = 4 codewords, one cell each

  CHECK_THROWS_AS(code_to_endo(t_code(t, 3), 2, 10), CapError);
}

TEST_CASE("commutant dimensions of the binary group are frozen") {
  auto t = builtin("2II");
  GaloisSetup gs = galois_setup(*t);
  const uint64_t want_m1[] = {1, 2, 5};
  const uint64_t want_m2[] = {1, 2, 6};
  for (int N = 1; N <= 3; ++N) {
    CWGroup g1 = group_for(t, gs, 1);
    CWGroup g2 = group_for(t, gs, 2);
    CHECK(commutant_dim(g1, N) == want_m1[N - 1]);
    CHECK(commutant_dim(g2, N) == want_m2[N - 1]);
  }
  CHECK(commutant_dim(group_for(t, gs, 1), 0) == 1);
}

TEST_CASE("full duality reports for the binary type") {
  auto t = builtin("2II");
  struct Cell {
    int m, N;
    uint64_t t_N, span, commutant;
    bool basis;
  };
  const Cell cells[] = {
      {1, 1, 1, 1, 1, true},  {1, 2, 2, 2, 2, false}, {1, 3, 6, 5, 5, false},
      {2, 1, 1, 1, 1, true},  {2, 2, 2, 2, 2, true},  {2, 3, 6, 6, 6, false},
  };
  for (const Cell& c : cells) {
    SchurWeylReport rep = verify_schurweyl(t, c.m, c.N);
    INFO("m=", c.m, " N=", c.N, "\n", rep.to_string());
    CHECK(rep.t_N == c.t_N);
    CHECK(rep.span_dim == c.span);
    CHECK(rep.commutant == c.commutant);
    CHECK(rep.commute_ok);
    CHECK(rep.basis == c.basis);
    CHECK(rep.ok());
    // Independence must hold whenever the genus reaches the power.
    if (c.m >= c.N) CHECK(rep.span_dim == rep.t_N);
  }
}

TEST_CASE("other types commute as well") {
  for (const char* n : {"4II_E", "3_1E", "5_1E"}) {
    auto t = builtin(n);
    for (int N : {1, 2}) {
      SchurWeylReport rep = verify_schurweyl(t, 1, N);
      INFO(n, " N=", N, "\n", rep.to_string());
      CHECK(rep.commute_ok);
      CHECK(rep.ok());
      CHECK(rep.t_N == static_cast<uint64_t>(N));
      CHECK(rep.span_dim == rep.t_N);
      CHECK(rep.commutant == rep.t_N);
    }
  }
}
