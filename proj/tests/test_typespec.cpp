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

#include <sstream>

#include "cwe/typespec.hpp"
#include "cwe/util.hpp"

using namespace cwe;

TEST_CASE("builtin types validate") {
  CHECK(builtin_names() ==
        std::vector<std::string>{"2II", "4II_E", "3_1E", "5_1E"});
  for (const std::string& n : builtin_names()) {
    auto t = builtin(n);
    ValidationReport rep = validate(*t);
    INFO(n, "\n", rep.to_string());
    CHECK(rep.ok());
  }
  CHECK_THROWS_AS(builtin("nope"), PreconditionError);
}

TEST_CASE("builtin structural constants") {
  struct Row {
    const char* name;
    int q, f, qgroup, dgens, vgo;
  };
  const Row rows[] = {{"2II", 2, 8, 4, 2, 4},
                      {"4II_E", 4, 4, 16, 4, 4},
                      {"3_1E", 3, 3, 9, 3, 3},
                      {"5_1E", 5, 5, 25, 5, 5}};
  for (const Row& r : rows) {
    auto t = builtin(r.name);
    CHECK(t->q == r.q);
    CHECK(t->f == r.f);
    CHECK(static_cast<int>(t->qgroup.size()) == r.qgroup);
    CHECK(static_cast<int>(t->dgens.size()) == r.dgens);
    CHECK(t->value_group_order == r.vgo);
    // The quadratic closure always contains the zero table.
    CHECK(t->qgroup.front() == std::vector<int>(t->q, 0));
    // Pairing symmetry.
    for (int x = 0; x < t->q; ++x)
      for (int y = 0; y < t->q; ++y) CHECK(t->beta_at(x, y) == t->beta_at(y, x));
    // All tables vanish at zero.
    for (const auto& tab : t->qgroup) CHECK(tab[0] == 0);
  }
}

TEST_CASE("galois setup per builtin") {
  auto gs2 = galois_setup(*builtin("2II"));
  CHECK(gs2.m_amb == 8);
  CHECK(gs2.sqrt_in_base);
  CHECK(gs2.units == std::vector<int64_t>{1, 3, 5, 7});
  CHECK(gs2.eps == std::vector<int>{1, -1, -1, 1});
  CHECK(gs2.lifts == std::vector<int64_t>{1, 3, 5, 7});

  auto gs4 = galois_setup(*builtin("4II_E"));
  CHECK(gs4.m_amb == 4);
  CHECK(gs4.sqrt_in_base);
  CHECK(gs4.units == std::vector<int64_t>{1, 3});
  CHECK(gs4.eps == std::vector<int>{1, 1});
  CHECK(gs4.sqrt_q == CycNum(2L));

  auto gs3 = galois_setup(*builtin("3_1E"));
  CHECK(gs3.m_amb == 12);
  CHECK_FALSE(gs3.sqrt_in_base);
  CHECK(gs3.units == std::vector<int64_t>{1, 2});
  CHECK(gs3.eps == std::vector<int>{1, 1});
  CHECK(gs3.lifts == std::vector<int64_t>{1, 11});

  auto gs5 = galois_setup(*builtin("5_1E"));
  CHECK(gs5.m_amb == 5);
  CHECK(gs5.units == std::vector<int64_t>{1, 2, 3, 4});
  CHECK(gs5.eps == std::vector<int>{1, -1, -1, 1});

  for (const std::string& n : builtin_names()) {
    auto t = builtin(n);
    GaloisSetup gs = galois_setup(*t);
    CHECK(gs.sqrt_q * gs.sqrt_q == CycNum(static_cast<long>(t->q)));
    // Each lift reduces to its unit mod f and realizes its sign on sqrt(q).
    for (size_t j = 0; j < gs.units.size(); ++j) {
      CHECK(mod_norm(gs.lifts[j], gs.f) == gs.units[j]);
      CycNum im = gs.sqrt_q.galois(gs.lifts[j]);
      CHECK(im == (gs.eps[j] > 0 ? gs.sqrt_q : -gs.sqrt_q));
      CHECK(sign_epsilon(gs, gs.units[j]) == gs.eps[j]);
    }
    // Signs are multiplicative in the unit argument.
    for (int64_t a : gs.units)
      for (int64_t b : gs.units)
        CHECK(sign_epsilon(gs, a) * sign_epsilon(gs, b) ==
              sign_epsilon(gs, a * b % gs.f));
  }
}

TEST_CASE("twisted sums, degree vectors and the sign condition") {
  auto t2 = builtin("2II");
  GaloisSetup gs2 = galois_setup(*t2);
  TwistedSum ts = make_twisted_sum(t2, {1, 1, -1, -1});
  CHECK(ts.n_len() == 4);
  CHECK(ts.a == std::vector<int64_t>{1, 1, 7, 7});
  CHECK(degree_vector(ts) == std::vector<int>{2, 0, 0, 2});
  CHECK(sign_condition(ts, gs2));

  TwistedSum odd = make_twisted_sum(t2, {1, 3});
  CHECK(degree_vector(odd) == std::vector<int>{1, 1, 0, 0});
  CHECK_FALSE(sign_condition(odd, gs2));

  auto t5 = builtin("5_1E");
  GaloisSetup gs5 = galois_setup(*t5);
  TwistedSum bad = make_twisted_sum(t5, {1, 2, 2, 2});
  CHECK(degree_vector(bad) == std::vector<int>{1, 3, 0, 0});
  CHECK_FALSE(sign_condition(bad, gs5));
  TwistedSum good = make_twisted_sum(t5, {1, 2, 2, -1});
  CHECK(sign_condition(good, gs5));

  CHECK_THROWS_AS(make_twisted_sum(t2, {2}), PreconditionError);
  CHECK_THROWS_AS(make_twisted_sum(t2, std::vector<int64_t>{}),
                  PreconditionError);
}

TEST_CASE("component lookup") {
  GaloisSetup gs = galois_setup(*builtin("2II"));
  CHECK(gs.component_of(1) == 0);
  CHECK(gs.component_of(3) == 1);
  CHECK(gs.component_of(-1) == 3);
  CHECK(gs.component_of(15) == 3);
  CHECK_THROWS_AS(gs.component_of(2), PreconditionError);
}

TEST_CASE("custom types via make_type") {
  // Plain bilinear type over F_5: beta(x, y) = xy/5, no declared weight maps.
  std::vector<int> beta(25);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) beta[x * 5 + y] = x * y % 5;
  TypeRep t = make_type("F5-plain", 5, 5, beta, {});
  CHECK(validate(t).ok());
  CHECK(t.qgroup.size() == 5);  // scaled diagonals of beta only
  CHECK(t.value_group_order == 5);

  // Breaking symmetry must fail validation but not construction.
  std::vector<int> bad = beta;
  bad[1 * 5 + 2] = 3;  // beta(1,2) != beta(2,1)
  TypeRep tb = make_type("broken", 5, 5, bad, {});
  CHECK_FALSE(validate(tb).ok());

  CHECK_THROWS_AS(make_type("short", 5, 5, {0, 1}, {}), PreconditionError);
}

TEST_CASE("descriptor files round trip") {
  for (const std::string& n : builtin_names()) {
    auto t = builtin(n);
    std::ostringstream os;
    write_type_file(*t, os);
    std::istringstream is(os.str());
    TypeRep back = read_type_file(is);
    CHECK(back.name == t->name);
    CHECK(back.q == t->q);
    CHECK(back.f == t->f);
    CHECK(back.beta == t->beta);
    CHECK(back.qgroup == t->qgroup);
    CHECK(validate(back).ok());
  }
  std::istringstream garbage("[alphabet]\nq = banana\n");
  CHECK_THROWS(read_type_file(garbage));
}
