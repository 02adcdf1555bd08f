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

#include <algorithm>
#include <sstream>

#include "cwe/codes.hpp"
#include "cwe/typespec.hpp"
#include "cwe/util.hpp"

using namespace cwe;

namespace {

TwistedSum balanced(const std::string& name, int N) {
  std::vector<int64_t> a;
  for (int i = 0; i < N; ++i) a.push_back(1);
  for (int i = 0; i < N; ++i) a.push_back(-1);
  return make_twisted_sum(builtin(name), a);
}

}  // namespace

TEST_CASE("echelon form canonicalizes generator matrices") {
  auto t = builtin("2II");
  Code a = make_code(t, 4, {{1, 0, 1, 0}, {0, 1, 0, 1}});
  Code b = make_code(t, 4, {{1, 1, 1, 1}, {0, 1, 0, 1}});
  CHECK(a.key() == b.key());
  CHECK(a.dim() == 2);
  Code zero = make_code(t, 4, {});
  CHECK(zero.dim() == 0);
  CHECK(code_words(zero).size() == 1);
  CHECK(code_words(a).size() == 4);
  // Duplicate and dependent rows collapse.
  Code c = make_code(t, 4, {{1, 0, 1, 0}, {1, 0, 1, 0}});
  CHECK(c.dim() == 1);
}

TEST_CASE("pairing values and duals") {
  auto t5 = builtin("5_1E");
  TwistedSum ts = balanced("5_1E", 2);
  Code tc = t_code(t5, 2);
  CHECK(tc.dim() == 2);
  Code d = dual_code(tc, ts.a);
  CHECK(d.key() == tc.key());

  // The dual of the zero code is everything.
  Code zero = make_code(t5, 4, {});
  CHECK(dual_code(zero, ts.a).dim() == 4);

  // Pairing biadditivity over random-ish words.
  std::vector<Word> ws = {{0, 1, 2, 3}, {4, 4, 1, 0}, {2, 3, 3, 2}};
  for (const Word& u : ws)
    for (const Word& w : ws) {
      int lhs = pairing_val(*t5, ts.a, u, w);
      CHECK(lhs == pairing_val(*t5, ts.a, w, u));
    }
}

TEST_CASE("diagonal and doubled codes pass the type membership test") {
  for (const char* n : {"2II", "4II_E", "3_1E", "5_1E"}) {
    auto t = builtin(n);
    for (int N = 1; N <= 3; ++N) {
      TwistedSum ts = balanced(n, N);
      Code tc = t_code(t, N);
      std::string why;
      INFO(n, " N=", N, " ", why);
      CHECK(is_type_code(tc, ts, &why));
    }
  }
  auto t2 = builtin("2II");
  Code dbl = double_code(make_code(t2, 4, {{1, 1, 1, 1}}));
  TwistedSum ts4 = balanced("2II", 4);
  std::string why;
  CHECK(is_type_code(dbl, ts4, &why));
  CHECK(dbl.dim() == 4);
  // Doubling needs the base weights divisible by 4 here; weight 2 fails.
  Code dd = double_code(make_code(t2, 2, {{1, 1}}));
  CHECK(dd.dim() == 2);
  CHECK_FALSE(is_type_code(dd, balanced("2II", 2), &why));
  CHECK(!why.empty());
}

TEST_CASE("enumeration totals are frozen") {
  struct Cell {
    const char* name;
    int N;
    size_t total;
  };
  const Cell cells[] = {
      {"2II", 1, 1},   {"2II", 2, 2},   {"2II", 3, 6},    {"2II", 4, 30},
      {"4II_E", 1, 1}, {"4II_E", 2, 2}, {"4II_E", 3, 10}, {"4II_E", 4, 170},
      {"3_1E", 1, 1},  {"3_1E", 2, 2},  {"3_1E", 3, 8},   {"3_1E", 4, 80},
      {"5_1E", 1, 1},  {"5_1E", 2, 2},  {"5_1E", 3, 12},  {"5_1E", 4, 312},
  };
  for (const Cell& c : cells) {
    TwistedSum ts = balanced(c.name, c.N);
    std::vector<Code> codes = enumerate_codes(ts);
    INFO(c.name, " N=", c.N);
    CHECK(codes.size() == c.total);
    std::string why;
    for (const Code& cd : codes) {
      CHECK(is_type_code(cd, ts, &why));
      CHECK(cd.dim() == c.N);
    }
  }
}

TEST_CASE("class counts are frozen and the mass formula is exact") {
  struct Cell {
    const char* name;
    int N;
    size_t classes;
  };
  const Cell cells[] = {
      {"2II", 1, 1},   {"2II", 2, 1},   {"2II", 3, 1},   {"2II", 4, 2},
      {"4II_E", 1, 1}, {"4II_E", 2, 1}, {"4II_E", 3, 2}, {"4II_E", 4, 5},
      {"3_1E", 1, 1},  {"3_1E", 2, 1},  {"3_1E", 3, 2},  {"3_1E", 4, 3},
      {"5_1E", 1, 1},  {"5_1E", 2, 1},  {"5_1E", 3, 2},  {"5_1E", 4, 5},
  };
  for (const Cell& c : cells) {
    TwistedSum ts = balanced(c.name, c.N);
    std::vector<CodeClass> classes = classify_codes(ts);
    INFO(c.name, " N=", c.N);
    CHECK(classes.size() == c.classes);
    MassCheck mc = mass_check(classes, ts);
    std::vector<Code> codes = enumerate_codes(ts);
    CHECK(mc.predicted_total == Rat(static_cast<long>(codes.size())));
    // Every enumerated code is equivalent to exactly one representative.
    if (codes.size() <= 40) {
      for (const Code& cd : codes) {
        size_t hits = 0;
        for (const CodeClass& cl : classes)
          if (equivalent(cd, cl.rep, ts)) ++hits;
        CHECK(hits == 1);
      }
    }
  }
}

TEST_CASE("equivalence respects the coordinate group") {
  auto t4 = builtin("4II_E");
  TwistedSum ts = balanced("4II_E", 3);
  std::vector<Code> codes = enumerate_codes(ts);
  // Swapping two twist-1 coordinates of any code gives an equivalent code.
  for (const Code& c : codes) {
    std::vector<Word> rows = c.rows;
    for (Word& r : rows) std::swap(r[0], r[2]);
    Code swapped = make_code(t4, c.n, rows);
    CHECK(equivalent(c, swapped, ts));
  }
  // T_3 is not equivalent to the doubled line.
  Code tc = t_code(t4, 3);
  Code dbl = double_code(make_code(t4, 3, {{1, 2, 3}}));
  CHECK_FALSE(equivalent(tc, dbl, ts));
  CHECK(equivalent(tc, tc, ts));
}

TEST_CASE("decomposability detection") {
  auto t2 = builtin("2II");
  CHECK_FALSE(is_decomposable(t_code(t2, 1), balanced("2II", 1)));
  CHECK(is_decomposable(t_code(t2, 2), balanced("2II", 2)));
  CHECK(is_decomposable(t_code(t2, 4), balanced("2II", 4)));
  Code dbl = double_code(make_code(t2, 4, {{1, 1, 1, 1}}));
  CHECK_FALSE(is_decomposable(dbl, balanced("2II", 4)));
  auto t3 = builtin("3_1E");
  Code j4 = make_code(t3, 8, {{1, 0, 0, 0, 1, 2, 2, 2},
                              {0, 1, 0, 0, 2, 1, 2, 2},
                              {0, 0, 1, 0, 2, 2, 1, 2},
                              {0, 0, 0, 1, 2, 2, 2, 1}});
  CHECK_FALSE(is_decomposable(j4, balanced("3_1E", 4)));
  // A doubled self-dual base splits linearly, but only into an all-plus
  // and an all-minus half, which is not a decomposition into cells.
  auto t4 = builtin("4II_E");
  Code q4 = make_code(t4, 4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
  Code dq4 = double_code(q4);
  CHECK_FALSE(is_decomposable(dq4, balanced("4II_E", 4)));
  // Padding the same object with a diagonal pair does decompose.
  CHECK(is_decomposable(direct_sum(dq4, t_code(t4, 1)),
                        balanced("4II_E", 5)));
}

TEST_CASE("neighbor moves stay inside the type") {
  auto t3 = builtin("3_1E");
  TwistedSum ts = balanced("3_1E", 3);
  std::vector<Code> all = enumerate_codes(ts);
  Code start = t_code(t3, 3);
  std::vector<Word> own = code_words(start);
  auto in_start = [&](const Word& x) {
    return std::find(own.begin(), own.end(), x) != own.end();
  };
  size_t produced = 0, reached = 0;
  std::string why;
  for (const Code& c : all) {
    if (c.key() == start.key()) continue;
    // Words of another type code are isotropic and weight-clean, so any of
    // them outside the start code induces a neighbor, which must again be a
    // valid code of the type.
    bool hit = false;
    for (const Word& x : code_words(c)) {
      if (in_start(x)) continue;
      Code nb = neighbor(start, ts, x);
      CHECK(is_type_code(nb, ts, &why));
      ++produced;
      if (nb.key() == c.key()) hit = true;
    }
    if (hit) ++reached;
  }
  CHECK(produced > 0);
  // The walk can leave the diagonal code.
  CHECK(reached >= 1);
}

TEST_CASE("orthogonal matrix construction") {
  auto mats3 = orthogonal_matrices(3, 4, false);
  for (const auto& m : mats3) {
    // Rows are orthonormal mod 3.
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int dot = 0;
        for (int k = 0; k < 4; ++k) dot += m[i * 4 + k] * m[j * 4 + k];
        CHECK(dot % 3 == (i == j ? 1 : 0));
      }
  }
  CHECK(double_coset_count(mats3, 4) >= 1);
  // ones_filter keeps matrices with row sums one.
  auto ones = orthogonal_matrices(3, 4, true);
  CHECK(ones.size() <= mats3.size());
  for (const auto& m : ones)
    for (int i = 0; i < 4; ++i) {
      int s = 0;
      for (int k = 0; k < 4; ++k) s += m[i * 4 + k];
      CHECK(s % 3 == 1);
    }
}

TEST_CASE("code files round trip") {
  auto t5 = builtin("5_1E");
  TwistedSum ts = balanced("5_1E", 3);
  std::vector<Code> codes = enumerate_codes(ts);
  for (const Code& c : codes) {
    std::ostringstream os;
    write_code_file(c, ts, os);
    std::istringstream is(os.str());
    CodeFile cf = read_code_file(is);
    CHECK(cf.type_name == "5_1E");
    CHECK(cf.n == 6);
    Code back = make_code(t5, cf.n, cf.rows);
    CHECK(back.key() == c.key());
  }
  std::istringstream bad("type=5_1E a=1,1 N=4\n11\n");
  CHECK_THROWS(read_code_file(bad));
}

TEST_CASE("enumeration respects its cap") {
  TwistedSum ts = balanced("4II_E", 4);
  CHECK_THROWS_AS(enumerate_codes(ts, 10), CapError);
}

TEST_CASE("classification discovery order is stable") {
  TwistedSum ts = balanced("4II_E", 4);
  std::vector<CodeClass> a = classify_codes(ts);
  std::vector<CodeClass> b = classify_codes(ts);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].rep.key() == b[i].rep.key());
    CHECK(a[i].aut_order == b[i].aut_order);
    CHECK(a[i].found_order == b[i].found_order);
    CHECK(a[i].decomposable == is_decomposable(a[i].rep));
  }
}
