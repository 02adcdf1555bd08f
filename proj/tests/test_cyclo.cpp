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

#include <numeric>

#include "cwe/cyclo.hpp"
#include "cwe/util.hpp"

using namespace cwe;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<int64_t>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<int64_t>{1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<int64_t>{1, 0, 1});
  CHECK(cyclotomic_poly(5) == std::vector<int64_t>{1, 1, 1, 1, 1});
  CHECK(cyclotomic_poly(8) == std::vector<int64_t>{1, 0, 0, 0, 1});
  CHECK(cyclotomic_poly(12) == std::vector<int64_t>{1, 0, -1, 0, 1});
}

TEST_CASE("roots of unity reduce against their minimal polynomial") {
  // zeta_8^4 = -1, zeta_8 * zeta_8 = i at conductor 4.
  CycNum z8 = CycNum::zeta(8);
  CycNum m = z8;
  for (int i = 0; i < 3; ++i) m *= z8;
  CHECK(m == -CycNum(1L));
  CHECK(z8 * z8 == CycNum::zeta(4));

  // 1 + zeta_5 + ... + zeta_5^4 = 0.
  CycNum s(0L);
  for (int k = 0; k < 5; ++k) s += CycNum::zeta(5, k);
  CHECK(s.is_zero());

  // Conductor-insensitive equality.
  CHECK(CycNum::zeta(3) == CycNum::zeta(12, 4));
  CHECK(CycNum::zeta(6, 3) == -CycNum(1L));
}

TEST_CASE("mixed conductors embed into the lcm") {
  CycNum a = CycNum::zeta(2);   // -1
  CycNum b = CycNum::zeta(3);
  CHECK(a * b == CycNum::zeta(6, 5));
  CycNum c = CycNum::zeta(4) + CycNum::zeta(3);
  CHECK(c.conductor() == 12);
  CHECK(c - CycNum::zeta(3) == CycNum::zeta(4));
}

TEST_CASE("field operations") {
  CycNum x = CycNum(1L) + CycNum::zeta(5);
  CHECK(x * x.inv() == CycNum(1L));
  CycNum y = CycNum::zeta(7, 3);
  CHECK(y.conj() == CycNum::zeta(7, 4));
  CHECK((y * y.conj()) == CycNum(1L));
  CHECK(x.scale(Rat(3, 2)) == (CycNum(1L) + CycNum::zeta(5)) * CycNum(Rat(3, 2)));

  CycNum r = CycNum(Rat(22, 7));
  CHECK(r.is_rational());
  CHECK(r.to_rational() == Rat(22, 7));
  CHECK_FALSE(CycNum::zeta(5).is_rational());
}

TEST_CASE("galois automorphisms are multiplicative field maps") {
  for (int m : {5, 8, 12}) {
    CycNum x = CycNum::zeta(m) + CycNum(Rat(1, 3));
    CycNum y = CycNum::zeta(m, m - 1) - CycNum(2L);
    for (int64_t a = 1; a < m; ++a) {
      if (std::gcd<int64_t>(a, m) != 1) continue;
      CHECK(x.galois(a) * y.galois(a) == (x * y).galois(a));
      CHECK(x.galois(a) + y.galois(a) == (x + y).galois(a));
      for (int64_t b = 1; b < m; ++b) {
        if (std::gcd<int64_t>(b, m) != 1) continue;
        CHECK(x.galois(a).galois(b) == x.galois(a * b % m));
      }
    }
  }
  // Complex conjugation is galois(-1).
  CycNum x = CycNum::zeta(12, 5) + CycNum::zeta(12, 2);
  CHECK(x.conj() == x.galois(11));
}

TEST_CASE("gauss sums give exact square roots") {
  for (int64_t q : {2, 3, 4, 5, 7, 8, 9, 13, 16, 25}) {
    CycNum s = gauss_sqrt(q);
    CHECK(s * s == CycNum(static_cast<long>(q)));
  }
  // sqrt(5) = 1 + 2 zeta_5 + 2 zeta_5^4 (quadratic Gauss sum, positive root).
  CycNum s5 = CycNum(1L) + CycNum(2L) * CycNum::zeta(5) +
              CycNum(2L) * CycNum::zeta(5, 4);
  CHECK(gauss_sqrt(5) == s5);
  CHECK(gauss_sqrt_conductor(5) == 5);
  CHECK(gauss_sqrt_conductor(3) == 12);
  CHECK(gauss_sqrt_conductor(2) == 8);
  CHECK(gauss_sqrt_conductor(4) == 1);
  // The non-residue automorphism flips the root.
  CHECK(gauss_sqrt(5).galois(2) == -gauss_sqrt(5));
  CHECK(gauss_sqrt(5).galois(4) == gauss_sqrt(5));
}

TEST_CASE("prime power factoring") {
  int64_t p = 0;
  int e = 0;
  factor_prime_power(125, &p, &e);
  CHECK(p == 5);
  CHECK(e == 3);
  factor_prime_power(2, &p, &e);
  CHECK(p == 2);
  CHECK(e == 1);
  CHECK_THROWS_AS(factor_prime_power(12, &p, &e), PreconditionError);
}

TEST_CASE("embedding keeps values fixed") {
  CycNum x = CycNum::zeta(5, 2) + CycNum(1L);
  CycNum y = x.embedded(20);
  CHECK(y.conductor() == 20);
  CHECK(x == y);
  CHECK(y.galois(9) == x.galois(9 % 5));
}

TEST_CASE("string forms parse back") {
  CycNum vals[] = {CycNum(0L), CycNum(Rat(-7, 3)), CycNum::zeta(8, 3),
                   gauss_sqrt(5), CycNum::zeta(12, 7) - CycNum(Rat(1, 2))};
  for (const CycNum& v : vals) {
    CHECK(CycNum::parse(v.conductor(), v.str()) == v);
    CHECK(CycNum::parse_tagged(v.str_tagged()) == v);
  }
}

TEST_CASE("integer helpers") {
  CHECK(mod_norm(-3, 8) == 5);
  CHECK(mod_norm(16, 8) == 0);
  CHECK(mod_pow(3, 4, 7) == 4);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK_THROWS_AS(mod_inverse(2, 8), InternalError);
}
