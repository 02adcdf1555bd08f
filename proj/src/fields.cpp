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

#include "cwe/fields.hpp"

#include "cwe/cyclo.hpp"

#include <map>
#include <mutex>

namespace cwe {

namespace {

// Reduction polynomials for the prime-power cases, as coefficient vectors of
// x^e (monic, low degree first, entries mod p).
// F_4 = F_2[x]/(x^2+x+1), F_8 = F_2[x]/(x^3+x+1), F_9 = F_3[x]/(x^2+1).
std::vector<int> modulus_for(int p, int e) {
  if (p == 2 && e == 2) return {1, 1};
  if (p == 2 && e == 3) return {1, 1, 0};
  if (p == 3 && e == 2) return {1, 0};
  internal_check(false, "unsupported extension field");
  return {};
}

// Element <-> polynomial over F_p via base-p digits.
std::vector<int> digits_of(int a, int p, int e) {
  std::vector<int> d(e);
  for (int i = 0; i < e; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

int digits_to_sym(const std::vector<int>& d, int p) {
  int a = 0;
  for (size_t i = d.size(); i-- > 0;) a = a * p + d[i];
  return a;
}

FieldAlphabet build_field(int q) {
  FieldAlphabet F;
  F.q = q;
  require(q >= 2, "alphabet size must be a prime power >= 2");
  int64_t p64 = 0;
  int exp = 0;
  factor_prime_power(q, &p64, &exp);
  F.p = static_cast<int>(p64);
  F.e = exp;
  F.add_t.assign(static_cast<size_t>(q) * q, 0);
  F.mul_t.assign(static_cast<size_t>(q) * q, 0);
  F.neg_t.assign(q, 0);
  F.inv_t.assign(q, 0);

  int p = F.p, e = F.e;
  std::vector<int> mod = e > 1 ? modulus_for(p, e) : std::vector<int>{};
  auto poly_add = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(e);
    for (int i = 0; i < e; ++i) c[i] = (a[i] + b[i]) % p;
    return c;
  };
  auto poly_mul = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(2 * e - 1, 0);
    for (int i = 0; i < e; ++i)
      for (int j = 0; j < e; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    for (int k = 2 * e - 2; k >= e; --k) {
      int t = c[k];
      if (t == 0) continue;
      c[k] = 0;
      for (int i = 0; i < e; ++i)
        c[k - e + i] = ((c[k - e + i] - t * mod[i]) % p + p * p) % p;
    }
    c.resize(e);
    return c;
  };

  for (int a = 0; a < q; ++a) {
    auto da = digits_of(a, p, e);
    for (int b = 0; b < q; ++b) {
      auto db = digits_of(b, p, e);
      F.add_t[a * q + b] = static_cast<uint8_t>(
          e == 1 ? (a + b) % p : digits_to_sym(poly_add(da, db), p));
      F.mul_t[a * q + b] = static_cast<uint8_t>(
          e == 1 ? (a * b) % p : digits_to_sym(poly_mul(da, db), p));
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (F.add_t[a * q + b] == 0) F.neg_t[a] = static_cast<uint8_t>(b);
      if (a != 0 && F.mul_t[a * q + b] == 1)
        F.inv_t[a] = static_cast<uint8_t>(b);
    }
  }
  return F;
}

}  // namespace

int FieldAlphabet::tr(int a) const {
  // tr(a) = a + a^p + ... + a^{p^{e-1}}, landing in the prime subfield
  // {0, 1, .., p-1} under the digit encoding.
  int acc = 0, t = a;
  for (int i = 0; i < e; ++i) {
    acc = add(acc, t);
    int tp = t;
    for (int j = 1; j < p; ++j) tp = mul(tp, t);
    t = tp;
  }
  internal_check(acc < p, "trace left the prime subfield");
  return acc;
}

int FieldAlphabet::unit_gen() const {
  if (q == 2) return 0;
  for (int g = 2; g < q; ++g) {
    int t = g, order = 1;
    while (t != 1) {
      t = mul(t, g);
      ++order;
    }
    if (order == q - 1) return g;
  }
  internal_check(false, "no multiplicative generator found");
  return 0;
}

const FieldAlphabet& FieldAlphabet::get(int q) {
  static std::mutex mu;
  static std::map<int, FieldAlphabet> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) {
    require(q == 2 || q == 3 || q == 4 || q == 5 || q == 7 || q == 8 || q == 9,
            "alphabet size out of scope: " + std::to_string(q));
    it = cache.emplace(q, build_field(q)).first;
  }
  return it->second;
}

bool field_axioms_ok(const FieldAlphabet& F, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int q = F.q;
  for (int a = 0; a < q; ++a) {
    if (F.add(a, 0) != a) return fail("additive identity");
    if (F.mul(a, 1) != a) return fail("multiplicative identity");
    if (F.add(a, F.neg(a)) != 0) return fail("additive inverse");
    if (a != 0 && F.mul(a, F.inv(a)) != 1) return fail("multiplicative inverse");
    for (int b = 0; b < q; ++b) {
      if (F.add(a, b) != F.add(b, a)) return fail("addition commutativity");
      if (F.mul(a, b) != F.mul(b, a)) return fail("multiplication commutativity");
      for (int c = 0; c < q; ++c) {
        if (F.add(F.add(a, b), c) != F.add(a, F.add(b, c)))
          return fail("addition associativity");
        if (F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)))
          return fail("multiplication associativity");
        if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)))
          return fail("distributivity");
      }
    }
  }
  // Nonzero elements form a group: no zero divisors.
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (F.mul(a, b) == 0) return fail("zero divisor");
  return true;
}

}  // namespace cwe
