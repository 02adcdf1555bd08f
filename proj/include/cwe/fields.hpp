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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwe/util.hpp"

namespace cwe {

// Finite field with elements encoded 0..q-1. Prime fields use integers mod p;
// F_4 uses {0, 1, w, w^2} <-> {0, 1, 2, 3} with w^2 = w + 1 (bit vector over
// the basis {1, w}); F_8, F_9 use the analogous polynomial encodings.
struct FieldAlphabet {
  int q = 2, p = 2, e = 1;
  std::vector<uint8_t> add_t, mul_t;  // q*q, row-major
  std::vector<uint8_t> neg_t, inv_t;  // q (inv_t[0] unused)

  int add(int a, int b) const { return add_t[a * q + b]; }
  int sub(int a, int b) const { return add_t[a * q + neg_t[b]]; }
  int mul(int a, int b) const { return mul_t[a * q + b]; }
  int neg(int a) const { return neg_t[a]; }
  int inv(int a) const {
    require(a != 0, "inverse of zero field element");
    return inv_t[a];
  }
  // Trace to the prime field, as an integer 0..p-1.
  int tr(int a) const;
  // Multiplicative generator (0 for q = 2, where the unit group is trivial).
  int unit_gen() const;

  // Cached instance; q in {2,3,4,5,7,8,9}.
  static const FieldAlphabet& get(int q);
};

// Exhaustive field-axiom check (associativity, distributivity, inverses).
bool field_axioms_ok(const FieldAlphabet& F, std::string* why = nullptr);

}  // namespace cwe
