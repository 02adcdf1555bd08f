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

#include "cwe/rational.hpp"

namespace cwe {

// Coefficients of the m-th cyclotomic polynomial, ascending degree,
// length euler_phi(m) + 1, integer entries.
const std::vector<int64_t>& cyclotomic_poly(int m);

// Element of the cyclotomic field Q(zeta_m), stored exactly as phi(m)
// rational coordinates over the power basis 1, z, ..., z^{phi(m)-1} where
// z = e^{2 pi i / m}. The conductor m is part of the value; operations on
// mixed conductors embed both sides into Q(zeta_lcm) first.
class CycNum {
 public:
  CycNum() : m_(1), c_(1, Rat(0)) {}
  explicit CycNum(const Rat& r) : m_(1), c_(1, r) {}
  explicit CycNum(long n) : m_(1), c_(1, Rat(n)) {}

  // zeta_m^k, any integer k.
  static CycNum zeta(int m, int64_t k = 1);
  // Coefficient vector over the power basis; coeffs.size() == phi(m).
  static CycNum from_coeffs(int m, std::vector<Rat> coeffs);

  int conductor() const { return m_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat to_rational() const;  // requires is_rational()

  // Image in Q(zeta_M); requires m | M.
  CycNum embedded(int M) const;

  // Galois automorphism zeta_m -> zeta_m^a; requires gcd(a, m) == 1.
  CycNum galois(int64_t a) const;
  // Complex conjugation (a = -1).
  CycNum conj() const;

  CycNum inv() const;  // requires nonzero

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o);
  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }

  CycNum& scale(const Rat& r);  // multiply by a rational, no conductor churn

  // Equality of field elements (conductor-insensitive).
  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  // "a0 + a1*z^1 + ..." with zero terms skipped ("0" if zero).
  std::string str() const;
  // "m=<conductor>; <str()>"
  std::string str_tagged() const;
  // Parses the output of str() at a given conductor.
  static CycNum parse(int m, const std::string& body);
  // Parses the output of str_tagged().
  static CycNum parse_tagged(const std::string& text);

  // Stable within a fixed conductor; callers hash same-conductor families.
  size_t hash() const;

 private:
  int m_;
  std::vector<Rat> c_;
  void reduce_tail(std::vector<Rat>& raw) const;
};

// Holds square == q exactly, q a prime power. The chosen value is the
// quadratic Gauss sum normalization: positive real square root under the
// standard complex embedding. Conductor: 1 for even prime exponent, else
// p for p = 1 mod 4, 4p for p = 3 mod 4, 8 for p = 2.
CycNum gauss_sqrt(int64_t q);

// Conductor of gauss_sqrt(q) as defined above.
int gauss_sqrt_conductor(int64_t q);

// Splits a prime power q = p^e; PreconditionError if q is not one.
void factor_prime_power(int64_t q, int64_t* p, int* e);

}  // namespace cwe
