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

#ifndef CWE_SCHURWEYL_HPP_
#define CWE_SCHURWEYL_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cwe/codes.hpp"
#include "cwe/cwgroup.hpp"
#include "cwe/typespec.hpp"

namespace cwe {

// 0/1 endomorphism of the N-fold tensor power of the column space, derived
// from a code on 2N coordinates: rows and columns are N-tuples of column
// words, and the entry is 1 when every layer of the concatenated pair is a
// codeword.
struct Endo {
  int dim = 0;       // side length, (q^m)^N
  int slots = 0;     // N
  int vars = 0;      // q^m
  std::vector<uint8_t> entries;  // row-major 0/1
  uint8_t at(int r, int c) const {
    return entries[static_cast<size_t>(r) * dim + c];
  }
};

// Builds the tensor-power endomorphism of a code on 2N coordinates at the
// given genus. Throws CapError when the side length exceeds the cap.
Endo code_to_endo(const Code& c, int m, size_t cap = 4096);

// Dimension of the joint commutant of the generators' N-th tensor powers,
// by exact elimination: monomial generators reduce the matrix space to
// transport orbits and the transform contributes commutator rows on top.
uint64_t commutant_dim(const CWGroup& g, int N, size_t pair_cap = 1 << 22);

struct SchurWeylReport {
  std::string type_name;
  int m = 0;
  int N = 0;
  uint64_t t_N = 0;       // number of codes on (N, N)
  uint64_t span_dim = 0;  // rank of the code endomorphisms
  uint64_t commutant = 0;
  bool commute_ok = false;  // every code matrix commutes with every power
  bool basis = false;       // m >= N and the code matrices are independent
  bool ok() const { return commute_ok && span_dim == commutant; }
  std::string to_string() const;
};

SchurWeylReport verify_schurweyl(const std::shared_ptr<const TypeRep>& t,
                                 int m, int N, size_t enum_cap = 50000000);

}  // namespace cwe

#endif  // CWE_SCHURWEYL_HPP_
