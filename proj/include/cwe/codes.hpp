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
#include <iosfwd>
#include <string>
#include <vector>

#include "cwe/rational.hpp"
#include "cwe/typespec.hpp"

namespace cwe {

using Word = std::vector<uint8_t>;

// Linear code over F_q in reduced row echelon form; rows are the canonical
// generators.
struct Code {
  std::shared_ptr<const TypeRep> type;
  int n = 0;
  std::vector<Word> rows;

  int dim() const { return static_cast<int>(rows.size()); }
  std::string key() const;  // stable byte key of the echelon rows
};

// Reduced row echelon form over F_q; zero rows dropped, pivots normalized
// to 1 and cleared above.
std::vector<Word> rref(const FieldAlphabet& F, std::vector<Word> rows);

Code make_code(std::shared_ptr<const TypeRep> type, int n,
               const std::vector<Word>& rows);

// All q^k codewords; cap-guarded.
std::vector<Word> code_words(const Code& c, size_t cap = 2000000);

// Twisted pairing sum_i a_i beta(x_i, y_i), as a numerator mod f.
int pairing_val(const TypeRep& t, const std::vector<int64_t>& a, const Word& x,
                const Word& y);
// Twisted diagonal value sum_i a_i psi(x_i) mod f for one weight table.
int psi_val(const TypeRep& t, const std::vector<int64_t>& a,
            const std::vector<int>& table, const Word& x);

// Dual with respect to the twisted pairing.
Code dual_code(const Code& c, const std::vector<int64_t>& a);

// Full membership check: length matches, self-dual under the twisted
// pairing, and every codeword kills every weight table.
bool is_type_code(const Code& c, const TwistedSum& ts, std::string* why = nullptr);

// The standard diagonal code {(d, d)} for the balanced twist of length 2N.
Code t_code(std::shared_ptr<const TypeRep> type, int N);
// {(d, d + c) : d in the plain dual of c0, c in c0}, doubling length n -> 2n.
Code double_code(const Code& c0);

// Exhaustive enumeration of the codes of the given type and twist, by
// depth-first extension of echelon chains. Deterministic order.
std::vector<Code> enumerate_codes(const TwistedSum& ts, size_t cap = 50000000);

// Neighbor step: (c intersect x-perp) + <x> for a valid isotropic x not in c.
Code neighbor(const Code& c, const TwistedSum& ts, const Word& x);

// Coordinate positions grouped by twist component (ascending unit order).
std::vector<std::vector<int>> twist_blocks(const TwistedSum& ts);

// Canonical key under block-preserving coordinate permutations, and the
// order of the block-permutation stabilizer.
struct CanonicalInfo {
  std::string key;
  uint64_t aut_order = 0;
  uint64_t group_order = 0;
};
CanonicalInfo canonical_info(const Code& c, const TwistedSum& ts);

bool equivalent(const Code& a, const Code& b, const TwistedSum& ts);

struct CodeClass {
  Code rep;
  uint64_t aut_order = 0;
  bool decomposable = false;
  size_t found_order = 0;  // discovery index during the walk
};

// Classify by repeated neighbor steps from the diagonal code (plus optional
// extra seeds). Returns classes sorted by discovery.
std::vector<CodeClass> classify_codes(const TwistedSum& ts,
                                      const std::vector<Code>& extra_seeds = {},
                                      size_t cap = 100000);

// Sum over classes of 1/|Aut| and the matching total-count prediction.
struct MassCheck {
  Rat class_sum;       // sum 1/|Aut|
  uint64_t group_order = 0;
  Rat predicted_total; // class_sum * group_order
};
MassCheck mass_check(const std::vector<CodeClass>& classes,
                     const TwistedSum& ts);

// True iff the code splits as a direct sum over a coordinate bipartition
// whose parts both have twist entries pairing off under negation, i.e. each
// part is again a code of a balanced cell of the same type.
bool is_decomposable(const Code& c, const TwistedSum& ts);

// Matrices A over F_q with A A^T = I, as row-major symbol vectors; when
// ones_filter is set, keep only A with row sums 1.
std::vector<std::vector<uint8_t>> orthogonal_matrices(int q, int N,
                                                      bool ones_filter,
                                                      size_t cap = 5000000);
// Number of Sym_N x Sym_N double cosets among those matrices.
size_t double_coset_count(const std::vector<std::vector<uint8_t>>& mats, int N);

// Code file I/O: header "type=<name> a=<comma list> N=<length>" then one
// row of N digits per generator.
void write_code_file(const Code& c, const TwistedSum& ts, std::ostream& out);
struct CodeFile {
  std::string type_name;
  std::vector<int64_t> a;
  int n = 0;
  std::vector<Word> rows;
};
CodeFile read_code_file(std::istream& in);

}  // namespace cwe
