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

#include <memory>
#include <string>
#include <vector>

#include "cwe/matrix.hpp"
#include "cwe/typespec.hpp"

namespace cwe {

// A group element carried together with its Galois-companion matrices, one
// per unit component of Z/f (component 0 is the element itself). Products
// and inverses act componentwise, so closures computed on tuples stay
// consistent across all components.
struct ElemTuple {
  std::vector<CycMatrix> comp;

  ElemTuple mul(const ElemTuple& o) const;
  ElemTuple inverse() const;  // conjugate transpose; elements are unitary
  bool operator==(const ElemTuple& o) const;
  std::string serialize() const;
};

// Symbolic monomial form of a tuple: per component, a permutation of the
// index set with a sign and a root-of-unity exponent per column.
struct MonoComp {
  std::vector<int> perm;  // column w maps to row perm[w]
  std::vector<int> sign;  // +-1
  std::vector<int> expo;  // exponent of zeta_{m_amb}
};
struct MonoTuple {
  int m_amb = 1;  // modulus for the exponents
  std::vector<MonoComp> comp;

  MonoTuple mul(const MonoTuple& o) const;
  MonoTuple inverse() const;
  bool is_pure_perm() const;
  std::string serialize() const;
  ElemTuple to_matrices() const;
};

// Extracts the symbolic form if every component is monomial.
bool tuple_monomial(const ElemTuple& e, int m_amb, MonoTuple* out);

// The symmetry group at a given genus: base-change permutations of V^m,
// diagonal weight maps pulled back through the leading layer, the pairing
// cross term, and the leading-layer transform. All matrices live at the
// ambient conductor of the Galois setup.
struct CWGroup {
  std::shared_ptr<const TypeRep> type;
  GaloisSetup gs;
  int genus = 1;
  int v = 0;  // q^genus
  std::vector<ElemTuple> gens;
  std::vector<std::string> gen_names;
  int h_index = -1;  // position of the transform generator
};

CWGroup group_for(std::shared_ptr<const TypeRep> type, const GaloisSetup& gs,
                  int genus);

// Full closure by right multiplication, deduplicated on whole tuples.
std::vector<ElemTuple> group_closure(const CWGroup& g, size_t cap);

// Monomial subgroup material: symbolic closure of the monomial generators,
// enlarged by transform conjugates that happen to be monomial again.
// h0_gens receives the generators whose transform conjugate stayed monomial
// (their conjugates are included among the returned generators).
struct MonomialPool {
  std::vector<MonoTuple> gens;
  std::vector<MonoTuple> h0_gens;
};
MonomialPool monomial_pool(const CWGroup& g);

// Symbolic closure of monomial tuples; cap-guarded.
std::vector<MonoTuple> mono_closure(const std::vector<MonoTuple>& gens,
                                    size_t cap);

}  // namespace cwe
