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

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "cwe/cyclo.hpp"
#include "cwe/fields.hpp"

namespace cwe {

// A weight type over the alphabet F_q: a symmetric pairing beta and a set of
// diagonal weight maps, all valued in (1/f)Z / Z and stored as integer
// numerators mod f.
struct TypeRep {
  std::string name;
  int q = 2;
  int f = 1;
  std::vector<int> beta;                   // q*q numerators mod f
  std::vector<std::vector<int>> phi_gens;  // declared generator tables

  // Derived by make_type:
  std::vector<std::vector<int>> qgroup;  // additive/[s]-closure of the maps
                                         // phi_gens plus x -> beta(sx, x);
                                         // sorted, includes the zero table
  std::vector<std::vector<int>> dgens;   // deduped nonzero generator tables
  int value_group_order = 1;             // of the subgroup of (1/f)Z/Z hit by
                                         // beta and the qgroup tables

  const FieldAlphabet& field() const { return FieldAlphabet::get(q); }
  int beta_at(int x, int y) const { return beta[x * q + y]; }
};

struct ValidationItem {
  std::string check;
  bool pass = false;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool ok() const;
  std::string to_string() const;
};

// Builds the closure and derived tables. Structural errors (bad sizes, values
// out of range) throw PreconditionError; axiom violations are left for
// validate() to report.
TypeRep make_type(const std::string& name, int q, int f, std::vector<int> beta,
                  std::vector<std::vector<int>> phi_gens);

ValidationReport validate(const TypeRep& t);

// Built-in types: "2II", "4II_E", "3_1E", "5_1E". Validated on first use.
std::shared_ptr<const TypeRep> builtin(const std::string& name);
const std::vector<std::string>& builtin_names();

// Descriptor file I/O. Sections: [alphabet] q = ..; [beta] q rows of q
// rationals; [phi.k] one row of q rationals per declared generator;
// [meta] name = .., conductor = ... Rationals are the actual values in
// [0, 1), e.g. 1/2 for numerator f/2.
TypeRep read_type_file(std::istream& in);
TypeRep read_type_path(const std::string& path);
void write_type_file(const TypeRep& t, std::ostream& out);

// Galois bookkeeping for twists: the ambient conductor containing both the
// f-th roots of unity and sqrt(q), one chosen lift per unit of Z/f, and the
// sign each lift induces on sqrt(q).
struct GaloisSetup {
  int q = 2;
  int f = 1;
  int m_amb = 1;
  bool sqrt_in_base = true;     // sqrt(q) already lies in Q(zeta_f)
  std::vector<int64_t> units;   // units of Z/f, ascending
  std::vector<int64_t> lifts;   // exponent mod m_amb per unit
  std::vector<int> eps;         // +-1 per unit
  CycNum sqrt_q;                // at conductor m_amb

  int component_of(int64_t a) const;  // index into units of a mod f
};

GaloisSetup galois_setup(const TypeRep& t);
int sign_epsilon(const GaloisSetup& gs, int64_t a);

// A type together with a twist vector a = (a_1, .., a_N), each a_i a unit
// mod f.
struct TwistedSum {
  std::shared_ptr<const TypeRep> type;
  std::vector<int64_t> a;

  int n_len() const { return static_cast<int>(a.size()); }
};

TwistedSum make_twisted_sum(std::shared_ptr<const TypeRep> type,
                            std::vector<int64_t> raw_a);

// Counts of twist entries per unit component, ascending unit order.
std::vector<int> degree_vector(const TwistedSum& ts);

// Product of the signs eps(a_i); true iff the product is +1.
bool sign_condition(const TwistedSum& ts, const GaloisSetup& gs);

}  // namespace cwe
