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
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cwe/codes.hpp"
#include "cwe/cwgroup.hpp"
#include "cwe/cyclo.hpp"
#include "cwe/rational.hpp"
#include "cwe/typespec.hpp"

namespace cwe {

// ---------------------------------------------------------------------------
// Polynomials in the variables x[j][w], j a unit component, w a column word.
// A monomial is stored as its exponent matrix flattened to comps*vars bytes;
// the byte string doubles as the map key, so term order is lexicographic on
// flattened exponent matrices everywhere.
// ---------------------------------------------------------------------------

struct ConjPoly {
  int comps = 0;
  int vars = 0;
  std::map<std::string, CycNum> terms;

  void add(const std::string& key, const CycNum& c);
  CycNum coeff(const std::string& key) const;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const ConjPoly& o) const;
  ConjPoly mul(const ConjPoly& o) const;
  // Column sums of the exponent matrix, one entry per component.
  std::vector<int> degree_of(const std::string& key) const;
  // One line per term: the flattened exponents, a colon, the coefficient.
  std::string str() const;
};

// Exponent-matrix keys for a degree cell.
uint64_t monomial_count(int vars, const std::vector<int>& degree);
std::vector<std::string> monomials_of_degree(int vars,
                                             const std::vector<int>& degree,
                                             size_t cap = 2000000);
std::string monomial_str(const std::string& key, int vars);

// ---------------------------------------------------------------------------
// Full weight enumerators: coefficient vectors indexed by length-n words over
// the column alphabet {0, ..., v^m - 1}.
// ---------------------------------------------------------------------------

struct FweVec {
  int n = 0;
  int vars = 0;
  std::map<Word, CycNum> coeffs;

  void add(const Word& w, const CycNum& c);
  bool operator==(const FweVec& o) const;
};

// Indicator vector of the genus-m column tuples of a code.
FweVec fwe_vec(const Code& c, int genus, size_t cap = 50000000);

// The linear collapse onto complete weight enumerator variables: coordinate i
// contributes the variable x[component_of(a_i)][u_i].
ConjPoly sigma_poly(const FweVec& f, const TwistedSum& ts,
                    const GaloisSetup& gs);

// Genus-m complete weight enumerator, computed by direct tuple iteration.
ConjPoly ccwe_poly(const Code& c, const TwistedSum& ts, const GaloisSetup& gs,
                   int genus, size_t cap = 50000000);

// Genus reduction: keeps monomials whose column words all end in digit zero
// and drops that digit.
ConjPoly phi_projection(const ConjPoly& p, int q);

// Checks phi(ccwe_{m}) == ccwe_{m-1} for m = 2 by materializing both sides.
bool phi_tower_ok(const Code& c, const TwistedSum& ts, const GaloisSetup& gs,
                  std::string* why = nullptr, size_t cap = 50000000);

// ---------------------------------------------------------------------------
// Group actions. Polynomials transform by substitution against the inverse
// element; full enumerators transform as coefficient vectors.
// ---------------------------------------------------------------------------

// Dense action on a full weight enumerator; cap bounds support * v^m work.
FweVec apply_elem(const ElemTuple& e, const FweVec& f, const TwistedSum& ts,
                  const GaloisSetup& gs, size_t cap = 100000000);

// Action on a polynomial. Monomial components use the symbolic fast path;
// dense components expand term by term under the cap.
ConjPoly apply_action(const CWGroup& g, const ElemTuple& e, const ConjPoly& p,
                      size_t cap = 50000000);

// Exact rank of a family of polynomials over the cyclotomic field.
uint64_t poly_rank(const std::vector<ConjPoly>& polys);

// ---------------------------------------------------------------------------
// Invariance certification.
// ---------------------------------------------------------------------------

struct InvarianceReport {
  size_t codes = 0;
  uint64_t fwe_checks = 0;
  uint64_t ccwe_checks = 0;
  bool ok = true;
  std::string detail;  // first failure, empty when ok
};

// Proves g.fwe == fwe for every generator and every listed code, exactly:
// permutation generators through their induced linear layer maps, diagonal
// phases over layer-one codewords, the pairing cross term over generator
// pairs, and the transform through a coset-transversal character sum. Codes
// whose collapsed enumerators fit under direct_cap additionally get explicit
// A_d(g) checks on the polynomial side.
InvarianceReport check_invariance(const std::vector<Code>& codes,
                                  const TwistedSum& ts, const CWGroup& g,
                                  uint64_t direct_cap = 20000000);

// ---------------------------------------------------------------------------
// Invariant dimensions.
// ---------------------------------------------------------------------------

struct DimResult {
  uint64_t dim = 0;
  bool exact = true;
  std::string method;       // "dense", "orbit", "sandwich"
  uint64_t monomials = 0;   // ambient cell size
  uint64_t survivors = 0;   // after the diagonal prefilter
  uint64_t orbits = 0;      // consistent transport orbits
};

// Stacked generator nullspace on the full monomial cell, exact elimination.
// Only viable for small cells; the cap bounds the cell size.
uint64_t invariant_dim(const CWGroup& g, const std::vector<int>& degree,
                       size_t cap = 4000);

// Provider for certified invariant rows: given the orbit representative keys,
// returns coefficient rows (one per certified invariant) restricted to those
// keys. Used for the rank floor when exact elimination is out of reach.
using LowerRowsFn = std::function<std::vector<std::vector<Rat>>(
    const std::vector<std::string>& rep_keys)>;

struct EngineCaps {
  size_t survivor_cap = 30000000;   // keys kept after the prefilter
  size_t exact_orbit_cap = 700;    // orbit count for exact elimination
  size_t expansion_cap = 4000000000ull;  // transform expansion combinations
};

// Orbit-reduced computation of the same nullity: the monomial subgroup acts
// by phase transport on prefiltered monomials, the transform contributes one
// projected row per consistent orbit. Falls back to a modular upper bound
// matched against the certified rank floor when the orbit system is too big
// for exact elimination.
DimResult invariant_dim_engine(const CWGroup& g, const std::vector<int>& degree,
                               const LowerRowsFn& lower_rows = nullptr,
                               const EngineCaps& caps = EngineCaps());

// ---------------------------------------------------------------------------
// Molien series.
// ---------------------------------------------------------------------------

struct MolienResult {
  std::vector<std::vector<int>> degrees;  // grid, lexicographic
  std::vector<Rat> coefficients;          // averaged, always rational
  uint64_t group_order = 0;
};

// Averages 1/det(I - z_j comp_j(g)) over the full closure and reads off all
// coefficients on the grid 0 <= d_j <= caps_j. Every coefficient must come
// out a nonnegative rational integer.
MolienResult molien(const CWGroup& g, const std::vector<int>& caps,
                    size_t closure_cap = 200000);

// ---------------------------------------------------------------------------
// End-to-end verification and the sign-condition demonstration.
// ---------------------------------------------------------------------------

struct VerifyMainReport {
  std::string type_name;
  std::vector<int64_t> a;
  int genus = 0;
  std::vector<int> degree;
  uint64_t monomial_count = 0;
  size_t classes = 0;
  uint64_t rank = 0;
  DimResult dim;
  bool refused = false;
  std::string refusal_reason;
  std::string verdict;  // PASS, FAIL, or REFUSED
  std::string to_string() const;
};

// Classifies the codes of the given twisted type, certifies invariance of the
// class representatives, and compares the rank of their genus-m enumerators
// with the invariant dimension at the matching degree. Refuses (in the
// report, without throwing) when the sign condition fails.
VerifyMainReport verify_main(const TwistedSum& ts, int genus,
                             size_t enum_cap = 50000000,
                             size_t class_cap = 100000);

struct DemoReport {
  bool sign_condition_holds = true;  // expected false
  uint64_t codes_found = 1;          // expected 0
  uint64_t invariant_dimension = 0;  // expected 1
  bool fixed_by_perm_and_diag = false;
  bool transform_negates = false;
  bool collapse_nonzero = false;
  bool collapse_invariant = false;  // under every group generator
  bool ok() const;
  std::string to_string() const;
};

// The q = 5 twist (1,2,2,2): no codes of that type exist, yet the invariant
// space in degree (1,3,0,0) is one-dimensional, spanned by a vector that the
// permutation and diagonal generators fix while the transform negates it.
DemoReport counterexample_demo();

}  // namespace cwe
