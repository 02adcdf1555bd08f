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

#include <string>
#include <vector>

#include "cwe/cyclo.hpp"

namespace cwe {

// Dense matrix over Q(zeta_m), all entries kept at one shared conductor.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(int rows, int cols, int conductor);
  static CycMatrix identity(int n, int conductor);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int conductor() const { return m_; }

  const CycNum& at(int r, int c) const { return a_[idx(r, c)]; }
  void set(int r, int c, const CycNum& v);

  CycMatrix mul(const CycMatrix& o) const;
  CycMatrix conj_transpose() const;
  CycMatrix kron(const CycMatrix& o) const;
  CycMatrix scaled(const CycNum& s) const;
  std::vector<CycNum> apply(const std::vector<CycNum>& v) const;

  bool operator==(const CycMatrix& o) const;
  bool is_identity() const;
  CycNum trace() const;

  // Stable byte key for closure dedup.
  std::string serialize() const;
  // "row col value" lines for nonzero entries, preceded by a conductor tag.
  std::string str_dump() const;

  // True iff every row and column has exactly one nonzero entry and each
  // nonzero entry is a root of unity times +-1. On success fills, per column
  // w: perm[w] = the row carrying the entry, sign[w], expo[w] with
  // entry = sign * zeta_m^expo.
  bool monomial_parts(std::vector<int>* perm, std::vector<int>* sign,
                      std::vector<int>* expo) const;

 private:
  size_t idx(int r, int c) const { return static_cast<size_t>(r) * cols_ + c; }
  int rows_ = 0, cols_ = 0, m_ = 1;
  std::vector<CycNum> a_;
};

}  // namespace cwe
