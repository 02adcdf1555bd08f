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

#include "cwe/matrix.hpp"

#include <sstream>

#include "cwe/util.hpp"

namespace cwe {

CycMatrix::CycMatrix(int rows, int cols, int conductor)
    : rows_(rows), cols_(cols), m_(conductor) {
  require(rows >= 0 && cols >= 0 && conductor >= 1, "bad matrix shape");
  a_.assign(static_cast<size_t>(rows) * cols, CycNum());
}

CycMatrix CycMatrix::identity(int n, int conductor) {
  CycMatrix I(n, n, conductor);
  for (int i = 0; i < n; ++i) I.set(i, i, CycNum(1));
  return I;
}

void CycMatrix::set(int r, int c, const CycNum& v) {
  require(0 <= r && r < rows_ && 0 <= c && c < cols_, "index out of range");
  require(m_ % v.conductor() == 0,
          "entry conductor does not divide the matrix conductor");
  a_[idx(r, c)] = v.embedded(m_);
}

CycMatrix CycMatrix::mul(const CycMatrix& o) const {
  require(cols_ == o.rows_, "shape mismatch in matrix product");
  require(m_ == o.m_, "conductor mismatch in matrix product");
  CycMatrix out(rows_, o.cols_, m_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const CycNum& x = a_[idx(i, k)];
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const CycNum& y = o.a_[o.idx(k, j)];
        if (y.is_zero()) continue;
        out.a_[out.idx(i, j)] += x * y;
      }
    }
  return out;
}

CycMatrix CycMatrix::conj_transpose() const {
  CycMatrix out(cols_, rows_, m_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.a_[out.idx(j, i)] = a_[idx(i, j)].conj();
  return out;
}

CycMatrix CycMatrix::kron(const CycMatrix& o) const {
  require(m_ == o.m_, "conductor mismatch in Kronecker product");
  CycMatrix out(rows_ * o.rows_, cols_ * o.cols_, m_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const CycNum& x = a_[idx(i, j)];
      if (x.is_zero()) continue;
      for (int r = 0; r < o.rows_; ++r)
        for (int c = 0; c < o.cols_; ++c) {
          const CycNum& y = o.a_[o.idx(r, c)];
          if (y.is_zero()) continue;
          out.a_[out.idx(i * o.rows_ + r, j * o.cols_ + c)] = x * y;
        }
    }
  return out;
}

CycMatrix CycMatrix::scaled(const CycNum& s) const {
  CycMatrix out = *this;
  for (auto& e : out.a_) e *= s;
  return out;
}

std::vector<CycNum> CycMatrix::apply(const std::vector<CycNum>& v) const {
  require(v.size() == static_cast<size_t>(cols_), "vector length mismatch");
  std::vector<CycNum> out(rows_, CycNum());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const CycNum& x = a_[idx(i, j)];
      if (!x.is_zero() && !v[j].is_zero()) out[i] += x * v[j];
    }
  return out;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

bool CycMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j ? !(a_[idx(i, j)] == CycNum(1)) : !a_[idx(i, j)].is_zero())
        return false;
    }
  return true;
}

CycNum CycMatrix::trace() const {
  require(rows_ == cols_, "trace of a non-square matrix");
  CycNum t;
  for (int i = 0; i < rows_; ++i) t += a_[idx(i, i)];
  return t;
}

std::string CycMatrix::serialize() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_ << "@" << m_ << "|";
  for (const auto& e : a_) os << e.str() << ";";
  return os.str();
}

std::string CycMatrix::str_dump() const {
  std::ostringstream os;
  os << "conductor " << m_ << "\n";
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!a_[idx(i, j)].is_zero())
        os << i << " " << j << " " << a_[idx(i, j)].str() << "\n";
  return os.str();
}

bool CycMatrix::monomial_parts(std::vector<int>* perm, std::vector<int>* sign,
                               std::vector<int>* expo) const {
  if (rows_ != cols_) return false;
  std::vector<int> p(cols_, -1), sg(cols_, 0), ex(cols_, 0);
  std::vector<bool> row_used(rows_, false);
  for (int c = 0; c < cols_; ++c) {
    for (int r = 0; r < rows_; ++r) {
      const CycNum& e = a_[idx(r, c)];
      if (e.is_zero()) continue;
      if (p[c] >= 0 || row_used[r]) return false;
      bool matched = false;
      for (int s = 1; s >= -1 && !matched; s -= 2)
        for (int k = 0; k < m_; ++k) {
          CycNum root = CycNum::zeta(m_, k).embedded(m_);
          if (s < 0) root = -root;
          if (e == root) {
            p[c] = r;
            sg[c] = s;
            ex[c] = k;
            matched = true;
            break;
          }
        }
      if (!matched) return false;
      row_used[r] = true;
    }
    if (p[c] < 0) return false;
  }
  if (perm) *perm = p;
  if (sign) *sign = sg;
  if (expo) *expo = ex;
  return true;
}

}  // namespace cwe
