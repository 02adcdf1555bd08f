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

#include "cwe/cwgroup.hpp"

#include <set>
#include <sstream>
#include <unordered_set>

namespace cwe {

ElemTuple ElemTuple::mul(const ElemTuple& o) const {
  internal_check(comp.size() == o.comp.size(), "tuple width mismatch");
  ElemTuple out;
  out.comp.reserve(comp.size());
  for (size_t j = 0; j < comp.size(); ++j)
    out.comp.push_back(comp[j].mul(o.comp[j]));
  return out;
}

ElemTuple ElemTuple::inverse() const {
  ElemTuple out;
  out.comp.reserve(comp.size());
  for (const auto& c : comp) out.comp.push_back(c.conj_transpose());
  return out;
}

bool ElemTuple::operator==(const ElemTuple& o) const {
  if (comp.size() != o.comp.size()) return false;
  for (size_t j = 0; j < comp.size(); ++j)
    if (!(comp[j] == o.comp[j])) return false;
  return true;
}

std::string ElemTuple::serialize() const {
  std::string s;
  for (const auto& c : comp) {
    s += c.serialize();
    s += "#";
  }
  return s;
}

MonoTuple MonoTuple::mul(const MonoTuple& o) const {
  internal_check(m_amb == o.m_amb && comp.size() == o.comp.size(),
                 "monomial tuple mismatch");
  MonoTuple out;
  out.m_amb = m_amb;
  out.comp.resize(comp.size());
  for (size_t j = 0; j < comp.size(); ++j) {
    const MonoComp& a = comp[j];
    const MonoComp& b = o.comp[j];
    size_t v = b.perm.size();
    MonoComp c;
    c.perm.resize(v);
    c.sign.resize(v);
    c.expo.resize(v);
    for (size_t w = 0; w < v; ++w) {
      int mid = b.perm[w];
      c.perm[w] = a.perm[mid];
      c.sign[w] = a.sign[mid] * b.sign[w];
      c.expo[w] = (a.expo[mid] + b.expo[w]) % m_amb;
    }
    out.comp[j] = std::move(c);
  }
  return out;
}

MonoTuple MonoTuple::inverse() const {
  MonoTuple out;
  out.m_amb = m_amb;
  out.comp.resize(comp.size());
  for (size_t j = 0; j < comp.size(); ++j) {
    const MonoComp& a = comp[j];
    size_t v = a.perm.size();
    MonoComp c;
    c.perm.resize(v);
    c.sign.resize(v);
    c.expo.resize(v);
    for (size_t w = 0; w < v; ++w) {
      int u = a.perm[w];
      c.perm[u] = static_cast<int>(w);
      c.sign[u] = a.sign[w];
      c.expo[u] = (m_amb - a.expo[w]) % m_amb;
    }
    out.comp[j] = std::move(c);
  }
  return out;
}

bool MonoTuple::is_pure_perm() const {
  for (const auto& c : comp) {
    for (int s : c.sign)
      if (s != 1) return false;
    for (int e : c.expo)
      if (e != 0) return false;
  }
  return true;
}

std::string MonoTuple::serialize() const {
  std::ostringstream os;
  for (const auto& c : comp) {
    for (size_t w = 0; w < c.perm.size(); ++w)
      os << c.perm[w] << "," << c.sign[w] << "," << c.expo[w] << ";";
    os << "#";
  }
  return os.str();
}

ElemTuple MonoTuple::to_matrices() const {
  ElemTuple out;
  for (const auto& c : comp) {
    int v = static_cast<int>(c.perm.size());
    CycMatrix mat(v, v, m_amb);
    for (int w = 0; w < v; ++w) {
      CycNum e = CycNum::zeta(m_amb, c.expo[w]).embedded(m_amb);
      if (c.sign[w] < 0) e = -e;
      mat.set(c.perm[w], w, e);
    }
    out.comp.push_back(std::move(mat));
  }
  return out;
}

bool tuple_monomial(const ElemTuple& e, int m_amb, MonoTuple* out) {
  MonoTuple mt;
  mt.m_amb = m_amb;
  for (const auto& c : e.comp) {
    MonoComp mc;
    if (!c.monomial_parts(&mc.perm, &mc.sign, &mc.expo)) return false;
    mt.comp.push_back(std::move(mc));
  }
  if (out) *out = std::move(mt);
  return true;
}

namespace {

std::vector<int> digits_of(int w, int q, int m) {
  // digit 0 = leading layer (most significant).
  std::vector<int> d(m);
  for (int i = m - 1; i >= 0; --i) {
    d[i] = w % q;
    w /= q;
  }
  return d;
}

int recompose(const std::vector<int>& d, int q) {
  int w = 0;
  for (int x : d) w = w * q + x;
  return w;
}

// Permutation of V^m induced by digits -> L(digits) for a linear map given
// as a row-major m x m matrix over F_q.
std::vector<int> linear_perm(const FieldAlphabet& F, int m,
                             const std::vector<int>& L) {
  int q = F.q, v = 1;
  for (int i = 0; i < m; ++i) v *= q;
  std::vector<int> perm(v);
  for (int w = 0; w < v; ++w) {
    std::vector<int> d = digits_of(w, q, m), nd(m, 0);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        nd[i] = F.add(nd[i], F.mul(L[i * m + k], d[k]));
    perm[w] = recompose(nd, q);
  }
  return perm;
}

ElemTuple perm_tuple(const std::vector<int>& perm, int n_comp, int m_amb) {
  int v = static_cast<int>(perm.size());
  CycMatrix mat(v, v, m_amb);
  for (int w = 0; w < v; ++w) mat.set(perm[w], w, CycNum(1));
  ElemTuple e;
  for (int j = 0; j < n_comp; ++j) e.comp.push_back(mat);
  return e;
}

// Diagonal tuple from exponents at conductor m_amb; component j scales the
// exponents by the Galois lift of the j-th unit.
ElemTuple diag_tuple(const std::vector<int>& expo, const GaloisSetup& gs) {
  int v = static_cast<int>(expo.size());
  ElemTuple e;
  for (size_t j = 0; j < gs.units.size(); ++j) {
    CycMatrix mat(v, v, gs.m_amb);
    for (int w = 0; w < v; ++w) {
      int64_t k = mod_norm(static_cast<int64_t>(expo[w]) * gs.lifts[j],
                           gs.m_amb);
      mat.set(w, w, CycNum::zeta(gs.m_amb, k).embedded(gs.m_amb));
    }
    e.comp.push_back(std::move(mat));
  }
  return e;
}

}  // namespace

CWGroup group_for(std::shared_ptr<const TypeRep> type, const GaloisSetup& gs,
                  int genus) {
  require(type != nullptr, "group needs a type");
  require(genus >= 1 && genus <= 6, "genus out of range");
  const FieldAlphabet& F = type->field();
  int q = type->q, m = genus;
  int64_t v64 = 1;
  for (int i = 0; i < m; ++i) v64 *= q;
  check_cap(v64 <= 4096, "index set too large at this genus");
  int v = static_cast<int>(v64);
  int n = static_cast<int>(gs.units.size());
  int scale = gs.m_amb / gs.f;
  internal_check(gs.m_amb % gs.f == 0, "ambient conductor mismatch");

  CWGroup g;
  g.type = type;
  g.gs = gs;
  g.genus = m;
  g.v = v;

  // Base-change permutations generating GL_m(q) on digit vectors.
  auto add_linear = [&](const std::vector<int>& L, const std::string& name) {
    g.gens.push_back(perm_tuple(linear_perm(F, m, L), n, gs.m_amb));
    g.gen_names.push_back(name);
  };
  int g0 = F.unit_gen();
  if (g0 != 0) {
    std::vector<int> L(m * m, 0);
    for (int i = 0; i < m; ++i) L[i * m + i] = 1;
    L[0] = g0;
    add_linear(L, "scale");
  }
  if (m >= 2) {
    std::vector<int> cyc(m * m, 0);
    for (int i = 0; i < m; ++i) cyc[i * m + (i + 1) % m] = 1;
    add_linear(cyc, "cycle");
    if (m >= 3) {
      std::vector<int> sw(m * m, 0);
      for (int i = 2; i < m; ++i) sw[i * m + i] = 1;
      sw[0 * m + 1] = sw[1 * m + 0] = 1;
      add_linear(sw, "swap");
    }
    std::vector<int> tv(m * m, 0);
    for (int i = 0; i < m; ++i) tv[i * m + i] = 1;
    tv[0 * m + 1] = 1;
    add_linear(tv, "shear");
  }

  // Weight maps through the leading layer.
  int lead = v / q;  // w / lead = leading digit
  for (size_t t = 0; t < type->dgens.size(); ++t) {
    std::vector<int> expo(v);
    for (int w = 0; w < v; ++w) expo[w] = scale * type->dgens[t][w / lead];
    g.gens.push_back(diag_tuple(expo, gs));
    g.gen_names.push_back("diag:" + std::to_string(t + 1));
  }

  // Pairing cross term between the two leading layers.
  if (m >= 2) {
    int second = lead / q;
    std::vector<int> expo(v);
    for (int w = 0; w < v; ++w)
      expo[w] = scale * type->beta_at(w / lead, (w / second) % q);
    g.gens.push_back(diag_tuple(expo, gs));
    g.gen_names.push_back("cross");
  }

  // Leading-layer transform. Component j is the entrywise Galois image of
  // the base transform, so it carries the sign the automorphism puts on
  // 1/sqrt(q) along with the lifted phases.
  CycNum inv_sqrt = gs.sqrt_q.inv();
  ElemTuple h;
  for (int j = 0; j < n; ++j) {
    CycMatrix mat(v, v, gs.m_amb);
    CycNum front = inv_sqrt;
    if (gs.eps[j] < 0) front = -front;
    for (int uu = 0; uu < v; ++uu)
      for (int w = 0; w < v; ++w) {
        if (uu % lead != w % lead) continue;
        int64_t k = mod_norm(
            static_cast<int64_t>(scale) * gs.lifts[j] *
                type->beta_at(uu / lead, w / lead),
            gs.m_amb);
        mat.set(uu, w, CycNum::zeta(gs.m_amb, k).embedded(gs.m_amb) * front);
      }
    internal_check(mat.mul(mat.conj_transpose()).is_identity(),
                   "transform generator is not unitary");
    h.comp.push_back(std::move(mat));
  }
  // Cross-check: component j must be exactly the entrywise automorphism
  // image of component 0.
  for (int j = 1; j < n; ++j) {
    CycMatrix expect(v, v, gs.m_amb);
    for (int uu = 0; uu < v; ++uu)
      for (int w = 0; w < v; ++w)
        if (!h.comp[0].at(uu, w).is_zero())
          expect.set(uu, w, h.comp[0].at(uu, w).galois(gs.lifts[j]));
    internal_check(expect == h.comp[j],
                   "twisted transform disagrees with its Galois companion");
  }
  g.h_index = static_cast<int>(g.gens.size());
  g.gens.push_back(std::move(h));
  g.gen_names.push_back("transform");
  return g;
}

std::vector<ElemTuple> group_closure(const CWGroup& g, size_t cap) {
  std::vector<ElemTuple> out;
  std::unordered_set<std::string> seen;
  int n = static_cast<int>(g.gs.units.size());
  ElemTuple id;
  for (int j = 0; j < n; ++j)
    id.comp.push_back(CycMatrix::identity(g.v, g.gs.m_amb));
  out.push_back(id);
  seen.insert(id.serialize());
  for (size_t head = 0; head < out.size(); ++head) {
    check_cap(out.size() <= cap, "group closure exceeds cap");
    for (const auto& gen : g.gens) {
      ElemTuple nxt = out[head].mul(gen);
      if (seen.insert(nxt.serialize()).second) out.push_back(std::move(nxt));
    }
  }
  return out;
}

std::vector<MonoTuple> mono_closure(const std::vector<MonoTuple>& gens,
                                    size_t cap) {
  if (gens.empty()) return {};
  std::vector<MonoTuple> out;
  std::unordered_set<std::string> seen;
  MonoTuple id;
  id.m_amb = gens[0].m_amb;
  for (const auto& c : gens[0].comp) {
    MonoComp mc;
    size_t v = c.perm.size();
    mc.perm.resize(v);
    mc.sign.assign(v, 1);
    mc.expo.assign(v, 0);
    for (size_t w = 0; w < v; ++w) mc.perm[w] = static_cast<int>(w);
    id.comp.push_back(std::move(mc));
  }
  out.push_back(id);
  seen.insert(id.serialize());
  for (size_t head = 0; head < out.size(); ++head) {
    check_cap(out.size() <= cap, "monomial closure exceeds cap");
    for (const auto& gen : gens) {
      MonoTuple nxt = out[head].mul(gen);
      if (seen.insert(nxt.serialize()).second) out.push_back(std::move(nxt));
    }
  }
  return out;
}

MonomialPool monomial_pool(const CWGroup& g) {
  MonomialPool pool;
  std::set<std::string> seen;
  auto add_gen = [&](const MonoTuple& mt) {
    if (seen.insert(mt.serialize()).second) pool.gens.push_back(mt);
  };

  std::vector<MonoTuple> seeds;
  for (size_t i = 0; i < g.gens.size(); ++i) {
    MonoTuple mt;
    if (tuple_monomial(g.gens[i], g.gs.m_amb, &mt)) {
      seeds.push_back(mt);
      add_gen(mt);
    }
  }

  const ElemTuple& h = g.gens[g.h_index];
  ElemTuple h_inv = h.inverse();
  std::set<std::string> h0_seen;
  auto conj_round = [&](const std::vector<MonoTuple>& cands) {
    std::vector<MonoTuple> found;
    for (const auto& s : cands) {
      ElemTuple conj = h.mul(s.to_matrices()).mul(h_inv);
      MonoTuple mt;
      if (tuple_monomial(conj, g.gs.m_amb, &mt)) {
        add_gen(mt);
        found.push_back(mt);
        if (h0_seen.insert(s.serialize()).second) pool.h0_gens.push_back(s);
      }
    }
    return found;
  };
  std::vector<MonoTuple> first = conj_round(seeds);
  conj_round(first);

  // Transform powers that collapse to monomials (e.g. the square).
  ElemTuple acc = h;
  for (int k = 0; k < 3; ++k) {
    acc = acc.mul(h);
    MonoTuple mt;
    if (tuple_monomial(acc, g.gs.m_amb, &mt)) {
      add_gen(mt);
      if (h0_seen.insert(mt.serialize()).second) pool.h0_gens.push_back(mt);
      break;
    }
  }
  return pool;
}

}  // namespace cwe
