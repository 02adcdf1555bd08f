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

#include "cwe/conjinv.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cwe/fields.hpp"
#include "cwe/util.hpp"

namespace cwe {
namespace {

int pow_int(int b, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    require(r <= (int64_t{1} << 30), "power overflows the index range");
  }
  return static_cast<int>(r);
}

uint64_t binom_u64(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    uint64_t num = n - k + i;
    uint64_t g = std::gcd(num, i);
    num /= g;
    uint64_t den = i / g;
    internal_check(r % den == 0, "binomial accumulation out of order");
    r /= den;
    check_cap(r <= UINT64_MAX / num, "binomial coefficient overflows");
    r *= num;
  }
  return r;
}

std::string zero_key(int comps, int vars) {
  return std::string(static_cast<size_t>(comps) * vars, '\0');
}

// Exponent vectors over `vars` slots with the given sum, ascending
// lexicographic order, reported through the callback.
template <class F>
void for_compositions(int vars, int total, std::vector<uint8_t>& buf, int pos,
                      int rem, F&& fn) {
  if (pos == vars - 1) {
    buf[pos] = static_cast<uint8_t>(rem);
    fn(buf);
    return;
  }
  for (int e = 0; e <= rem; ++e) {
    buf[pos] = static_cast<uint8_t>(e);
    for_compositions(vars, total, buf, pos + 1, rem - e, fn);
  }
  buf[pos] = 0;
}

// Phase multiplier (sign, exponent) with meaning sign * zeta_m^expo.
struct Phase {
  int sign = 1;
  int64_t expo = 0;
};

// One group element restricted to the active components, in symbolic form.
struct GenSlice {
  // per active component: perm/sign/expo tables of length V
  std::vector<std::vector<int>> perm, sign, expo;
};

GenSlice slice_of(const MonoTuple& t, const std::vector<int>& active) {
  GenSlice s;
  for (int j : active) {
    const MonoComp& c = t.comp[j];
    s.perm.push_back(c.perm);
    s.sign.push_back(c.sign);
    s.expo.push_back(c.expo);
  }
  return s;
}

// Applies the substitution action of a monomial element to an exponent key.
// Multiplier convention: T x^E = sign * zeta^expo * x^{E'}.
void apply_slice(const GenSlice& s, const std::string& key, int A, int V,
                 int m_amb, std::string* out, Phase* ph) {
  out->assign(static_cast<size_t>(A) * V, '\0');
  int sgn = 1;
  int64_t e = 0;
  for (int a = 0; a < A; ++a) {
    const int base = a * V;
    for (int w = 0; w < V; ++w) {
      const uint8_t cnt = static_cast<uint8_t>(key[base + w]);
      if (!cnt) continue;
      (*out)[base + s.perm[a][w]] = static_cast<char>(
          static_cast<uint8_t>((*out)[base + s.perm[a][w]]) + cnt);
      e -= static_cast<int64_t>(cnt) * s.expo[a][w];
      if (s.sign[a][w] < 0 && (cnt & 1)) sgn = -sgn;
    }
  }
  ph->sign = sgn;
  ph->expo = mod_norm(e, m_amb);
}

CycNum phase_value(const Phase& p, int m_amb) {
  CycNum z = CycNum::zeta(m_amb, p.expo).embedded(m_amb);
  if (p.sign < 0) z = -z;
  return z;
}

// Leading positions of reduced rows.
std::vector<int> row_pivots(const std::vector<Word>& rows) {
  std::vector<int> piv;
  for (const Word& r : rows) {
    int p = 0;
    while (p < static_cast<int>(r.size()) && r[p] == 0) ++p;
    piv.push_back(p);
  }
  return piv;
}

bool word_in_rows(const FieldAlphabet& F, const std::vector<Word>& rows,
                  const std::vector<int>& piv, Word w) {
  for (size_t r = 0; r < rows.size(); ++r) {
    int s = w[piv[r]];
    if (s == 0) continue;
    for (size_t i = 0; i < w.size(); ++i)
      w[i] = static_cast<uint8_t>(F.sub(w[i], F.mul(s, rows[r][i])));
  }
  for (uint8_t x : w)
    if (x != 0) return false;
  return true;
}

// Additive generators of the code over the prime field: every codeword is a
// prime-field combination of these.
std::vector<Word> additive_basis(const Code& c) {
  const FieldAlphabet& F = c.type->field();
  std::vector<int> scalars;
  if (F.e == 1) {
    scalars.push_back(1);
  } else {
    int g0 = F.unit_gen();
    int s = 1;
    for (int i = 0; i < F.e; ++i) {
      scalars.push_back(s);
      s = F.mul(s, g0);
    }
  }
  std::vector<Word> out;
  for (const Word& row : c.rows)
    for (int s : scalars) {
      Word w(row.size());
      for (size_t i = 0; i < w.size(); ++i)
        w[i] = static_cast<uint8_t>(F.mul(s, row[i]));
      out.push_back(w);
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConjPoly
// ---------------------------------------------------------------------------

void ConjPoly::add(const std::string& key, const CycNum& c) {
  if (c.is_zero()) return;
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

CycNum ConjPoly::coeff(const std::string& key) const {
  auto it = terms.find(key);
  return it == terms.end() ? CycNum() : it->second;
}

bool ConjPoly::operator==(const ConjPoly& o) const {
  if (comps != o.comps || vars != o.vars) return false;
  if (terms.size() != o.terms.size()) return false;
  auto it = terms.begin();
  auto jt = o.terms.begin();
  for (; it != terms.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

ConjPoly ConjPoly::mul(const ConjPoly& o) const {
  require(comps == o.comps && vars == o.vars,
          "polynomial shapes do not match");
  ConjPoly out;
  out.comps = comps;
  out.vars = vars;
  for (const auto& [ka, ca] : terms)
    for (const auto& [kb, cb] : o.terms) {
      std::string k(ka.size(), '\0');
      for (size_t i = 0; i < k.size(); ++i) {
        int e = static_cast<uint8_t>(ka[i]) + static_cast<uint8_t>(kb[i]);
        require(e <= 255, "exponent exceeds the byte range");
        k[i] = static_cast<char>(e);
      }
      out.add(k, ca * cb);
    }
  return out;
}

std::vector<int> ConjPoly::degree_of(const std::string& key) const {
  std::vector<int> d(comps, 0);
  for (int j = 0; j < comps; ++j)
    for (int w = 0; w < vars; ++w)
      d[j] += static_cast<uint8_t>(key[static_cast<size_t>(j) * vars + w]);
  return d;
}

std::string ConjPoly::str() const {
  std::ostringstream os;
  for (const auto& [k, c] : terms) {
    for (size_t i = 0; i < k.size(); ++i) {
      if (i) os << ' ';
      os << static_cast<int>(static_cast<uint8_t>(k[i]));
    }
    os << " : " << c.str() << "\n";
  }
  return os.str();
}

uint64_t monomial_count(int vars, const std::vector<int>& degree) {
  uint64_t r = 1;
  for (int d : degree) {
    uint64_t b = binom_u64(static_cast<uint64_t>(d) + vars - 1, d);
    check_cap(b == 0 || r <= UINT64_MAX / (b ? b : 1),
              "monomial count overflows");
    r *= b;
  }
  return r;
}

std::vector<std::string> monomials_of_degree(int vars,
                                             const std::vector<int>& degree,
                                             size_t cap) {
  const int comps = static_cast<int>(degree.size());
  uint64_t total = monomial_count(vars, degree);
  check_cap(total <= cap, "monomial cell exceeds the cap");
  std::vector<std::string> out;
  out.reserve(total);
  // Materialize each component's compositions first: for_compositions keeps
  // its walk state in the shared buffer, so the walks must not nest.
  std::vector<std::vector<std::vector<uint8_t>>> comp_lists(comps);
  for (int j = 0; j < comps; ++j) {
    std::vector<uint8_t> buf(vars, 0);
    for_compositions(vars, degree[j], buf, 0, degree[j],
                     [&](const std::vector<uint8_t>& e) {
                       comp_lists[j].push_back(e);
                     });
  }
  std::string key = zero_key(comps, vars);
  // comp-major product keeps the flattened keys in ascending order
  std::function<void(int)> rec = [&](int j) {
    if (j == comps) {
      out.push_back(key);
      return;
    }
    for (const auto& e : comp_lists[j]) {
      for (int w = 0; w < vars; ++w)
        key[static_cast<size_t>(j) * vars + w] = static_cast<char>(e[w]);
      rec(j + 1);
    }
    for (int w = 0; w < vars; ++w) key[static_cast<size_t>(j) * vars + w] = 0;
  };
  rec(0);
  internal_check(out.size() == total, "monomial enumeration miscounted");
  return out;
}

std::string monomial_str(const std::string& key, int vars) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < key.size(); ++i) {
    int e = static_cast<uint8_t>(key[i]);
    if (!e) continue;
    if (!first) os << "*";
    first = false;
    os << "x[" << i / vars << "," << i % vars << "]";
    if (e > 1) os << "^" << e;
  }
  if (first) os << "1";
  return os.str();
}

// ---------------------------------------------------------------------------
// Full weight enumerators and the collapse
// ---------------------------------------------------------------------------

void FweVec::add(const Word& w, const CycNum& c) {
  if (c.is_zero()) return;
  auto it = coeffs.find(w);
  if (it == coeffs.end()) {
    coeffs.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs.erase(it);
}

bool FweVec::operator==(const FweVec& o) const {
  if (n != o.n || vars != o.vars) return false;
  if (coeffs.size() != o.coeffs.size()) return false;
  auto it = coeffs.begin();
  auto jt = o.coeffs.begin();
  for (; it != coeffs.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

FweVec fwe_vec(const Code& c, int genus, size_t cap) {
  require(genus >= 1, "genus must be positive");
  const int q = c.type->q;
  const int vars = pow_int(q, genus);
  require(vars <= 256, "column alphabet exceeds the byte range");
  std::vector<Word> words = code_words(c);
  uint64_t tuples = 1;
  for (int l = 0; l < genus; ++l) {
    check_cap(tuples <= cap / words.size() + 1, "tuple space exceeds the cap");
    tuples *= words.size();
  }
  check_cap(tuples <= cap, "tuple space exceeds the cap");

  FweVec f;
  f.n = c.n;
  f.vars = vars;
  std::vector<size_t> idx(genus, 0);
  const CycNum one(1);
  while (true) {
    Word u(c.n, 0);
    for (int l = 0; l < genus; ++l) {
      const Word& cw = words[idx[l]];
      for (int i = 0; i < c.n; ++i)
        u[i] = static_cast<uint8_t>(u[i] * q + cw[i]);
    }
    f.add(u, one);
    int l = genus - 1;
    while (l >= 0 && ++idx[l] == words.size()) idx[l--] = 0;
    if (l < 0) break;
  }
  return f;
}

ConjPoly sigma_poly(const FweVec& f, const TwistedSum& ts,
                    const GaloisSetup& gs) {
  const int comps = static_cast<int>(gs.units.size());
  require(f.n == ts.n_len(), "twist length does not match the enumerator");
  std::vector<int> comp_of(f.n);
  for (int i = 0; i < f.n; ++i) comp_of[i] = gs.component_of(ts.a[i]);
  ConjPoly p;
  p.comps = comps;
  p.vars = f.vars;
  for (const auto& [w, c] : f.coeffs) {
    std::string key = zero_key(comps, f.vars);
    for (int i = 0; i < f.n; ++i) {
      size_t pos = static_cast<size_t>(comp_of[i]) * f.vars + w[i];
      require(static_cast<uint8_t>(key[pos]) < 255,
              "exponent exceeds the byte range");
      key[pos] = static_cast<char>(static_cast<uint8_t>(key[pos]) + 1);
    }
    p.add(key, c);
  }
  return p;
}

ConjPoly ccwe_poly(const Code& c, const TwistedSum& ts, const GaloisSetup& gs,
                   int genus, size_t cap) {
  require(c.type->name == ts.type->name && c.n == ts.n_len(),
          "code and twist do not match");
  const int q = c.type->q;
  const int vars = pow_int(q, genus);
  require(vars <= 256, "column alphabet exceeds the byte range");
  const int comps = static_cast<int>(gs.units.size());
  std::vector<int> comp_of(c.n);
  for (int i = 0; i < c.n; ++i) comp_of[i] = gs.component_of(ts.a[i]);

  std::vector<Word> words = code_words(c);
  uint64_t tuples = 1;
  for (int l = 0; l < genus; ++l) {
    check_cap(tuples <= cap / words.size() + 1, "tuple space exceeds the cap");
    tuples *= words.size();
  }
  check_cap(tuples <= cap, "tuple space exceeds the cap");

  ConjPoly p;
  p.comps = comps;
  p.vars = vars;
  const CycNum one(1);
  std::vector<size_t> idx(genus, 0);
  std::string key(static_cast<size_t>(comps) * vars, '\0');
  while (true) {
    std::fill(key.begin(), key.end(), '\0');
    for (int i = 0; i < c.n; ++i) {
      int col = 0;
      for (int l = 0; l < genus; ++l) col = col * q + words[idx[l]][i];
      size_t pos = static_cast<size_t>(comp_of[i]) * vars + col;
      key[pos] = static_cast<char>(static_cast<uint8_t>(key[pos]) + 1);
    }
    p.add(key, one);
    int l = genus - 1;
    while (l >= 0 && ++idx[l] == words.size()) idx[l--] = 0;
    if (l < 0) break;
  }
  return p;
}

ConjPoly phi_projection(const ConjPoly& p, int q) {
  require(q >= 2 && p.vars % q == 0, "variable count is not a layer stack");
  ConjPoly out;
  out.comps = p.comps;
  out.vars = p.vars / q;
  for (const auto& [k, c] : p.terms) {
    std::string nk = zero_key(out.comps, out.vars);
    bool alive = true;
    for (int j = 0; j < p.comps && alive; ++j)
      for (int w = 0; w < p.vars; ++w) {
        uint8_t e = static_cast<uint8_t>(k[static_cast<size_t>(j) * p.vars + w]);
        if (!e) continue;
        if (w % q != 0) {
          alive = false;
          break;
        }
        size_t pos = static_cast<size_t>(j) * out.vars + w / q;
        nk[pos] = static_cast<char>(static_cast<uint8_t>(nk[pos]) + e);
      }
    if (alive) out.add(nk, c);
  }
  return out;
}

bool phi_tower_ok(const Code& c, const TwistedSum& ts, const GaloisSetup& gs,
                  std::string* why, size_t cap) {
  ConjPoly two = ccwe_poly(c, ts, gs, 2, cap);
  ConjPoly one = ccwe_poly(c, ts, gs, 1, cap);
  ConjPoly proj = phi_projection(two, c.type->q);
  if (proj == one) return true;
  if (why) *why = "genus reduction does not reproduce the genus-1 enumerator";
  return false;
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

FweVec apply_elem(const ElemTuple& e, const FweVec& f, const TwistedSum& ts,
                  const GaloisSetup& gs, size_t cap) {
  require(f.n == ts.n_len(), "twist length does not match the enumerator");
  const int vars = f.vars;
  std::vector<int> comp_of(f.n);
  for (int i = 0; i < f.n; ++i) comp_of[i] = gs.component_of(ts.a[i]);
  uint64_t outs = 1;
  for (int i = 0; i < f.n; ++i) {
    check_cap(outs <= cap / vars + 1, "dense action exceeds the cap");
    outs *= vars;
  }
  check_cap(f.coeffs.size() <= cap / (outs ? outs : 1),
            "dense action exceeds the cap");

  FweVec out;
  out.n = f.n;
  out.vars = vars;
  for (const auto& [w, c] : f.coeffs) {
    // scatter: coefficient flows to every u with product of entries
    Word u(f.n, 0);
    std::function<void(int, const CycNum&)> rec = [&](int i,
                                                      const CycNum& acc) {
      if (acc.is_zero()) return;
      if (i == f.n) {
        out.add(u, acc);
        return;
      }
      const CycMatrix& M = e.comp[comp_of[i]];
      for (int r = 0; r < vars; ++r) {
        const CycNum& entry = M.at(r, w[i]);
        if (entry.is_zero()) continue;
        u[i] = static_cast<uint8_t>(r);
        rec(i + 1, acc * entry);
      }
      u[i] = 0;
    };
    rec(0, c);
  }
  return out;
}

ConjPoly apply_action(const CWGroup& g, const ElemTuple& e, const ConjPoly& p,
                      size_t cap) {
  const int m_amb = g.gs.m_amb;
  const int comps = p.comps;
  const int V = p.vars;
  ConjPoly out;
  out.comps = comps;
  out.vars = V;

  MonoTuple mt;
  if (tuple_monomial(e, m_amb, &mt)) {
    std::vector<int> all(comps);
    std::iota(all.begin(), all.end(), 0);
    GenSlice s = slice_of(mt, all);
    std::string nk;
    Phase ph;
    for (const auto& [k, c] : p.terms) {
      apply_slice(s, k, comps, V, m_amb, &nk, &ph);
      out.add(nk, c * phase_value(ph, m_amb));
    }
    return out;
  }

  // dense path: substitute each variable by the inverse-image row
  std::vector<std::vector<std::vector<std::pair<int, CycNum>>>> sub(comps);
  for (int j = 0; j < comps; ++j) {
    sub[j].resize(V);
    const CycMatrix& M = e.comp[j];
    for (int w = 0; w < V; ++w)
      for (int u = 0; u < V; ++u) {
        CycNum entry = M.at(u, w).conj();
        if (!entry.is_zero()) sub[j][w].emplace_back(u, entry);
      }
  }
  uint64_t work = 0;
  for (const auto& [k, c] : p.terms) {
    std::vector<std::pair<int, int>> atoms;  // (comp, var), with repetition
    uint64_t combos = 1;
    for (int j = 0; j < comps; ++j)
      for (int w = 0; w < V; ++w) {
        int cnt = static_cast<uint8_t>(k[static_cast<size_t>(j) * V + w]);
        for (int t = 0; t < cnt; ++t) {
          atoms.emplace_back(j, w);
          check_cap(combos <= cap / (sub[j][w].size() + 1) + 1,
                    "dense substitution exceeds the cap");
          combos *= sub[j][w].size();
        }
      }
    work += combos;
    check_cap(work <= cap, "dense substitution exceeds the cap");
    std::string nk = zero_key(comps, V);
    std::function<void(size_t, const CycNum&)> rec = [&](size_t t,
                                                         const CycNum& acc) {
      if (t == atoms.size()) {
        out.add(nk, acc);
        return;
      }
      auto [j, w] = atoms[t];
      for (const auto& [u, entry] : sub[j][w]) {
        size_t pos = static_cast<size_t>(j) * V + u;
        nk[pos] = static_cast<char>(static_cast<uint8_t>(nk[pos]) + 1);
        rec(t + 1, acc * entry);
        nk[pos] = static_cast<char>(static_cast<uint8_t>(nk[pos]) - 1);
      }
    };
    rec(0, c);
  }
  return out;
}

uint64_t poly_rank(const std::vector<ConjPoly>& polys) {
  std::vector<std::map<std::string, CycNum>> rows;
  for (const ConjPoly& p : polys)
    if (!p.terms.empty()) rows.push_back(p.terms);
  uint64_t rank = 0;
  while (!rows.empty()) {
    size_t pick = 0;
    for (size_t i = 1; i < rows.size(); ++i)
      if (rows[i].begin()->first < rows[pick].begin()->first) pick = i;
    std::map<std::string, CycNum> pivot = std::move(rows[pick]);
    rows.erase(rows.begin() + pick);
    ++rank;
    const std::string& key = pivot.begin()->first;
    CycNum inv = pivot.begin()->second.inv();
    std::vector<std::map<std::string, CycNum>> next;
    for (auto& r : rows) {
      auto it = r.find(key);
      if (it != r.end()) {
        CycNum f = it->second * inv;
        for (const auto& [k, c] : pivot) {
          auto jt = r.find(k);
          if (jt == r.end()) {
            CycNum val = -(f * c);
            if (!val.is_zero()) r.emplace(k, val);
          } else {
            jt->second -= f * c;
            if (jt->second.is_zero()) r.erase(jt);
          }
        }
      }
      if (!r.empty()) next.push_back(std::move(r));
    }
    rows = std::move(next);
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Invariance certification
// ---------------------------------------------------------------------------

namespace {

// Decides whether a permutation of column words is additive digitwise.
bool perm_additive(const FieldAlphabet& F, int genus,
                   const std::vector<int>& perm) {
  const int V = static_cast<int>(perm.size());
  const int q = F.q;
  auto add_words = [&](int x, int y) {
    int r = 0, s = 1;
    for (int l = 0; l < genus; ++l) {
      r += F.add((x / s) % q, (y / s) % q) * s;
      s *= q;
    }
    return r;
  };
  for (int x = 0; x < V; ++x)
    for (int y = 0; y < V; ++y)
      if (perm[add_words(x, y)] != add_words(perm[x], perm[y])) return false;
  return true;
}

struct CodeContext {
  const Code* code;
  std::vector<Word> words;
  std::vector<int> pivots;     // pivot columns of the reduced rows
  std::vector<int> free_cols;  // complement
  std::vector<Word> add_basis;
  std::vector<int> comp_of;   // per coordinate
  std::vector<int64_t> lift;  // per coordinate
};

// The transform check: the twisted character sum over the code must vanish
// on every nonzero coset and hit q^{n/2} at the code itself. One scan per
// coset through the pivot-free transversal settles every genus at once.
bool transform_sum_ok(const CodeContext& cc, const GaloisSetup& gs,
                      const TypeRep& t, std::string* why) {
  const FieldAlphabet& F = t.field();
  const int n = cc.code->n;
  const int k = static_cast<int>(cc.code->rows.size());
  const int m_amb = gs.m_amb;
  const int scale = m_amb / gs.f;
  internal_check(n % 2 == 0, "transform check needs even length");
  int64_t target = 1;
  for (int i = 0; i < n / 2; ++i) target *= t.q;

  const size_t free_n = cc.free_cols.size();
  internal_check(static_cast<int>(free_n) == n - k,
                 "transversal has the wrong dimension");
  std::vector<int> digits(free_n, 0);
  Word u(n, 0);
  std::vector<int64_t> tally(m_amb, 0);
  while (true) {
    std::fill(tally.begin(), tally.end(), 0);
    for (const Word& c : cc.words) {
      int64_t e = 0;
      for (int i = 0; i < n; ++i)
        e += cc.lift[i] * t.beta_at(u[i], c[i]);
      tally[mod_norm(e * scale, m_amb)] += 1;
    }
    bool zero_word = true;
    for (int i = 0; i < n; ++i)
      if (u[i]) {
        zero_word = false;
        break;
      }
    CycNum sum;
    for (int e = 0; e < m_amb; ++e)
      if (tally[e])
        sum += CycNum::zeta(m_amb, e).embedded(m_amb) * CycNum(tally[e]);
    CycNum want = zero_word ? CycNum(static_cast<long>(target)) : CycNum();
    if (!(sum == want)) {
      if (why)
        *why = "transform character sum misses its target on a coset of " +
               cc.code->key();
      return false;
    }
    size_t j = 0;
    for (; j < free_n; ++j) {
      digits[j] = (digits[j] + 1) % F.q;
      u[cc.free_cols[j]] = static_cast<uint8_t>(digits[j]);
      if (digits[j] != 0) break;
    }
    if (j == free_n) break;
  }
  return true;
}

}  // namespace

InvarianceReport check_invariance(const std::vector<Code>& codes,
                                  const TwistedSum& ts, const CWGroup& g,
                                  uint64_t direct_cap) {
  InvarianceReport rep;
  rep.codes = codes.size();
  const TypeRep& t = *ts.type;
  const FieldAlphabet& F = t.field();
  const GaloisSetup& gs = g.gs;
  const int m_amb = gs.m_amb;
  const int genus = g.genus;
  const int V = g.v;
  const int q = t.q;
  const int lead = V / q;

  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    if (rep.detail.empty()) rep.detail = msg;
  };

  // classify the generators once
  struct GenInfo {
    enum Kind { kPerm, kDiag, kDense } kind = kDense;
    MonoTuple mono;
    bool lead_only = true;  // diag tables constant on trailing digits
  };
  std::vector<GenInfo> info(g.gens.size());
  for (size_t gi = 0; gi < g.gens.size(); ++gi) {
    GenInfo& in = info[gi];
    if (!tuple_monomial(g.gens[gi], m_amb, &in.mono)) {
      in.kind = GenInfo::kDense;
      internal_check(static_cast<int>(gi) == g.h_index,
                     "unexpected dense generator");
      continue;
    }
    bool pure_perm = true, ident_perm = true;
    for (const MonoComp& c : in.mono.comp) {
      for (int w = 0; w < V; ++w) {
        if (c.perm[w] != w) ident_perm = false;
        if (c.sign[w] != 1 || c.expo[w] != 0) pure_perm = false;
      }
    }
    if (pure_perm) {
      in.kind = GenInfo::kPerm;
      bool same = true;
      for (const MonoComp& c : in.mono.comp)
        if (c.perm != in.mono.comp[0].perm) same = false;
      internal_check(same, "permutation generator differs across components");
      internal_check(perm_additive(F, genus, in.mono.comp[0].perm),
                     "permutation generator is not additive");
    } else if (ident_perm) {
      in.kind = GenInfo::kDiag;
      for (const MonoComp& c : in.mono.comp)
        for (int w = 0; w < V; ++w)
          if (c.expo[w] != c.expo[(w / lead) * lead]) in.lead_only = false;
    } else {
      in.kind = GenInfo::kDense;  // mixed monomial: use the dense fallback
    }
  }

  for (const Code& c : codes) {
    CodeContext cc;
    cc.code = &c;
    cc.words = code_words(c);
    cc.pivots = row_pivots(c.rows);
    for (int i = 0; i < c.n; ++i)
      if (std::find(cc.pivots.begin(), cc.pivots.end(), i) == cc.pivots.end())
        cc.free_cols.push_back(i);
    cc.add_basis = additive_basis(c);
    cc.comp_of.resize(c.n);
    cc.lift.resize(c.n);
    for (int i = 0; i < c.n; ++i) {
      cc.comp_of[i] = gs.component_of(ts.a[i]);
      cc.lift[i] = gs.lifts[cc.comp_of[i]];
    }
    std::vector<int> code_piv = cc.pivots;

    for (size_t gi = 0; gi < g.gens.size(); ++gi) {
      const GenInfo& in = info[gi];
      const std::string& name = g.gen_names[gi];
      ++rep.fwe_checks;
      if (in.kind == GenInfo::kPerm) {
        // additive permutation: stability on the additive basis tuples is
        // stability everywhere
        const std::vector<int>& perm = in.mono.comp[0].perm;
        for (const Word& b : cc.add_basis)
          for (int l = 0; l < genus; ++l) {
            // basis word placed in layer l, zero elsewhere
            int shift = 1;
            for (int ll = genus - 1 - l; ll > 0; --ll) shift *= q;
            Word img(c.n, 0);
            for (int i = 0; i < c.n; ++i)
              img[i] = static_cast<uint8_t>(perm[b[i] * shift]);
            // every layer of the image must lie in the code
            int s = 1;
            for (int ll = 0; ll < genus; ++ll) {
              Word layer(c.n, 0);
              bool ok_layer = true;
              for (int i = 0; i < c.n; ++i)
                layer[i] = static_cast<uint8_t>((img[i] / s) % q);
              ok_layer = word_in_rows(F, c.rows, code_piv, layer);
              if (!ok_layer)
                fail("generator " + name + " moves a tuple off " + c.key());
              s *= q;
            }
          }
      } else if (in.kind == GenInfo::kDiag) {
        if (in.lead_only) {
          // phase depends on the leading layer only: scan the code once
          for (const Word& w : cc.words) {
            int64_t e = 0;
            for (int i = 0; i < c.n; ++i)
              e += in.mono.comp[cc.comp_of[i]].expo[w[i] * lead];
            if (mod_norm(e, m_amb) != 0) {
              fail("generator " + name + " picks up a phase on " + c.key());
              break;
            }
          }
        } else {
          // trailing-layer dependence: the cross table is biadditive in the
          // two leading digits, so additive basis pairs decide everything
          internal_check(genus >= 2, "trailing phase table at genus 1");
          const int second = lead / q;
          for (int j = 0; j < static_cast<int>(gs.units.size()); ++j) {
            const std::vector<int>& ex = in.mono.comp[j].expo;
            for (int x = 0; x < q; ++x)
              for (int xx = 0; xx < q; ++xx)
                for (int y = 0; y < q; ++y) {
                  int lhs = ex[F.add(x, xx) * lead + y * second];
                  int rhs = mod_norm(
                      static_cast<int64_t>(ex[x * lead + y * second]) +
                          ex[xx * lead + y * second],
                      m_amb);
                  if (mod_norm(lhs, m_amb) != rhs)
                    fail("generator " + name +
                         " phase table is not biadditive");
                  lhs = ex[x * lead + F.add(y, xx) * second];
                  rhs = mod_norm(
                      static_cast<int64_t>(ex[x * lead + y * second]) +
                          ex[x * lead + xx * second],
                      m_amb);
                  if (mod_norm(lhs, m_amb) != rhs)
                    fail("generator " + name +
                         " phase table is not biadditive");
                }
            for (int w = 0; w < V; ++w)
              if (ex[w] != ex[(w / second) * second])
                fail("generator " + name + " reads below the second layer");
          }
          for (const Word& b1 : cc.add_basis)
            for (const Word& b2 : cc.add_basis) {
              int64_t e = 0;
              for (int i = 0; i < c.n; ++i)
                e += in.mono.comp[cc.comp_of[i]]
                         .expo[b1[i] * lead + b2[i] * second];
              if (mod_norm(e, m_amb) != 0) {
                fail("generator " + name + " picks up a phase on " + c.key());
                break;
              }
            }
        }
      } else if (static_cast<int>(gi) == g.h_index) {
        std::string why;
        if (!transform_sum_ok(cc, gs, t, &why)) fail(why);
      } else {
        // mixed monomial fallback: walk all column tuples under a cap
        uint64_t tuples = 1;
        bool capped = false;
        for (int l = 0; l < genus; ++l) {
          if (tuples > direct_cap / cc.words.size()) {
            capped = true;
            break;
          }
          tuples *= cc.words.size();
        }
        check_cap(!capped, "mixed generator scan exceeds the cap");
        std::vector<size_t> idx(genus, 0);
        while (true) {
          int64_t e = 0;
          bool inside = true;
          Word img(c.n, 0);
          for (int i = 0; i < c.n && inside; ++i) {
            int col = 0;
            for (int l = 0; l < genus; ++l) col = col * q + cc.words[idx[l]][i];
            const MonoComp& mc = in.mono.comp[cc.comp_of[i]];
            e += mc.expo[col];
            if (mc.sign[col] < 0) inside = false;
            img[i] = static_cast<uint8_t>(mc.perm[col]);
          }
          if (inside) {
            int s = 1;
            for (int l = 0; l < genus; ++l) {
              Word layer(c.n, 0);
              for (int i = 0; i < c.n; ++i)
                layer[i] = static_cast<uint8_t>((img[i] / s) % q);
              if (!word_in_rows(F, c.rows, code_piv, layer)) inside = false;
              s *= q;
            }
          }
          if (!inside || mod_norm(e, m_amb) != 0) {
            fail("generator " + name + " moves " + c.key());
            break;
          }
          int l = genus - 1;
          while (l >= 0 && ++idx[l] == cc.words.size()) idx[l--] = 0;
          if (l < 0) break;
        }
      }
      if (!rep.ok) return rep;
    }

    // The conjugate-component transform differs from the per-coordinate
    // twisted transform by the product of the Galois signs of the twists;
    // the collapsed enumerator absorbs exactly that sign under it.
    int s_eps = 1;
    for (int i = 0; i < c.n; ++i)
      if (gs.eps[cc.comp_of[i]] < 0) s_eps = -s_eps;

    // direct polynomial-side checks where the expansion cost allows
    ConjPoly poly = ccwe_poly(c, ts, gs, genus);
    ConjPoly signed_poly = poly;
    if (s_eps < 0) {
      signed_poly.terms.clear();
      for (const auto& [k, v] : poly.terms) signed_poly.terms.emplace(k, -v);
    }
    const uint64_t D = static_cast<uint64_t>(c.n);
    uint64_t hcost = poly.terms.size();
    bool h_ok_cost = true;
    for (uint64_t i = 0; i < D; ++i) {
      if (hcost > direct_cap / q) {
        h_ok_cost = false;
        break;
      }
      hcost *= q;
    }
    for (size_t gi = 0; gi < g.gens.size(); ++gi) {
      bool dense = static_cast<int>(gi) == g.h_index;
      if (dense && !h_ok_cost) continue;
      ++rep.ccwe_checks;
      ConjPoly moved = apply_action(g, g.gens[gi], poly, direct_cap);
      const ConjPoly& want = dense ? signed_poly : poly;
      if (!(moved == want)) {
        fail("collapsed enumerator of " + c.key() + " moves under " +
             g.gen_names[gi]);
        return rep;
      }
    }

    // matrix-level cross-check on tiny cells
    uint64_t full = 1;
    bool tiny = true;
    for (int i = 0; i < c.n; ++i) {
      if (full > static_cast<uint64_t>(4096 / V)) {
        tiny = false;
        break;
      }
      full *= V;
    }
    if (tiny && full <= 4096) {
      FweVec f = fwe_vec(c, genus);
      FweVec signed_f = f;
      if (s_eps < 0) {
        signed_f.coeffs.clear();
        for (const auto& [w, v] : f.coeffs) signed_f.coeffs.emplace(w, -v);
      }
      for (size_t gi = 0; gi < g.gens.size(); ++gi) {
        FweVec moved = apply_elem(g.gens[gi], f, ts, gs);
        const FweVec& want =
            static_cast<int>(gi) == g.h_index ? signed_f : f;
        if (!(moved == want)) {
          fail("full enumerator of " + c.key() + " moves under " +
               g.gen_names[gi]);
          return rep;
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Invariant dimensions
// ---------------------------------------------------------------------------

namespace {

// Sparse exact elimination over the cyclotomic field; rows are maps from
// column index to value. Returns the rank.
uint64_t sparse_rank(std::vector<std::map<int, CycNum>>& rows) {
  uint64_t rank = 0;
  std::vector<std::map<int, CycNum>> kept;
  for (auto& row : rows) {
    std::map<int, CycNum> r = std::move(row);
    for (const auto& piv : kept) {
      auto it = r.find(piv.begin()->first);
      if (it == r.end()) continue;
      CycNum f = it->second;  // pivots are normalized
      for (const auto& [k, c] : piv) {
        auto jt = r.find(k);
        if (jt == r.end()) {
          CycNum val = -(f * c);
          if (!val.is_zero()) r.emplace(k, val);
        } else {
          jt->second -= f * c;
          if (jt->second.is_zero()) r.erase(jt);
        }
      }
    }
    if (r.empty()) continue;
    CycNum inv = r.begin()->second.inv();
    for (auto& [k, c] : r) c *= inv;
    kept.push_back(std::move(r));
    std::sort(kept.begin(), kept.end(),
              [](const auto& a, const auto& b) {
                return a.begin()->first < b.begin()->first;
              });
    ++rank;
  }
  rows.clear();
  return rank;
}

uint64_t rat_rank(std::vector<std::vector<Rat>> rows) {
  uint64_t rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  size_t r0 = 0;
  for (size_t col = 0; col < cols && r0 < rows.size(); ++col) {
    size_t pivot = r0;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r0], rows[pivot]);
    Rat inv = 1 / rows[r0][col];
    for (size_t c = col; c < cols; ++c) rows[r0][c] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == r0 || rows[r][col] == 0) continue;
      Rat f = rows[r][col];
      for (size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[r0][c];
    }
    ++r0;
    ++rank;
  }
  return rank;
}

int64_t mod_p_pow(int64_t b, int64_t e, int64_t p) { return mod_pow(b, e, p); }

bool is_prime_small(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// smallest prime p > 50 with p = 1 mod m and p not dividing q
int64_t pick_modulus(int m, int q) {
  for (int64_t p = 53;; ++p) {
    if (!is_prime_small(p)) continue;
    if ((p - 1) % m != 0) continue;
    if (q % p == 0) continue;
    return p;
  }
}

int64_t primitive_root(int64_t p) {
  std::vector<int64_t> fac;
  int64_t n = p - 1;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      fac.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fac.push_back(n);
  for (int64_t g0 = 2;; ++g0) {
    bool ok = true;
    for (int64_t f : fac)
      if (mod_p_pow(g0, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g0;
  }
}

int64_t cyc_eval_mod(const CycNum& c, int m_amb, int64_t p, int64_t r) {
  CycNum e = c.embedded(m_amb);
  int64_t acc = 0;
  int64_t rpow = 1;
  for (const Rat& co : e.coeffs()) {
    int64_t num = mpz_fdiv_ui(co.get_num().get_mpz_t(), p);
    int64_t den = mpz_fdiv_ui(co.get_den().get_mpz_t(), p);
    internal_check(den != 0, "denominator vanishes at the chosen modulus");
    acc = (acc + num * mod_inverse(den, p) % p * rpow) % p;
    acc %= p;
    rpow = rpow * r % p;
  }
  return mod_norm(acc, p);
}

uint64_t mod_p_rank(std::vector<std::vector<int64_t>>& m, int64_t p) {
  uint64_t rank = 0;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r0 = 0;
  for (size_t col = 0; col < cols && r0 < rows; ++col) {
    size_t pivot = r0;
    while (pivot < rows && m[pivot][col] % p == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r0], m[pivot]);
    int64_t inv = mod_inverse(mod_norm(m[r0][col], p), p);
    for (size_t c = col; c < cols; ++c)
      m[r0][c] = mod_norm(m[r0][c], p) * inv % p;
    for (size_t r = 0; r < rows; ++r) {
      if (r == r0) continue;
      int64_t f = mod_norm(m[r][col], p);
      if (f == 0) continue;
      for (size_t c = col; c < cols; ++c)
        m[r][c] = mod_norm(m[r][c] - f * m[r0][c], p);
    }
    ++r0;
    ++rank;
  }
  return rank;
}

// The reduced cell: prefiltered monomials, transport orbits, suborbits.
struct OrbitCell {
  int A = 0, V = 0, m_amb = 1, D = 0;
  std::vector<int> active;
  std::vector<std::string> keys;  // sorted
  std::vector<int32_t> orbit_of;
  std::vector<int8_t> psign;
  std::vector<int32_t> pexpo;
  struct Orbit {
    int32_t rep = 0;
    bool bad = false;
    std::vector<int32_t> members;
    std::vector<int32_t> sub_reps;
    std::vector<int64_t> sub_sizes;
  };
  std::vector<Orbit> orbits;
  std::vector<int32_t> row_of;  // orbit id -> consistent row index or -1
  std::vector<int32_t> rows;    // consistent orbit ids

  int32_t find(const std::string& k) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k) return -1;
    return static_cast<int32_t>(it - keys.begin());
  }
};

OrbitCell build_cell(const CWGroup& g, const std::vector<int>& degree,
                     const MonomialPool& pool, const EngineCaps& caps) {
  OrbitCell cell;
  const GaloisSetup& gs = g.gs;
  cell.V = g.v;
  cell.m_amb = gs.m_amb;
  for (size_t j = 0; j < degree.size(); ++j)
    if (degree[j] > 0) cell.active.push_back(static_cast<int>(j));
  cell.A = static_cast<int>(cell.active.size());
  cell.D = std::accumulate(degree.begin(), degree.end(), 0);
  const int A = cell.A, V = cell.V, m_amb = cell.m_amb;

  // diagonal constraints: pool generators that fix every monomial
  std::vector<std::vector<std::vector<int>>> diag_tables;  // [gen][a][w]
  std::vector<GenSlice> gen_slices, h0_slices;
  for (const MonoTuple& mt : pool.gens) {
    GenSlice s = slice_of(mt, cell.active);
    bool ident = true, clean_sign = true;
    for (int a = 0; a < A && ident; ++a)
      for (int w = 0; w < V; ++w) {
        if (s.perm[a][w] != w) {
          ident = false;
          break;
        }
        if (s.sign[a][w] != 1) clean_sign = false;
      }
    if (ident && clean_sign) {
      std::vector<std::vector<int>> tabs;
      for (int a = 0; a < A; ++a) tabs.push_back(s.expo[a]);
      diag_tables.push_back(std::move(tabs));
    }
    gen_slices.push_back(std::move(s));
  }
  for (const MonoTuple& mt : pool.h0_gens)
    h0_slices.push_back(slice_of(mt, cell.active));

  const int T = static_cast<int>(diag_tables.size());

  // per active component: compositions with their partial constraint sums
  struct CompList {
    std::vector<std::vector<uint8_t>> vecs;
    std::vector<std::vector<int>> sig;  // length T, mod m_amb
  };
  std::vector<CompList> lists(A);
  for (int a = 0; a < A; ++a) {
    const int d = degree[cell.active[a]];
    std::vector<uint8_t> buf(V, 0);
    for_compositions(V, d, buf, 0, d, [&](const std::vector<uint8_t>& e) {
      std::vector<int> sig(T, 0);
      for (int t = 0; t < T; ++t) {
        int64_t s = 0;
        for (int w = 0; w < V; ++w)
          if (e[w]) s += static_cast<int64_t>(e[w]) * diag_tables[t][a][w];
        sig[t] = static_cast<int>(mod_norm(s, m_amb));
      }
      lists[a].vecs.push_back(e);
      lists[a].sig.push_back(std::move(sig));
    });
  }

  // bucket the last component by signature, walk the rest in order
  if (A == 0) {
    cell.keys.push_back("");
  } else {
    std::unordered_map<std::string, std::vector<size_t>> bucket;
    auto sig_key = [&](const std::vector<int>& sig) {
      std::string k(T, '\0');
      std::string two;
      for (int t = 0; t < T; ++t) {
        k[t] = static_cast<char>(sig[t] & 0xff);
        two.push_back(static_cast<char>((sig[t] >> 8) & 0xff));
      }
      return k + two;
    };
    const CompList& last = lists[A - 1];
    for (size_t i = 0; i < last.vecs.size(); ++i)
      bucket[sig_key(last.sig[i])].push_back(i);

    std::string key(static_cast<size_t>(A) * V, '\0');
    std::vector<int> partial(T, 0);
    std::function<void(int)> walk = [&](int a) {
      if (a == A - 1) {
        std::vector<int> need(T);
        for (int t = 0; t < T; ++t)
          need[t] = static_cast<int>(mod_norm(-partial[t], m_amb));
        auto it = bucket.find(sig_key(need));
        if (it == bucket.end()) return;
        for (size_t i : it->second) {
          const auto& e = last.vecs[i];
          for (int w = 0; w < V; ++w)
            key[static_cast<size_t>(a) * V + w] = static_cast<char>(e[w]);
          check_cap(cell.keys.size() < caps.survivor_cap,
                    "prefiltered cell exceeds the cap");
          cell.keys.push_back(key);
        }
        return;
      }
      const CompList& cl = lists[a];
      for (size_t i = 0; i < cl.vecs.size(); ++i) {
        for (int w = 0; w < V; ++w)
          key[static_cast<size_t>(a) * V + w] =
              static_cast<char>(cl.vecs[i][w]);
        for (int t = 0; t < T; ++t)
          partial[t] = static_cast<int>(
              mod_norm(partial[t] + cl.sig[i][t], m_amb));
        walk(a + 1);
        for (int t = 0; t < T; ++t)
          partial[t] = static_cast<int>(
              mod_norm(partial[t] - cl.sig[i][t], m_amb));
      }
      for (int w = 0; w < V; ++w) key[static_cast<size_t>(a) * V + w] = 0;
    };
    walk(0);
  }
  internal_check(std::is_sorted(cell.keys.begin(), cell.keys.end()),
                 "prefiltered keys lost their order");

  // transport orbits under the monomial pool
  const size_t N = cell.keys.size();
  cell.orbit_of.assign(N, -1);
  cell.psign.assign(N, 1);
  cell.pexpo.assign(N, 0);
  std::string img;
  Phase ph;
  for (size_t seed = 0; seed < N; ++seed) {
    if (cell.orbit_of[seed] >= 0) continue;
    int32_t oid = static_cast<int32_t>(cell.orbits.size());
    cell.orbits.emplace_back();
    OrbitCell::Orbit& orb = cell.orbits.back();
    orb.rep = static_cast<int32_t>(seed);
    cell.orbit_of[seed] = oid;
    cell.psign[seed] = 1;
    cell.pexpo[seed] = 0;
    std::deque<int32_t> queue{static_cast<int32_t>(seed)};
    orb.members.push_back(static_cast<int32_t>(seed));
    while (!queue.empty()) {
      int32_t cur = queue.front();
      queue.pop_front();
      for (const GenSlice& s : gen_slices) {
        apply_slice(s, cell.keys[cur], A, V, m_amb, &img, &ph);
        int32_t nxt = cell.find(img);
        if (nxt < 0) {
          orb.bad = true;  // image failed the prefilter: orbit projects away
          continue;
        }
        int nsgn = cell.psign[cur] * ph.sign;
        int64_t nexp = mod_norm(cell.pexpo[cur] + ph.expo, m_amb);
        if (cell.orbit_of[nxt] < 0) {
          cell.orbit_of[nxt] = oid;
          cell.psign[nxt] = static_cast<int8_t>(nsgn);
          cell.pexpo[nxt] = static_cast<int32_t>(nexp);
          orb.members.push_back(nxt);
          queue.push_back(nxt);
        } else {
          internal_check(cell.orbit_of[nxt] == oid,
                         "transport orbits are not disjoint");
          if (cell.psign[nxt] != nsgn || cell.pexpo[nxt] != nexp)
            orb.bad = true;
        }
      }
    }
  }

  // suborbits under the conjugation-stable generators, per consistent orbit
  cell.row_of.assign(cell.orbits.size(), -1);
  for (size_t oi = 0; oi < cell.orbits.size(); ++oi) {
    OrbitCell::Orbit& orb = cell.orbits[oi];
    if (orb.bad) continue;
    cell.row_of[oi] = static_cast<int32_t>(cell.rows.size());
    cell.rows.push_back(static_cast<int32_t>(oi));
    std::set<int32_t> left(orb.members.begin(), orb.members.end());
    while (!left.empty()) {
      int32_t rep = *left.begin();
      std::deque<int32_t> queue{rep};
      left.erase(rep);
      int64_t size = 1;
      while (!queue.empty()) {
        int32_t cur = queue.front();
        queue.pop_front();
        for (const GenSlice& s : h0_slices) {
          apply_slice(s, cell.keys[cur], A, V, m_amb, &img, &ph);
          int32_t nxt = cell.find(img);
          internal_check(nxt >= 0 && cell.orbit_of[nxt] ==
                                         static_cast<int32_t>(oi),
                         "suborbit left its orbit");
          if (left.count(nxt)) {
            left.erase(nxt);
            queue.push_back(nxt);
            ++size;
          }
        }
      }
      orb.sub_reps.push_back(rep);
      orb.sub_sizes.push_back(size);
    }
  }
  return cell;
}

// Tally of the transform expansion against the orbit coordinates:
// counts[row][col][e] over exponents mod m_amb.
struct RowTally {
  size_t rows = 0, m_amb = 0;
  std::vector<int64_t> counts;
  int64_t& at(size_t r, size_t c, size_t e) {
    return counts[(r * rows + c) * m_amb + e];
  }
};

RowTally expand_rows(const CWGroup& g, const OrbitCell& cell,
                     const EngineCaps& caps) {
  const TypeRep& t = *g.type;
  const GaloisSetup& gs = g.gs;
  const int q = t.q;
  const int V = cell.V, A = cell.A, m_amb = cell.m_amb;
  const int lead = V / q;
  const int scale = m_amb / gs.f;

  RowTally tally;
  tally.rows = cell.rows.size();
  tally.m_amb = static_cast<size_t>(m_amb);
  tally.counts.assign(tally.rows * tally.rows * m_amb, 0);

  // the transform's prefactor picks up the Galois sign of 1/sqrt(q) once per
  // unit of degree in each conjugate component; constant across the cell
  int s_eps = 1;
  internal_check(!cell.keys.empty(), "expansion on an empty cell");
  for (int a = 0; a < A; ++a) {
    if (gs.eps[cell.active[a]] > 0) continue;
    int dj = 0;
    for (int w = 0; w < V; ++w)
      dj += static_cast<uint8_t>(cell.keys[0][static_cast<size_t>(a) * V + w]);
    if (dj & 1) s_eps = -s_eps;
  }

  // substitution exponent per active component, column word and new digit
  std::vector<std::vector<std::vector<int>>> contrib(A);
  for (int a = 0; a < A; ++a) {
    const int64_t lift = gs.lifts[cell.active[a]];
    contrib[a].assign(V, std::vector<int>(q, 0));
    for (int w = 0; w < V; ++w)
      for (int u1 = 0; u1 < q; ++u1)
        contrib[a][w][u1] = static_cast<int>(mod_norm(
            -static_cast<int64_t>(scale) * lift * t.beta_at(u1, w / lead),
            m_amb));
  }

  uint64_t work = 0;
  std::string key;
  for (size_t ci = 0; ci < cell.rows.size(); ++ci) {
    const OrbitCell::Orbit& orb = cell.orbits[cell.rows[ci]];
    for (size_t si = 0; si < orb.sub_reps.size(); ++si) {
      const int32_t rid = orb.sub_reps[si];
      const int64_t weight = orb.sub_sizes[si];
      const int rep_sign = cell.psign[rid];
      const int rep_expo = cell.pexpo[rid];

      // atoms of the representative monomial
      std::vector<std::pair<int, int>> atoms;  // (a, w)
      const std::string& rk = cell.keys[rid];
      for (int a = 0; a < A; ++a)
        for (int w = 0; w < V; ++w) {
          int cnt = static_cast<uint8_t>(rk[static_cast<size_t>(a) * V + w]);
          for (int x = 0; x < cnt; ++x) atoms.emplace_back(a, w);
        }
      const size_t D = atoms.size();
      uint64_t combos = 1;
      for (size_t i = 0; i < D; ++i) {
        check_cap(combos <= caps.expansion_cap / q,
                  "transform expansion exceeds the cap");
        combos *= q;
      }
      work += combos;
      check_cap(work <= caps.expansion_cap,
                "transform expansion exceeds the cap");

      // odometer over the new leading digits, incremental key and exponent
      std::vector<int> digit(D, 0);
      key.assign(static_cast<size_t>(A) * V, '\0');
      int64_t expo = 0;
      for (size_t i = 0; i < D; ++i) {
        auto [a, w] = atoms[i];
        size_t pos = static_cast<size_t>(a) * V + (w % lead);
        key[pos] = static_cast<char>(static_cast<uint8_t>(key[pos]) + 1);
        expo += contrib[a][w][0];
      }
      while (true) {
        int32_t idx = cell.find(key);
        if (idx >= 0) {
          int32_t oid = cell.orbit_of[idx];
          if (!cell.orbits[oid].bad) {
            size_t row = static_cast<size_t>(cell.row_of[oid]);
            int sgn = rep_sign * cell.psign[idx] * s_eps;
            int64_t e =
                mod_norm(expo + rep_expo - cell.pexpo[idx], m_amb);
            tally.at(row, ci, static_cast<size_t>(e)) +=
                sgn > 0 ? weight : -weight;
          }
        }
        size_t i = 0;
        for (; i < D; ++i) {
          auto [a, w] = atoms[i];
          const int old = digit[i];
          const int nxt = old + 1 == q ? 0 : old + 1;
          size_t opos =
              static_cast<size_t>(a) * V + (old * lead + (w % lead));
          size_t npos =
              static_cast<size_t>(a) * V + (nxt * lead + (w % lead));
          key[opos] = static_cast<char>(static_cast<uint8_t>(key[opos]) - 1);
          key[npos] = static_cast<char>(static_cast<uint8_t>(key[npos]) + 1);
          expo += contrib[a][w][nxt] - contrib[a][w][old];
          digit[i] = nxt;
          if (nxt != 0) break;
        }
        if (i == D) break;
      }
    }
  }
  return tally;
}

}  // namespace

uint64_t invariant_dim(const CWGroup& g, const std::vector<int>& degree,
                       size_t cap) {
  require(degree.size() == g.gs.units.size(),
          "degree vector length must match the unit components");
  const int V = g.v;
  std::vector<std::string> keys = monomials_of_degree(V, degree, cap);
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < keys.size(); ++i)
    index[keys[i]] = static_cast<int>(i);

  std::vector<std::map<int, CycNum>> rows;
  for (size_t gi = 0; gi < g.gens.size(); ++gi) {
    std::unordered_map<int, std::map<int, CycNum>> by_out;
    for (size_t col = 0; col < keys.size(); ++col) {
      ConjPoly mono;
      mono.comps = static_cast<int>(degree.size());
      mono.vars = V;
      mono.add(keys[col], CycNum(1));
      ConjPoly img = apply_action(g, g.gens[gi], mono);
      for (const auto& [k, c] : img.terms) {
        auto it = index.find(k);
        internal_check(it != index.end(),
                       "action left the homogeneous cell");
        by_out[it->second][static_cast<int>(col)] += c;
      }
    }
    for (auto& [out, row] : by_out) {
      row[out] -= CycNum(1);
      for (auto it = row.begin(); it != row.end();)
        it = it->second.is_zero() ? row.erase(it) : std::next(it);
      if (!row.empty()) rows.push_back(std::move(row));
    }
    // the identity must be subtracted even on outputs the action never hits
    for (size_t col = 0; col < keys.size(); ++col)
      if (!by_out.count(static_cast<int>(col))) {
        std::map<int, CycNum> row;
        row[static_cast<int>(col)] = CycNum(-1);
        rows.push_back(std::move(row));
      }
  }
  uint64_t rank = sparse_rank(rows);
  return keys.size() - rank;
}

DimResult invariant_dim_engine(const CWGroup& g,
                               const std::vector<int>& degree,
                               const LowerRowsFn& lower_rows,
                               const EngineCaps& caps) {
  require(degree.size() == g.gs.units.size(),
          "degree vector length must match the unit components");
  DimResult res;
  res.monomials = monomial_count(g.v, degree);
  const int D = std::accumulate(degree.begin(), degree.end(), 0);
  if (D == 0) {
    res.dim = 1;
    res.exact = true;
    res.method = "orbit";
    res.survivors = res.orbits = 1;
    return res;
  }

  MonomialPool pool = monomial_pool(g);
  OrbitCell cell = build_cell(g, degree, pool, caps);
  res.survivors = cell.keys.size();
  res.orbits = cell.rows.size();
  if (cell.rows.empty()) {
    res.dim = 0;
    res.exact = true;
    res.method = "orbit";
    return res;
  }

  RowTally tally = expand_rows(g, cell, caps);
  const int m_amb = cell.m_amb;
  const size_t R = cell.rows.size();

  if (R <= caps.exact_orbit_cap) {
    // exact: nullity of (N - diag(orbit sizes)) over the cyclotomic field
    CycNum inv_sqrt = g.gs.sqrt_q.inv();
    CycNum front(1);
    for (int i = 0; i < D; ++i) front *= inv_sqrt;
    std::vector<std::map<int, CycNum>> rows(R);
    for (size_t r = 0; r < R; ++r) {
      for (size_t c = 0; c < R; ++c) {
        CycNum sum;
        for (int e = 0; e < m_amb; ++e) {
          int64_t cnt = tally.at(r, c, e);
          if (cnt)
            sum += CycNum::zeta(m_amb, e).embedded(m_amb) *
                   CycNum(static_cast<long>(cnt));
        }
        sum *= front;
        if (r == c)
          sum -= CycNum(static_cast<long>(
              cell.orbits[cell.rows[r]].members.size()));
        if (!sum.is_zero()) rows[r][static_cast<int>(c)] = sum;
      }
    }
    uint64_t rank = sparse_rank(rows);
    res.dim = R - rank;
    res.exact = true;
    res.method = "orbit";
    return res;
  }

  // modular upper bound plus certified lower bound
  int64_t p = pick_modulus(m_amb, g.type->q);
  int64_t root = mod_p_pow(primitive_root(p), (p - 1) / m_amb, p);
  int64_t sq = cyc_eval_mod(g.gs.sqrt_q, m_amb, p, root);
  internal_check(sq * sq % p == mod_norm(g.type->q, p),
                 "modular square root evaluation failed");
  int64_t front = mod_inverse(sq, p);
  int64_t frontD = mod_p_pow(front, D, p);
  std::vector<int64_t> zpow(m_amb, 1);
  for (int e = 1; e < m_amb; ++e) zpow[e] = zpow[e - 1] * root % p;
  std::vector<std::vector<int64_t>> m(R, std::vector<int64_t>(R, 0));
  for (size_t r = 0; r < R; ++r)
    for (size_t c = 0; c < R; ++c) {
      int64_t acc = 0;
      for (int e = 0; e < m_amb; ++e) {
        int64_t cnt = mod_norm(tally.at(r, c, e), p);
        acc = (acc + cnt * zpow[e]) % p;
      }
      acc = acc * frontD % p;
      if (r == c)
        acc = mod_norm(
            acc - static_cast<int64_t>(
                      cell.orbits[cell.rows[r]].members.size() % p),
            p);
      m[r][c] = acc;
    }
  uint64_t upper = R - mod_p_rank(m, p);

  check_cap(static_cast<bool>(lower_rows),
            "orbit system too large for exact elimination");
  std::vector<std::string> reps;
  for (int32_t oid : cell.rows)
    reps.push_back(cell.keys[cell.orbits[oid].rep]);
  std::vector<std::vector<Rat>> certified = lower_rows(reps);
  uint64_t lower = rat_rank(std::move(certified));
  check_cap(lower == upper,
            "modular bound and certified rank disagree; cell too large");
  res.dim = upper;
  res.exact = true;
  res.method = "sandwich";
  return res;
}

// ---------------------------------------------------------------------------
// Molien series
// ---------------------------------------------------------------------------

MolienResult molien(const CWGroup& g, const std::vector<int>& caps,
                    size_t closure_cap) {
  require(caps.size() == g.gs.units.size(),
          "cap vector length must match the unit components");
  const int comps = static_cast<int>(caps.size());
  const int v = g.v;
  const int m_amb = g.gs.m_amb;
  std::vector<ElemTuple> closure = group_closure(g, closure_cap);

  MolienResult out;
  out.group_order = closure.size();
  // degree grid, ascending lexicographic
  std::vector<int> d(comps, 0);
  std::function<void(int)> grid = [&](int j) {
    if (j == comps) {
      out.degrees.push_back(d);
      return;
    }
    for (d[j] = 0; d[j] <= caps[j]; ++d[j]) grid(j + 1);
    d[j] = 0;
  };
  grid(0);

  std::vector<CycNum> acc(out.degrees.size());
  for (const ElemTuple& e : closure) {
    // per component: char poly of I - z M, then the truncated inverse series
    std::vector<std::vector<CycNum>> series(comps);
    for (int j = 0; j < comps; ++j) {
      const CycMatrix& M = e.comp[j];
      // Faddeev-LeVerrier: det(lambda I - M) = lambda^v + c1 lambda^{v-1}+..
      std::vector<CycNum> c(v + 1);
      c[0] = CycNum(1);
      CycMatrix B = M;
      for (int k = 1; k <= v; ++k) {
        CycNum tr = B.trace();
        c[k] = -(tr / CycNum(static_cast<long>(k)));
        if (k < v) {
          CycMatrix Bn(v, v, m_amb);
          for (int r = 0; r < v; ++r)
            for (int s = 0; s < v; ++s) {
              CycNum x = B.at(r, s);
              if (r == s) x += c[k];
              Bn.set(r, s, x);
            }
          B = M.mul(Bn);
        }
      }
      // det(I - z M) has the same coefficients in ascending powers of z
      const int cap = caps[j];
      std::vector<CycNum>& s = series[j];
      s.assign(cap + 1, CycNum());
      s[0] = CycNum(1);
      for (int nn = 1; nn <= cap; ++nn) {
        CycNum x;
        for (int k = 1; k <= std::min(nn, v); ++k) x -= c[k] * s[nn - k];
        s[nn] = x;
      }
    }
    for (size_t i = 0; i < out.degrees.size(); ++i) {
      CycNum term(1);
      for (int j = 0; j < comps; ++j) term *= series[j][out.degrees[i][j]];
      acc[i] += term;
    }
  }
  const CycNum order(static_cast<long>(closure.size()));
  for (size_t i = 0; i < out.degrees.size(); ++i) {
    CycNum avg = acc[i] / order;
    internal_check(avg.is_rational(), "series coefficient is irrational");
    Rat r = avg.to_rational();
    internal_check(r.get_den() == 1 && r >= 0,
                   "series coefficient is not a nonnegative integer");
    out.coefficients.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// verify_main and the demonstration
// ---------------------------------------------------------------------------

std::string VerifyMainReport::to_string() const {
  std::ostringstream os;
  os << "type " << type_name << " a ";
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << " genus " << genus << "\n";
  os << "degree (";
  for (size_t i = 0; i < degree.size(); ++i)
    os << (i ? "," : "") << degree[i];
  os << ") monomials " << monomial_count << "\n";
  if (refused) {
    os << "refused: " << refusal_reason << "\n";
  } else {
    os << "classes " << classes << " rank " << rank << " invariant-dim "
       << dim.dim << " (" << dim.method << (dim.exact ? ", exact" : ", bound")
       << ")\n";
  }
  os << "verdict " << verdict << "\n";
  return os.str();
}

VerifyMainReport verify_main(const TwistedSum& ts, int genus, size_t enum_cap,
                             size_t class_cap) {
  VerifyMainReport rep;
  rep.type_name = ts.type->name;
  rep.a = ts.a;
  rep.genus = genus;
  GaloisSetup gs = galois_setup(*ts.type);
  rep.degree = degree_vector(ts);
  const int vars = pow_int(ts.type->q, genus);
  rep.monomial_count = cwe::monomial_count(vars, rep.degree);

  if (!sign_condition(ts, gs)) {
    rep.refused = true;
    rep.refusal_reason =
        "sign condition fails: the twist signs multiply to -1, so the "
        "transform cannot fix any enumerator of this degree";
    rep.verdict = "REFUSED";
    return rep;
  }

  std::vector<CodeClass> classes = classify_codes(ts, {}, class_cap);
  rep.classes = classes.size();
  CWGroup g = group_for(ts.type, gs, genus);

  std::vector<Code> reps;
  for (const CodeClass& c : classes) reps.push_back(c.rep);
  InvarianceReport inv = check_invariance(reps, ts, g);

  std::vector<ConjPoly> polys;
  for (const Code& c : reps) polys.push_back(ccwe_poly(c, ts, gs, genus, enum_cap));
  rep.rank = poly_rank(polys);

  LowerRowsFn lower = [&](const std::vector<std::string>& rep_keys) {
    std::vector<std::vector<Rat>> rows;
    for (const ConjPoly& p : polys) {
      std::vector<Rat> row;
      for (const std::string& k : rep_keys) {
        CycNum c = p.coeff(k);
        internal_check(c.is_rational(), "enumerator coefficient irrational");
        row.push_back(c.to_rational());
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  rep.dim = invariant_dim_engine(g, rep.degree, lower);

  bool pass = inv.ok && rep.dim.exact && rep.rank == rep.dim.dim;
  rep.verdict = pass ? "PASS" : "FAIL";
  if (!inv.ok && rep.refusal_reason.empty()) rep.refusal_reason = inv.detail;
  return rep;
}

bool DemoReport::ok() const {
  return !sign_condition_holds && codes_found == 0 &&
         invariant_dimension == 1 && fixed_by_perm_and_diag &&
         transform_negates && collapse_nonzero && collapse_invariant;
}

std::string DemoReport::to_string() const {
  std::ostringstream os;
  os << "sign condition holds: " << (sign_condition_holds ? "yes" : "no")
     << "\n";
  os << "codes of this type: " << codes_found << "\n";
  os << "invariant dimension at (1,3,0,0): " << invariant_dimension << "\n";
  os << "scale and weight generators fix the vector: "
     << (fixed_by_perm_and_diag ? "yes" : "no") << "\n";
  os << "transform negates the vector: " << (transform_negates ? "yes" : "no")
     << "\n";
  os << "collapsed image nonzero: " << (collapse_nonzero ? "yes" : "no")
     << "\n";
  os << "collapsed image invariant: " << (collapse_invariant ? "yes" : "no")
     << "\n";
  os << "overall: " << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

DemoReport counterexample_demo() {
  DemoReport rep;
  // plain bilinear pairing on F_5 with the squaring weight map only
  std::vector<int> beta(25);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) beta[x * 5 + y] = (x * y) % 5;
  auto type = std::make_shared<TypeRep>(
      make_type("F5-plain", 5, 5, std::move(beta), {}));
  internal_check(validate(*type).ok(), "demonstration type fails validation");
  TwistedSum ts = make_twisted_sum(type, {1, 2, 2, 2});
  GaloisSetup gs = galois_setup(*type);

  rep.sign_condition_holds = sign_condition(ts, gs);
  rep.codes_found = enumerate_codes(ts).size();

  CWGroup g = group_for(type, gs, 1);
  rep.invariant_dimension = invariant_dim_engine(g, degree_vector(ts)).dim;

  // the anti-invariant: 4 at the origin, -1 on the isotropic vectors
  FweVec sigma;
  sigma.n = 4;
  sigma.vars = 5;
  sigma.add(Word{0, 0, 0, 0}, CycNum(4));
  for (int v1 = 0; v1 < 5; ++v1)
    for (int v2 = 0; v2 < 5; ++v2)
      for (int v3 = 0; v3 < 5; ++v3)
        for (int v4 = 0; v4 < 5; ++v4) {
          if (!v1 && !v2 && !v3 && !v4) continue;
          int qf = (v1 * v1 + 2 * (v2 * v2 + v3 * v3 + v4 * v4)) % 5;
          if (qf == 0)
            sigma.add(Word{static_cast<uint8_t>(v1), static_cast<uint8_t>(v2),
                           static_cast<uint8_t>(v3), static_cast<uint8_t>(v4)},
                      CycNum(-1));
        }

  rep.fixed_by_perm_and_diag = true;
  rep.transform_negates = true;
  for (size_t gi = 0; gi < g.gens.size(); ++gi) {
    if (static_cast<int>(gi) == g.h_index) {
      // the per-coordinate twisted transform: strip the Galois signs the
      // conjugate components carry
      ElemTuple tw;
      for (size_t j = 0; j < g.gens[gi].comp.size(); ++j) {
        CycNum s(static_cast<long>(gs.eps[j]));
        tw.comp.push_back(g.gens[gi].comp[j].scaled(s));
      }
      FweVec moved = apply_elem(tw, sigma, ts, gs);
      FweVec neg;
      neg.n = sigma.n;
      neg.vars = sigma.vars;
      for (const auto& [w, c] : sigma.coeffs) neg.add(w, -c);
      if (!(moved == neg)) rep.transform_negates = false;
    } else {
      FweVec moved = apply_elem(g.gens[gi], sigma, ts, gs);
      if (!(moved == sigma)) rep.fixed_by_perm_and_diag = false;
    }
  }
  ConjPoly collapsed = sigma_poly(sigma, ts, gs);
  rep.collapse_nonzero = !collapsed.is_zero();
  rep.collapse_invariant = true;
  for (const ElemTuple& e : g.gens)
    if (!(apply_action(g, e, collapsed) == collapsed))
      rep.collapse_invariant = false;
  return rep;
}

}  // namespace cwe
