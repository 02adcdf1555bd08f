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

#include "cwe/schurweyl.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "cwe/cyclo.hpp"
#include "cwe/fields.hpp"
#include "cwe/util.hpp"

namespace cwe {
namespace {

// Reduced-row membership test (rows in echelon form).
bool in_code(const FieldAlphabet& F, const Code& c,
             const std::vector<int>& piv, Word w) {
  for (size_t r = 0; r < c.rows.size(); ++r) {
    int s = w[piv[r]];
    if (s == 0) continue;
    for (size_t i = 0; i < w.size(); ++i)
      w[i] = static_cast<uint8_t>(F.sub(w[i], F.mul(s, c.rows[r][i])));
  }
  for (uint8_t x : w)
    if (x) return false;
  return true;
}

std::vector<int> pivots_of(const Code& c) {
  std::vector<int> piv;
  for (const Word& r : c.rows) {
    int p = 0;
    while (p < static_cast<int>(r.size()) && r[p] == 0) ++p;
    piv.push_back(p);
  }
  return piv;
}

// Sparse exact elimination; rows are maps column -> value. Returns rank.
uint64_t sparse_rank_cyc(std::vector<std::map<int64_t, CycNum>>& rows) {
  uint64_t rank = 0;
  std::vector<std::map<int64_t, CycNum>> kept;
  for (auto& row : rows) {
    std::map<int64_t, CycNum> r = std::move(row);
    for (const auto& piv : kept) {
      auto it = r.find(piv.begin()->first);
      if (it == r.end()) continue;
      CycNum f = it->second;
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
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      return a.begin()->first < b.begin()->first;
    });
    ++rank;
  }
  rows.clear();
  return rank;
}

}  // namespace

Endo code_to_endo(const Code& c, int m, size_t cap) {
  require(m >= 1, "genus must be positive");
  require(c.n % 2 == 0, "code length must be even");
  const int N = c.n / 2;
  const int q = c.type->q;
  const FieldAlphabet& F = c.type->field();
  int64_t vars = 1;
  for (int i = 0; i < m; ++i) vars *= q;
  int64_t dim = 1;
  for (int i = 0; i < N; ++i) {
    dim *= vars;
    check_cap(dim <= static_cast<int64_t>(cap),
              "tensor power dimension exceeds the cap");
  }
  std::vector<int> piv = pivots_of(c);

  Endo out;
  out.dim = static_cast<int>(dim);
  out.slots = N;
  out.vars = static_cast<int>(vars);
  out.entries.assign(static_cast<size_t>(dim) * dim, 0);
  std::vector<int> ud(N), wd(N);
  Word concat(c.n, 0);
  for (int64_t u = 0; u < dim; ++u) {
    int64_t x = u;
    for (int t = N - 1; t >= 0; --t) {
      ud[t] = static_cast<int>(x % vars);
      x /= vars;
    }
    for (int64_t w = 0; w < dim; ++w) {
      int64_t y = w;
      for (int t = N - 1; t >= 0; --t) {
        wd[t] = static_cast<int>(y % vars);
        y /= vars;
      }
      // every layer of the concatenated pair must be a codeword
      bool all = true;
      int shift = static_cast<int>(vars) / q;  // leading layer first
      for (int k = 0; k < m && all; ++k) {
        for (int t = 0; t < N; ++t) {
          concat[t] = static_cast<uint8_t>((ud[t] / shift) % q);
          concat[N + t] = static_cast<uint8_t>((wd[t] / shift) % q);
        }
        if (!in_code(F, c, piv, concat)) all = false;
        shift /= q;
      }
      if (all)
        out.entries[static_cast<size_t>(u) * dim + w] = 1;
    }
  }
  return out;
}

uint64_t commutant_dim(const CWGroup& g, int N, size_t pair_cap) {
  require(N >= 0, "tensor power must be nonnegative");
  if (N == 0) return 1;
  const int V = g.v;
  const int m_amb = g.gs.m_amb;
  int64_t dim = 1;
  for (int i = 0; i < N; ++i) {
    dim *= V;
    check_cap(dim * dim <= static_cast<int64_t>(pair_cap),
              "matrix space exceeds the pair cap");
  }
  const int64_t P = dim * dim;

  // split the generators acting on the base column space
  struct Mono {
    std::vector<int> perm, sign, expo;
  };
  std::vector<Mono> monos;
  std::vector<const CycMatrix*> dense;
  for (const ElemTuple& e : g.gens) {
    Mono mc;
    if (e.comp[0].monomial_parts(&mc.perm, &mc.sign, &mc.expo))
      monos.push_back(std::move(mc));
    else
      dense.push_back(&e.comp[0]);
  }

  auto pair_digits = [&](int64_t p, std::vector<int>* rd,
                         std::vector<int>* cd) {
    int64_t r = p / dim, c = p % dim;
    for (int t = N - 1; t >= 0; --t) {
      (*rd)[t] = static_cast<int>(r % V);
      r /= V;
      (*cd)[t] = static_cast<int>(c % V);
      c /= V;
    }
  };

  // transport orbits of matrix units under conjugation by the monomials:
  // g E_{rc} g^dagger = s_r s_c zeta^{e_r - e_c} E_{perm r, perm c}
  std::vector<int32_t> orbit_of(P, -1);
  std::vector<int8_t> psign(P, 1);
  std::vector<int32_t> pexpo(P, 0);
  struct Orbit {
    int64_t rep = 0;
    bool bad = false;
  };
  std::vector<Orbit> orbits;
  std::vector<int> rd(N), cd(N);
  for (int64_t seed = 0; seed < P; ++seed) {
    if (orbit_of[seed] >= 0) continue;
    int32_t oid = static_cast<int32_t>(orbits.size());
    orbits.push_back({seed, false});
    orbit_of[seed] = oid;
    psign[seed] = 1;
    pexpo[seed] = 0;
    std::deque<int64_t> queue{seed};
    while (!queue.empty()) {
      int64_t cur = queue.front();
      queue.pop_front();
      pair_digits(cur, &rd, &cd);
      for (const Mono& mc : monos) {
        int64_t nr = 0, nc = 0;
        int sgn = 1;
        int64_t ex = 0;
        for (int t = 0; t < N; ++t) {
          nr = nr * V + mc.perm[rd[t]];
          nc = nc * V + mc.perm[cd[t]];
          sgn *= mc.sign[rd[t]] * mc.sign[cd[t]];
          ex += mc.expo[rd[t]] - mc.expo[cd[t]];
        }
        int64_t nxt = nr * dim + nc;
        int nsgn = psign[cur] * sgn;
        int64_t nexp = mod_norm(pexpo[cur] + ex, m_amb);
        if (orbit_of[nxt] < 0) {
          orbit_of[nxt] = oid;
          psign[nxt] = static_cast<int8_t>(nsgn);
          pexpo[nxt] = static_cast<int32_t>(nexp);
          queue.push_back(nxt);
        } else {
          internal_check(orbit_of[nxt] == oid,
                         "matrix unit orbits are not disjoint");
          if (psign[nxt] != nsgn || pexpo[nxt] != nexp)
            orbits[oid].bad = true;
        }
      }
    }
  }
  std::vector<int32_t> col_of(orbits.size(), -1);
  int32_t ncols = 0;
  for (size_t i = 0; i < orbits.size(); ++i)
    if (!orbits[i].bad) col_of[i] = ncols++;
  if (ncols == 0) return 0;

  // commutator rows of each dense generator, rewritten in orbit coordinates
  std::vector<std::map<int64_t, CycNum>> rows;
  for (const CycMatrix* Hp : dense) {
    const CycMatrix& H = *Hp;
    // sparse rows and columns of the base matrix
    std::vector<std::vector<std::pair<int, CycNum>>> hrow(V), hcol(V);
    for (int r = 0; r < V; ++r)
      for (int c = 0; c < V; ++c) {
        const CycNum& x = H.at(r, c);
        if (!x.is_zero()) {
          hrow[r].emplace_back(c, x);
          hcol[c].emplace_back(r, x);
        }
      }
    std::vector<int> kd(N);
    for (int64_t p = 0; p < P; ++p) {
      pair_digits(p, &rd, &cd);
      const int64_t i = p / dim, j = p % dim;
      std::map<int64_t, CycNum> row;
      auto put = [&](int64_t coord, const CycNum& coef) {
        int32_t oid = orbit_of[coord];
        if (orbits[oid].bad) return;
        // X_coord = phi(coord) * X_rep
        CycNum phi =
            CycNum::zeta(m_amb, pexpo[coord]).embedded(m_amb);
        if (psign[coord] < 0) phi = -phi;
        CycNum val = coef * phi;
        int64_t col = col_of[oid];
        auto it = row.find(col);
        if (it == row.end()) {
          if (!val.is_zero()) row.emplace(col, val);
        } else {
          it->second += val;
          if (it->second.is_zero()) row.erase(it);
        }
      };
      // sum_k H_{ik} X_{kj}: k ranges over tensor products of row supports
      std::function<void(int, int64_t, const CycNum&)> reck =
          [&](int t, int64_t k, const CycNum& acc) {
            if (t == N) {
              put(k * dim + j, acc);
              return;
            }
            for (const auto& [kk, x] : hrow[rd[t]])
              reck(t + 1, k * V + kk, acc * x);
          };
      reck(0, 0, CycNum(1));
      // minus sum_k X_{ik} H_{kj}
      std::function<void(int, int64_t, const CycNum&)> reck2 =
          [&](int t, int64_t k, const CycNum& acc) {
            if (t == N) {
              put(i * dim + k, -acc);
              return;
            }
            for (const auto& [kk, x] : hcol[cd[t]])
              reck2(t + 1, k * V + kk, acc * x);
          };
      reck2(0, 0, CycNum(1));
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  uint64_t rank = sparse_rank_cyc(rows);
  return static_cast<uint64_t>(ncols) - rank;
}

std::string SchurWeylReport::to_string() const {
  std::ostringstream os;
  os << "type " << type_name << " genus " << m << " power " << N << "\n";
  os << "codes " << t_N << " span " << span_dim << " commutant " << commutant
     << "\n";
  os << "commutation " << (commute_ok ? "exact" : "BROKEN") << " basis "
     << (basis ? "yes" : "no") << "\n";
  os << "verdict " << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

SchurWeylReport verify_schurweyl(const std::shared_ptr<const TypeRep>& t,
                                 int m, int N, size_t enum_cap) {
  SchurWeylReport rep;
  rep.type_name = t->name;
  rep.m = m;
  rep.N = N;
  GaloisSetup gs = galois_setup(*t);
  std::vector<int64_t> a;
  for (int i = 0; i < N; ++i) a.push_back(1);
  for (int i = 0; i < N; ++i) a.push_back(-1);
  TwistedSum ts = make_twisted_sum(t, a);
  std::vector<Code> codes = enumerate_codes(ts, enum_cap);
  rep.t_N = codes.size();

  CWGroup g = group_for(t, gs, m);
  std::vector<Endo> mats;
  for (const Code& c : codes) mats.push_back(code_to_endo(c, m));

  // (a) exact commutation of every code matrix with every tensor power
  rep.commute_ok = true;
  const int V = g.v;
  int64_t dim = mats.empty() ? 0 : mats[0].dim;
  for (const ElemTuple& e : g.gens) {
    const CycMatrix& G0 = e.comp[0];
    // sparse rows of the base matrix
    std::vector<std::vector<std::pair<int, CycNum>>> grow(V);
    for (int r = 0; r < V; ++r)
      for (int c = 0; c < V; ++c)
        if (!G0.at(r, c).is_zero()) grow[r].emplace_back(c, G0.at(r, c));
    for (const Endo& M : mats) {
      // compare row i of G^N * M with row i of M * G^N
      std::vector<int> id(N), kd(N);
      for (int64_t i = 0; i < dim && rep.commute_ok; ++i) {
        int64_t x = i;
        for (int tt = N - 1; tt >= 0; --tt) {
          id[tt] = static_cast<int>(x % V);
          x /= V;
        }
        std::vector<CycNum> lhs(dim), rhs(dim);
        // (G M)_{ij} = sum_k G_{ik} M_{kj}
        std::function<void(int, int64_t, const CycNum&)> rec =
            [&](int tt, int64_t k, const CycNum& acc) {
              if (tt == N) {
                const uint8_t* mrow =
                    &M.entries[static_cast<size_t>(k) * dim];
                for (int64_t j = 0; j < dim; ++j)
                  if (mrow[j]) lhs[j] += acc;
                return;
              }
              for (const auto& [kk, v] : grow[id[tt]])
                rec(tt + 1, k * V + kk, acc * v);
            };
        rec(0, 0, CycNum(1));
        // (M G)_{ij} = sum_k M_{ik} G_{kj}: scatter row i of M through G
        const uint8_t* mrow = &M.entries[static_cast<size_t>(i) * dim];
        for (int64_t k = 0; k < dim; ++k) {
          if (!mrow[k]) continue;
          int64_t y = k;
          for (int tt = N - 1; tt >= 0; --tt) {
            kd[tt] = static_cast<int>(y % V);
            y /= V;
          }
          std::function<void(int, int64_t, const CycNum&)> rec2 =
              [&](int tt, int64_t j, const CycNum& acc) {
                if (tt == N) {
                  rhs[j] += acc;
                  return;
                }
                for (const auto& [jj, v] : grow[kd[tt]])
                  rec2(tt + 1, j * V + jj, acc * v);
              };
          rec2(0, 0, CycNum(1));
        }
        for (int64_t j = 0; j < dim; ++j)
          if (!(lhs[j] == rhs[j])) {
            rep.commute_ok = false;
            break;
          }
      }
      if (!rep.commute_ok) break;
    }
    if (!rep.commute_ok) break;
  }

  // (b) span of the code matrices, exact rational rank
  {
    std::vector<std::map<int64_t, CycNum>> rows;
    for (const Endo& M : mats) {
      std::map<int64_t, CycNum> row;
      for (size_t i = 0; i < M.entries.size(); ++i)
        if (M.entries[i]) row.emplace(static_cast<int64_t>(i), CycNum(1));
      if (!row.empty()) rows.push_back(std::move(row));
    }
    rep.span_dim = sparse_rank_cyc(rows);
  }

  rep.commutant = commutant_dim(g, N);
  rep.basis = m >= N && rep.span_dim == rep.t_N;
  return rep;
}

}  // namespace cwe
