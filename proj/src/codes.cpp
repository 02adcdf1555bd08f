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

#include "cwe/codes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cwe/util.hpp"

namespace cwe {

namespace {

size_t pow_size(int q, int n) {
  size_t s = 1;
  for (int i = 0; i < n; ++i) {
    check_cap(s <= (size_t(1) << 60) / q, "word space exceeds the index cap");
    s *= q;
  }
  return s;
}

Word word_of_index(size_t idx, int q, int n) {
  Word w(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    w[i] = static_cast<uint8_t>(idx % q);
    idx /= q;
  }
  return w;
}

size_t index_of_word(const Word& w, int q) {
  size_t idx = 0;
  for (uint8_t d : w) idx = idx * q + d;
  return idx;
}

Word scale_word(const FieldAlphabet& F, int s, const Word& w) {
  Word out(w.size());
  for (size_t i = 0; i < w.size(); ++i)
    out[i] = static_cast<uint8_t>(F.mul(s, w[i]));
  return out;
}

// w -= c * r
void sub_scaled(const FieldAlphabet& F, Word& w, int c, const Word& r) {
  if (c == 0) return;
  for (size_t i = 0; i < w.size(); ++i)
    w[i] = static_cast<uint8_t>(F.sub(w[i], F.mul(c, r[i])));
}

bool is_zero_word(const Word& w) {
  for (uint8_t d : w)
    if (d != 0) return false;
  return true;
}

int leading_pos(const Word& w) {
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) return static_cast<int>(i);
  return -1;
}

std::vector<int> pivot_cols(const std::vector<Word>& rows) {
  std::vector<int> p;
  p.reserve(rows.size());
  for (const Word& r : rows) p.push_back(leading_pos(r));
  return p;
}

uint64_t factorial(int k) {
  uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// One isotropy flag per word index: every scalar pair of the word is
// null under the twisted pairing and every weight table kills every
// scalar multiple. Exactly the conditions a full code imposes on each
// of its lines, so the flag is both necessary for membership in some
// code and sufficient for the echelon-chain extension step.
std::vector<uint8_t> isotropy_flags(const TwistedSum& ts) {
  const TypeRep& t = *ts.type;
  const FieldAlphabet& F = t.field();
  const int q = t.q;
  const int n = ts.n_len();
  const size_t space = pow_size(q, n);
  check_cap(space <= (size_t(1) << 24), "word space too large to flag");

  std::vector<uint8_t> flags(space, 0);
  for (size_t idx = 0; idx < space; ++idx) {
    Word w = word_of_index(idx, q, n);
    bool ok = true;
    for (int s = 1; s < q && ok; ++s) {
      Word sw = scale_word(F, s, w);
      for (int s2 = s; s2 < q && ok; ++s2) {
        Word s2w = scale_word(F, s2, w);
        if (pairing_val(t, ts.a, sw, s2w) != 0) ok = false;
      }
      for (const auto& table : t.dgens) {
        if (psi_val(t, ts.a, table, sw) != 0) {
          ok = false;
          break;
        }
      }
    }
    flags[idx] = ok ? 1 : 0;
  }
  return flags;
}

bool word_in_span(const FieldAlphabet& F, const std::vector<Word>& rows,
                  const Word& w) {
  Word r = w;
  for (const Word& row : rows) {
    int p = leading_pos(row);
    if (p >= 0 && r[p] != 0) sub_scaled(F, r, r[p], row);
  }
  return is_zero_word(r);
}

}  // namespace

std::string Code::key() const {
  std::string k = std::to_string(n) + ":" + std::to_string(dim()) + ":";
  for (const Word& r : rows)
    for (uint8_t d : r) k.push_back(static_cast<char>('0' + d));
  return k;
}

std::vector<Word> rref(const FieldAlphabet& F, std::vector<Word> rows) {
  if (rows.empty()) return rows;
  const size_t n = rows[0].size();
  size_t r = 0;
  for (size_t col = 0; col < n && r < rows.size(); ++col) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    int inv = F.inv(rows[r][col]);
    for (auto& x : rows[r]) x = static_cast<uint8_t>(F.mul(inv, x));
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      sub_scaled(F, rows[i], rows[i][col], rows[r]);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

Code make_code(std::shared_ptr<const TypeRep> type, int n,
               const std::vector<Word>& rows) {
  require(type != nullptr, "code needs a type");
  require(n >= 1, "code length must be positive");
  for (const Word& r : rows) {
    require(static_cast<int>(r.size()) == n, "generator length mismatch");
    for (uint8_t d : r)
      require(d < type->q, "generator symbol out of range");
  }
  Code c;
  c.type = std::move(type);
  c.n = n;
  c.rows = rref(c.type->field(), rows);
  return c;
}

std::vector<Word> code_words(const Code& c, size_t cap) {
  const FieldAlphabet& F = c.type->field();
  const int k = c.dim();
  size_t total = pow_size(c.type->q, k);
  check_cap(total <= cap, "codeword listing exceeds the cap");
  std::vector<Word> out;
  out.reserve(total);
  for (size_t idx = 0; idx < total; ++idx) {
    Word w(c.n, 0);
    size_t rest = idx;
    for (int j = k - 1; j >= 0; --j) {
      int coef = static_cast<int>(rest % c.type->q);
      rest /= c.type->q;
      if (coef != 0)
        for (int i = 0; i < c.n; ++i)
          w[i] = static_cast<uint8_t>(
              F.add(w[i], F.mul(coef, c.rows[j][i])));
    }
    out.push_back(std::move(w));
  }
  return out;
}

int pairing_val(const TypeRep& t, const std::vector<int64_t>& a, const Word& x,
                const Word& y) {
  internal_check(x.size() == a.size() && y.size() == a.size(),
                 "pairing length mismatch");
  int64_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i)
    acc += mod_norm(a[i], t.f) * t.beta_at(x[i], y[i]);
  return static_cast<int>(mod_norm(acc, t.f));
}

int psi_val(const TypeRep& t, const std::vector<int64_t>& a,
            const std::vector<int>& table, const Word& x) {
  internal_check(x.size() == a.size(), "weight length mismatch");
  int64_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i)
    acc += mod_norm(a[i], t.f) * table[x[i]];
  return static_cast<int>(mod_norm(acc, t.f));
}

Code dual_code(const Code& c, const std::vector<int64_t>& a) {
  const TypeRep& t = *c.type;
  const FieldAlphabet& F = t.field();
  require(static_cast<int>(a.size()) == c.n, "twist length mismatch");
  const int p = F.p, e = F.e, n = c.n;

  // Scale the pairing into the prime field: all values must lie in the
  // order-p (or trivial) subgroup of (1/f)Z / Z.
  int g = t.f;
  for (int v : t.beta) g = std::gcd(g, v);
  int order = t.f / g;
  require(order == 1 || order == p,
          "pairing does not reduce to the prime field");

  // Constraint rows over F_p. The words of c form an F_p space spanned by
  // the prime-basis multiples of the generators, and the pairing is
  // additive in each slot, so those multiples carry all the constraints.
  std::vector<std::vector<int>> sys;
  if (order == p) {
    for (const Word& gen : c.rows) {
      for (int d = 0; d < e; ++d) {
        int basis = 1;
        for (int j = 0; j < d; ++j) basis *= p;
        Word gc = scale_word(F, basis, gen);
        std::vector<int> row(n * e, 0);
        for (int i = 0; i < n; ++i) {
          int ai = static_cast<int>(mod_norm(a[i], t.f) % p);
          for (int dd = 0; dd < e; ++dd) {
            int bs = 1;
            for (int j = 0; j < dd; ++j) bs *= p;
            int val = t.beta_at(bs, gc[i]) / g;
            row[i * e + dd] = (ai * val) % p;
          }
        }
        sys.push_back(std::move(row));
      }
    }
  }

  // Row reduce over Z/p and read off the nullspace.
  const int cols = n * e;
  size_t rank = 0;
  std::vector<int> pivot_of(cols, -1);
  for (int col = 0; col < cols && rank < sys.size(); ++col) {
    size_t piv = rank;
    while (piv < sys.size() && sys[piv][col] == 0) ++piv;
    if (piv == sys.size()) continue;
    std::swap(sys[rank], sys[piv]);
    int64_t inv = mod_inverse(sys[rank][col], p);
    for (auto& x : sys[rank]) x = static_cast<int>((x * inv) % p);
    for (size_t i = 0; i < sys.size(); ++i) {
      if (i == rank || sys[i][col] == 0) continue;
      int f0 = sys[i][col];
      for (int j = 0; j < cols; ++j)
        sys[i][j] = static_cast<int>(
            mod_norm(sys[i][j] - int64_t(f0) * sys[rank][j], p));
    }
    pivot_of[col] = static_cast<int>(rank);
    ++rank;
  }

  std::vector<Word> basis_words;
  for (int freec = 0; freec < cols; ++freec) {
    if (pivot_of[freec] >= 0) continue;
    std::vector<int> v(cols, 0);
    v[freec] = 1;
    for (int col = 0; col < cols; ++col)
      if (pivot_of[col] >= 0)
        v[col] = static_cast<int>(mod_norm(-sys[pivot_of[col]][freec], p));
    Word w(n, 0);
    for (int i = 0; i < n; ++i) {
      int sym = 0, bs = 1;
      for (int d = 0; d < e; ++d) {
        sym += v[i * e + d] * bs;
        bs *= p;
      }
      w[i] = static_cast<uint8_t>(sym);
    }
    basis_words.push_back(std::move(w));
  }

  Code dual = make_code(c.type, n, basis_words);
  // The dual must itself be linear over the alphabet, otherwise the
  // echelon representation would overcount it.
  size_t nullity_p = cols - rank;
  internal_check(static_cast<size_t>(dual.dim()) * e == nullity_p,
                 "dual is not linear over the alphabet");
  for (const Word& dr : dual.rows)
    for (const Word& gen : c.rows)
      internal_check(pairing_val(t, a, dr, gen) == 0,
                     "dual row fails the pairing");
  return dual;
}

bool is_type_code(const Code& c, const TwistedSum& ts, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (c.type.get() != ts.type.get() && c.type->name != ts.type->name)
    return fail("type mismatch");
  if (c.n != ts.n_len()) return fail("length does not match the twist");
  Code dual = dual_code(c, ts.a);
  if (dual.key() != c.key()) return fail("not self-dual under the pairing");
  std::vector<Word> words = code_words(c);
  for (const Word& w : words)
    for (const auto& table : c.type->dgens)
      if (psi_val(*c.type, ts.a, table, w) != 0)
        return fail("a weight table does not vanish on the code");
  if (why) why->clear();
  return true;
}

Code t_code(std::shared_ptr<const TypeRep> type, int N) {
  require(N >= 1, "diagonal code needs positive block length");
  std::vector<Word> rows;
  for (int i = 0; i < N; ++i) {
    Word r(2 * N, 0);
    r[i] = 1;
    r[N + i] = 1;
    rows.push_back(std::move(r));
  }
  return make_code(std::move(type), 2 * N, rows);
}

Code double_code(const Code& c0) {
  std::vector<int64_t> ones(c0.n, 1);
  Code dual = dual_code(c0, ones);
  std::vector<Word> rows;
  for (const Word& d : dual.rows) {
    Word r(2 * c0.n, 0);
    for (int i = 0; i < c0.n; ++i) r[i] = r[c0.n + i] = d[i];
    rows.push_back(std::move(r));
  }
  for (const Word& cr : c0.rows) {
    Word r(2 * c0.n, 0);
    for (int i = 0; i < c0.n; ++i) r[c0.n + i] = cr[i];
    rows.push_back(std::move(r));
  }
  return make_code(c0.type, 2 * c0.n, rows);
}

namespace {

struct ChainState {
  std::vector<Word> rows;
  std::vector<int> pivots;
};

// Candidate section for extending an isotropic chain: the part of the
// twisted dual vanishing on the pivot columns of the current rows.
std::vector<Word> candidate_section(const Code& c,
                                    const std::vector<int64_t>& a) {
  const FieldAlphabet& F = c.type->field();
  Code dual = dual_code(c, a);
  std::vector<int> piv = pivot_cols(c.rows);
  std::vector<Word> reduced;
  for (Word dr : dual.rows) {
    for (size_t j = 0; j < c.rows.size(); ++j)
      if (dr[piv[j]] != 0) sub_scaled(F, dr, dr[piv[j]], c.rows[j]);
    if (!is_zero_word(dr)) reduced.push_back(std::move(dr));
  }
  std::vector<Word> section = rref(F, reduced);
  internal_check(static_cast<int>(section.size()) ==
                     c.n - 2 * c.dim(),
                 "candidate section has the wrong dimension");
  return section;
}

void enumerate_dfs(const TwistedSum& ts, const std::vector<uint8_t>& flags,
                   ChainState& st, size_t& work, size_t cap,
                   std::vector<Code>& out) {
  const TypeRep& t = *ts.type;
  const FieldAlphabet& F = t.field();
  const int q = t.q;
  const int n = ts.n_len();
  const int k = static_cast<int>(st.rows.size());
  if (2 * k == n) {
    out.push_back(make_code(ts.type, n, st.rows));
    internal_check(out.back().key() ==
                       Code{ts.type, n, st.rows}.key(),
                   "chain rows drifted from echelon form");
    return;
  }

  Code cur;
  cur.type = ts.type;
  cur.n = n;
  cur.rows = st.rows;
  std::vector<Word> section = candidate_section(cur, ts.a);
  const int dim = static_cast<int>(section.size());
  const int last_pivot = st.pivots.empty() ? -1 : st.pivots.back();

  // A combo of echelon section rows has the pivot of its first nonzero
  // coefficient row as leading position, with that coefficient as leading
  // symbol. So normalized candidates are exactly: coefficient 1 on some
  // row j0, zero before it, free after it.
  std::vector<int> sec_piv = pivot_cols(section);
  for (int j0 = 0; j0 < dim; ++j0) {
    const int p = sec_piv[j0];
    if (p <= last_pivot) continue;
    // Chains must be prefixes of the final echelon rows, otherwise a code
    // is reached once per filtration: existing rows may not touch the new
    // pivot column.
    bool clean = true;
    for (const Word& r : st.rows)
      if (r[p] != 0) {
        clean = false;
        break;
      }
    if (!clean) continue;

    const int free_dim = dim - 1 - j0;
    Word x = section[j0];
    std::vector<int> coef(free_dim, 0);
    while (true) {
      check_cap(++work <= cap, "enumeration exceeds the work cap");
      if (flags[index_of_word(x, q)]) {
        ChainState next;
        next.rows = st.rows;
        next.rows.push_back(x);
        next.pivots = st.pivots;
        next.pivots.push_back(p);
        enumerate_dfs(ts, flags, next, work, cap, out);
      }
      int j = 0;
      for (; j < free_dim; ++j) {
        const Word& add = section[j0 + 1 + j];
        const int cur = coef[j];
        const int nxt = cur + 1 == q ? 0 : cur + 1;
        const int delta = F.sub(nxt, cur);  // symbols are field scalars
        for (int i = 0; i < n; ++i)
          x[i] = static_cast<uint8_t>(F.add(x[i], F.mul(delta, add[i])));
        coef[j] = nxt;
        if (nxt != 0) break;
      }
      if (j == free_dim) break;
    }
  }
}

}  // namespace

std::vector<Code> enumerate_codes(const TwistedSum& ts, size_t cap) {
  require(ts.type != nullptr, "enumeration needs a type");
  ValidationReport rep = validate(*ts.type);
  require(rep.ok(), "type fails validation:\n" + rep.to_string());
  const int n = ts.n_len();
  require(n >= 1, "twist must be nonempty");
  std::vector<Code> out;
  if (n % 2 != 0) return out;

  std::vector<uint8_t> flags = isotropy_flags(ts);
  ChainState root;
  size_t work = 0;
  enumerate_dfs(ts, flags, root, work, cap, out);
  std::sort(out.begin(), out.end(),
            [](const Code& a, const Code& b) { return a.key() < b.key(); });
  return out;
}

Code neighbor(const Code& c, const TwistedSum& ts, const Word& x) {
  const TypeRep& t = *c.type;
  const FieldAlphabet& F = t.field();
  require(static_cast<int>(x.size()) == c.n, "neighbor word length mismatch");
  require(!word_in_span(F, c.rows, x), "neighbor word already in the code");
  for (int s = 1; s < t.q; ++s) {
    Word sx = scale_word(F, s, x);
    for (int s2 = s; s2 < t.q; ++s2)
      require(pairing_val(t, ts.a, sx, scale_word(F, s2, x)) == 0,
              "neighbor word is not isotropic");
    for (const auto& table : t.dgens)
      require(psi_val(t, ts.a, table, sx) == 0,
              "neighbor word is not weight-clean");
  }

  // Perp of the whole line through x; the kernel of a single pairing
  // functional need not be linear over the alphabet.
  std::vector<Word> scaled;
  for (int s = 1; s < t.q; ++s) scaled.push_back(scale_word(F, s, x));
  std::vector<Word> kept;
  for (const Word& w : code_words(c)) {
    bool perp = true;
    for (const Word& sx : scaled)
      if (pairing_val(t, ts.a, w, sx) != 0) {
        perp = false;
        break;
      }
    if (perp) kept.push_back(w);
  }
  std::vector<Word> kept_rows = rref(F, kept);
  internal_check(pow_size(t.q, static_cast<int>(kept_rows.size())) ==
                     kept.size(),
                 "line-perp inside the code is not alphabet-linear");
  internal_check(static_cast<int>(kept_rows.size()) == c.dim() - 1,
                 "line-perp has the wrong dimension");
  kept_rows.push_back(x);
  Code nb = make_code(c.type, c.n, kept_rows);
  internal_check(nb.dim() == c.dim(), "neighbor changed the dimension");
  return nb;
}

std::vector<std::vector<int>> twist_blocks(const TwistedSum& ts) {
  std::vector<int64_t> vals;
  for (int64_t ai : ts.a) vals.push_back(mod_norm(ai, ts.type->f));
  std::vector<int64_t> distinct = vals;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  std::vector<std::vector<int>> blocks;
  for (int64_t v : distinct) {
    std::vector<int> pos;
    for (size_t i = 0; i < vals.size(); ++i)
      if (vals[i] == v) pos.push_back(static_cast<int>(i));
    blocks.push_back(std::move(pos));
  }
  return blocks;
}

CanonicalInfo canonical_info(const Code& c, const TwistedSum& ts) {
  require(c.n == ts.n_len(), "twist length mismatch");
  std::vector<std::vector<int>> blocks = twist_blocks(ts);

  uint64_t group = 1;
  for (const auto& b : blocks) group *= factorial(static_cast<int>(b.size()));
  check_cap(group <= 2000000, "block permutation group too large");

  // All permutations of each block, ascending lexicographic.
  std::vector<std::vector<std::vector<int>>> block_perms;
  for (const auto& b : blocks) {
    std::vector<int> perm = b;
    std::vector<std::vector<int>> all;
    std::sort(perm.begin(), perm.end());
    do {
      all.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    block_perms.push_back(std::move(all));
  }

  const std::string self_key = c.key();
  CanonicalInfo info;
  info.group_order = group;
  info.key = self_key;
  info.aut_order = 0;

  std::vector<size_t> odo(blocks.size(), 0);
  std::vector<int> colmap(c.n, 0);
  while (true) {
    for (size_t bi = 0; bi < blocks.size(); ++bi)
      for (size_t j = 0; j < blocks[bi].size(); ++j)
        colmap[blocks[bi][j]] = block_perms[bi][odo[bi]][j];
    std::vector<Word> prows;
    prows.reserve(c.rows.size());
    for (const Word& r : c.rows) {
      Word pr(c.n, 0);
      for (int i = 0; i < c.n; ++i) pr[colmap[i]] = r[i];
      prows.push_back(std::move(pr));
    }
    Code pc = make_code(c.type, c.n, prows);
    std::string k = pc.key();
    if (k < info.key) info.key = k;
    if (k == self_key) ++info.aut_order;

    size_t bi = 0;
    while (bi < odo.size() && ++odo[bi] == block_perms[bi].size()) {
      odo[bi] = 0;
      ++bi;
    }
    if (bi == odo.size()) break;
  }
  internal_check(info.aut_order >= 1, "identity permutation not counted");
  return info;
}

bool equivalent(const Code& a, const Code& b, const TwistedSum& ts) {
  if (a.n != b.n || a.dim() != b.dim()) return false;
  return canonical_info(a, ts).key == canonical_info(b, ts).key;
}

std::vector<CodeClass> classify_codes(const TwistedSum& ts,
                                      const std::vector<Code>& extra_seeds,
                                      size_t cap) {
  require(ts.type != nullptr, "classification needs a type");
  ValidationReport rep = validate(*ts.type);
  require(rep.ok(), "type fails validation:\n" + rep.to_string());
  const TypeRep& t = *ts.type;
  const int q = t.q;
  const int n = ts.n_len();
  require(n >= 2 && n % 2 == 0, "classification needs even positive length");

  std::vector<Code> seeds;
  {
    Code t0 = t_code(ts.type, n / 2);
    std::string why;
    if (is_type_code(t0, ts, &why)) seeds.push_back(std::move(t0));
  }
  for (const Code& s : extra_seeds) {
    std::string why;
    require(is_type_code(s, ts, &why), "seed is not a valid code: " + why);
    seeds.push_back(s);
  }
  require(!seeds.empty(),
          "no valid seed: the diagonal code fails for this twist");

  std::vector<uint8_t> flags = isotropy_flags(ts);
  const size_t space = flags.size();

  std::map<std::string, CanonicalInfo> canon_cache;
  auto canonical = [&](const Code& c) -> const CanonicalInfo& {
    auto it = canon_cache.find(c.key());
    if (it == canon_cache.end())
      it = canon_cache.emplace(c.key(), canonical_info(c, ts)).first;
    return it->second;
  };

  std::vector<CodeClass> classes;
  std::map<std::string, size_t> class_of;
  std::vector<size_t> queue;
  auto add_class = [&](const Code& c) -> size_t {
    const CanonicalInfo& info = canonical(c);
    auto it = class_of.find(info.key);
    if (it != class_of.end()) return it->second;
    std::string why;
    internal_check(is_type_code(c, ts, &why),
                   "walk reached an invalid code: " + why);
    CodeClass cls;
    cls.rep = c;
    cls.aut_order = info.aut_order;
    cls.decomposable = is_decomposable(c, ts);
    cls.found_order = classes.size();
    classes.push_back(std::move(cls));
    class_of.emplace(info.key, classes.size() - 1);
    queue.push_back(classes.size() - 1);
    return classes.size() - 1;
  };

  for (const Code& s : seeds) add_class(s);

  size_t work = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Code rep_code = classes[queue[qi]].rep;
    std::unordered_set<size_t> members;
    for (const Word& w : code_words(rep_code))
      members.insert(index_of_word(w, q));
    std::set<std::string> seen_neighbors;
    for (size_t idx = 0; idx < space; ++idx) {
      if (!flags[idx] || members.count(idx)) continue;
      check_cap(++work <= cap, "classification exceeds the work cap");
      Word x = word_of_index(idx, q, n);
      Code nb = neighbor(rep_code, ts, x);
      if (!seen_neighbors.insert(nb.key()).second) continue;
      add_class(nb);
    }
  }
  return classes;
}

MassCheck mass_check(const std::vector<CodeClass>& classes,
                     const TwistedSum& ts) {
  MassCheck mc;
  mc.class_sum = make_rat(0, 1);
  std::vector<std::vector<int>> blocks = twist_blocks(ts);
  mc.group_order = 1;
  for (const auto& b : blocks)
    mc.group_order *= factorial(static_cast<int>(b.size()));
  for (const CodeClass& c : classes) {
    internal_check(c.aut_order >= 1, "class with empty stabilizer");
    mc.class_sum += make_rat(1, static_cast<int64_t>(c.aut_order));
  }
  mc.predicted_total = mc.class_sum * make_rat(
      static_cast<int64_t>(mc.group_order), 1);
  return mc;
}

bool is_decomposable(const Code& c, const TwistedSum& ts) {
  require(ts.n_len() == c.n, "twist length does not match the code");
  if (c.dim() == 0) return false;
  std::vector<Word> words = code_words(c, 200000);
  std::set<uint32_t> masks;
  for (const Word& w : words) {
    if (is_zero_word(w)) continue;
    uint32_t m = 0;
    for (int i = 0; i < c.n; ++i)
      if (w[i] != 0) m |= (uint32_t(1) << i);
    masks.insert(m);
  }
  // Supports of minimal-support words generate the finest coordinate
  // partition over which the code splits as a direct sum.
  std::vector<uint32_t> minimal;
  for (uint32_t m : masks) {
    bool is_min = true;
    for (uint32_t m2 : masks) {
      if (m2 != m && (m2 & ~m) == 0) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(m);
  }
  std::vector<int> parent(c.n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (uint32_t m : minimal) {
    int first = -1;
    for (int i = 0; i < c.n; ++i) {
      if (!(m & (uint32_t(1) << i))) continue;
      if (first < 0)
        first = i;
      else
        parent[find(i)] = find(first);
    }
  }
  std::map<int, std::vector<int>> comp_coords;
  for (int i = 0; i < c.n; ++i) comp_coords[find(i)].push_back(i);
  if (comp_coords.size() < 2) return false;
  // A split only counts when both parts are again codes of the same shape:
  // the twist entries of each part must pair off under negation, so the
  // part sits on a balanced cell after block permutation.  An all-plus /
  // all-minus split (a self-dual base doubled, say) does not decompose.
  int f = ts.type->f;
  std::vector<std::map<int64_t, int>> sigs;
  for (const auto& [root, coords] : comp_coords) {
    std::map<int64_t, int> s;
    for (int i : coords) ++s[ts.a[i]];
    sigs.push_back(std::move(s));
  }
  int k = static_cast<int>(sigs.size());
  check_cap(k <= 20, "too many support components");
  auto balanced = [&](const std::map<int64_t, int>& s) {
    for (const auto& [u, cnt] : s) {
      int64_t nu = f == 1 ? 0 : (f - u) % f;
      auto it = s.find(nu);
      if (it == s.end() || it->second != cnt) return false;
    }
    return true;
  };
  for (uint32_t sub = 1; sub + 1 < (uint32_t(1) << k); ++sub) {
    std::map<int64_t, int> left, right;
    for (int j = 0; j < k; ++j) {
      auto& dst = ((sub >> j) & 1) ? left : right;
      for (const auto& [u, cnt] : sigs[j]) dst[u] += cnt;
    }
    if (balanced(left) && balanced(right)) return true;
  }
  return false;
}

std::vector<std::vector<uint8_t>> orthogonal_matrices(int q, int N,
                                                      bool ones_filter,
                                                      size_t cap) {
  require(N >= 1 && N <= 6, "matrix size out of range");
  const FieldAlphabet& F = FieldAlphabet::get(q);
  const size_t space = pow_size(q, N);

  std::vector<std::vector<uint8_t>> out;
  std::vector<Word> rows;
  size_t work = 0;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(rows.size()) == N) {
      std::vector<uint8_t> flat;
      for (const Word& r : rows) flat.insert(flat.end(), r.begin(), r.end());
      out.push_back(std::move(flat));
      return;
    }
    for (size_t idx = 0; idx < space; ++idx) {
      check_cap(++work <= cap, "matrix search exceeds the work cap");
      Word w = word_of_index(idx, q, N);
      int dot = 0, sum = 0;
      for (int i = 0; i < N; ++i) {
        dot = F.add(dot, F.mul(w[i], w[i]));
        sum = F.add(sum, w[i]);
      }
      if (dot != 1) continue;
      if (ones_filter && sum != 1) continue;
      bool ortho = true;
      for (const Word& r : rows) {
        int d2 = 0;
        for (int i = 0; i < N; ++i) d2 = F.add(d2, F.mul(w[i], r[i]));
        if (d2 != 0) {
          ortho = false;
          break;
        }
      }
      if (!ortho) continue;
      rows.push_back(w);
      rec();
      rows.pop_back();
    }
  };
  rec();
  return out;
}

size_t double_coset_count(const std::vector<std::vector<uint8_t>>& mats,
                          int N) {
  require(N >= 1 && N <= 6, "matrix size out of range");
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p(N);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  check_cap(mats.size() * perms.size() * perms.size() <= 200000000,
            "double coset search exceeds the work cap");
  std::set<std::string> keys;
  for (const auto& m : mats) {
    std::string best;
    for (const auto& rp : perms) {
      for (const auto& cp : perms) {
        std::string k(N * N, 0);
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            k[i * N + j] = static_cast<char>('0' + m[rp[i] * N + cp[j]]);
        if (best.empty() || k < best) best = std::move(k);
      }
    }
    keys.insert(best);
  }
  return keys.size();
}

void write_code_file(const Code& c, const TwistedSum& ts, std::ostream& out) {
  require(c.n == ts.n_len(), "twist length mismatch");
  out << "type=" << c.type->name << " a=";
  for (size_t i = 0; i < ts.a.size(); ++i) {
    if (i) out << ",";
    out << mod_norm(ts.a[i], c.type->f);
  }
  out << " N=" << c.n << "\n";
  for (const Word& r : c.rows) {
    for (uint8_t d : r) out << static_cast<char>('0' + d);
    out << "\n";
  }
}

CodeFile read_code_file(std::istream& in) {
  CodeFile cf;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty code file");
  std::vector<std::string> toks = split_ws(trim(line));
  require(toks.size() == 3, "code file header needs type, twist and length");
  for (const std::string& tok : toks) {
    size_t eq = tok.find('=');
    require(eq != std::string::npos, "malformed header field: " + tok);
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "type") {
      cf.type_name = val;
    } else if (key == "a") {
      std::stringstream ss(val);
      std::string piece;
      while (std::getline(ss, piece, ','))
        cf.a.push_back(std::stoll(trim(piece)));
    } else if (key == "N") {
      cf.n = std::stoi(val);
    } else {
      require(false, "unknown header field: " + key);
    }
  }
  require(!cf.type_name.empty(), "code file header lacks a type");
  require(cf.n >= 1, "code file header lacks a positive length");
  require(static_cast<int>(cf.a.size()) == cf.n,
          "twist length does not match the declared length");
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    require(static_cast<int>(line.size()) == cf.n,
            "generator row has the wrong length");
    Word w;
    for (char ch : line) {
      require(ch >= '0' && ch <= '9', "generator rows must be digits");
      w.push_back(static_cast<uint8_t>(ch - '0'));
    }
    cf.rows.push_back(std::move(w));
  }
  return cf;
}

}  // namespace cwe
