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

#include "cwe/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cwe {

namespace {

// Exact division of integer polynomials, divisor monic. Ascending coeffs.
std::vector<int64_t> poly_div_exact(std::vector<int64_t> num,
                                    const std::vector<int64_t>& den) {
  internal_check(!den.empty() && den.back() == 1, "divisor must be monic");
  int dn = static_cast<int>(num.size()) - 1;
  int dd = static_cast<int>(den.size()) - 1;
  internal_check(dn >= dd, "division underflow");
  std::vector<int64_t> quot(dn - dd + 1, 0);
  for (int k = dn - dd; k >= 0; --k) {
    int64_t c = num[k + dd];
    quot[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (int64_t c : num) internal_check(c == 0, "non-exact polynomial division");
  return quot;
}

std::map<int, std::vector<int64_t>>& cyclo_cache() {
  static std::map<int, std::vector<int64_t>> cache;
  return cache;
}
std::mutex cyclo_mutex;

const std::vector<int64_t>& cyclotomic_poly_locked(int m) {
  auto& cache = cyclo_cache();
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<int64_t> poly;
  if (m == 1) {
    poly = {-1, 1};
  } else {
    poly.assign(m + 1, 0);
    poly[0] = -1;
    poly[m] = 1;  // x^m - 1
    for (int d = 1; d < m; ++d)
      if (m % d == 0) poly = poly_div_exact(poly, cyclotomic_poly_locked(d));
  }
  internal_check(static_cast<int>(poly.size()) == euler_phi(m) + 1,
                 "cyclotomic degree mismatch");
  return cache.emplace(m, std::move(poly)).first->second;
}

// Reduction rows for one conductor: red[k] expands z^k (0 <= k < m) over the
// power basis of degree phi(m).
struct CycloTable {
  int m = 1;
  int deg = 1;
  std::vector<std::vector<int64_t>> red;
};

const CycloTable& table_for(int m) {
  static std::map<int, std::unique_ptr<CycloTable>> cache;
  std::lock_guard<std::mutex> lock(cyclo_mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return *it->second;

  auto t = std::make_unique<CycloTable>();
  t->m = m;
  const auto& phi_poly = cyclotomic_poly_locked(m);
  int deg = static_cast<int>(phi_poly.size()) - 1;
  t->deg = deg;
  t->red.assign(m, std::vector<int64_t>(deg, 0));
  for (int k = 0; k < deg; ++k) t->red[k][k] = 1;
  if (deg < m) {
    for (int j = 0; j < deg; ++j) t->red[deg][j] = -phi_poly[j];
    for (int k = deg + 1; k < m; ++k) {
      const auto& prev = t->red[k - 1];
      auto& row = t->red[k];
      int64_t top = prev[deg - 1];
      for (int j = deg - 1; j >= 1; --j) row[j] = prev[j - 1] + top * t->red[deg][j];
      row[0] = top * t->red[deg][0];
    }
  }
  return *cache.emplace(m, std::move(t)).first->second;
}

int valid_conductor(int m) {
  require(m >= 1 && m <= 10000, "conductor out of range");
  return m;
}

}  // namespace

const std::vector<int64_t>& cyclotomic_poly(int m) {
  valid_conductor(m);
  std::lock_guard<std::mutex> lock(cyclo_mutex);
  return cyclotomic_poly_locked(m);
}

void CycNum::reduce_tail(std::vector<Rat>& raw) const {
  // raw: exponent-indexed, any length; fold mod m, then expand z^k for
  // k >= phi(m) using the table rows. Result replaces raw, length phi(m).
  const CycloTable& t = table_for(m_);
  std::vector<Rat> folded(t.m, Rat(0));
  for (size_t k = 0; k < raw.size(); ++k) {
    if (raw[k] != 0) folded[k % t.m] += raw[k];
  }
  std::vector<Rat> out(t.deg, Rat(0));
  for (int k = 0; k < t.m; ++k) {
    if (folded[k] == 0) continue;
    if (k < t.deg) {
      out[k] += folded[k];
    } else {
      const auto& row = t.red[k];
      for (int j = 0; j < t.deg; ++j)
        if (row[j] != 0) out[j] += folded[k] * Rat(static_cast<long>(row[j]));
    }
  }
  raw = std::move(out);
}

CycNum CycNum::zeta(int m, int64_t k) {
  valid_conductor(m);
  CycNum z;
  z.m_ = m;
  std::vector<Rat> raw(static_cast<size_t>(mod_norm(k, m)) + 1, Rat(0));
  raw[static_cast<size_t>(mod_norm(k, m))] = 1;
  z.reduce_tail(raw);
  z.c_ = std::move(raw);
  return z;
}

CycNum CycNum::from_coeffs(int m, std::vector<Rat> coeffs) {
  valid_conductor(m);
  CycNum z;
  z.m_ = m;
  require(static_cast<int>(coeffs.size()) == euler_phi(m),
          "coefficient vector length must equal phi(m)");
  z.c_ = std::move(coeffs);
  return z;
}

bool CycNum::is_zero() const {
  for (const Rat& r : c_)
    if (r != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return false;
  return true;
}

Rat CycNum::to_rational() const {
  require(is_rational(), "value is irrational");
  return c_[0];
}

CycNum CycNum::embedded(int M) const {
  valid_conductor(M);
  require(M % m_ == 0, "embedding target must be a multiple of the conductor");
  if (M == m_) return *this;
  CycNum z;
  z.m_ = M;
  int stride = M / m_;
  std::vector<Rat> raw(static_cast<size_t>(c_.size() - 1) * stride + 1, Rat(0));
  for (size_t k = 0; k < c_.size(); ++k) raw[k * stride] = c_[k];
  z.reduce_tail(raw);
  z.c_ = std::move(raw);
  return z;
}

CycNum CycNum::galois(int64_t a) const {
  a = mod_norm(a, m_);
  if (m_ == 1) return *this;
  require(std::gcd(a, static_cast<int64_t>(m_)) == 1,
          "Galois exponent must be coprime to the conductor");
  CycNum z;
  z.m_ = m_;
  std::vector<Rat> raw(m_, Rat(0));
  for (size_t k = 0; k < c_.size(); ++k)
    raw[static_cast<size_t>(mod_mul(static_cast<int64_t>(k), a, m_))] += c_[k];
  z.reduce_tail(raw);
  z.c_ = std::move(raw);
  return z;
}

CycNum CycNum::conj() const { return galois(m_ - 1 == 0 ? 0 : m_ - 1); }

CycNum CycNum::operator-() const {
  CycNum z = *this;
  for (Rat& r : z.c_) r = -r;
  return z;
}

CycNum& CycNum::scale(const Rat& r) {
  for (Rat& c : c_) c *= r;
  return *this;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  if (m_ != o.m_) {
    int M = std::lcm(m_, o.m_);
    *this = embedded(M);
    return *this += o.embedded(M);
  }
  for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  if (m_ != o.m_) {
    int M = std::lcm(m_, o.m_);
    *this = embedded(M);
    return *this -= o.embedded(M);
  }
  for (size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  if (m_ != o.m_) {
    int M = std::lcm(m_, o.m_);
    *this = embedded(M);
    return *this *= o.embedded(M);
  }
  if (o.is_rational()) return scale(o.c_[0]);
  if (is_rational()) {
    Rat r = c_[0];
    *this = o;
    return scale(r);
  }
  std::vector<Rat> raw(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      raw[i + j] += c_[i] * o.c_[j];
    }
  }
  reduce_tail(raw);
  c_ = std::move(raw);
  return *this;
}

CycNum CycNum::inv() const {
  require(!is_zero(), "division by zero");
  if (is_rational()) {
    CycNum z = *this;
    z.c_[0] = Rat(1) / c_[0];
    return z;
  }
  // Extended Euclid in Q[x] against the cyclotomic polynomial, which is
  // irreducible, so the gcd is a nonzero constant.
  const auto& phi_poly = cyclotomic_poly(m_);
  std::vector<Rat> r0(phi_poly.size());
  for (size_t j = 0; j < phi_poly.size(); ++j)
    r0[j] = Rat(static_cast<long>(phi_poly[j]));
  std::vector<Rat> r1 = c_;
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<Rat> s0 = {Rat(0)}, s1 = {Rat(1)};  // coeffs of *this

  auto deg = [](const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; };
  auto trimmed = [](std::vector<Rat> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
  };
  while (deg(r1) > 0) {
    // r0 = q*r1 + r2
    std::vector<Rat> rem = r0;
    std::vector<Rat> q(std::max<int>(deg(r0) - deg(r1) + 1, 0), Rat(0));
    for (int k = deg(rem) - deg(r1); k >= 0; --k) {
      Rat c = rem[k + deg(r1)] / r1.back();
      q[k] = c;
      if (c == 0) continue;
      for (int j = 0; j <= deg(r1); ++j) rem[k + j] -= c * r1[j];
    }
    rem = trimmed(std::move(rem));
    // s2 = s0 - q*s1
    std::vector<Rat> s2(std::max(s0.size(), q.size() + s1.size() - 1), Rat(0));
    for (size_t j = 0; j < s0.size(); ++j) s2[j] = s0[j];
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = trimmed(std::move(s2));
  }
  internal_check(!r1.empty(), "gcd vanished for nonzero element");
  Rat g = r1[0];
  std::vector<Rat> raw = s1;
  for (Rat& c : raw) c /= g;
  CycNum z;
  z.m_ = m_;
  z.reduce_tail(raw);
  z.c_ = std::move(raw);
  return z;
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inv(); }

bool CycNum::operator==(const CycNum& o) const {
  if (m_ == o.m_) return c_ == o.c_;
  int M = std::lcm(m_, o.m_);
  return embedded(M).c_ == o.embedded(M).c_;
}

std::string CycNum::str() const {
  std::ostringstream out;
  bool first = true;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    Rat c = c_[j];
    if (first) {
      if (sgn(c) < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    out << rat_str(c);
    if (j > 0) out << "*z^" << j;
    first = false;
  }
  if (first) return "0";
  return out.str();
}

std::string CycNum::str_tagged() const {
  return "m=" + std::to_string(m_) + "; " + str();
}

CycNum CycNum::parse(int m, const std::string& body) {
  valid_conductor(m);
  std::vector<Rat> raw(std::max(m, 1), Rat(0));
  std::string s = trim(body);
  require(!s.empty(), "empty cyclotomic literal");
  size_t i = 0;
  int sign = 1;
  if (s[0] == '-') {
    sign = -1;
    i = 1;
  } else if (s[0] == '+') {
    i = 1;
  }
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
           s[j] != '+' && s[j] != '-')
      ++j;
    std::string term = s.substr(i, j - i);
    require(!term.empty(), "malformed cyclotomic literal: " + body);
    Rat coeff(1);
    int64_t expo = 0;
    size_t star = term.find('*');
    std::string coeff_part, z_part;
    if (star != std::string::npos) {
      coeff_part = term.substr(0, star);
      z_part = term.substr(star + 1);
    } else if (term[0] == 'z') {
      z_part = term;
    } else {
      coeff_part = term;
    }
    if (!coeff_part.empty()) coeff = rat_parse(coeff_part);
    if (!z_part.empty()) {
      require(z_part.size() >= 3 && z_part[0] == 'z' && z_part[1] == '^',
              "malformed power term: " + term);
      expo = std::stoll(z_part.substr(2));
      require(expo >= 0, "negative exponent in literal");
    }
    raw[static_cast<size_t>(expo % m)] += Rat(sign) * coeff;
    // find next operator
    i = j;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    require(s[i] == '+' || s[i] == '-', "expected + or - in literal: " + body);
    sign = (s[i] == '+') ? 1 : -1;
    ++i;
  }
  CycNum z;
  z.m_ = m;
  z.reduce_tail(raw);
  z.c_ = std::move(raw);
  return z;
}

CycNum CycNum::parse_tagged(const std::string& text) {
  std::string s = trim(text);
  require(s.rfind("m=", 0) == 0, "tagged literal must start with m=");
  size_t semi = s.find(';');
  require(semi != std::string::npos, "tagged literal missing ';'");
  int m = std::stoi(s.substr(2, semi - 2));
  return parse(m, s.substr(semi + 1));
}

size_t CycNum::hash() const {
  size_t h = std::hash<int>()(m_);
  for (const Rat& r : c_) {
    hash_combine(h, std::hash<std::string>()(r.get_num().get_str()));
    hash_combine(h, std::hash<std::string>()(r.get_den().get_str()));
  }
  return h;
}

void factor_prime_power(int64_t q, int64_t* p, int* e) {
  require(q >= 2, "prime power must be >= 2");
  int64_t base = 0;
  for (int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      base = d;
      break;
    }
  }
  if (base == 0) {
    *p = q;
    *e = 1;
    return;
  }
  int64_t rest = q;
  int k = 0;
  while (rest % base == 0) {
    rest /= base;
    ++k;
  }
  require(rest == 1, "not a prime power");
  *p = base;
  *e = k;
}

int gauss_sqrt_conductor(int64_t q) {
  int64_t p;
  int e;
  factor_prime_power(q, &p, &e);
  if (e % 2 == 0) return 1;
  if (p == 2) return 8;
  if (p % 4 == 1) return static_cast<int>(p);
  return static_cast<int>(4 * p);
}

CycNum gauss_sqrt(int64_t q) {
  int64_t p;
  int e;
  factor_prime_power(q, &p, &e);
  if (e % 2 == 0) {
    int64_t r = 1;
    for (int i = 0; i < e / 2; ++i) r *= p;
    return CycNum(Rat(static_cast<long>(r)));
  }
  int64_t scale = 1;
  for (int i = 0; i < (e - 1) / 2; ++i) scale *= p;
  CycNum root;
  if (p == 2) {
    root = CycNum::zeta(8, 1) + CycNum::zeta(8, 7);
  } else if (p % 4 == 1) {
    CycNum s;
    for (int64_t t = 0; t < p; ++t)
      s += CycNum::zeta(static_cast<int>(p), mod_mul(t, t, p));
    root = s;
  } else {
    // Gauss sum equals i*sqrt(p) here; twist by -i inside conductor 4p.
    int m = static_cast<int>(4 * p);
    CycNum s;
    for (int64_t t = 0; t < p; ++t)
      s += CycNum::zeta(m, 4 * mod_mul(t, t, p));
    root = CycNum::zeta(m, 3 * p) * s;
  }
  root.scale(Rat(static_cast<long>(scale)));
  internal_check((root * root) == CycNum(Rat(static_cast<long>(q))),
                 "square root construction failed");
  return root;
}

}  // namespace cwe
