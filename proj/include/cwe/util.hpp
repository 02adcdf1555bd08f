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

#include <atomic>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cwe {

// Bad user input, unsatisfied operation precondition. CLI exit code 2.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap was exceeded. CLI exit code 3.
struct CapError : std::runtime_error {
  explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal cross-check failed; indicates a bug, not bad input. CLI exit code 4.
struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

inline void check_cap(bool ok, const std::string& msg) {
  if (!ok) throw CapError(msg);
}

inline void internal_check(bool ok, const std::string& msg) {
  if (!ok) throw InternalError(msg);
}

inline int64_t mod_norm(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline int64_t mod_mul(int64_t a, int64_t b, int64_t m) {
  return mod_norm(a * b, m);  // operands stay far below 2^31 here
}

inline int64_t mod_pow(int64_t a, int64_t e, int64_t m) {
  a = mod_norm(a, m);
  int64_t r = 1 % m;
  while (e > 0) {
    if (e & 1) r = mod_mul(r, a, m);
    a = mod_mul(a, a, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a mod m; requires gcd(a, m) == 1.
inline int64_t mod_inverse(int64_t a, int64_t m) {
  int64_t t = 0, new_t = 1, r = m, new_r = mod_norm(a, m);
  while (new_r != 0) {
    int64_t q = r / new_r;
    int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  internal_check(r == 1, "mod_inverse: arguments not coprime");
  return mod_norm(t, m);
}

inline int euler_phi(int m) {
  int result = m, n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Units of Z/m in ascending order.
inline std::vector<int64_t> units_mod(int m) {
  std::vector<int64_t> out;
  for (int a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1) out.push_back(a);
  if (m == 1) out.push_back(0);  // the trivial group, one element
  return out;
}

inline void hash_combine(size_t& seed, size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

// Runs fn(i) for i in [0, n) across `workers` threads; results land in index
// order so the outcome never depends on scheduling.
template <typename R>
std::vector<R> parallel_map(size_t n, int workers,
                            const std::function<R(size_t)>& fn) {
  std::vector<R> out(n);
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> threads;
  std::atomic<size_t> next{0};
  auto run = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= n) break;
      out[i] = fn(i);
    }
  };
  int k = std::min<size_t>(workers, n);
  threads.reserve(k);
  for (int t = 0; t < k; ++t) threads.emplace_back(run);
  for (auto& th : threads) th.join();
  return out;
}

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace cwe
