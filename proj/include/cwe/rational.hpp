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

#include <gmpxx.h>

#include <string>

#include "cwe/util.hpp"

namespace cwe {

// Exact rational scalar. All arithmetic in the library is exact; floating
// point never appears outside of tests.
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
  require(den != 0, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "a" or "a/b" with optional sign.
inline Rat rat_parse(const std::string& text) {
  std::string s = trim(text);
  require(!s.empty(), "empty rational literal");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    require(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
                c == '+' || c == '/',
            "bad character in rational literal: " + s);
  }
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw PreconditionError("unparseable rational literal: " + s);
  }
}

}  // namespace cwe
