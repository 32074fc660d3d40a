/*
   Copyright 2026 The concat-calc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CONCAT_RATIONAL_HPP
#define CONCAT_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace concat {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "a", "-a" or "a/b" (decimal digits, arbitrary precision).
inline Rat rat_from_string(std::string_view text) {
    try {
        Rat r(std::string(text), 10);
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid rational literal: '" + std::string(text) + "'");
    }
}

/// Canonical text: "a" when the denominator is 1, else "a/b".
inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_pow(Rat base, unsigned long k) {
    Rat acc(1);
    while (k > 0) {
        if (k & 1u) acc *= base;
        base *= base;
        k >>= 1u;
    }
    return acc;
}

inline Rat factorial(unsigned long n) {
    Int acc(1);
    for (unsigned long j = 2; j <= n; ++j) acc *= static_cast<long>(j);
    return Rat(acc);
}

}  // namespace concat

#endif
