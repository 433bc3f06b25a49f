/*
   Copyright 2026 The udrcheck Authors

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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace udr {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime(u64 n) {
    if (n < 2) {
        return false;
    }
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

/// p^e, refusing anything that would not leave headroom for 64-bit products.
inline u64 ipow(u64 p, int e) {
    u64 result = 1;
    for (int i = 0; i < e; ++i) {
        require(result <= (u64{1} << 31) / p, "modulus_too_large",
                "p^" + std::to_string(e) + " exceeds the supported modulus range (2^31)");
        result *= p;
    }
    return result;
}

/// p-adic valuation of x viewed in Z/p^cap; returns cap for x == 0.
inline int valuation(u64 x, u64 p, int cap) {
    if (x == 0) {
        return cap;
    }
    int v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        ++v;
    }
    return v;
}

inline u64 mulmod(u64 a, u64 b, u64 mod) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % mod);
}

inline u64 addmod(u64 a, u64 b, u64 mod) {
    u64 s = a + b;
    return s >= mod ? s - mod : s;
}

inline u64 submod(u64 a, u64 b, u64 mod) {
    return a >= b ? a - b : a + mod - b;
}

inline u64 reduce_signed(i64 x, u64 mod) {
    i64 r = x % static_cast<i64>(mod);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(mod) : r);
}

/// Inverse of a unit modulo mod (extended Euclid).
inline u64 invmod(u64 a, u64 mod) {
    i64 t = 0;
    i64 new_t = 1;
    i64 r = static_cast<i64>(mod);
    i64 new_r = static_cast<i64>(a % mod);
    while (new_r != 0) {
        i64 q = r / new_r;
        i64 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    require(r == 1, "not_a_unit", std::to_string(a) + " is not invertible modulo " + std::to_string(mod));
    return reduce_signed(t, mod);
}

inline u64 powmod(u64 base, u64 exp, u64 mod) {
    u64 result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1U) {
            result = mulmod(result, base, mod);
        }
        base = mulmod(base, base, mod);
        exp >>= 1U;
    }
    return result;
}

/// (r, s) with n = p^r * s and p not dividing s.
inline std::pair<int, u64> split_prime_power(u64 n, u64 p) {
    int r = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++r;
    }
    return {r, n};
}

inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) {
                n /= d;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

} // namespace udr
