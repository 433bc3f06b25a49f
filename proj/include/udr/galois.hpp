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

// Galois ring data GR(p^m, r) = (Z/p^m)[Y]/(h) and arithmetic in its residue
// field F_p[Y]/(h mod p).

#include <cstddef>
#include <string>
#include <vector>

#include "chain_linalg.hpp"
#include "modular.hpp"

namespace udr {

/// Dense polynomial over F_p, index = degree, trailing zeros stripped.
using FpPoly = std::vector<u64>;

namespace detail {

inline void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

/// Remainder of a modulo b over F_p (b nonzero).
inline FpPoly fp_mod(FpPoly a, const FpPoly& b, u64 p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const u64 inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 f = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = submod(a[shift + i], mulmod(f, b[i], p), p);
        }
        trim(a);
    }
    return a;
}

} // namespace detail

/// Trial division by every monic polynomial of degree <= deg/2.
inline bool is_irreducible_mod_p(FpPoly f, u64 p) {
    for (auto& c : f) {
        c %= p;
    }
    detail::trim(f);
    if (f.size() < 2) {
        return false;
    }
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        const u64 count = ipow(p, static_cast<int>(d));
        for (u64 k = 0; k < count; ++k) {
            FpPoly g(d + 1, 0);
            u64 t = k;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = t % p;
                t /= p;
            }
            g[d] = 1;
            if (detail::fp_mod(f, g, p).empty()) {
                return false;
            }
        }
    }
    return true;
}

/// Smallest monic irreducible of degree r, ordering candidates by the integer
/// sum c_i p^i of their lower coefficients. Gives Y^2+Y+1, Y^3+Y+1, Y^4+Y+1 for p = 2.
inline FpPoly default_irreducible(u64 p, int r) {
    require(r >= 1, "invalid_degree", "residue degree must be at least 1");
    require(r <= 4, "degree_unsupported",
            "residue degree " + std::to_string(r) + " > 4 requires an explicit defining polynomial h");
    const u64 count = ipow(p, r);
    for (u64 k = 0; k < count; ++k) {
        FpPoly g(static_cast<std::size_t>(r) + 1, 0);
        u64 t = k;
        for (int i = 0; i < r; ++i) {
            g[static_cast<std::size_t>(i)] = t % p;
            t /= p;
        }
        g[static_cast<std::size_t>(r)] = 1;
        if (is_irreducible_mod_p(g, p)) {
            return g;
        }
    }
    fail("internal", "no irreducible polynomial found");
}

struct GaloisRingParams {
    u64 p = 2;
    int m = 1;
    int r = 1;
    std::vector<u64> h; // monic, length r + 1, coefficients modulo p^m

    /// Validated parameters; h defaults to the built-in choice for r <= 4.
    static GaloisRingParams make(u64 p, int m, int r, std::vector<u64> h = {}) {
        require(is_prime(p), "not_prime", std::to_string(p) + " is not prime");
        require(m >= 1, "invalid_precision", "precision m must be at least 1");
        require(r >= 1, "invalid_degree", "residue degree r must be at least 1");
        GaloisRingParams s;
        s.p = p;
        s.m = m;
        s.r = r;
        const u64 mod = ipow(p, m);
        if (h.empty()) {
            h = default_irreducible(p, r);
        }
        require(h.size() == static_cast<std::size_t>(r) + 1, "invalid_polynomial",
                "h must have degree exactly r");
        for (auto& c : h) {
            c %= mod;
        }
        require(h.back() == 1, "invalid_polynomial", "h must be monic");
        require(is_irreducible_mod_p(h, p), "reducible_polynomial", "h is reducible modulo p");
        s.h = std::move(h);
        return s;
    }

    FpPoly residue_modulus() const {
        FpPoly out(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) {
            out[i] = h[i] % p;
        }
        return out;
    }
};

/// F_{p^r} as vectors of length r over F_p.
struct ResidueField {
    u64 p = 2;
    int r = 1;
    FpPoly modulus; // monic, degree r

    std::size_t size() const { return static_cast<std::size_t>(ipow(p, r)); }

    Vec zero() const { return Vec(static_cast<std::size_t>(r), 0); }

    Vec one() const {
        Vec v = zero();
        v[0] = 1;
        return v;
    }

    bool is_zero(const Vec& a) const {
        for (u64 x : a) {
            if (x % p != 0) {
                return false;
            }
        }
        return true;
    }

    Vec add(const Vec& a, const Vec& b) const {
        Vec out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            out[i] = addmod(a[i], b[i], p);
        }
        return out;
    }

    Vec mul(const Vec& a, const Vec& b) const {
        FpPoly prod(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                prod[i + j] = addmod(prod[i + j], mulmod(a[i], b[j], p), p);
            }
        }
        FpPoly rem = detail::fp_mod(prod, modulus, p);
        Vec out = zero();
        for (std::size_t i = 0; i < rem.size(); ++i) {
            out[i] = rem[i];
        }
        return out;
    }

    /// Element number k in lexicographic coefficient order.
    Vec element(u64 k) const {
        Vec v = zero();
        for (std::size_t i = static_cast<std::size_t>(r); i-- > 0;) {
            v[i] = k % p;
            k /= p;
        }
        return v;
    }
};

} // namespace udr
