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

// Shared test helpers: brute-force oracles in plain integer arithmetic and random inputs.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "udr/rep/derivation.hpp"
#include "udr/rep/representation.hpp"

namespace udr::testing {

/// n x n integer matrices mod N, row-major.
struct IntMat {
    std::size_t n = 0;
    u64 mod = 0;
    std::vector<u64> a;

    IntMat operator*(const IntMat& o) const {
        IntMat out{n, mod, std::vector<u64>(n * n, 0)};
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                u64 s = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    s = (s + a[i * n + k] * o.a[k * n + j]) % mod;
                }
                out.a[i * n + j] = s;
            }
        }
        return out;
    }

    bool operator<(const IntMat& o) const { return a < o.a; }
    bool operator==(const IntMat& o) const { return a == o.a; }

    static IntMat identity(std::size_t n, u64 mod) {
        IntMat out{n, mod, std::vector<u64>(n * n, 0)};
        for (std::size_t i = 0; i < n; ++i) {
            out.a[i * n + i] = 1;
        }
        return out;
    }

    IntMat pow(u64 e) const {
        IntMat out = identity(n, mod);
        for (u64 k = 0; k < e; ++k) {
            out = out * *this;
        }
        return out;
    }
};

/// Every matrix congruent to `base` mod p, with entries in [0, mod).
inline std::vector<IntMat> congruent_matrices(const IntMat& base, u64 p) {
    const u64 steps = base.mod / p;
    std::vector<IntMat> out;
    std::vector<u64> digit(base.a.size(), 0);
    for (;;) {
        IntMat m = base;
        for (std::size_t i = 0; i < m.a.size(); ++i) {
            m.a[i] = (base.a[i] % p + p * digit[i]) % base.mod;
        }
        out.push_back(m);
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == steps) {
            digit[i++] = 0;
        }
        if (i == digit.size()) {
            return out;
        }
    }
}

struct CyclicDefOracle {
    std::size_t lifts = 0;
    std::size_t classes = 0;
    std::vector<std::size_t> orbit_sizes;
};

/// Lifts of a representation of C_k (generator image rbar) to Z/p^m, and their
/// conjugacy classes under I + p M_n, by exhaustive search.
inline CyclicDefOracle cyclic_def_oracle(const IntMat& rbar, u64 p, std::size_t k) {
    const IntMat one = IntMat::identity(rbar.n, rbar.mod);
    std::set<IntMat> lifts;
    for (const auto& a : congruent_matrices(rbar, p)) {
        if (a.pow(k) == one) {
            lifts.insert(a);
        }
    }
    std::vector<std::pair<IntMat, IntMat>> kernel; // (K, K^-1)
    const auto ks = congruent_matrices(one, p);
    for (const auto& x : ks) {
        for (const auto& y : ks) {
            if (x * y == one) {
                kernel.emplace_back(x, y);
                break;
            }
        }
    }
    CyclicDefOracle out;
    out.lifts = lifts.size();
    std::set<IntMat> seen;
    for (const auto& a : lifts) {
        if (seen.count(a)) {
            continue;
        }
        std::set<IntMat> orbit;
        for (const auto& [kk, ki] : kernel) {
            orbit.insert(kk * a * ki);
        }
        seen.insert(orbit.begin(), orbit.end());
        out.orbit_sizes.push_back(orbit.size());
        ++out.classes;
    }
    return out;
}

/// Random additive map R -> S of the form g = f + D with D(R) inside the square-zero ideal.
inline AdditiveMap random_perturbation(const SquareZeroExtension& ext, std::mt19937_64& rng) {
    const RingHom f = ext.inclusion();
    const auto ideal = ext.ideal().elements();
    AdditiveMap d{ext.base, ext.ring, {}};
    for (std::size_t i = 0; i < ext.base->rank(); ++i) {
        Element v = ideal[rng() % ideal.size()];
        const i64 order = static_cast<i64>(ext.base->shape().modulus(i));
        while (!ext.ring->is_zero(ext.ring->scale(v, order))) {
            v = ext.ring->scale(v, static_cast<i64>(ext.base->p()));
        }
        d.basis_values.push_back(v);
    }
    return AdditiveMap::of(f) + d;
}

/// Multiplicativity and unitality checked on every pair of elements.
inline bool brute_force_is_hom(const AdditiveMap& g) {
    const RingPtr& r = g.source;
    const RingPtr& s = g.target;
    if (!s->equal(g(r->one()), s->one())) {
        return false;
    }
    const auto elems = r->elements();
    for (const auto& x : elems) {
        const Element gx = g(x);
        for (const auto& y : elems) {
            if (!s->equal(g(r->mul(x, y)), s->mul(gx, g(y)))) {
                return false;
            }
            if (!s->equal(g(r->add(x, y)), s->add(gx, g(y)))) {
                return false;
            }
        }
    }
    if (r->base_generator()) {
        return s->base_generator() && s->equal(g(r->generator(*r->base_generator())), s->generator(*s->base_generator()));
    }
    return true;
}

} // namespace udr::testing
