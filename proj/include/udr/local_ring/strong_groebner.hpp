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

// Strong Groebner bases over the chain ring Z/p^m (degrevlex). Leading coefficients
// are normalized to pure powers p^v; completion uses S-polynomials together with
// annihilator polynomials p^{m-v} f.

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "../int_poly.hpp"
#include "../modular.hpp"

namespace udr {

class ModPolyRing {
public:
    using Poly = TermMap<u64>;

    ModPolyRing(u64 p, int m, std::size_t nvars) : p_(p), m_(m), mod_(ipow(p, m)), nvars_(nvars) {}

    u64 p() const { return p_; }
    int precision() const { return m_; }
    u64 modulus() const { return mod_; }
    std::size_t nvars() const { return nvars_; }

    Poly from_int_poly(const IntPoly& f) const {
        Poly out;
        for (const auto& [mono, c] : f.terms) {
            const u64 v = mpz_class(((c % mod_) + mod_) % mod_).get_ui();
            if (v != 0) {
                out[mono] = v;
            }
        }
        return out;
    }

    int val(u64 c) const { return valuation(c, p_, m_); }

    void add_scaled(Poly& f, const Poly& g, u64 scale, const Monomial& shift) const {
        if (scale % mod_ == 0) {
            return;
        }
        for (const auto& [mono, c] : g) {
            const u64 t = mulmod(c, scale, mod_);
            if (t == 0) {
                continue;
            }
            const Monomial key = mono * shift;
            auto [it, inserted] = f.emplace(key, t);
            if (!inserted) {
                it->second = addmod(it->second, t, mod_);
                if (it->second == 0) {
                    f.erase(it);
                }
            }
        }
    }

    void sub_scaled(Poly& f, const Poly& g, u64 scale, const Monomial& shift) const {
        add_scaled(f, g, (mod_ - scale % mod_) % mod_, shift);
    }

    Poly scaled(const Poly& f, u64 s) const {
        Poly out;
        add_scaled(out, f, s, Monomial(nvars_));
        return out;
    }

    /// Scale so the leading coefficient is exactly p^v.
    Poly normalized(const Poly& f) const {
        if (f.empty()) {
            return f;
        }
        const u64 lc = f.begin()->second;
        const int v = val(lc);
        const u64 unit = lc / ipow(p_, v);
        return scaled(f, invmod(unit, mod_));
    }

    static int degree(const Poly& f) {
        int d = -1;
        for (const auto& [mono, c] : f) {
            d = std::max(d, mono.degree());
        }
        return d;
    }

    /// Canonical remainder of f modulo a strong basis: each surviving coefficient at X^a
    /// lies in [0, p^{e_a}), e_a the least leading-coefficient valuation among divisors.
    Poly reduce(Poly f, const std::vector<Poly>& basis) const {
        Poly rem;
        while (!f.empty()) {
            const Monomial lm = f.begin()->first;
            const u64 c = f.begin()->second;
            const Poly* best = nullptr;
            int best_v = m_;
            for (const auto& g : basis) {
                const auto& [glm, glc] = *g.begin();
                if (glm.divides(lm)) {
                    const int v = val(glc);
                    if (v < best_v) {
                        best_v = v;
                        best = &g;
                    }
                }
            }
            if (best == nullptr) {
                rem.emplace(lm, c);
                f.erase(f.begin());
                continue;
            }
            const u64 pv = ipow(p_, best_v);
            const u64 keep = c % pv;
            const u64 q = (c - keep) / pv; // leading coefficient of best is exactly p^v
            const Monomial shift = lm / best->begin()->first;
            if (q != 0) {
                sub_scaled(f, *best, q, shift);
            }
            if (keep != 0) {
                auto it = f.find(lm);
                rem.emplace(lm, keep);
                if (it != f.end()) {
                    f.erase(it);
                }
            }
        }
        return rem;
    }

    /// Completes `generators` to a strong Groebner basis. Throws when any intermediate
    /// polynomial exceeds degree_cap.
    std::vector<Poly> strong_basis(const std::vector<Poly>& generators, int degree_cap) const {
        std::vector<Poly> basis;
        std::deque<Poly> todo(generators.begin(), generators.end());
        std::deque<std::pair<std::size_t, std::size_t>> pairs;
        auto admit = [&](Poly r) {
            r = normalized(r);
            require(degree(r) <= degree_cap, "not_finite_at_cap",
                    "strong Groebner basis exceeded degree cap " + std::to_string(degree_cap));
            const std::size_t idx = basis.size();
            const int v = val(r.begin()->second);
            basis.push_back(r);
            for (std::size_t j = 0; j < idx; ++j) {
                pairs.emplace_back(j, idx);
            }
            if (v > 0) {
                todo.push_back(scaled(r, ipow(p_, m_ - v)));
            }
        };
        for (;;) {
            if (!todo.empty()) {
                Poly h = reduce(todo.front(), basis);
                todo.pop_front();
                if (!h.empty()) {
                    admit(std::move(h));
                }
                continue;
            }
            if (pairs.empty()) {
                break;
            }
            const auto [i, j] = pairs.front();
            pairs.pop_front();
            Poly s = spoly(basis[i], basis[j]);
            Poly h = reduce(std::move(s), basis);
            if (!h.empty()) {
                admit(std::move(h));
            }
        }
        return basis;
    }

    Poly spoly(const Poly& f, const Poly& g) const {
        const auto& [fm, fc] = *f.begin();
        const auto& [gm, gc] = *g.begin();
        const int a = val(fc);
        const int b = val(gc);
        const Monomial l = lcm(fm, gm);
        Poly s;
        if (a <= b) {
            add_scaled(s, f, ipow(p_, b - a), l / fm);
            sub_scaled(s, g, 1, l / gm);
        } else {
            add_scaled(s, g, ipow(p_, a - b), l / gm);
            sub_scaled(s, f, 1, l / fm);
        }
        return s;
    }

private:
    u64 p_;
    int m_;
    u64 mod_;
    std::size_t nvars_;
};

} // namespace udr
