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

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "../error.hpp"
#include "../int_poly.hpp"

namespace udr {

using QPoly = TermMap<mpq_class>;

inline constexpr std::size_t kDefaultBitCap = 4096;
inline constexpr std::size_t kMaxRationalVariables = 6;

inline QPoly to_qpoly(const IntPoly& f) {
    QPoly out;
    for (const auto& [m, c] : f.terms) {
        out.emplace(m, mpq_class(c));
    }
    return out;
}

inline void qpoly_add_scaled(QPoly& f, const QPoly& g, const mpq_class& s, const Monomial& shift) {
    if (s == 0) {
        return;
    }
    for (const auto& [m, c] : g) {
        const Monomial key = m * shift;
        auto [it, inserted] = f.emplace(key, c * s);
        if (!inserted) {
            it->second += c * s;
            if (it->second == 0) {
                f.erase(it);
            }
        }
    }
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    QPoly out;
    for (const auto& [m, c] : a) {
        qpoly_add_scaled(out, b, c, m);
    }
    return out;
}

inline std::string qpoly_to_string(const QPoly& f, const std::vector<std::string>& names) {
    return poly_to_string(f, names);
}

/// Buchberger's algorithm over Q in degrevlex order, with a bit-size cap on coefficients.
class RationalGroebner {
public:
    RationalGroebner(std::size_t nvars, std::size_t bit_cap = kDefaultBitCap) : nvars_(nvars), bit_cap_(bit_cap) {
        require(nvars <= kMaxRationalVariables, "too_many_variables",
                "rational Groebner bases are limited to " + std::to_string(kMaxRationalVariables) + " variables");
    }

    /// Full reduction of f modulo G (every term, not only the leading one).
    QPoly reduce(QPoly f, const std::vector<QPoly>& basis) const {
        QPoly rem;
        while (!f.empty()) {
            const auto [lm, lc] = *f.begin();
            const QPoly* div = nullptr;
            for (const auto& g : basis) {
                if (g.begin()->first.divides(lm)) {
                    div = &g;
                    break;
                }
            }
            if (div == nullptr) {
                rem.emplace(lm, lc);
                f.erase(f.begin());
                continue;
            }
            const mpq_class s = -lc / div->begin()->second;
            qpoly_add_scaled(f, *div, s, lm / div->begin()->first);
            check_size(f);
        }
        return rem;
    }

    /// Reduced Groebner basis with monic elements, sorted by increasing leading monomial.
    std::vector<QPoly> basis(const std::vector<QPoly>& generators) const {
        std::vector<QPoly> g;
        std::deque<std::pair<std::size_t, std::size_t>> pairs;
        auto admit = [&](QPoly h) {
            make_monic(h);
            const std::size_t idx = g.size();
            g.push_back(std::move(h));
            for (std::size_t j = 0; j < idx; ++j) {
                pairs.emplace_back(j, idx);
            }
        };
        for (const auto& f : generators) {
            QPoly h = reduce(f, g);
            if (!h.empty()) {
                admit(std::move(h));
            }
        }
        while (!pairs.empty()) {
            const auto [i, j] = pairs.front();
            pairs.pop_front();
            const Monomial& a = g[i].begin()->first;
            const Monomial& b = g[j].begin()->first;
            if (coprime(a, b)) {
                continue; // Buchberger's first criterion
            }
            const Monomial l = lcm(a, b);
            QPoly s;
            qpoly_add_scaled(s, g[i], mpq_class(1), l / a);
            qpoly_add_scaled(s, g[j], mpq_class(-1), l / b);
            QPoly h = reduce(std::move(s), g);
            if (!h.empty()) {
                admit(std::move(h));
            }
        }
        // Minimalize, then interreduce.
        std::vector<QPoly> minimal;
        for (std::size_t i = 0; i < g.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
                if (i == j) {
                    continue;
                }
                const Monomial& a = g[j].begin()->first;
                const Monomial& b = g[i].begin()->first;
                redundant = a.divides(b) && (a != b || j < i);
            }
            if (!redundant) {
                minimal.push_back(g[i]);
            }
        }
        std::vector<QPoly> reduced;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<QPoly> others;
            for (std::size_t j = 0; j < minimal.size(); ++j) {
                if (j != i) {
                    others.push_back(minimal[j]);
                }
            }
            QPoly h = minimal[i];
            QPoly tail = h;
            tail.erase(tail.begin());
            QPoly r = reduce(tail, others);
            r.emplace(h.begin()->first, h.begin()->second);
            make_monic(r);
            reduced.push_back(std::move(r));
        }
        std::sort(reduced.begin(), reduced.end(), [](const QPoly& a, const QPoly& b) {
            return degrevlex_less(a.begin()->first, b.begin()->first);
        });
        return reduced;
    }

    std::size_t nvars() const { return nvars_; }

private:
    static void make_monic(QPoly& f) {
        const mpq_class lc = f.begin()->second;
        for (auto& [m, c] : f) {
            c /= lc;
        }
    }

    void check_size(const QPoly& f) const {
        for (const auto& [m, c] : f) {
            const std::size_t bits = mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
            require(bits <= bit_cap_, "coefficient_swell",
                    "rational coefficient exceeded the " + std::to_string(bit_cap_) + "-bit cap");
        }
    }

    std::size_t nvars_;
    std::size_t bit_cap_;
};

} // namespace udr
