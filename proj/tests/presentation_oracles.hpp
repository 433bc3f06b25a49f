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

// Independent oracles for presented algebras: exact Euclid over Q and random inputs.

#include <random>
#include <string>
#include <vector>

#include "udr/presentation.hpp"

namespace udr::testing {

// Dense univariate polynomials over Q, lowest degree first.
using Dense = std::vector<mpq_class>;

inline void trim(Dense& f) {
    while (!f.empty() && f.back() == 0) {
        f.pop_back();
    }
}

inline Dense remainder(Dense a, const Dense& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const mpq_class s = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= s * b[i];
        }
        trim(a);
    }
    return a;
}

// Degree of gcd(f, f') by the Euclidean algorithm.
inline int gcd_degree_with_derivative(const IntPoly& f) {
    Dense a(static_cast<std::size_t>(f.degree()) + 1, 0);
    for (const auto& [m, c] : f.terms) {
        a[static_cast<std::size_t>(m.exps[0])] = mpq_class(c);
    }
    Dense b;
    for (std::size_t i = 1; i < a.size(); ++i) {
        b.push_back(a[i] * static_cast<long>(i));
    }
    trim(b);
    while (!b.empty()) {
        Dense r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<int>(a.size()) - 1;
}

inline std::string random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_degree) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::string out;
    auto add_term = [&](int c, const std::string& mono) {
        if (c == 0) {
            return;
        }
        out += (c < 0 ? " - " : (out.empty() ? "" : " + "));
        out += std::to_string(c < 0 ? -c : c);
        if (!mono.empty()) {
            out += "*" + mono;
        }
    };
    for (int d = 0; d <= max_degree; ++d) {
        if (vars.size() == 1) {
            add_term(coef(rng), d == 0 ? "" : vars[0] + "^" + std::to_string(d));
            continue;
        }
        for (int i = 0; i <= d; ++i) {
            std::string mono;
            if (i > 0) {
                mono = vars[0] + "^" + std::to_string(i);
            }
            if (d - i > 0) {
                mono += (mono.empty() ? "" : "*") + vars[1] + "^" + std::to_string(d - i);
            }
            add_term(coef(rng), mono);
        }
    }
    return out.empty() ? "0" : out;
}

// Finite-dimensional presentations with t <= 2 and relations of degree <= 4; about half
// contain a squared factor so both verdicts occur.
inline std::vector<Presentation> random_presentations(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Presentation> out;
    const std::vector<u64> primes = {2, 3, 5};
    while (out.size() < count) {
        const u64 p = primes[rng() % primes.size()];
        if (rng() % 2 == 0) {
            const int kind = static_cast<int>(rng() % 2);
            std::string f;
            if (kind == 0) {
                const int d = 1 + static_cast<int>(rng() % 4);
                f = "X^" + std::to_string(d) + " + " + random_poly(rng, {"X"}, d - 1);
            } else {
                const std::string g = "X + " + random_poly(rng, {"X"}, 0);
                const std::string h = "X^2 + " + random_poly(rng, {"X"}, 1);
                f = "(" + g + ")^2*(" + h + ")";
            }
            out.push_back(Presentation::make(p, {"X"}, {f}));
        } else {
            const int a = 1 + static_cast<int>(rng() % 2);
            const int b = 1 + static_cast<int>(rng() % 2);
            std::string f1 = "X^" + std::to_string(a + 1) + " + " + random_poly(rng, {"X", "Y"}, a);
            std::string f2 = "Y^" + std::to_string(b + 1) + " + " + random_poly(rng, {"X", "Y"}, b);
            if (rng() % 3 == 0) {
                f1 = "X^2";
            }
            out.push_back(Presentation::make(p, {"X", "Y"}, {f1, f2}));
        }
    }
    return out;
}

} // namespace udr::testing
