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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "../presentation.hpp"
#include "q_fiber.hpp"

namespace udr {

struct PresentedHomCheck {
    bool valid = false;
    bool relations_vanish = false;
    bool residue_compatible = false;
    std::optional<std::size_t> failing_relation;
    std::string failing_normal_form;
};

namespace detail {

inline bool p_integral(const mpq_class& c, u64 p) {
    return mpz_divisible_ui_p(c.get_den_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

inline mpz_class eval_at_point(const IntPoly& f, const std::vector<i64>& point) {
    mpz_class total = 0;
    for (const auto& [m, c] : f.terms) {
        mpz_class t = c;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            mpz_class x = static_cast<long>(point[i]);
            mpz_class xp;
            mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m.exps[i]));
            t *= xp;
        }
        total += t;
    }
    return total;
}

} // namespace detail

/// Does X_i -> images[i] define a map source -> target? Relations are checked by normal
/// form in the rational fibre of the target, with every coefficient required to be
/// p-integral; residue compatibility compares values at the residue points mod p.
inline PresentedHomCheck verify_presented_hom(const Presentation& source, const Presentation& target,
                                              const std::vector<IntPoly>& images,
                                              std::size_t bit_cap = kDefaultBitCap) {
    require(source.p == target.p, "inconsistent_prime", "source and target use different primes");
    require(images.size() == source.nvars(), "dimension_mismatch", "one image per source variable required");
    const QFiberAlgebra a(target, bit_cap);
    require(a.finite(), "not_finite", "target rational fibre is infinite-dimensional");
    for (const auto& g : a.groebner()) {
        for (const auto& [m, c] : g) {
            require(detail::p_integral(c, target.p), "p_denominator",
                    "target Groebner basis has a p in a denominator; integrality cannot be certified symbolically");
        }
    }
    PresentedHomCheck out;
    out.relations_vanish = true;
    for (std::size_t k = 0; k < source.relations.size(); ++k) {
        const IntPoly g = source.relations[k].substitute(images);
        const QPoly nf = a.normal_form(to_qpoly(g));
        for (const auto& [m, c] : nf) {
            require(detail::p_integral(c, source.p), "p_denominator",
                    "normal form has a p in a denominator; integrality cannot be certified symbolically");
        }
        if (!nf.empty() && out.relations_vanish) {
            out.relations_vanish = false;
            out.failing_relation = k;
            out.failing_normal_form = qpoly_to_string(nf, target.variables);
        }
    }
    out.residue_compatible = true;
    const mpz_class p = static_cast<unsigned long>(source.p);
    for (std::size_t i = 0; i < images.size(); ++i) {
        const mpz_class diff = detail::eval_at_point(images[i], target.residue_point) - source.residue_point[i];
        if (diff % p != 0) {
            out.residue_compatible = false;
        }
    }
    out.valid = out.relations_vanish && out.residue_compatible;
    return out;
}

} // namespace udr
