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

#include <optional>
#include <string>
#include <vector>

#include "../local_ring/construct.hpp"
#include "../local_ring/ideal.hpp"
#include "../presentation.hpp"
#include "../presented/presented_hom.hpp"
#include "../presented/q_fiber.hpp"

namespace udr {

inline constexpr int kMaxOrderBoundPrecision = 24;

struct OrderBoundReport {
    int level = 0;               // largest l with f1(x) - f2(x) in p^l m_S for every generator x
    int precision = 0;           // truncation precision N at which the level was found
    int reverified_precision = 0; // N + 1
    std::string separating_generator; // f1(x) - f2(x) is not in p^(l+1) m_S for this x
    u64 bound = 0;               // p^(l+1)
    std::string claim;
    std::size_t target_rank = 0;
    bool symbolic_hom_check = false;
};

namespace detail {

struct LevelAtPrecision {
    int level = 0;
    std::size_t separating = 0;
    bool all_zero = false;
};

inline std::vector<Element> images_in(const RingPtr& t, const Presentation& target, const std::vector<IntPoly>& images) {
    std::vector<Element> args;
    for (std::size_t i = 0; i < target.nvars(); ++i) {
        args.push_back(t->generator(i));
    }
    std::vector<Element> out;
    for (const auto& f : images) {
        out.push_back(t->evaluate(f, args));
    }
    return out;
}

inline void check_hom_in_truncation(const RingPtr& t, const Presentation& source, const Presentation& target,
                                    const std::vector<IntPoly>& images, const std::string& label) {
    const auto vals = images_in(t, target, images);
    for (std::size_t k = 0; k < source.relations.size(); ++k) {
        require(t->is_zero(t->evaluate(source.relations[k], vals)), "not_a_homomorphism",
                label + " does not send relation " + to_string(source.relations[k], source.variables) + " to zero");
    }
}

inline LevelAtPrecision level_at(const Presentation& source, const Presentation& target,
                                 const std::vector<IntPoly>& f1, const std::vector<IntPoly>& f2, int n,
                                 int degree_cap) {
    const RingPtr t = ring_from_truncated_presentation(target, n, degree_cap);
    check_hom_in_truncation(t, source, target, f1, "f1");
    check_hom_in_truncation(t, source, target, f2, "f2");
    const auto a = images_in(t, target, f1);
    const auto b = images_in(t, target, f2);
    std::vector<Element> diff;
    LevelAtPrecision out;
    out.all_zero = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff.push_back(t->sub(a[i], b[i]));
        out.all_zero = out.all_zero && t->is_zero(diff.back());
    }
    const Ideal m = maximal_ideal(t);
    // Membership modulo p^n is exact for l <= n - 1, since p^n S lies in p^(n-1) m_S.
    for (int l = 0; l <= n - 1; ++l) {
        const Ideal j = scale_ideal(static_cast<i64>(ipow(target.p, l)), m);
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (!j.contains(diff[i])) {
                require(l > 0, "not_congruent", "f1 and f2 do not agree modulo m_S");
                out.level = l - 1;
                out.separating = i;
                return out;
            }
        }
    }
    out.level = n - 1;
    out.separating = diff.size();
    return out;
}

} // namespace detail

/// If R is a universal deformation ring of a representation of G, ptor(S) = 0, f1 != f2
/// and f1 = f2 mod p^l m_S, then p^(l+1) divides |G|. The level is computed in the
/// truncations S/p^N and confirmed in S/p^(N+1).
inline OrderBoundReport order_lower_bound(const Presentation& source, const Presentation& target,
                                          const std::vector<IntPoly>& f1, const std::vector<IntPoly>& f2,
                                          int degree_cap = kDefaultDegreeCap, std::size_t bit_cap = kDefaultBitCap) {
    require(source.p == target.p, "inconsistent_prime", "source and target use different primes");
    require(f1.size() == source.nvars() && f2.size() == source.nvars(), "dimension_mismatch",
            "one image per source variable required");
    OrderBoundReport rep;
    const QFiberAlgebra qa(target, bit_cap);
    require(qa.finite(), "hypothesis_unverifiable",
            "target rational fibre is infinite-dimensional; ptor(S) = 0 cannot be certified by truncation");
    rep.target_rank = qa.dim();
    try {
        const auto c1 = verify_presented_hom(source, target, f1, bit_cap);
        const auto c2 = verify_presented_hom(source, target, f2, bit_cap);
        require(c1.relations_vanish, "not_a_homomorphism", "f1 does not respect the relations of R");
        require(c2.relations_vanish, "not_a_homomorphism", "f2 does not respect the relations of R");
        require(c1.residue_compatible && c2.residue_compatible, "not_local", "map is not compatible with residues");
        rep.symbolic_hom_check = true;
    } catch (const Error& e) {
        if (e.code() != "p_denominator") {
            throw;
        }
    }
    for (int n = 2; n < kMaxOrderBoundPrecision; ++n) {
        const Truncation tn(target, n, degree_cap);
        require(tn.is_free_of_rank(rep.target_rank), "hypothesis_failed",
                "S has p-torsion: the truncation mod " + std::to_string(target.p) + "^" + std::to_string(n) +
                    " is not free of rank " + std::to_string(rep.target_rank));
        const auto at_n = detail::level_at(source, target, f1, f2, n, degree_cap);
        if (at_n.all_zero || at_n.level >= n - 1) {
            continue;
        }
        const Truncation tn1(target, n + 1, degree_cap);
        require(tn1.is_free_of_rank(rep.target_rank), "hypothesis_failed",
                "S has p-torsion: the truncation mod " + std::to_string(target.p) + "^" + std::to_string(n + 1) +
                    " is not free of rank " + std::to_string(rep.target_rank));
        const auto at_n1 = detail::level_at(source, target, f1, f2, n + 1, degree_cap);
        require(at_n1.level == at_n.level, "internal_inconsistency", "congruence level changed between precisions");
        rep.level = at_n.level;
        rep.precision = n;
        rep.reverified_precision = n + 1;
        rep.separating_generator = source.variables[at_n.separating];
        rep.bound = ipow(source.p, rep.level + 1);
        rep.claim = std::to_string(rep.bound) + " | |G|";
        return rep;
    }
    fail("equal_maps", "f1 and f2 agree modulo " + std::to_string(target.p) + "^" +
                           std::to_string(kMaxOrderBoundPrecision - 1) + "; they are treated as equal");
}

} // namespace udr
