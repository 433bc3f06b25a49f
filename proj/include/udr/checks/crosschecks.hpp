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

#include <map>
#include <string>
#include <vector>

#include "../group/finite_group.hpp"
#include "../local_ring/ideal.hpp"
#include "../rep/maranda.hpp"
#include "../rep/representation.hpp"

namespace udr {

struct OneDimCrosscheck {
    std::vector<u64> p_factors; // p-parts p^k_i of the abelianization
    std::size_t predicted = 0;  // prod_i #{x in R : x^(p^k_i) = 1}
    std::size_t observed = 0;   // |Def(R)|
    bool agree = false;
};

/// For a one-dimensional rbar the lifts are chi * rbar with chi : G^ab_p -> 1 + m_R,
/// so |Def(R)| is a product of root-of-unity counts.
inline OneDimCrosscheck one_dim_crosscheck(const Representation& rbar, const RingPtr& ring,
                                           const EnumerationOptions& opt = {}) {
    require(rbar.dim == 1, "dimension_mismatch", "the cross-check applies to one-dimensional representations");
    OneDimCrosscheck out;
    for (u64 d : abelianization(*rbar.group)) {
        const auto [k, rest] = split_prime_power(d, ring->p());
        (void)rest;
        if (k > 0) {
            out.p_factors.push_back(ipow(ring->p(), k));
        }
    }
    const auto elems = ring->elements(opt.element_cap);
    out.predicted = 1;
    for (u64 q : out.p_factors) {
        std::size_t roots = 0;
        for (const auto& x : elems) {
            if (ring->equal(ring->pow(x, q), ring->one())) {
                ++roots;
            }
        }
        out.predicted *= roots;
    }
    out.observed = def_set(rbar, ring, opt).class_count();
    out.agree = out.predicted == out.observed;
    return out;
}

struct FinitenessBoundReport {
    std::size_t bound = 0;           // |Def(R/J)|
    int quotient_log_size = 0;
    std::size_t lift_count = 0;      // lifts over R at working precision
    std::size_t image_size = 0;      // classes of Def(R/J) hit by those lifts
    std::size_t certified_pairs = 0; // lifts proven equivalent to their group leader
    int certificate_precision = 0;   // precision of the weakest averaging certificate
    bool injective = false;
};

/// Def(R) -> Def(R/J) is injective for J = |G| m_R; here every lift over the precision
/// model is grouped by its reduction mod J and each group is certified equivalent by
/// averaging, at the precision the certificates carry.
inline FinitenessBoundReport finiteness_bound_check(const Representation& rbar, const RingPtr& ring,
                                                    const EnumerationOptions& opt = {}) {
    require(ring->is_precision_model(), "wrong_mode", "the finiteness bound is checked over a precision model");
    FinitenessBoundReport rep;
    const QuotientRing q = quotient_ring(averaging_ideal(ring, *rbar.group));
    rep.quotient_log_size = q.ring->log_size();
    const DefSet def_q = def_set(rbar, q.ring, opt);
    rep.bound = def_q.class_count();
    const auto lifts = enumerate_lifts(rbar, ring, opt);
    rep.lift_count = lifts.size();
    std::map<std::size_t, std::size_t> leader; // class of the reduction -> first lift
    rep.certificate_precision = ring->precision();
    rep.injective = true;
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        const Representation red = reduce_representation(lifts[i], q);
        std::size_t cls = def_q.class_count();
        for (std::size_t c = 0; c < def_q.class_count(); ++c) {
            if (are_strictly_equivalent(red, def_q.representatives[c], opt)) {
                cls = c;
                break;
            }
        }
        require(cls < def_q.class_count(), "internal_inconsistency", "reduction of a lift is not a deformation");
        const auto [it, inserted] = leader.emplace(cls, i);
        if (inserted) {
            continue;
        }
        const MarandaDecision d = maranda_decide(lifts[it->second], lifts[i], opt);
        if (!d.equivalent) {
            rep.injective = false;
            continue;
        }
        ++rep.certified_pairs;
        rep.certificate_precision = std::min(rep.certificate_precision, d.certificate->precision);
    }
    rep.image_size = leader.size();
    return rep;
}

} // namespace udr
