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

#include "../local_ring/construct.hpp"
#include "../presentation.hpp"
#include "q_fiber.hpp"

namespace udr {

/// Membership test for finite free W(k)-algebras. The rational-fibre dimension is
/// exact; the torsion test only sees p-torsion of exponent below the precision.
struct WMembershipReport {
    bool q_fiber_finite = false;
    std::size_t dim = 0;
    int precision = 0;
    std::optional<std::vector<int>> truncation_orders;
    std::optional<bool> p_torsion_detected;
    std::string torsion_witness; // a basis element of the truncation with small additive order
    bool member = false;
    std::string verdict;
    std::string caveat;
};

inline WMembershipReport w_membership_check(const Presentation& pres, int precision,
                                            int degree_cap = kDefaultDegreeCap,
                                            std::size_t bit_cap = kDefaultBitCap) {
    WMembershipReport rep;
    rep.precision = precision;
    const QFiberAlgebra a(pres, bit_cap);
    rep.q_fiber_finite = a.finite();
    if (!a.finite()) {
        rep.verdict = "not in W";
        rep.caveat = "rational fibre is infinite-dimensional";
        return rep;
    }
    rep.dim = a.dim();
    const Truncation t(pres, precision, degree_cap);
    rep.truncation_orders = t.shape().orders;
    const bool free = t.is_free_of_rank(a.dim());
    rep.p_torsion_detected = !free;
    if (!free) {
        for (std::size_t k = 0; k < t.shape().rank(); ++k) {
            if (t.shape().orders[k] < precision) {
                IntPoly f(t.names().size());
                for (const auto& [m, c] : t.basis_poly(k)) {
                    f.add_term(m, mpz_class(static_cast<unsigned long>(c)));
                }
                rep.torsion_witness = to_string(f, t.names()) + " has additive order " + std::to_string(pres.p) + "^" +
                                      std::to_string(t.shape().orders[k]);
                break;
            }
        }
        if (rep.torsion_witness.empty()) {
            rep.torsion_witness = "truncation has rank " + std::to_string(t.shape().rank()) +
                                  " but the rational fibre has dimension " + std::to_string(a.dim());
        }
        rep.verdict = "not in W";
        rep.caveat = "p-torsion exhibited in the truncation mod " + std::to_string(pres.p) + "^" +
                     std::to_string(precision);
        return rep;
    }
    rep.member = true;
    rep.verdict = "in W (precision-certified)";
    rep.caveat = "no p-torsion of exponent below " + std::to_string(precision) +
                 "; torsion of larger exponent is not excluded";
    return rep;
}

} // namespace udr
