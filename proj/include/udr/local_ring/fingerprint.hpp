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
#include <map>
#include <string>
#include <vector>

#include "finite_local_ring.hpp"
#include "hom.hpp"
#include "ideal.hpp"

namespace udr {

/// Isomorphism invariants of a finite local ring.
struct Fingerprint {
    u64 characteristic = 0;
    int log_cardinality = 0; // log_p |R|
    int log_maximal_ideal = 0;
    std::vector<int> hilbert; // dim_k m^i / m^{i+1}, i = 0, 1, ...
    std::map<u64, u64> additive_orders; // order -> number of elements
    std::map<int, u64> nilpotency; // index -> count; units are recorded under 0

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline Fingerprint fingerprint(const RingPtr& ring, std::size_t element_cap = kDefaultElementCap) {
    Fingerprint fp;
    fp.characteristic = ipow(ring->p(), ring->precision());
    fp.log_cardinality = ring->log_size();
    const Ideal m = maximal_ideal(ring);
    fp.log_maximal_ideal = m.log_size();
    Ideal power(ring, {ring->one()});
    while (!power.is_zero()) {
        const Ideal next = ideal_product(power, m);
        fp.hilbert.push_back((power.log_size() - next.log_size()) / ring->residue_degree());
        power = next;
    }
    for (const auto& x : ring->elements(element_cap)) {
        ++fp.additive_orders[ipow(ring->p(), ring->additive_order_log(x))];
        ++fp.nilpotency[ring->nilpotency_index(x)];
    }
    return fp;
}

/// "distinct" certifies non-isomorphism; equal fingerprints prove nothing.
inline std::string compare_fingerprints(const Fingerprint& a, const Fingerprint& b) {
    return a == b ? "inconclusive" : "distinct";
}

} // namespace udr
