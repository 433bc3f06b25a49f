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
#include <optional>
#include <string>
#include <vector>

#include "finite_local_ring.hpp"

namespace udr {

inline constexpr std::size_t kDefaultElementCap = 1000000;
inline constexpr std::size_t kDefaultMapCap = 10000000;

/// A ring map R -> S, stored by the images of the generators and of the additive basis.
struct RingHom {
    RingPtr source;
    RingPtr target;
    std::vector<Element> generator_images;
    std::vector<Element> basis_images;

    Element operator()(const Element& x) const {
        Element out = target->zero();
        for (std::size_t i = 0; i < source->rank(); ++i) {
            if (x.c[i] != 0) {
                out = target->add(out, target->scale(basis_images[i], static_cast<i64>(x.c[i])));
            }
        }
        return out;
    }
};

namespace detail {

inline bool same_residue_field(const FiniteLocalRing& r, const FiniteLocalRing& s) {
    return r.p() == s.p() && r.residue_degree() == s.residue_degree() &&
           r.base().residue_modulus() == s.base().residue_modulus();
}

} // namespace detail

/// Builds the map determined by generator images and checks that it is a well-defined
/// unital ring homomorphism sending the Witt generator to the Witt generator.
inline std::optional<RingHom> make_hom(const RingPtr& src, const RingPtr& dst, std::vector<Element> images) {
    require(images.size() == src->generator_count(), "dimension_mismatch", "one image per generator required");
    if (!detail::same_residue_field(*src, *dst)) {
        return std::nullopt;
    }
    if (auto bg = src->base_generator()) {
        if (!dst->base_generator() || !dst->equal(images[*bg], dst->generator(*dst->base_generator()))) {
            return std::nullopt;
        }
    }
    // The stored relations give a quick necessary test.
    for (const auto& f : src->relations()) {
        if (!dst->is_zero(dst->evaluate(f, images))) {
            return std::nullopt;
        }
    }
    RingHom h{src, dst, std::move(images), {}};
    for (const auto& e : src->basis_expressions()) {
        h.basis_images.push_back(dst->evaluate(e, h.generator_images));
    }
    for (std::size_t i = 0; i < src->rank(); ++i) {
        const Element killed = dst->scale(h.basis_images[i], static_cast<i64>(src->shape().modulus(i)));
        if (!dst->is_zero(killed)) {
            return std::nullopt;
        }
    }
    if (!dst->equal(h(src->one()), dst->one())) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < src->generator_count(); ++i) {
        if (!dst->equal(h(src->generator(i)), h.generator_images[i])) {
            return std::nullopt;
        }
    }
    for (std::size_t i = 0; i < src->rank(); ++i) {
        for (std::size_t j = i; j < src->rank(); ++j) {
            const Element lhs = h(src->mul(src->basis(i), src->basis(j)));
            if (!dst->equal(lhs, dst->mul(h.basis_images[i], h.basis_images[j]))) {
                return std::nullopt;
            }
        }
    }
    return h;
}

/// All local W(k)-algebra maps R -> S. Each generator image ranges over the fibre of
/// the reduction map above the generator's residue; the list is ordered by the
/// coordinate vectors of the generator images.
inline std::vector<RingHom> hom_enumerate(const RingPtr& src, const RingPtr& dst,
                                          std::size_t element_cap = kDefaultElementCap,
                                          std::size_t map_cap = kDefaultMapCap) {
    if (!detail::same_residue_field(*src, *dst)) {
        return {};
    }
    const auto ideal = dst->maximal_ideal_elements(element_cap);
    std::vector<std::vector<Element>> fibres;
    long double total = 1;
    for (std::size_t i = 0; i < src->generator_count(); ++i) {
        std::vector<Element> fibre;
        if (src->base_generator() && *src->base_generator() == i) {
            if (!dst->base_generator()) {
                return {};
            }
            fibre.push_back(dst->generator(*dst->base_generator()));
        } else {
            const Element base = dst->lift_residue(src->residue(src->generator(i)));
            for (const auto& z : ideal) {
                fibre.push_back(dst->add(base, z));
            }
            std::sort(fibre.begin(), fibre.end());
        }
        total *= static_cast<long double>(fibre.size());
        fibres.push_back(std::move(fibre));
    }
    require(total <= static_cast<long double>(map_cap), "cap_exceeded",
            "candidate map count exceeds the cap " + std::to_string(map_cap));
    std::vector<RingHom> out;
    std::vector<std::size_t> idx(fibres.size(), 0);
    for (;;) {
        std::vector<Element> images;
        for (std::size_t i = 0; i < fibres.size(); ++i) {
            images.push_back(fibres[i][idx[i]]);
        }
        if (auto h = make_hom(src, dst, std::move(images))) {
            out.push_back(std::move(*h));
        }
        std::size_t k = fibres.size();
        for (;;) {
            if (k == 0) {
                return out;
            }
            --k;
            if (++idx[k] < fibres[k].size()) {
                break;
            }
            idx[k] = 0;
        }
    }
}

} // namespace udr
