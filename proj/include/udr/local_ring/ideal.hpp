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
#include <string>
#include <vector>

#include "../chain_linalg.hpp"
#include "finite_local_ring.hpp"

namespace udr {

/// Ideal of a finite local ring, stored as an additive submodule closed under
/// multiplication by the ring basis.
class Ideal {
public:
    Ideal(RingPtr ring, const std::vector<Element>& generators) : ring_(std::move(ring)) {
        std::vector<Vec> rows;
        for (const auto& g : generators) {
            for (std::size_t j = 0; j < ring_->rank(); ++j) {
                rows.push_back(ring_->mul(g, ring_->basis(j)).c);
            }
        }
        module_ = Submodule(ring_->shape(), rows);
    }

    const RingPtr& ring() const { return ring_; }
    const Submodule& module() const { return module_; }
    int log_size() const { return module_.log_size(); }
    bool is_proper() const { return log_size() < ring_->log_size(); }
    bool is_zero() const { return log_size() == 0; }
    bool contains(const Element& x) const { return module_.contains(x.c); }

    /// Additive generators (echelon rows), enough to span the ideal as a group.
    std::vector<Element> generators() const {
        std::vector<Element> out;
        for (const auto& [v, ord] : module_.generators()) {
            out.push_back(ring_->element(v));
        }
        return out;
    }

    std::vector<Element> elements(std::size_t cap = 1000000) const {
        std::vector<Element> out;
        for (auto& v : module_.elements(cap)) {
            out.push_back(ring_->element(std::move(v)));
        }
        return out;
    }

    friend bool operator==(const Ideal& a, const Ideal& b) {
        if (a.log_size() != b.log_size()) {
            return false;
        }
        for (const auto& g : a.generators()) {
            if (!b.contains(g)) {
                return false;
            }
        }
        return true;
    }

private:
    RingPtr ring_;
    Submodule module_;
};

inline Ideal ideal_span(const RingPtr& ring, const std::vector<Element>& generators) {
    return Ideal(ring, generators);
}

inline Ideal maximal_ideal(const RingPtr& ring) {
    std::vector<Element> gens;
    for (const auto& [v, ord] : ring->maximal_ideal().generators()) {
        gens.push_back(ring->element(v));
    }
    return Ideal(ring, gens);
}

/// n * I.
inline Ideal scale_ideal(i64 n, const Ideal& ideal) {
    std::vector<Element> gens;
    for (const auto& g : ideal.generators()) {
        gens.push_back(ideal.ring()->scale(g, n));
    }
    return Ideal(ideal.ring(), gens);
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
    std::vector<Element> gens;
    for (const auto& x : a.generators()) {
        for (const auto& y : b.generators()) {
            gens.push_back(a.ring()->mul(x, y));
        }
    }
    return Ideal(a.ring(), gens);
}

inline Ideal ideal_power(const Ideal& ideal, int k) {
    Ideal out(ideal.ring(), {ideal.ring()->one()});
    for (int i = 0; i < k; ++i) {
        out = ideal_product(out, ideal);
    }
    return out;
}

/// R/I together with the natural surjection and a set-theoretic section.
struct QuotientRing {
    RingPtr source;
    RingPtr ring;
    QuotientMap map;

    Element project(const Element& x) const { return ring->element(map.project(x.c)); }
    Element lift(const Element& y) const { return source->element(map.lift(y.c)); }
};

inline QuotientRing quotient_ring(const Ideal& ideal) {
    const RingPtr& src = ideal.ring();
    require(ideal.is_proper(), "improper_ideal", "cannot take the quotient by the unit ideal");
    std::vector<Vec> rows;
    for (const auto& g : ideal.generators()) {
        rows.push_back(g.c);
    }
    QuotientRing q;
    q.source = src;
    q.map = snf_quotient(src->shape(), rows);
    const std::size_t n = q.map.target.rank();
    auto lift = [&](std::size_t k) {
        Vec e(n, 0);
        e[k] = 1;
        return src->element(q.map.lift(e));
    };
    RingData d;
    d.base = src->base();
    d.base.m = q.map.target.top();
    d.mode = RingMode::ExactFinite;
    d.name = src->name() + " / I";
    d.shape = q.map.target;
    d.table.assign(n, std::vector<Vec>(n));
    std::vector<Element> lifts;
    for (std::size_t k = 0; k < n; ++k) {
        lifts.push_back(lift(k));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d.table[i][j] = q.map.project(src->mul(lifts[i], lifts[j]).c);
        }
    }
    d.unity = q.map.project(src->one().c);
    d.generator_names = src->generator_names();
    for (std::size_t i = 0; i < src->generator_count(); ++i) {
        d.generators.push_back(q.map.project(src->generator(i).c));
    }
    auto as_poly = [&](const Element& x) {
        IntPoly f(src->generator_count());
        for (std::size_t i = 0; i < src->rank(); ++i) {
            if (x.c[i] != 0) {
                f = f + IntPoly::constant(f.nvars, mpz_class(static_cast<unsigned long>(x.c[i]))) *
                            src->basis_expressions()[i];
            }
        }
        return f;
    };
    for (const auto& x : lifts) {
        d.basis_exprs.push_back(as_poly(x));
    }
    d.base_generator = src->base_generator();
    d.relations = src->relations();
    for (const auto& g : ideal.generators()) {
        d.relations.push_back(as_poly(g));
    }
    q.ring = FiniteLocalRing::create(std::move(d));
    return q;
}

} // namespace udr
