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
#include <utility>
#include <vector>

#include "../chain_linalg.hpp"
#include "../local_ring/hom.hpp"
#include "../local_ring/ideal.hpp"

namespace udr {

/// Additive map R -> S given by the images of R's additive basis.
struct AdditiveMap {
    RingPtr source;
    RingPtr target;
    std::vector<Element> basis_values;

    Element operator()(const Element& x) const {
        Element out = target->zero();
        for (std::size_t i = 0; i < source->rank(); ++i) {
            if (x.c[i] != 0) {
                out = target->add(out, target->scale(basis_values[i], static_cast<i64>(x.c[i])));
            }
        }
        return out;
    }

    static AdditiveMap of(const RingHom& f) { return AdditiveMap{f.source, f.target, f.basis_images}; }

    AdditiveMap operator-(const AdditiveMap& o) const {
        AdditiveMap out{source, target, {}};
        for (std::size_t i = 0; i < basis_values.size(); ++i) {
            out.basis_values.push_back(target->sub(basis_values[i], o.basis_values[i]));
        }
        return out;
    }

    AdditiveMap operator+(const AdditiveMap& o) const {
        AdditiveMap out{source, target, {}};
        for (std::size_t i = 0; i < basis_values.size(); ++i) {
            out.basis_values.push_back(target->add(basis_values[i], o.basis_values[i]));
        }
        return out;
    }
};

namespace detail {

/// p^{e_i} v_i = 0 for every basis element: the basis values define an additive map.
inline bool respects_orders(const AdditiveMap& d) {
    for (std::size_t i = 0; i < d.source->rank(); ++i) {
        if (!d.target->is_zero(d.target->scale(d.basis_values[i], static_cast<i64>(d.source->shape().modulus(i))))) {
            return false;
        }
    }
    return true;
}

inline Element witt_generator_image(const AdditiveMap& d) {
    return d(d.source->generator(*d.source->base_generator()));
}

inline void require_square_zero(const Ideal& ideal) {
    require(ideal_product(ideal, ideal).is_zero(), "not_square_zero", "the ideal does not square to zero");
}

} // namespace detail

/// Is D : R -> I a W(k)-derivation relative to f, i.e. D(xy) = f(x) D(y) + D(x) f(y)?
inline bool derivation_check(const AdditiveMap& f, const Ideal& ideal, const AdditiveMap& d) {
    detail::require_square_zero(ideal);
    const RingPtr& r = d.source;
    const RingPtr& s = d.target;
    if (!detail::respects_orders(d)) {
        return false;
    }
    for (const auto& v : d.basis_values) {
        if (!ideal.contains(v)) {
            return false;
        }
    }
    if (r->base_generator() && !s->is_zero(detail::witt_generator_image(d))) {
        return false;
    }
    for (std::size_t i = 0; i < r->rank(); ++i) {
        for (std::size_t j = i; j < r->rank(); ++j) {
            const Element lhs = d(r->mul(r->basis(i), r->basis(j)));
            const Element rhs = s->add(s->mul(f.basis_values[i], d.basis_values[j]),
                                       s->mul(d.basis_values[i], f.basis_values[j]));
            if (!s->equal(lhs, rhs)) {
                return false;
            }
        }
    }
    return true;
}

/// Is the additive map g a unital W(k)-algebra homomorphism?
inline bool is_ring_hom(const AdditiveMap& g) {
    const RingPtr& r = g.source;
    const RingPtr& s = g.target;
    if (!detail::respects_orders(g) || !s->equal(g(r->one()), s->one())) {
        return false;
    }
    if (r->base_generator()) {
        if (!s->base_generator() ||
            !s->equal(detail::witt_generator_image(g), s->generator(*s->base_generator()))) {
            return false;
        }
    }
    for (std::size_t i = 0; i < r->rank(); ++i) {
        for (std::size_t j = i; j < r->rank(); ++j) {
            if (!s->equal(g(r->mul(r->basis(i), r->basis(j))), s->mul(g.basis_values[i], g.basis_values[j]))) {
                return false;
            }
        }
    }
    return true;
}

/// (g is a homomorphism, g - f is a derivation) for f a homomorphism and g = f mod I.
inline std::pair<bool, bool> hom_vs_derivation(const RingHom& f, const AdditiveMap& g, const Ideal& ideal) {
    detail::require_square_zero(ideal);
    const AdditiveMap fa = AdditiveMap::of(f);
    const AdditiveMap d = g - fa;
    for (const auto& v : d.basis_values) {
        require(ideal.contains(v), "not_congruent", "g is not congruent to f modulo the ideal");
    }
    return {is_ring_hom(g), derivation_check(fa, ideal, d)};
}

/// The R-module R^g / (relations), diagonalized.
struct FiniteModule {
    RingPtr ring;
    std::size_t generator_count = 0;
    QuotientMap map; // from R^g, flattened coordinates, to the diagonal basis

    std::size_t rank() const { return map.target.rank(); }

    Vec project(const std::vector<Element>& x) const {
        Vec flat;
        for (const auto& e : x) {
            flat.insert(flat.end(), e.c.begin(), e.c.end());
        }
        return map.project(flat);
    }

    std::vector<Element> lift(const Vec& y) const {
        const Vec flat = map.lift(y);
        std::vector<Element> out;
        const std::size_t n = ring->rank();
        for (std::size_t l = 0; l < generator_count; ++l) {
            out.push_back(ring->element(Vec(flat.begin() + static_cast<std::ptrdiff_t>(l * n),
                                            flat.begin() + static_cast<std::ptrdiff_t>((l + 1) * n))));
        }
        return out;
    }
};

inline FiniteModule finite_module(const RingPtr& ring, std::size_t generator_count,
                                  const std::vector<std::vector<Element>>& relations) {
    const std::size_t n = ring->rank();
    PGroupShape shape{ring->p(), {}};
    for (std::size_t l = 0; l < generator_count; ++l) {
        shape.orders.insert(shape.orders.end(), ring->shape().orders.begin(), ring->shape().orders.end());
    }
    std::vector<Vec> rows;
    for (const auto& rel : relations) {
        require(rel.size() == generator_count, "inconsistent_module", "module relation has the wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            Vec row;
            for (const auto& x : rel) {
                const Vec c = ring->mul(x, ring->basis(j)).c;
                row.insert(row.end(), c.begin(), c.end());
            }
            rows.push_back(std::move(row));
        }
    }
    return FiniteModule{ring, generator_count, snf_quotient(shape, rows)};
}

/// Omega_{R/W(k)} from the Jacobian of the stored relations, with the universal derivation.
struct KaehlerModule {
    FiniteModule module;
    std::vector<std::vector<Element>> d_basis; // d(b_i) in R^t
};

inline KaehlerModule kaehler_module(const RingPtr& ring) {
    const std::size_t t = ring->generator_count();
    std::vector<Element> gens;
    for (std::size_t i = 0; i < t; ++i) {
        gens.push_back(ring->generator(i));
    }
    auto gradient = [&](const IntPoly& f) {
        std::vector<Element> out;
        for (std::size_t j = 0; j < t; ++j) {
            out.push_back(ring->evaluate(f.derivative(j), gens));
        }
        return out;
    };
    std::vector<std::vector<Element>> relations;
    for (const auto& f : ring->relations()) {
        relations.push_back(gradient(f));
    }
    KaehlerModule out{finite_module(ring, t, relations), {}};
    for (const auto& e : ring->basis_expressions()) {
        out.d_basis.push_back(gradient(e));
    }
    return out;
}

/// S = R (+) M with M^2 = 0.
struct SquareZeroExtension {
    RingPtr base;
    RingPtr ring;
    FiniteModule module;

    Element include(const Element& x) const {
        Vec c = x.c;
        c.resize(ring->rank(), 0);
        return ring->element(std::move(c));
    }

    Element module_element(const std::vector<Element>& x) const {
        Vec c(base->rank(), 0);
        const Vec m = module.project(x);
        c.insert(c.end(), m.begin(), m.end());
        return ring->element(std::move(c));
    }

    Ideal ideal() const {
        std::vector<Element> gens;
        for (std::size_t k = 0; k < module.rank(); ++k) {
            gens.push_back(ring->basis(base->rank() + k));
        }
        return Ideal(ring, gens);
    }

    /// The inclusion R -> S as a ring map.
    RingHom inclusion() const {
        RingHom h{base, ring, {}, {}};
        for (std::size_t i = 0; i < base->generator_count(); ++i) {
            h.generator_images.push_back(include(base->generator(i)));
        }
        for (std::size_t i = 0; i < base->rank(); ++i) {
            h.basis_images.push_back(include(base->basis(i)));
        }
        return h;
    }
};

inline SquareZeroExtension square_zero_extension(const RingPtr& ring, const FiniteModule& module) {
    const std::size_t n = ring->rank();
    const std::size_t k = module.rank();
    RingData d;
    d.base = ring->base();
    d.mode = RingMode::ExactFinite;
    d.name = ring->name() + " (+) M";
    d.shape = ring->shape();
    d.shape.orders.insert(d.shape.orders.end(), module.map.target.orders.begin(), module.map.target.orders.end());
    d.base.m = d.shape.top();
    const std::size_t total = n + k;
    d.table.assign(total, std::vector<Vec>(total, Vec(total, 0)));
    std::vector<std::vector<Element>> lifts;
    for (std::size_t a = 0; a < k; ++a) {
        Vec e(k, 0);
        e[a] = 1;
        lifts.push_back(module.lift(e));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Vec& c = ring->structure(i, j);
            std::copy(c.begin(), c.end(), d.table[i][j].begin());
        }
        for (std::size_t a = 0; a < k; ++a) {
            std::vector<Element> prod;
            for (const auto& x : lifts[a]) {
                prod.push_back(ring->mul(ring->basis(i), x));
            }
            const Vec m = module.project(prod);
            std::copy(m.begin(), m.end(), d.table[i][n + a].begin() + static_cast<std::ptrdiff_t>(n));
            d.table[n + a][i] = d.table[i][n + a];
        }
    }
    d.unity = ring->one().c;
    d.unity.resize(total, 0);
    const std::size_t t = ring->generator_count();
    const std::size_t g = module.generator_count;
    d.generator_names = ring->generator_names();
    for (std::size_t l = 0; l < g; ++l) {
        d.generator_names.push_back("E" + std::to_string(l + 1));
    }
    for (std::size_t i = 0; i < t; ++i) {
        Vec c = ring->generator(i).c;
        c.resize(total, 0);
        d.generators.push_back(c);
    }
    for (std::size_t l = 0; l < g; ++l) {
        std::vector<Element> e(g, ring->zero());
        e[l] = ring->one();
        Vec c(n, 0);
        const Vec m = module.project(e);
        c.insert(c.end(), m.begin(), m.end());
        d.generators.push_back(c);
    }
    auto widen = [&](const IntPoly& f) {
        IntPoly out(t + g);
        for (const auto& [mono, c] : f.terms) {
            Monomial w = mono;
            w.exps.resize(t + g, 0);
            out.add_term(w, c);
        }
        return out;
    };
    auto as_poly = [&](const Element& x) {
        IntPoly f(t + g);
        for (std::size_t i = 0; i < n; ++i) {
            if (x.c[i] != 0) {
                f = f + IntPoly::constant(t + g, mpz_class(static_cast<unsigned long>(x.c[i]))) *
                            widen(ring->basis_expressions()[i]);
            }
        }
        return f;
    };
    for (const auto& e : ring->basis_expressions()) {
        d.basis_exprs.push_back(widen(e));
    }
    for (std::size_t a = 0; a < k; ++a) {
        IntPoly f(t + g);
        for (std::size_t l = 0; l < g; ++l) {
            f = f + as_poly(lifts[a][l]) * IntPoly::variable(t + g, t + l);
        }
        d.basis_exprs.push_back(std::move(f));
    }
    d.base_generator = ring->base_generator();
    for (const auto& f : ring->relations()) {
        d.relations.push_back(widen(f));
    }
    for (std::size_t l = 0; l < g; ++l) {
        for (std::size_t l2 = l; l2 < g; ++l2) {
            d.relations.push_back(IntPoly::variable(t + g, t + l) * IntPoly::variable(t + g, t + l2));
        }
    }
    return SquareZeroExtension{ring, FiniteLocalRing::create(std::move(d)), module};
}

/// x -> x + C d(x) for each scalar C, with d the universal derivation into Omega.
struct HomFamilyMember {
    i64 scalar = 0;
    AdditiveMap map;
    bool is_hom = false;
    bool difference_is_derivation = false;
};

inline std::vector<HomFamilyMember> hom_family(const SquareZeroExtension& ext, const std::vector<std::vector<Element>>& d_basis,
                                               const std::vector<i64>& scalars) {
    const RingHom f = ext.inclusion();
    const Ideal ideal = ext.ideal();
    std::vector<HomFamilyMember> out;
    for (i64 c : scalars) {
        AdditiveMap g{ext.base, ext.ring, {}};
        for (std::size_t i = 0; i < ext.base->rank(); ++i) {
            const Element dx = ext.module_element(d_basis[i]);
            g.basis_values.push_back(ext.ring->add(ext.include(ext.base->basis(i)), ext.ring->scale(dx, c)));
        }
        const auto [hom, der] = hom_vs_derivation(f, g, ideal);
        out.push_back(HomFamilyMember{c, std::move(g), hom, der});
    }
    return out;
}

} // namespace udr
