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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "../chain_linalg.hpp"
#include "../galois.hpp"
#include "../presentation.hpp"
#include "finite_local_ring.hpp"
#include "strong_groebner.hpp"

namespace udr {

inline constexpr int kDefaultDegreeCap = 24;

/// Additive structure of (Z/p^m)[X]/(relations): standard monomials of a strong
/// Groebner basis, diagonalized by a Smith normal form.
class Truncation {
public:
    Truncation(const Presentation& pres, int m, int degree_cap = kDefaultDegreeCap, std::vector<u64> h = {})
        : p_(pres.p), m_(m), names_(pres.variables), relations_(pres.relations),
          ring_(pres.p, m, pres.nvars() + (pres.residue_degree > 1 ? 1 : 0)) {
        require(m >= 1, "invalid_precision", "truncation precision must be at least 1");
        base_ = GaloisRingParams::make(pres.p, m, pres.residue_degree, std::move(h));
        const std::size_t n = ring_.nvars();
        if (pres.residue_degree > 1) {
            // The Witt generator w of W(F_{p^r}) with its minimal polynomial.
            names_.push_back("w");
            for (auto& f : relations_) {
                IntPoly g(n);
                for (const auto& [mono, c] : f.terms) {
                    Monomial e = mono;
                    e.exps.push_back(0);
                    g.add_term(e, c);
                }
                f = std::move(g);
            }
            IntPoly hw(n);
            for (std::size_t i = 0; i < base_.h.size(); ++i) {
                hw.add_term(Monomial::variable(n, n - 1, static_cast<int>(i)), mpz_class(static_cast<unsigned long>(base_.h[i])));
            }
            relations_.push_back(hw);
            base_generator_ = n - 1;
        }
        std::vector<ModPolyRing::Poly> gens;
        for (const auto& f : relations_) {
            auto g = ring_.from_int_poly(f);
            if (!g.empty()) {
                gens.push_back(std::move(g));
            }
        }
        gb_ = ring_.strong_basis(gens, degree_cap);
        for (const auto& g : gb_) {
            if (g.begin()->first.is_one() && ring_.val(g.begin()->second) == 0) {
                fail("zero_ring", "the truncation is the zero ring (1 lies in the ideal)");
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            bool bounded = false;
            for (const auto& g : gb_) {
                const auto& [lm, lc] = *g.begin();
                if (ring_.val(lc) == 0 && lm.pure_power_variable() == static_cast<int>(i)) {
                    bounded = true;
                }
            }
            require(bounded, "not_finite_at_cap",
                    "quotient is not finite at this cap: no power of " + names_[i] + " reduces");
        }
        enumerate_standard(n);
        std::vector<Vec> rows;
        for (std::size_t a = 0; a < standard_.size(); ++a) {
            const int e = exps_[a];
            if (e >= m_) {
                continue;
            }
            ModPolyRing::Poly f;
            f[standard_[a]] = ipow(p_, e);
            const Vec nf = coords_free(ring_.reduce(f, gb_));
            Vec row(standard_.size(), 0);
            const u64 mod = ring_.modulus();
            for (std::size_t k = 0; k < row.size(); ++k) {
                row[k] = submod(k == a ? ipow(p_, e) : 0, nf[k], mod);
            }
            rows.push_back(std::move(row));
        }
        PGroupShape free_shape{p_, std::vector<int>(standard_.size(), m_)};
        quotient_ = snf_quotient(free_shape, rows);
    }

    u64 p() const { return p_; }
    int precision() const { return m_; }
    const PGroupShape& shape() const { return quotient_.target; }
    const std::vector<Monomial>& standard_monomials() const { return standard_; }
    const std::vector<std::string>& names() const { return names_; }
    const GaloisRingParams& base() const { return base_; }

    /// Coordinates of a polynomial (over the extended variable list) in the diagonal basis.
    Vec coordinates(const ModPolyRing::Poly& f) const { return quotient_.project(coords_free(ring_.reduce(f, gb_))); }

    Vec coordinates(const IntPoly& f) const { return coordinates(ring_.from_int_poly(extend(f))); }

    ModPolyRing::Poly basis_poly(std::size_t k) const {
        Vec e(shape().rank(), 0);
        e[k] = 1;
        const Vec x = quotient_.lift(e);
        ModPolyRing::Poly out;
        for (std::size_t a = 0; a < x.size(); ++a) {
            if (x[a] != 0) {
                out[standard_[a]] = x[a];
            }
        }
        return out;
    }

    /// Is the truncation a free Z/p^m-module of the given rank?
    bool is_free_of_rank(std::size_t rank) const {
        return shape().rank() == rank &&
               std::all_of(shape().orders.begin(), shape().orders.end(), [&](int e) { return e == m_; });
    }

    RingData ring_data(RingMode mode, const std::string& name) const {
        const std::size_t n = shape().rank();
        RingData d;
        d.base = base_;
        d.mode = mode;
        d.name = name;
        d.shape = shape();
        std::vector<ModPolyRing::Poly> polys;
        for (std::size_t k = 0; k < n; ++k) {
            polys.push_back(basis_poly(k));
        }
        d.table.assign(n, std::vector<Vec>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                d.table[i][j] = coordinates(multiply(polys[i], polys[j]));
                d.table[j][i] = d.table[i][j];
            }
        }
        ModPolyRing::Poly one;
        one[Monomial(ring_.nvars())] = 1;
        d.unity = coordinates(one);
        d.generator_names = names_;
        for (std::size_t i = 0; i < ring_.nvars(); ++i) {
            ModPolyRing::Poly x;
            x[Monomial::variable(ring_.nvars(), i)] = 1;
            d.generators.push_back(coordinates(x));
        }
        for (const auto& f : polys) {
            IntPoly e(ring_.nvars());
            for (const auto& [mono, c] : f) {
                e.add_term(mono, mpz_class(static_cast<unsigned long>(c)));
            }
            d.basis_exprs.push_back(std::move(e));
        }
        d.base_generator = base_generator_;
        d.relations = relations_;
        return d;
    }

private:
    ModPolyRing::Poly multiply(const ModPolyRing::Poly& a, const ModPolyRing::Poly& b) const {
        ModPolyRing::Poly out;
        for (const auto& [ma, ca] : a) {
            ring_.add_scaled(out, b, ca, ma);
        }
        return out;
    }

    IntPoly extend(const IntPoly& f) const {
        if (f.nvars == ring_.nvars()) {
            return f;
        }
        require(f.nvars + 1 == ring_.nvars(), "dimension_mismatch", "polynomial has the wrong number of variables");
        IntPoly g(ring_.nvars());
        for (const auto& [mono, c] : f.terms) {
            Monomial e = mono;
            e.exps.push_back(0);
            g.add_term(e, c);
        }
        return g;
    }

    void enumerate_standard(std::size_t n) {
        std::set<Monomial, DegRevLexGreater> seen;
        std::vector<Monomial> frontier{Monomial(n)};
        std::vector<std::pair<Monomial, int>> found;
        while (!frontier.empty()) {
            std::vector<Monomial> next;
            for (const auto& mono : frontier) {
                if (!seen.insert(mono).second) {
                    continue;
                }
                int e = m_;
                for (const auto& g : gb_) {
                    const auto& [lm, lc] = *g.begin();
                    if (lm.divides(mono)) {
                        e = std::min(e, ring_.val(lc));
                    }
                }
                if (e == 0) {
                    continue;
                }
                found.emplace_back(mono, e);
                for (std::size_t i = 0; i < n; ++i) {
                    Monomial up = mono;
                    ++up.exps[i];
                    next.push_back(up);
                }
            }
            frontier = std::move(next);
        }
        std::sort(found.begin(), found.end(),
                  [](const auto& a, const auto& b) { return graded_basis_less(a.first, b.first); });
        for (const auto& [mono, e] : found) {
            index_[mono] = standard_.size();
            standard_.push_back(mono);
            exps_.push_back(e);
        }
    }

    Vec coords_free(const ModPolyRing::Poly& nf) const {
        Vec v(standard_.size(), 0);
        for (const auto& [mono, c] : nf) {
            auto it = index_.find(mono);
            require(it != index_.end(), "internal", "normal form left a non-standard monomial");
            v[it->second] = c;
        }
        return v;
    }

    u64 p_;
    int m_;
    std::vector<std::string> names_;
    std::vector<IntPoly> relations_;
    ModPolyRing ring_;
    GaloisRingParams base_;
    std::optional<std::size_t> base_generator_;
    std::vector<ModPolyRing::Poly> gb_;
    std::vector<Monomial> standard_;
    std::vector<int> exps_;
    std::map<Monomial, std::size_t, DegRevLexGreater> index_;
    QuotientMap quotient_;
};

inline std::string truncation_name(const Presentation& pres, int m) {
    std::string out = "Z";
    if (pres.residue_degree > 1) {
        out = "W(F_" + std::to_string(pres.p) + "^" + std::to_string(pres.residue_degree) + ")";
    }
    if (!pres.variables.empty()) {
        out += "[";
        for (std::size_t i = 0; i < pres.variables.size(); ++i) {
            out += (i ? "," : "") + pres.variables[i];
        }
        out += "]";
    }
    if (!pres.relations.empty()) {
        out += "/(";
        const auto rels = pres.relation_strings();
        for (std::size_t i = 0; i < rels.size(); ++i) {
            out += (i ? ", " : "") + rels[i];
        }
        out += ")";
    }
    return out + " mod " + std::to_string(pres.p) + "^" + std::to_string(m);
}

/// (Z/p^m)[X_1..X_t]/(relations) as a finite local ring. Precision models must be free.
inline RingPtr ring_from_truncated_presentation(const Presentation& pres, int m, int degree_cap = kDefaultDegreeCap,
                                                RingMode mode = RingMode::ExactFinite) {
    const Truncation t(pres, m, degree_cap);
    return FiniteLocalRing::create(t.ring_data(mode, truncation_name(pres, m)));
}

/// GR(p^m, r) = (Z/p^m)[Y]/(h).
inline RingPtr build_galois_ring(u64 p, int m, int r, std::vector<u64> h = {},
                                 RingMode mode = RingMode::ExactFinite) {
    Presentation pres = Presentation::make(p, {}, {}, r);
    const Truncation t(pres, m, std::max(kDefaultDegreeCap, r + 1), std::move(h));
    std::string name = "Z/" + std::to_string(ipow(p, m));
    if (r > 1) {
        name = "GR(" + std::to_string(p) + "^" + std::to_string(m) + "," + std::to_string(r) + ")";
    }
    return FiniteLocalRing::create(t.ring_data(mode, name));
}

/// The dual numbers F_q[e]/(e^2) over the residue field of degree r.
inline RingPtr dual_numbers(u64 p, int r = 1) {
    Presentation pres = Presentation::make(p, {"e"}, {"e^2"}, r);
    return ring_from_truncated_presentation(pres, 1);
}

} // namespace udr
