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

#include "../local_ring/ideal.hpp"
#include "representation.hpp"

namespace udr {

/// J = |G| m_R.
inline Ideal averaging_ideal(const RingPtr& ring, const FiniteGroup& g) {
    return scale_ideal(static_cast<i64>(g.order()), maximal_ideal(ring));
}

/// Output of the averaging construction: B0 = (1/|G|) sum_g rho1(g) A rho2(g)^-1.
struct MarandaCertificate {
    Matrix b0;
    int precision = 0;
    bool conjugation_verified = false; // rho1(h) B0 = B0 rho2(h) for every h at `precision`
    bool reduces_to_identity = false;
};

/// Multiplies every entry by 1/|G|: by the inverse of s and, in a precision model,
/// by r divisions by p.
inline Matrix divide_by_group_order(const MatrixRing& alg, const Matrix& b, const FiniteGroup& g) {
    const RingPtr& ring = alg.ring();
    const auto [r, s] = p_part(g, ring->p());
    require(r == 0 || ring->is_precision_model(), "wrong_mode",
            "p divides |G| and is a zero-divisor in every finite ring; a precision model is required");
    const Element s_inv = ring->inverse(ring->from_int(static_cast<i64>(s)));
    Matrix out;
    for (const auto& x : b) {
        Element y = x;
        for (int k = 0; k < r; ++k) {
            y = ring->divide_by_p(y);
        }
        out.push_back(ring->mul(y, s_inv));
    }
    return out;
}

inline MarandaCertificate maranda_average(const Representation& rho1, const Representation& rho2, const Matrix& a) {
    require(rho1.ring == rho2.ring && rho1.group == rho2.group && rho1.dim == rho2.dim, "mismatch",
            "representations must share group, ring and dimension");
    const MatrixRing alg = rho1.algebra();
    const RingPtr& ring = rho1.ring;
    const FiniteGroup& g = *rho1.group;
    const auto [r, s] = p_part(g, ring->p());
    (void)s;
    require(r < ring->precision(), "precision_exhausted",
            "working precision " + std::to_string(ring->precision()) + " does not exceed the p-exponent of |G|");
    require(alg.reduces_to_identity(a), "precondition_failed", "A does not reduce to the identity");
    const Ideal j = averaging_ideal(ring, g);
    for (std::size_t x = 0; x < g.order(); ++x) {
        const Matrix diff = alg.sub(alg.mul(rho1.matrices[x], a), alg.mul(a, rho2.matrices[x]));
        for (const auto& e : diff) {
            require(j.contains(e), "precondition_failed",
                    "rho1(g) A = A rho2(g) fails modulo J at group element " + std::to_string(x));
        }
    }
    Matrix b = alg.zero();
    for (std::size_t x = 0; x < g.order(); ++x) {
        b = alg.add(b, alg.mul(alg.mul(rho1.matrices[x], a), rho2.matrices[g.inverse(x)]));
    }
    MarandaCertificate cert;
    cert.b0 = divide_by_group_order(alg, b, g);
    cert.precision = ring->precision() - r;
    for (const auto& e : cert.b0) {
        cert.precision = std::min(cert.precision, e.prec);
    }
    cert.reduces_to_identity = alg.reduces_to_identity(cert.b0);
    cert.conjugation_verified = true;
    for (std::size_t x = 0; x < g.order() && cert.conjugation_verified; ++x) {
        cert.conjugation_verified =
            alg.equal(alg.mul(rho1.matrices[x], cert.b0), alg.mul(cert.b0, rho2.matrices[x]));
    }
    return cert;
}

struct MarandaDecision {
    bool equivalent = false;
    std::optional<Matrix> reduced_conjugator; // over R/J
    std::optional<MarandaCertificate> certificate;
    int quotient_log_size = 0;
};

/// Decides strict equivalence over R through R/J: a finite search there, then the
/// averaging certificate lifts a positive answer.
inline MarandaDecision maranda_decide(const Representation& rho1, const Representation& rho2,
                                      const EnumerationOptions& opt = {}) {
    require(rho1.ring == rho2.ring && rho1.group == rho2.group && rho1.dim == rho2.dim, "mismatch",
            "representations must share group, ring and dimension");
    const Ideal j = averaging_ideal(rho1.ring, *rho1.group);
    const QuotientRing q = quotient_ring(j);
    MarandaDecision out;
    out.quotient_log_size = q.ring->log_size();
    const auto k = are_strictly_equivalent(reduce_representation(rho1, q), reduce_representation(rho2, q), opt);
    if (!k) {
        return out;
    }
    out.reduced_conjugator = *k;
    Matrix a;
    for (const auto& x : *k) {
        a.push_back(q.lift(x));
    }
    out.certificate = maranda_average(rho1, rho2, a);
    require(out.certificate->conjugation_verified && out.certificate->reduces_to_identity, "internal_inconsistency",
            "averaging certificate failed verification");
    out.equivalent = true;
    return out;
}

struct NormalizedIntertwiner {
    Element unit;
    Matrix b0;
};

/// Writes an intertwiner with scalar reduction as u * B0 with B0 in I + M_n(m_R).
inline NormalizedIntertwiner normalize_intertwiner(const Representation& rho1, const Representation& rho2,
                                                   const Matrix& b) {
    const MatrixRing alg = rho1.algebra();
    const RingPtr& ring = rho1.ring;
    for (std::size_t x = 0; x < rho1.group->order(); ++x) {
        require(alg.equal(alg.mul(rho1.matrices[x], b), alg.mul(b, rho2.matrices[x])), "not_an_intertwiner",
                "rho1 B = B rho2 fails at group element " + std::to_string(x));
    }
    const auto red = alg.residue(b);
    const std::size_t n = rho1.dim;
    const Vec c = red[0];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Vec& e = red[i * n + j];
            if (i == j) {
                require(e == c, "non_scalar_reduction", "reduction of B is not a scalar matrix");
            } else {
                require(ring->residue_field().is_zero(e), "non_scalar_reduction",
                        "reduction of B is not a scalar matrix");
            }
        }
    }
    require(!ring->residue_field().is_zero(c), "zero_reduction", "reduction of B is zero");
    NormalizedIntertwiner out{alg.at(b, 0, 0), {}};
    out.b0 = alg.scale(b, ring->inverse(out.unit));
    const auto inv = alg.inverse(out.b0);
    for (std::size_t x = 0; x < rho1.group->order(); ++x) {
        require(alg.equal(rho1.matrices[x], alg.mul(alg.mul(out.b0, rho2.matrices[x]), *inv)), "internal",
                "normalized intertwiner does not conjugate");
    }
    return out;
}

} // namespace udr
