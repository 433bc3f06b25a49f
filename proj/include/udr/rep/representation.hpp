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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "../group/finite_group.hpp"
#include "../local_ring/construct.hpp"
#include "../local_ring/hom.hpp"
#include "../local_ring/ideal.hpp"
#include "matrix.hpp"

namespace udr {

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A homomorphism G -> GL_n(R), stored on every group element.
struct Representation {
    GroupPtr group;
    RingPtr ring;
    std::size_t dim = 0;
    std::vector<Matrix> matrices; // indexed by group element

    MatrixRing algebra() const { return MatrixRing(ring, dim); }

    std::vector<Matrix> generator_images() const {
        std::vector<Matrix> out;
        for (auto s : group->generators()) {
            out.push_back(matrices[s]);
        }
        return out;
    }

    /// Canonical ordering key: the generator images, entry by entry.
    Vec key() const {
        Vec out;
        for (auto s : group->generators()) {
            const Vec k = MatrixRing::key(matrices[s]);
            out.insert(out.end(), k.begin(), k.end());
        }
        return out;
    }
};

struct EnumerationOptions {
    std::size_t element_cap = kDefaultElementCap;
    std::size_t map_cap = kDefaultMapCap;
    unsigned threads = 1;
};

/// Extends generator matrices to a representation, verifying all products; throws on failure.
inline Representation make_representation(GroupPtr group, RingPtr ring, std::size_t n,
                                          const std::vector<Matrix>& generator_images) {
    const MatrixRing alg(ring, n);
    for (const auto& m : generator_images) {
        require(m.size() == n * n, "dimension_mismatch", "generator matrix has the wrong size");
        require(alg.is_invertible(m), "singular_matrix", "generator matrix is not invertible");
    }
    auto ext = extend_and_verify_hom<Matrix>(
        *group, generator_images, alg.identity(), [&](const Matrix& a, const Matrix& b) { return alg.mul(a, b); },
        [&](const Matrix& a, const Matrix& b) { return alg.equal(a, b); }, HomCheck::AllPairs);
    if (!ext.valid) {
        fail("not_a_homomorphism", "generator images violate the group law at the pair (" +
                                       std::to_string(ext.violation->first) + ", " +
                                       std::to_string(ext.violation->second) + ")");
    }
    return Representation{std::move(group), std::move(ring), n, std::move(ext.images)};
}

/// Residual representation over the residue field, given as a FiniteLocalRing with m = 0.
inline Representation residual_rep(GroupPtr group, RingPtr field, std::size_t n,
                                   const std::vector<Matrix>& generator_images) {
    require(field->maximal_ideal().log_size() == 0, "not_a_field", "residual representations live over a field");
    return make_representation(std::move(group), std::move(field), n, generator_images);
}

/// Every n x n matrix with entries in the given sorted element list, in lexicographic order.
inline std::vector<Matrix> matrices_over(const std::vector<Element>& entries, std::size_t n, const Matrix& offset,
                                         const FiniteLocalRing& ring) {
    std::vector<Matrix> out;
    const std::size_t cells = n * n;
    std::vector<std::size_t> idx(cells, 0);
    for (;;) {
        Matrix m(cells);
        for (std::size_t c = 0; c < cells; ++c) {
            m[c] = ring.add(offset[c], entries[idx[c]]);
        }
        out.push_back(std::move(m));
        std::size_t c = cells;
        for (;;) {
            if (c == 0) {
                std::sort(out.begin(), out.end(),
                          [](const Matrix& a, const Matrix& b) { return MatrixRing::key(a) < MatrixRing::key(b); });
                return out;
            }
            --c;
            if (++idx[c] < entries.size()) {
                break;
            }
            idx[c] = 0;
        }
    }
}

namespace detail {

inline void check_count(long double count, std::size_t cap, const std::string& what) {
    require(count <= static_cast<long double>(cap), "cap_exceeded",
            what + " count exceeds the cap " + std::to_string(cap));
}

inline long double power_ld(std::size_t base, std::size_t e) {
    long double r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= static_cast<long double>(base);
    }
    return r;
}

} // namespace detail

/// ker(GL_n(R) -> GL_n(k)) = I_n + M_n(m_R), in lexicographic order.
inline std::vector<Matrix> kernel_group(const RingPtr& ring, std::size_t n, const EnumerationOptions& opt = {}) {
    const auto m = ring->maximal_ideal_elements(opt.element_cap);
    detail::check_count(detail::power_ld(m.size(), n * n), opt.element_cap, "kernel group");
    return matrices_over(m, n, MatrixRing(ring, n).identity(), *ring);
}

/// Entrywise section of the reduction map, applied to a matrix over the residue field.
inline Matrix lift_matrix(const FiniteLocalRing& field, const RingPtr& ring, const Matrix& a) {
    Matrix out;
    for (const auto& x : a) {
        out.push_back(ring->lift_residue(field.residue(x)));
    }
    return out;
}

/// All lifts of rho_bar to R, ordered by their generator images.
inline std::vector<Representation> enumerate_lifts(const Representation& rbar, const RingPtr& ring,
                                                   const EnumerationOptions& opt = {}) {
    require(rbar.ring->p() == ring->p() && rbar.ring->residue_degree() == ring->residue_degree() &&
                rbar.ring->base().residue_modulus() == ring->base().residue_modulus(),
            "residue_field_mismatch", "ring " + ring->name() + " does not have the residual representation's field");
    const std::size_t n = rbar.dim;
    const auto m = ring->maximal_ideal_elements(opt.element_cap);
    const auto& gens = rbar.group->generators();
    detail::check_count(detail::power_ld(m.size(), n * n * gens.size()), opt.map_cap, "candidate lift");
    std::vector<std::vector<Matrix>> fibres;
    for (auto s : gens) {
        fibres.push_back(matrices_over(m, n, lift_matrix(*rbar.ring, ring, rbar.matrices[s]), *ring));
    }
    std::size_t total = 1;
    for (const auto& f : fibres) {
        total *= f.size();
    }
    const MatrixRing alg(ring, n);
    const Matrix id = alg.identity();
    std::vector<std::vector<std::pair<std::size_t, std::vector<Matrix>>>> found(std::max(1U, opt.threads));
    auto work = [&](unsigned t, unsigned stride) {
        for (std::size_t idx = t; idx < total; idx += stride) {
            std::vector<Matrix> images(gens.size());
            std::size_t rest = idx;
            for (std::size_t k = gens.size(); k-- > 0;) {
                images[k] = fibres[k][rest % fibres[k].size()];
                rest /= fibres[k].size();
            }
            auto ext = extend_and_verify_hom<Matrix>(
                *rbar.group, images, id, [&](const Matrix& a, const Matrix& b) { return alg.mul(a, b); },
                [&](const Matrix& a, const Matrix& b) { return alg.equal(a, b); }, HomCheck::CayleyEdges);
            if (ext.valid) {
                found[t].emplace_back(idx, std::move(ext.images));
            }
        }
    };
    const unsigned threads = std::max(1U, opt.threads);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t, threads);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    std::vector<std::pair<std::size_t, std::vector<Matrix>>> all;
    for (auto& f : found) {
        for (auto& x : f) {
            all.push_back(std::move(x));
        }
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Representation> out;
    for (auto& [idx, mats] : all) {
        out.push_back(Representation{rbar.group, ring, n, std::move(mats)});
    }
    return out;
}

/// K rho K^-1.
inline Representation conjugate(const Representation& rho, const Matrix& k, const Matrix& k_inv) {
    const MatrixRing alg = rho.algebra();
    Representation out = rho;
    for (auto& m : out.matrices) {
        m = alg.mul(alg.mul(k, m), k_inv);
    }
    return out;
}

struct DefSet {
    std::vector<Representation> representatives;
    std::vector<std::size_t> orbit_sizes;
    std::size_t lift_count = 0;
    std::size_t kernel_size = 0;

    std::size_t class_count() const { return representatives.size(); }
};

/// Strict-equivalence classes of lifts; each representative is the least lift in its orbit.
inline DefSet def_set(const Representation& rbar, const RingPtr& ring, const EnumerationOptions& opt = {}) {
    const auto lifts = enumerate_lifts(rbar, ring, opt);
    const auto kernel = kernel_group(ring, rbar.dim, opt);
    const MatrixRing alg(ring, rbar.dim);
    std::vector<Matrix> inverses;
    for (const auto& k : kernel) {
        inverses.push_back(*alg.inverse(k));
    }
    std::map<Vec, std::size_t> index;
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        index[lifts[i].key()] = i;
    }
    DefSet out;
    out.lift_count = lifts.size();
    out.kernel_size = kernel.size();
    std::vector<bool> seen(lifts.size(), false);
    const auto& gens = rbar.group->generators();
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        std::size_t size = 0;
        for (std::size_t k = 0; k < kernel.size(); ++k) {
            Vec key;
            for (auto s : gens) {
                const Vec part = MatrixRing::key(alg.mul(alg.mul(kernel[k], lifts[i].matrices[s]), inverses[k]));
                key.insert(key.end(), part.begin(), part.end());
            }
            const auto it = index.find(key);
            require(it != index.end(), "internal", "conjugate of a lift is missing from the lift list");
            if (!seen[it->second]) {
                seen[it->second] = true;
                ++size;
            }
        }
        out.representatives.push_back(lifts[i]);
        out.orbit_sizes.push_back(size);
    }
    return out;
}

struct TangentReport {
    DefSet classes;
    u64 q = 0;
    int dimension = 0;
};

/// Def over the dual numbers k[e]; the class count must be a power of q = |k|.
inline TangentReport tangent_space(const Representation& rbar, const EnumerationOptions& opt = {}) {
    TangentReport rep;
    rep.classes = def_set(rbar, dual_numbers(rbar.ring->p(), rbar.ring->residue_degree()), opt);
    rep.q = ipow(rbar.ring->p(), rbar.ring->residue_degree());
    u64 count = rep.classes.class_count();
    while (count % rep.q == 0) {
        count /= rep.q;
        ++rep.dimension;
    }
    require(count == 1, "internal_inconsistency", "tangent class count is not a power of q");
    return rep;
}

/// Searches ker(pi) for K with rho1 = K rho2 K^-1.
inline std::optional<Matrix> are_strictly_equivalent(const Representation& rho1, const Representation& rho2,
                                                     const EnumerationOptions& opt = {}) {
    require(rho1.dim == rho2.dim && rho1.ring == rho2.ring && rho1.group == rho2.group, "mismatch",
            "representations must share group, ring and dimension");
    const MatrixRing alg = rho1.algebra();
    for (const auto& k : kernel_group(rho1.ring, rho1.dim, opt)) {
        bool ok = true;
        for (auto s : rho1.group->generators()) {
            if (!alg.equal(alg.mul(rho1.matrices[s], k), alg.mul(k, rho2.matrices[s]))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return k;
        }
    }
    return std::nullopt;
}

/// Entrywise image of a representation under a ring quotient.
inline Representation reduce_representation(const Representation& rho, const QuotientRing& q) {
    Representation out{rho.group, q.ring, rho.dim, {}};
    for (const auto& m : rho.matrices) {
        Matrix r;
        for (const auto& x : m) {
            r.push_back(q.project(x));
        }
        out.matrices.push_back(std::move(r));
    }
    return out;
}

/// Reduction to the residue field as a representation over F_q.
inline Representation residual_of(const Representation& rho, const RingPtr& field) {
    Representation out{rho.group, field, rho.dim, {}};
    for (const auto& m : rho.matrices) {
        out.matrices.push_back(lift_matrix(*rho.ring, field, m));
    }
    return out;
}

} // namespace udr
