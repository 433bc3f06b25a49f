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

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "udr/rep/maranda.hpp"

using namespace udr;
using udr::testing::IntMat;

namespace {

GroupPtr group_ptr(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

Representation trivial(const GroupPtr& g, const RingPtr& field, std::size_t n) {
    const MatrixRing a(field, n);
    return residual_rep(g, field, n, std::vector<Matrix>(g->generators().size(), a.identity()));
}

Matrix from_ints(const RingPtr& ring, const std::vector<i64>& entries) {
    Matrix m;
    for (i64 x : entries) {
        m.push_back(ring->from_int(x));
    }
    return m;
}

} // namespace

TEST(Lifts, OneDimensionalCountsMatchRootsOfUnity) {
    // Lifts of the trivial character of C_k to Z/p^m: x = 1 mod p with x^k = 1.
    for (auto [p, m, k] : std::vector<std::tuple<u64, int, std::size_t>>{{2, 2, 2}, {2, 3, 2}, {2, 3, 4}, {3, 2, 3}, {2, 2, 3}, {3, 3, 3}}) {
        u64 mod = 1;
        for (int i = 0; i < m; ++i) {
            mod *= p;
        }
        std::size_t expected = 0;
        for (u64 x = 1; x < mod; x += p) {
            u64 y = 1;
            for (std::size_t e = 0; e < k; ++e) {
                y = y * x % mod;
            }
            expected += y == 1;
        }
        const auto rbar = trivial(group_ptr(cyclic(k)), build_galois_ring(p, 1, 1), 1);
        EXPECT_EQ(enumerate_lifts(rbar, build_galois_ring(p, m, 1)).size(), expected) << p << "^" << m << " C" << k;
        EXPECT_EQ(def_set(rbar, build_galois_ring(p, m, 1)).class_count(), expected);
    }
}

TEST(Lifts, TwoDimensionalCountsMatchBruteForce) {
    struct Case {
        u64 p;
        int m;
        std::size_t k;
        std::vector<u64> rbar;
    };
    const std::vector<Case> cases = {
        {2, 2, 2, {1, 0, 0, 1}}, {2, 2, 2, {1, 1, 0, 1}}, {2, 2, 3, {0, 1, 1, 1}},
        {2, 2, 4, {1, 1, 0, 1}}, {3, 2, 3, {1, 1, 0, 1}}, {2, 3, 2, {0, 1, 1, 0}},
    };
    for (const auto& c : cases) {
        u64 mod = 1;
        for (int i = 0; i < c.m; ++i) {
            mod *= c.p;
        }
        const auto oracle = udr::testing::cyclic_def_oracle(IntMat{2, mod, c.rbar}, c.p, c.k);
        const RingPtr field = build_galois_ring(c.p, 1, 1);
        std::vector<i64> entries(c.rbar.begin(), c.rbar.end());
        const auto rbar = residual_rep(group_ptr(cyclic(c.k)), field, 2, {from_ints(field, entries)});
        const DefSet d = def_set(rbar, build_galois_ring(c.p, c.m, 1));
        EXPECT_EQ(d.lift_count, oracle.lifts);
        EXPECT_EQ(d.class_count(), oracle.classes);
        auto sizes = d.orbit_sizes;
        auto expected = oracle.orbit_sizes;
        std::sort(sizes.begin(), sizes.end());
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(sizes, expected);
    }
}

TEST(Lifts, ThreadCountDoesNotChangeResult) {
    const auto rbar = trivial(group_ptr(direct_product(cyclic(2), cyclic(2))), build_galois_ring(2, 1, 1), 2);
    const RingPtr z4 = build_galois_ring(2, 2, 1);
    const auto one = enumerate_lifts(rbar, z4, {kDefaultElementCap, kDefaultMapCap, 1});
    const auto four = enumerate_lifts(rbar, z4, {kDefaultElementCap, kDefaultMapCap, 4});
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].key(), four[i].key());
    }
}

TEST(DefSets, OrbitSizesDivideKernelOrder) {
    const RingPtr f2 = build_galois_ring(2, 1, 1);
    const std::vector<std::pair<Representation, RingPtr>> cases = {
        {trivial(group_ptr(cyclic(2)), f2, 2), build_galois_ring(2, 2, 1)},
        {trivial(group_ptr(direct_product(cyclic(2), cyclic(2))), f2, 2), build_galois_ring(2, 2, 1)},
        {trivial(group_ptr(cyclic(4)), f2, 2), dual_numbers(2)},
        {trivial(group_ptr(symmetric(3)), f2, 2), build_galois_ring(2, 2, 1)},
    };
    for (const auto& [rbar, ring] : cases) {
        const DefSet d = def_set(rbar, ring);
        std::size_t total = 0;
        for (std::size_t s : d.orbit_sizes) {
            EXPECT_EQ(d.kernel_size % s, 0u);
            total += s;
        }
        EXPECT_EQ(total, d.lift_count);
        for (std::size_t i = 1; i < d.representatives.size(); ++i) {
            EXPECT_LT(d.representatives[i - 1].key(), d.representatives[i].key());
        }
    }
}

TEST(DefSets, UniqueDeformationWhenPDoesNotDivideGroupOrder) {
    const RingPtr f2 = build_galois_ring(2, 1, 1);
    const RingPtr f3 = build_galois_ring(3, 1, 1);
    const auto c3 = group_ptr(cyclic(3));
    const auto c2 = group_ptr(cyclic(2));
    const Matrix companion = from_ints(f2, {0, 1, 1, 1});
    const std::vector<Representation> over_f2 = {trivial(c3, f2, 1), trivial(c3, f2, 2),
                                                 residual_rep(c3, f2, 2, {companion})};
    for (const auto& rbar : over_f2) {
        for (const RingPtr& ring : {build_galois_ring(2, 2, 1), build_galois_ring(2, 3, 1), dual_numbers(2)}) {
            EXPECT_EQ(def_set(rbar, ring).class_count(), 1u) << ring->name();
        }
    }
    for (std::size_t n : {1u, 2u}) {
        EXPECT_EQ(def_set(trivial(c2, f3, n), build_galois_ring(3, 2, 1)).class_count(), 1u);
    }
}

TEST(DefSets, ReductionIsFunctorial) {
    // Lifts to Z/8 reduce to lifts to Z/4, and equivalent lifts reduce to equivalent lifts.
    const auto rbar = trivial(group_ptr(cyclic(2)), build_galois_ring(2, 1, 1), 2);
    const RingPtr z8 = build_galois_ring(2, 3, 1);
    const QuotientRing q = quotient_ring(scale_ideal(4, Ideal(z8, {z8->one()})));
    ASSERT_EQ(q.ring->log_size(), 2);
    const DefSet over_z8 = def_set(rbar, z8);
    const DefSet over_z4 = def_set(rbar, q.ring);
    const auto lifts = enumerate_lifts(rbar, z8);
    const auto kernel = kernel_group(z8, 2);
    const MatrixRing alg(z8, 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        const Representation& rho = lifts[rng() % lifts.size()];
        const Matrix& k = kernel[rng() % kernel.size()];
        const Representation conj = conjugate(rho, k, *alg.inverse(k));
        const Representation a = reduce_representation(rho, q);
        const Representation b = reduce_representation(conj, q);
        EXPECT_TRUE(are_strictly_equivalent(a, b).has_value());
        make_representation(a.group, a.ring, 2, a.generator_images());
    }
    EXPECT_LE(over_z4.class_count(), over_z8.class_count());
}

TEST(Tangent, ClassCountIsAPowerOfQ) {
    const RingPtr f2 = build_galois_ring(2, 1, 1);
    const RingPtr f3 = build_galois_ring(3, 1, 1);
    const RingPtr f4 = build_galois_ring(2, 1, 2);
    const auto v4 = group_ptr(direct_product(cyclic(2), cyclic(2)));
    const std::vector<std::pair<Representation, int>> cases = {
        {trivial(group_ptr(cyclic(2)), f2, 1), 1},
        {trivial(v4, f2, 1), 2},
        {trivial(group_ptr(cyclic(3)), f2, 1), 0},
        {trivial(group_ptr(cyclic(3)), f3, 1), 1},
        {trivial(group_ptr(quaternion8()), f2, 1), 2},
        {trivial(group_ptr(symmetric(3)), f2, 1), 1},
        {trivial(group_ptr(cyclic(2)), f4, 1), 1},
    };
    for (const auto& [rbar, dim] : cases) {
        const TangentReport t = tangent_space(rbar);
        EXPECT_EQ(t.dimension, dim) << rbar.group->name();
        u64 power = 1;
        for (int i = 0; i < t.dimension; ++i) {
            power *= t.q;
        }
        EXPECT_EQ(power, t.classes.class_count());
    }
}

TEST(Maranda, AveragingProducesConjugatorForConjugatePair) {
    const RingPtr zp = build_galois_ring(2, 6, 1, {}, RingMode::PrecisionModel);
    const MatrixRing alg(zp, 2);
    const auto c2 = group_ptr(cyclic(2));
    const Representation rho1 = make_representation(c2, zp, 2, {from_ints(zp, {0, 1, 1, 0})});
    const Matrix c = from_ints(zp, {1, 2, 0, 1});
    const Representation rho2 = conjugate(rho1, *alg.inverse(c), c);
    Matrix a = c;
    alg.at(a, 1, 1) = zp->from_int(5); // a J-perturbation of the intertwiner, J = 4 Z_2
    const MarandaCertificate cert = maranda_average(rho1, rho2, a);
    EXPECT_TRUE(cert.conjugation_verified);
    EXPECT_TRUE(cert.reduces_to_identity);
    EXPECT_EQ(cert.precision, 5);
    EXPECT_TRUE(maranda_decide(rho1, rho2).equivalent);
}

TEST(Maranda, DistinctReductionsAreNotEquivalent) {
    const RingPtr zp = build_galois_ring(2, 4, 1, {}, RingMode::PrecisionModel);
    const auto c2 = group_ptr(cyclic(2));
    const Representation plus = make_representation(c2, zp, 1, {{zp->one()}});
    const Representation minus = make_representation(c2, zp, 1, {{zp->from_int(-1)}});
    EXPECT_FALSE(maranda_decide(plus, minus).equivalent);
}

TEST(Maranda, PreconditionNamesViolatingElement) {
    const RingPtr zp = build_galois_ring(2, 4, 1, {}, RingMode::PrecisionModel);
    const auto c2 = group_ptr(cyclic(2));
    const Representation plus = make_representation(c2, zp, 1, {{zp->one()}});
    const Representation minus = make_representation(c2, zp, 1, {{zp->from_int(-1)}});
    try {
        maranda_average(plus, minus, {zp->one()});
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "precondition_failed");
        EXPECT_NE(std::string(e.what()).find("group element 1"), std::string::npos);
    }
}

TEST(Maranda, NormalizedIntertwinerConjugates) {
    const RingPtr zp = build_galois_ring(3, 4, 1, {}, RingMode::PrecisionModel);
    const MatrixRing alg(zp, 2);
    const auto c3 = group_ptr(cyclic(3));
    const Representation rho1 = make_representation(c3, zp, 2, {from_ints(zp, {0, -1, 1, -1})});
    const Matrix c = from_ints(zp, {2, 3, 0, 2});
    const Representation rho2 = conjugate(rho1, *alg.inverse(c), c);
    const NormalizedIntertwiner n = normalize_intertwiner(rho1, rho2, c);
    EXPECT_TRUE(alg.reduces_to_identity(n.b0));
    EXPECT_TRUE(zp->equal(n.unit, zp->from_int(2)));
}

TEST(Derivations, KaehlerModuleOfDualNumbersOverZ4) {
    const RingPtr r = ring_from_truncated_presentation(Presentation::make(2, {"X"}, {"X^2"}), 2);
    const KaehlerModule om = kaehler_module(r);
    // Omega = R dX / (2X dX): generated by dX and X dX with orders 4 and 2.
    EXPECT_EQ(om.module.map.target.orders, (std::vector<int>{2, 1}));
}

TEST(Derivations, UniversalDerivationFamilyConsistsOfHoms) {
    const RingPtr r = ring_from_truncated_presentation(Presentation::make(2, {"X"}, {"X^2"}), 2);
    const KaehlerModule om = kaehler_module(r);
    const SquareZeroExtension ext = square_zero_extension(r, om.module);
    for (const auto& m : hom_family(ext, om.d_basis, {0, 1, 2, 3})) {
        EXPECT_TRUE(m.is_hom);
        EXPECT_TRUE(m.difference_is_derivation);
        EXPECT_EQ(udr::testing::brute_force_is_hom(m.map), true);
    }
}

TEST(Derivations, HomIffDerivationOnRandomPerturbations) {
    std::mt19937_64 rng(17);
    const std::vector<RingPtr> bases = {build_galois_ring(2, 2, 1), dual_numbers(2),
                                        ring_from_truncated_presentation(Presentation::make(3, {"X"}, {"X^2 - 3"}), 2)};
    std::size_t homs = 0;
    std::size_t non_homs = 0;
    for (const auto& r : bases) {
        const SquareZeroExtension ext = square_zero_extension(r, finite_module(r, 1, {}));
        for (int t = 0; t < 30; ++t) {
            const AdditiveMap g = udr::testing::random_perturbation(ext, rng);
            const auto [is_hom, is_der] = hom_vs_derivation(ext.inclusion(), g, ext.ideal());
            EXPECT_EQ(is_hom, is_der);
            EXPECT_EQ(is_hom, udr::testing::brute_force_is_hom(g));
            (is_hom ? homs : non_homs)++;
        }
    }
    EXPECT_GT(homs, 0u);
    EXPECT_GT(non_homs, 0u);
}
