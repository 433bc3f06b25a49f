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

#include <numeric>
#include <random>

#include "udr/local_ring/construct.hpp"
#include "udr/local_ring/fingerprint.hpp"
#include "udr/local_ring/hom.hpp"
#include "udr/local_ring/ideal.hpp"

using namespace udr;

namespace {

u64 plain_pow(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) {
        r *= b;
    }
    return r;
}

RingPtr truncation(u64 p, std::vector<std::string> vars, std::vector<std::string> rels, int m,
                   RingMode mode = RingMode::ExactFinite) {
    return ring_from_truncated_presentation(Presentation::make(p, std::move(vars), rels), m, kDefaultDegreeCap, mode);
}

Element random_element(const FiniteLocalRing& r, std::mt19937_64& rng) {
    Vec c;
    for (std::size_t i = 0; i < r.rank(); ++i) {
        c.push_back(rng() % r.shape().modulus(i));
    }
    return r.element(c);
}

} // namespace

TEST(GaloisRing, IntegersModPrimePowerMatchModularArithmetic) {
    for (auto [p, m] : std::vector<std::pair<u64, int>>{{2, 1}, {2, 3}, {3, 2}, {5, 2}, {7, 1}}) {
        const RingPtr r = build_galois_ring(p, m, 1);
        const u64 n = plain_pow(p, m);
        ASSERT_EQ(r->log_size(), m);
        for (u64 a = 0; a < n; ++a) {
            for (u64 b = 0; b < n; ++b) {
                const Element x = r->from_int(static_cast<i64>(a));
                const Element y = r->from_int(static_cast<i64>(b));
                EXPECT_EQ(r->mul(x, y).c[0], a * b % n);
                EXPECT_EQ(r->add(x, y).c[0], (a + b) % n);
            }
            EXPECT_EQ(r->is_unit(r->from_int(static_cast<i64>(a))), a % p != 0);
        }
    }
}

TEST(GaloisRing, ResidueFieldSizeAndUnitCount) {
    for (auto [p, m, deg] : std::vector<std::tuple<u64, int, int>>{{2, 1, 2}, {2, 2, 2}, {3, 2, 2}, {2, 1, 3}}) {
        const RingPtr r = build_galois_ring(p, m, deg);
        EXPECT_EQ(r->log_size(), m * deg);
        EXPECT_EQ(r->residue_degree(), deg);
        const auto elems = r->elements();
        std::size_t units = 0;
        for (const auto& x : elems) {
            if (r->is_unit(x)) {
                ++units;
                EXPECT_TRUE(r->equal(r->mul(x, r->inverse(x)), r->one()));
            }
        }
        const u64 q = plain_pow(p, deg);
        EXPECT_EQ(units, elems.size() - elems.size() / q);
    }
}

TEST(GaloisRing, FieldOfFourElementsHasTrivialMaximalIdeal) {
    const RingPtr f4 = build_galois_ring(2, 1, 2);
    EXPECT_EQ(f4->maximal_ideal().log_size(), 0);
    EXPECT_EQ(f4->elements().size(), 4u);
    EXPECT_TRUE(f4->verify_laws());
}

TEST(Truncation, MonicRelationGivesFreeModule) {
    // (Z/p^m)[X]/(f) with f monic of degree d has p^(m d) elements.
    EXPECT_EQ(truncation(2, {"X"}, {"X^2 - 4*X"}, 3)->log_size(), 6);
    EXPECT_EQ(truncation(3, {"X"}, {"X^3 - 3"}, 2)->log_size(), 6);
    EXPECT_EQ(truncation(5, {"X"}, {"X^2 - 5"}, 2)->log_size(), 4);
}

TEST(Truncation, TorsionRelationShrinksOrder) {
    // Z[X]/(X^2, 4X) mod 8: 1 has order 8 and X has order 4.
    const RingPtr r = truncation(2, {"X"}, {"X^2", "4*X"}, 3);
    EXPECT_EQ(r->log_size(), 5);
    EXPECT_EQ(r->additive_order_log(r->generator(0)), 2);
}

TEST(Truncation, InfiniteTruncationIsRejected) {
    try {
        truncation(2, {"X"}, {"2*X"}, 3);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "not_finite_at_cap");
    }
}

TEST(Truncation, NonLocalTruncationIsRejected) {
    try {
        truncation(2, {"X"}, {"X^2 - X"}, 1);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "not_local");
    }
}

TEST(Truncation, TwoVariableRingMatchesBruteForceMultiplication) {
    // F_2[X, Y]/(X^2, Y^2): basis 1, X, Y, XY.
    const RingPtr r = truncation(2, {"X", "Y"}, {"X^2", "Y^2"}, 1);
    ASSERT_EQ(r->log_size(), 4);
    const Element x = r->generator(0);
    const Element y = r->generator(1);
    EXPECT_FALSE(r->is_zero(r->mul(x, y)));
    EXPECT_TRUE(r->is_zero(r->mul(r->mul(x, y), x)));
    // (X + Y)^2 = 2XY vanishes in characteristic 2 but not in characteristic 3.
    EXPECT_EQ(r->nilpotency_index(r->add(x, y)), 2);
    const RingPtr r3 = truncation(3, {"X", "Y"}, {"X^2", "Y^2"}, 1);
    EXPECT_EQ(r3->nilpotency_index(r3->add(r3->generator(0), r3->generator(1))), 3);
}

TEST(RingLaws, RandomTriplesSatisfyAxioms) {
    std::mt19937_64 rng(7);
    const std::vector<RingPtr> rings = {
        build_galois_ring(2, 3, 2), truncation(2, {"X"}, {"X^2 - 4*X"}, 3), truncation(3, {"X", "Y"}, {"X^2", "Y^2 - 3*X"}, 2),
        truncation(2, {"X"}, {"X^3 - 2"}, 3), dual_numbers(3, 2)};
    for (const auto& r : rings) {
        for (int t = 0; t < 200; ++t) {
            const Element a = random_element(*r, rng);
            const Element b = random_element(*r, rng);
            const Element c = random_element(*r, rng);
            EXPECT_TRUE(r->equal(r->mul(r->mul(a, b), c), r->mul(a, r->mul(b, c))));
            EXPECT_TRUE(r->equal(r->mul(a, r->add(b, c)), r->add(r->mul(a, b), r->mul(a, c))));
            EXPECT_TRUE(r->equal(r->mul(a, b), r->mul(b, a)));
            EXPECT_TRUE(r->equal(r->mul(a, r->one()), a));
            if (r->is_unit(a)) {
                EXPECT_TRUE(r->equal(r->mul(a, r->inverse(a)), r->one()));
            }
        }
    }
}

TEST(Inverse, OnePlusXInDualNumbersOverZ4) {
    const RingPtr r = truncation(2, {"X"}, {"X^2"}, 2);
    const Element u = r->add(r->one(), r->generator(0));
    const Element inv = r->inverse(u);
    EXPECT_TRUE(r->equal(inv, r->sub(r->one(), r->generator(0))));
}

TEST(PrecisionModel, ExactDivideRoundTrip) {
    std::mt19937_64 rng(11);
    const RingPtr r = truncation(2, {"X"}, {"X^2 - 2*X"}, 6, RingMode::PrecisionModel);
    for (int t = 0; t < 300; ++t) {
        const Element b = random_element(*r, rng);
        Element u = random_element(*r, rng);
        if (!r->is_unit(u)) {
            u = r->add(u, r->one());
        }
        const int v = static_cast<int>(rng() % 4);
        const Element a = r->mul(r->from_int(static_cast<i64>(plain_pow(2, v))), u);
        const Element q = r->exact_divide(r->mul(a, b), a);
        EXPECT_EQ(q.prec, r->precision() - v);
        EXPECT_TRUE(r->equal(q, b));
    }
}

TEST(PrecisionModel, DivisionByPLowersPrecision) {
    const RingPtr r = truncation(2, {"X"}, {"X^2 - 4*X"}, 5, RingMode::PrecisionModel);
    const Element twice = r->scale(r->generator(0), 2);
    const Element q = r->exact_divide(twice, r->from_int(2));
    EXPECT_EQ(q.prec, 4);
    EXPECT_TRUE(r->equal(q, r->generator(0)));
}

TEST(PrecisionModel, ExactRingsRefuseDivisionByP) {
    const RingPtr r = build_galois_ring(2, 4, 1);
    try {
        r->divide_by_p(r->from_int(2));
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "wrong_mode");
    }
}

TEST(Ideals, MaximalIdealOfZ4HasTwoElements) {
    const RingPtr z4 = build_galois_ring(2, 2, 1);
    const Ideal m = maximal_ideal(z4);
    EXPECT_EQ(m.elements().size(), 2u);
    EXPECT_TRUE(m.contains(z4->from_int(2)));
    EXPECT_FALSE(m.contains(z4->one()));
}

TEST(Ideals, PowersOfMaximalIdealShrink) {
    const RingPtr r = truncation(3, {"X"}, {"X^2 - 3"}, 3);
    Ideal power(r, {r->one()});
    const Ideal m = maximal_ideal(r);
    int steps = 0;
    while (!power.is_zero()) {
        const Ideal next = ideal_product(power, m);
        EXPECT_EQ(power.log_size() - next.log_size(), 1);
        power = next;
        ++steps;
    }
    EXPECT_EQ(steps, r->log_size());
}

TEST(Quotients, ProjectionIsARingHomomorphism) {
    std::mt19937_64 rng(3);
    const RingPtr r = truncation(2, {"X"}, {"X^2 - 2*X"}, 4);
    const std::vector<Ideal> ideals = {scale_ideal(2, maximal_ideal(r)), ideal_span(r, {r->generator(0)}),
                                       ideal_power(maximal_ideal(r), 3)};
    for (const auto& ideal : ideals) {
        const QuotientRing q = quotient_ring(ideal);
        EXPECT_EQ(q.ring->log_size(), r->log_size() - ideal.log_size());
        for (int t = 0; t < 100; ++t) {
            const Element a = random_element(*r, rng);
            const Element b = random_element(*r, rng);
            EXPECT_TRUE(q.ring->equal(q.project(r->mul(a, b)), q.ring->mul(q.project(a), q.project(b))));
            EXPECT_TRUE(q.ring->equal(q.project(r->add(a, b)), q.ring->add(q.project(a), q.project(b))));
            EXPECT_EQ(ideal.contains(a), q.ring->is_zero(q.project(a)));
            EXPECT_TRUE(q.ring->equal(q.project(q.lift(q.project(a))), q.project(a)));
        }
    }
}

TEST(Quotients, ImproperIdealIsRejected) {
    const RingPtr r = build_galois_ring(2, 2, 1);
    try {
        quotient_ring(ideal_span(r, {r->one()}));
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "improper_ideal");
    }
}

TEST(Homomorphisms, EndomorphismsOfDualNumbersOverZ4) {
    // Brute force: e -> a + b e with a, b in Z/4 is a local map iff a is even and (a + b e)^2 = 0.
    std::size_t expected = 0;
    for (u64 a = 0; a < 4; ++a) {
        for (u64 b = 0; b < 4; ++b) {
            if (a % 2 == 0 && (a * a) % 4 == 0 && (2 * a * b) % 4 == 0) {
                ++expected;
            }
        }
    }
    const RingPtr r = truncation(2, {"e"}, {"e^2"}, 2);
    EXPECT_EQ(hom_enumerate(r, r).size(), expected);
    EXPECT_EQ(expected, 8u);
}

TEST(Homomorphisms, CharacteristicObstructions) {
    const RingPtr z4 = build_galois_ring(2, 2, 1);
    EXPECT_EQ(hom_enumerate(z4, z4).size(), 1u);
    EXPECT_EQ(hom_enumerate(dual_numbers(2), z4).size(), 0u);
    EXPECT_EQ(hom_enumerate(z4, dual_numbers(2)).size(), 1u);
    EXPECT_EQ(hom_enumerate(build_galois_ring(3, 2, 1), z4).size(), 0u);
}

TEST(Homomorphisms, DualNumberFamilyOverZ8) {
    const RingPtr r = truncation(2, {"e"}, {"e^2"}, 3);
    for (i64 c = 0; c < 8; ++c) {
        EXPECT_TRUE(make_hom(r, r, {r->scale(r->generator(0), c)}).has_value()) << c;
    }
    // e -> a + b e needs a^2 = 0 and 2ab = 0 in Z/8 with a even: a in {0, 4}, any b.
    EXPECT_EQ(hom_enumerate(r, r).size(), 16u);
}

TEST(Homomorphisms, CompositionOfHomsIsAHom) {
    const RingPtr r = truncation(2, {"e"}, {"e^2"}, 2);
    const auto homs = hom_enumerate(r, r);
    for (const auto& f : homs) {
        for (const auto& g : homs) {
            std::vector<Element> images;
            for (const auto& x : f.generator_images) {
                images.push_back(g(x));
            }
            EXPECT_TRUE(make_hom(r, r, images).has_value());
        }
    }
}

TEST(Fingerprints, DistinguishZ4FromDualNumbers) {
    const Fingerprint a = fingerprint(build_galois_ring(2, 2, 1));
    const Fingerprint b = fingerprint(dual_numbers(2));
    EXPECT_EQ(a.log_cardinality, b.log_cardinality);
    EXPECT_EQ(compare_fingerprints(a, b), "distinct");
    EXPECT_EQ(compare_fingerprints(a, a), "inconclusive");
}

TEST(Fingerprints, InvariantUnderChangeOfPresentation) {
    // X -> X + 1 is an automorphism of Z[X], so both presentations define the same ring.
    const RingPtr a = truncation(2, {"X"}, {"X^2"}, 2);
    const RingPtr b = truncation(2, {"Y"}, {"Y^2 - 2*Y + 1"}, 2);
    EXPECT_EQ(compare_fingerprints(fingerprint(a), fingerprint(b)), "inconclusive");
}
