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

// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-udrcheck> <samples-dir>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "../presentation_oracles.hpp"
#include "../support.hpp"
#include "udr/checks/crosschecks.hpp"
#include "udr/checks/order_bound.hpp"
#include "udr/presented/etale.hpp"
#include "udr/rep/maranda.hpp"

using namespace udr;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

GroupPtr group_ptr(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

u64 ipow(u64 b, int e) {
    u64 out = 1;
    for (int i = 0; i < e; ++i) {
        out *= b;
    }
    return out;
}

Matrix from_ints(const RingPtr& ring, const std::vector<i64>& entries) {
    Matrix m;
    for (i64 x : entries) {
        m.push_back(ring->from_int(x));
    }
    return m;
}

Representation trivial(const GroupPtr& g, const RingPtr& field, std::size_t n) {
    const MatrixRing a(field, n);
    return residual_rep(g, field, n, std::vector<Matrix>(g->generators().size(), a.identity()));
}

std::string describe(const Presentation& pres) {
    std::string out = "(";
    for (const auto& r : pres.relation_strings()) {
        out += (out.size() > 1 ? ", " : "") + r;
    }
    return out + ") over Z_" + std::to_string(pres.p);
}

// 1. Fixed etale vectors.
Outcome etale_vectors() {
    struct Vec {
        u64 p;
        std::vector<std::string> vars;
        std::vector<std::string> rels;
        EtaleVerdict expected;
    };
    std::vector<Vec> vecs = {
        {2, {"X"}, {"X^2"}, EtaleVerdict::FailNotReduced},
        {3, {"X"}, {"X^3"}, EtaleVerdict::FailNotReduced},
        {2, {"X"}, {}, EtaleVerdict::FailNotFinite},
        {2, {"X"}, {"X^2 - 1"}, EtaleVerdict::Pass},
        {2, {"X"}, {"X^4 - 1"}, EtaleVerdict::Pass},
        {2, {"T"}, {"T^2 + 4"}, EtaleVerdict::Pass},
        {2, {"X", "Y"}, {"X^2", "Y - X"}, EtaleVerdict::FailNotReduced},
    };
    for (auto [p, r] : std::vector<std::pair<u64, int>>{{2, 1}, {2, 2}, {5, 1}}) {
        const std::string pr = std::to_string(ipow(p, r));
        vecs.push_back({p, {"X"}, {"X^2 - " + pr + "*X"}, EtaleVerdict::Pass});
        vecs.push_back({p, {"X"}, {"X^2", pr + "*X"}, EtaleVerdict::Pass});
    }
    Outcome out;
    for (const auto& v : vecs) {
        const Presentation pres = Presentation::make(v.p, v.vars, v.rels);
        const EtaleReport r = etale_check(pres);
        if (r.verdict != v.expected) {
            out.ok = false;
            out.detail += " " + describe(pres) + " gave " + to_string(r.verdict) + ";";
        }
    }
    out.detail = std::to_string(vecs.size()) + " presentations" + out.detail;
    return out;
}

// 2. Trace form, Kaehler rank and gcd(f, f') agree on random presentations.
Outcome etale_crossvalidation() {
    const auto suite = udr::testing::random_presentations(80, 4242);
    std::size_t pass = 0;
    std::size_t univariate = 0;
    Outcome out;
    for (const auto& pres : suite) {
        const QFiberAlgebra a(pres);
        const bool by_trace = qla::determinant(trace_form(a)) != 0;
        const bool by_omega = omega_rank(pres, a) == 0;
        bool agree = by_trace == by_omega && (etale_check(pres).verdict == EtaleVerdict::Pass) == by_trace;
        if (pres.nvars() == 1) {
            ++univariate;
            agree = agree && (udr::testing::gcd_degree_with_derivative(pres.relations[0]) == 0) == by_trace;
        }
        if (!agree) {
            out.ok = false;
            out.detail += " disagreement on " + describe(pres) + ";";
        }
        pass += by_trace;
    }
    out.ok = out.ok && pass > 0 && pass < suite.size();
    out.detail = std::to_string(suite.size()) + " presentations (" + std::to_string(univariate) + " univariate, " +
                 std::to_string(pass) + " etale)" + out.detail;
    return out;
}

// 3. p not dividing |G| gives a single deformation class.
Outcome unique_deformation() {
    const RingPtr f2 = build_galois_ring(2, 1, 1);
    const RingPtr f3 = build_galois_ring(3, 1, 1);
    const auto c3 = group_ptr(cyclic(3));
    const auto c2 = group_ptr(cyclic(2));
    const std::vector<std::pair<Representation, std::vector<RingPtr>>> cases = {
        {trivial(c3, f2, 1), {build_galois_ring(2, 2, 1), build_galois_ring(2, 3, 1), dual_numbers(2)}},
        {trivial(c3, f2, 2), {build_galois_ring(2, 2, 1), build_galois_ring(2, 3, 1), dual_numbers(2)}},
        {residual_rep(c3, f2, 2, {from_ints(f2, {0, 1, 1, 1})}),
         {build_galois_ring(2, 2, 1), build_galois_ring(2, 3, 1), dual_numbers(2)}},
        {trivial(c2, f3, 1), {build_galois_ring(3, 2, 1), dual_numbers(3)}},
        {residual_rep(c2, f3, 1, {{f3->from_int(-1)}}), {build_galois_ring(3, 2, 1), dual_numbers(3)}},
        {trivial(c2, f3, 2), {build_galois_ring(3, 2, 1), dual_numbers(3)}},
        {residual_rep(c2, f3, 2, {from_ints(f3, {1, 0, 0, -1})}), {build_galois_ring(3, 2, 1)}},
    };
    Outcome out;
    std::size_t checked = 0;
    for (const auto& [rbar, rings] : cases) {
        for (const auto& ring : rings) {
            const std::size_t classes = def_set(rbar, ring).class_count();
            ++checked;
            if (classes != 1) {
                out.ok = false;
                out.detail += " " + rbar.group->name() + " over " + ring->name() + " has " + std::to_string(classes) +
                              " classes;";
            }
        }
    }
    out.detail = std::to_string(checked) + " (representation, ring) pairs for C3 with p=2 and C2 with p=3; "
                 "S3 with p=2 omitted since 2 divides |S3|" + out.detail;
    return out;
}

// Lifts of a one-dimensional character to Z/p^m, counted in plain integers: x = c mod p
// with x^e = 1 where e is the order of the (cyclic) abelianization.
std::size_t character_lift_oracle(u64 p, int m, i64 c, u64 e) {
    const u64 mod = ipow(p, m);
    const u64 residue = static_cast<u64>(((c % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
    std::size_t count = 0;
    for (u64 x = residue; x < mod; x += p) {
        u64 y = 1;
        for (u64 k = 0; k < e; ++k) {
            y = y * x % mod;
        }
        count += y == 1;
    }
    return count;
}

// 4. One-dimensional deformations match roots of unity.
Outcome one_dim_crosscheck_criterion() {
    struct Case {
        GroupPtr group;
        u64 p;
        int m;
        std::vector<i64> character;
        u64 ab_order;
    };
    const std::vector<Case> cases = {
        {group_ptr(cyclic(2)), 2, 2, {1}, 2},
        {group_ptr(cyclic(2)), 2, 3, {1}, 2},
        {group_ptr(cyclic(3)), 3, 2, {1}, 3},
        {group_ptr(cyclic(4)), 2, 3, {1}, 4},
        {group_ptr(symmetric(3)), 3, 2, {-1, 1}, 2},
    };
    Outcome out;
    std::string counts;
    for (const auto& c : cases) {
        const RingPtr field = build_galois_ring(c.p, 1, 1);
        std::vector<Matrix> images;
        for (i64 x : c.character) {
            images.push_back({field->from_int(x)});
        }
        const Representation rbar = residual_rep(c.group, field, 1, images);
        const RingPtr ring = build_galois_ring(c.p, c.m, 1);
        const OneDimCrosscheck x = one_dim_crosscheck(rbar, ring);
        const std::size_t oracle = character_lift_oracle(c.p, c.m, c.character.front(), c.ab_order);
        counts += (counts.empty() ? "" : ", ") + c.group->name() + "/" + ring->name() + ": " + std::to_string(x.observed);
        if (!x.agree || x.observed != oracle || x.predicted != oracle) {
            out.ok = false;
            counts += " (expected " + std::to_string(oracle) + ")";
        }
    }
    out.detail = counts;
    return out;
}

struct IntegralRep {
    GroupPtr group;
    std::size_t dim;
    std::vector<i64> image; // image of the generator
};

Representation over(const IntegralRep& r, const RingPtr& ring) {
    return make_representation(r.group, ring, r.dim, {from_ints(ring, r.image)});
}

// Trace of every group element, computed in plain integers.
std::vector<i64> integer_character(const IntegralRep& r) {
    const std::size_t n = r.dim;
    std::vector<i64> power(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        power[i * n + i] = 1;
    }
    std::vector<i64> chi;
    for (std::size_t k = 0; k < r.group->order(); ++k) {
        i64 t = 0;
        for (std::size_t i = 0; i < n; ++i) {
            t += power[i * n + i];
        }
        chi.push_back(t);
        std::vector<i64> next(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t l = 0; l < n; ++l) {
                    next[i * n + j] += power[i * n + l] * r.image[l * n + j];
                }
            }
        }
        power = next;
    }
    std::sort(chi.begin(), chi.end());
    return chi;
}

// Random matrix with entries in scale * Z, plus the identity when `unit` is set.
Matrix random_matrix(const RingPtr& ring, std::size_t n, std::mt19937_64& rng, i64 scale, bool unit) {
    std::vector<i64> e(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        e[i] = scale * static_cast<i64>(rng() % 64) + (unit && i % (n + 1) == 0 ? 1 : 0);
    }
    return from_ints(ring, e);
}

// 5. Averaging certificates for conjugate pairs and negative answers for pairs with
// different characters.
Outcome maranda_criterion() {
    const auto c2 = group_ptr(cyclic(2));
    const auto c4 = group_ptr(cyclic(4));
    const std::vector<IntegralRep> reps = {
        {c2, 1, {1}}, {c2, 1, {-1}}, {c2, 2, {1, 0, 0, 1}}, {c2, 2, {-1, 0, 0, -1}}, {c2, 2, {1, 0, 0, -1}},
        {c2, 2, {0, 1, 1, 0}}, {c2, 2, {1, 1, 0, -1}}, {c4, 1, {1}}, {c4, 1, {-1}}, {c4, 2, {0, -1, 1, 0}},
        {c4, 2, {1, 0, 0, -1}}, {c4, 2, {0, 1, 1, 0}}, {c4, 2, {-1, 0, 0, -1}}, {c4, 2, {1, 1, 0, -1}},
    };
    std::mt19937_64 rng(7);
    std::size_t conjugate_pairs = 0;
    std::size_t distinct_pairs = 0;
    Outcome out;
    auto fail = [&](const std::string& why) {
        out.ok = false;
        out.detail += " " + why + ";";
    };
    for (const auto& base : reps) {
        const int r = p_part(*base.group, 2).first;
        const int n_prec = r + 4;
        const RingPtr zp = build_galois_ring(2, n_prec, 1, {}, RingMode::PrecisionModel);
        const MatrixRing alg(zp, base.dim);
        const Representation rho1 = over(base, zp);
        for (int t = 0; t < 8; ++t) {
            const Matrix c = random_matrix(zp, base.dim, rng, 2, true);
            const Representation rho2 = conjugate(rho1, *alg.inverse(c), c);
            const Matrix a = alg.add(c, random_matrix(zp, base.dim, rng, static_cast<i64>(ipow(2, r + 1)), false));
            const MarandaCertificate cert = maranda_average(rho1, rho2, a);
            ++conjugate_pairs;
            if (!cert.conjugation_verified || !cert.reduces_to_identity || cert.precision != n_prec - r) {
                fail("certificate failed for " + base.group->name());
            }
            if (!maranda_decide(rho1, rho2).equivalent) {
                fail("conjugate pair over " + base.group->name() + " not recognised");
            }
        }
        for (const auto& other : reps) {
            if (other.group != base.group || other.dim != base.dim ||
                integer_character(other) == integer_character(base)) {
                continue;
            }
            for (int t = 0; t < 4; ++t) {
                const Matrix c = random_matrix(zp, base.dim, rng, 2, true);
                const Representation rho2 = conjugate(over(other, zp), *alg.inverse(c), c);
                ++distinct_pairs;
                if (maranda_decide(rho1, rho2).equivalent) {
                    fail("pair with different characters declared equivalent");
                }
            }
        }
    }
    out.ok = out.ok && conjugate_pairs >= 100 && distinct_pairs >= 100;
    out.detail = std::to_string(conjugate_pairs) + " conjugate pairs certified at N - r, " +
                 std::to_string(distinct_pairs) + " pairs with different characters rejected" + out.detail;
    return out;
}

// dim H^1(C_k, ad) for a representation of a cyclic group over F_p, by brute force:
// ker(1 + s + ... + s^(k-1)) / im(s - 1) with s X = A X A^-1 on M_n(F_p).
int cyclic_h1_dimension(u64 p, std::size_t n, const std::vector<i64>& gen, std::size_t k) {
    using udr::testing::IntMat;
    IntMat a{n, p, {}};
    for (i64 x : gen) {
        a.a.push_back(static_cast<u64>(((x % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p)));
    }
    const IntMat a_inv = a.pow(k - 1);
    const auto all = udr::testing::congruent_matrices(IntMat{n, p, std::vector<u64>(n * n, 0)}, 1);
    std::size_t kernel = 0;
    std::set<IntMat> image;
    for (const auto& x : all) {
        IntMat sum{n, p, std::vector<u64>(n * n, 0)};
        IntMat y = x;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t e = 0; e < n * n; ++e) {
                sum.a[e] = (sum.a[e] + y.a[e]) % p;
            }
            y = a * y * a_inv;
        }
        kernel += std::all_of(sum.a.begin(), sum.a.end(), [](u64 v) { return v == 0; });
        IntMat d = a * x * a_inv;
        for (std::size_t e = 0; e < n * n; ++e) {
            d.a[e] = (d.a[e] + p - x.a[e]) % p;
        }
        image.insert(d);
    }
    int dim = 0;
    for (std::size_t q = kernel / image.size(); q > 1; q /= p) {
        ++dim;
    }
    return dim;
}

// 6. Tangent dimensions: Hom(G^ab, k)^(n^2) for trivial representations and the
// cyclic cohomology formula for the others.
Outcome tangent_criterion() {
    struct Case {
        Representation rbar;
        int expected;
    };
    const RingPtr f2 = build_galois_ring(2, 1, 1);
    const RingPtr f3 = build_galois_ring(3, 1, 1);
    const RingPtr f4 = build_galois_ring(2, 1, 2);
    const auto c2 = group_ptr(cyclic(2));
    const auto c3 = group_ptr(cyclic(3));
    const auto c4 = group_ptr(cyclic(4));
    auto hom_to_field_rank = [](const GroupPtr& g, u64 p) {
        int count = 0;
        for (u64 d : abelianization(*g)) {
            count += d % p == 0;
        }
        return count;
    };
    std::vector<Case> cases;
    for (const auto& [g, field, n] : std::vector<std::tuple<GroupPtr, RingPtr, std::size_t>>{
             {c2, f2, 1}, {c2, f2, 2}, {c3, f2, 1}, {c3, f3, 1}, {c4, f2, 1},
             {group_ptr(direct_product(cyclic(2), cyclic(2))), f2, 1},
             {group_ptr(symmetric(3)), f2, 1}, {group_ptr(symmetric(3)), f3, 1},
             {group_ptr(quaternion8()), f2, 1}, {c2, f4, 1}}) {
        cases.push_back({trivial(g, field, n), hom_to_field_rank(g, field->p()) * static_cast<int>(n * n)});
    }
    for (const auto& [g, p, gen] : std::vector<std::tuple<GroupPtr, u64, std::vector<i64>>>{
             {c2, 2, {1, 1, 0, 1}}, {c4, 2, {1, 1, 0, 1}}, {c3, 3, {1, 1, 0, 1}}, {c3, 2, {0, 1, 1, 1}}}) {
        const RingPtr field = build_galois_ring(p, 1, 1);
        cases.push_back({residual_rep(g, field, 2, {from_ints(field, gen)}), cyclic_h1_dimension(p, 2, gen, g->order())});
    }
    Outcome out;
    std::string dims;
    for (const auto& c : cases) {
        const TangentReport t = tangent_space(c.rbar);
        dims += (dims.empty() ? "" : " ") + std::to_string(t.dimension);
        if (t.dimension != c.expected || ipow(t.q, t.dimension) != t.classes.class_count()) {
            out.ok = false;
            dims += "(expected " + std::to_string(c.expected) + ")";
        }
    }
    out.detail = std::to_string(cases.size()) + " representations over C2, C3, C4, C2xC2, S3, Q8; dimensions " + dims;
    return out;
}

// 7. Order bound for Z_2[X]/(X^2 - 4X) with X -> 0 and X -> 4.
Outcome order_bound_criterion() {
    const Presentation r = Presentation::make(2, {"X"}, {"X^2 - 4*X"});
    const OrderBoundReport b = order_lower_bound(r, r, {parse_poly("0", r.variables)}, {parse_poly("4", r.variables)});
    Outcome out;
    out.ok = b.level == 1 && b.claim == "4 | |G|" && b.reverified_precision > b.precision;
    out.detail = "claim '" + b.claim + "' at level " + std::to_string(b.level) + ", found mod 2^" +
                 std::to_string(b.precision) + " and re-verified mod 2^" + std::to_string(b.reverified_precision);
    return out;
}

// 8. Perturbations of the inclusion into square-zero extensions are homomorphisms exactly
// when the perturbation is a derivation; epsilon -> C epsilon on Z/8[e] is always one.
Outcome derivation_criterion() {
    std::mt19937_64 rng(31);
    const std::vector<RingPtr> bases = {
        build_galois_ring(2, 2, 1), build_galois_ring(2, 3, 1), build_galois_ring(2, 4, 1), dual_numbers(2),
        build_galois_ring(3, 2, 1), build_galois_ring(2, 1, 2), build_galois_ring(2, 2, 2),
        ring_from_truncated_presentation(Presentation::make(3, {"X"}, {"X^2 - 3"}), 2),
    };
    std::size_t trials = 0;
    std::size_t homs = 0;
    Outcome out;
    for (const auto& r : bases) {
        const SquareZeroExtension ext = square_zero_extension(r, finite_module(r, 1, {}));
        if (ipow(ext.ring->p(), ext.ring->log_size()) > 256) {
            continue;
        }
        for (int t = 0; t < 30; ++t) {
            const AdditiveMap g = udr::testing::random_perturbation(ext, rng);
            const auto [is_hom, is_der] = hom_vs_derivation(ext.inclusion(), g, ext.ideal());
            ++trials;
            homs += is_hom;
            if (is_hom != is_der || is_hom != udr::testing::brute_force_is_hom(g)) {
                out.ok = false;
                out.detail += " mismatch over " + r->name() + ";";
            }
        }
    }
    const RingPtr z8e = ring_from_truncated_presentation(Presentation::make(2, {"X"}, {"X^2"}), 3);
    std::size_t family = 0;
    for (i64 c = 0; c < 8; ++c) {
        std::vector<Element> images;
        for (std::size_t i = 0; i < z8e->generator_count(); ++i) {
            images.push_back(z8e->base_generator() == i ? z8e->generator(i) : z8e->scale(z8e->generator(i), c));
        }
        const auto f = make_hom(z8e, z8e, images);
        if (f && udr::testing::brute_force_is_hom(AdditiveMap::of(*f))) {
            ++family;
        }
    }
    out.ok = out.ok && trials >= 200 && homs > 0 && homs < trials && family == 8;
    out.detail = std::to_string(trials) + " perturbations (" + std::to_string(homs) + " homomorphisms), " +
                 std::to_string(family) + "/8 maps e -> Ce on " + z8e->name() + out.detail;
    return out;
}

struct Captured {
    std::string output;
    int status = -1;
};

Captured capture(const std::string& command) {
    Captured c;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        return c;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        c.output.append(buf, n);
    }
    const int raw = pclose(pipe);
    c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return c;
}

std::string command_of(const std::filesystem::path& job) {
    std::ifstream in(job);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (line.rfind("command", 0) == 0 && eq != std::string::npos) {
            std::istringstream value(line.substr(eq + 1));
            std::string cmd;
            value >> cmd;
            return cmd;
        }
    }
    return "";
}

// 9. Every sample job gives byte-identical output across runs and thread counts.
Outcome determinism_criterion(const std::string& binary, const std::filesystem::path& samples) {
    std::vector<std::filesystem::path> jobs;
    for (const auto& e : std::filesystem::directory_iterator(samples)) {
        if (e.path().extension() == ".job") {
            jobs.push_back(e.path());
        }
    }
    std::sort(jobs.begin(), jobs.end());
    Outcome out;
    for (const auto& job : jobs) {
        const std::string base = "'" + binary + "' " + command_of(job) + " '" + job.string() + "' --no-cache";
        const Captured a = capture(base + " --threads 1 2>/dev/null");
        const Captured b = capture(base + " --threads 3 2>/dev/null");
        if (a.output.empty() || a.output != b.output || a.status != b.status || (a.status != 0 && a.status != 2)) {
            out.ok = false;
            out.detail += " " + job.filename().string() + ";";
        }
    }
    out.ok = out.ok && !jobs.empty();
    out.detail = std::to_string(jobs.size()) + " sample jobs, threads 1 vs 3" + out.detail;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <udrcheck> <samples-dir>\n";
        return 2;
    }
    const std::string binary = argv[1];
    const std::filesystem::path samples = argv[2];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"etale vectors", etale_vectors},
        {"etale criteria agree", etale_crossvalidation},
        {"unique deformation for p not dividing |G|", unique_deformation},
        {"one-dimensional crosscheck", one_dim_crosscheck_criterion},
        {"Maranda averaging", maranda_criterion},
        {"tangent space dimensions", tangent_criterion},
        {"order bound", order_bound_criterion},
        {"homomorphisms versus derivations", derivation_criterion},
        {"deterministic sample reports", [&] { return determinism_criterion(binary, samples); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
