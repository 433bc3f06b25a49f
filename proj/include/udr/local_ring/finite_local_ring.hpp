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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "../chain_linalg.hpp"
#include "../galois.hpp"
#include "../int_poly.hpp"
#include "../modular.hpp"

namespace udr {

/// Ring element: coordinates over the additive basis, plus the p-adic precision to
/// which it is known. Exact-finite rings always report their ambient precision.
struct Element {
    Vec c;
    int prec = 0;

    friend bool operator==(const Element& a, const Element& b) { return a.c == b.c && a.prec == b.prec; }
    friend bool operator<(const Element& a, const Element& b) { return a.c < b.c; }
};

enum class RingMode { ExactFinite, PrecisionModel };

/// Everything needed to assemble a ring; produced by the constructors in construct.hpp.
struct RingData {
    GaloisRingParams base;
    RingMode mode = RingMode::ExactFinite;
    std::string name;
    PGroupShape shape;
    std::vector<std::vector<Vec>> table; // table[i][j] = b_i * b_j
    Vec unity;
    std::vector<std::string> generator_names;
    std::vector<Vec> generators;
    std::vector<IntPoly> basis_exprs; // each basis element as a polynomial in the generators
    std::optional<std::size_t> base_generator; // image of the Galois-ring generator, needed when r > 1
    std::vector<IntPoly> relations; // relations among the generators, used for differentials
};

class FiniteLocalRing;
using RingPtr = std::shared_ptr<const FiniteLocalRing>;

/// A finite commutative local ring with residue field F_{p^r}: additive group
/// (+)_i Z/p^{e_i} with basis b_i and structure constants b_i b_j = sum_k T_ijk b_k.
/// Immutable once built.
class FiniteLocalRing {
public:
    static RingPtr create(RingData data) {
        return RingPtr(new FiniteLocalRing(std::move(data)));
    }

    u64 p() const { return d_.base.p; }
    int precision() const { return top_; }
    int residue_degree() const { return d_.base.r; }
    std::size_t rank() const { return d_.shape.rank(); }
    const PGroupShape& shape() const { return d_.shape; }
    RingMode mode() const { return d_.mode; }
    bool is_precision_model() const { return d_.mode == RingMode::PrecisionModel; }
    const std::string& name() const { return d_.name; }
    const GaloisRingParams& base() const { return d_.base; }
    const ResidueField& residue_field() const { return field_; }
    const std::vector<IntPoly>& basis_expressions() const { return d_.basis_exprs; }
    const std::vector<std::string>& generator_names() const { return d_.generator_names; }
    std::size_t generator_count() const { return d_.generators.size(); }
    std::optional<std::size_t> base_generator() const { return d_.base_generator; }
    const std::vector<IntPoly>& relations() const { return d_.relations; }
    const Vec& structure(std::size_t i, std::size_t j) const { return d_.table[i][j]; }
    int log_size() const { return d_.shape.log_size(); }
    const Submodule& maximal_ideal() const { return max_ideal_; }

    Element generator(std::size_t i) const { return element(d_.generators[i]); }

    Element basis(std::size_t i) const {
        Vec v(rank(), 0);
        v[i] = 1;
        return element(v);
    }

    Element zero() const { return Element{Vec(rank(), 0), top_}; }
    Element one() const { return element(d_.unity); }

    Element element(Vec coords, int prec = -1) const {
        Element e{std::move(coords), prec < 0 ? top_ : std::min(prec, top_)};
        require(e.c.size() == rank(), "dimension_mismatch", "coordinate vector has the wrong length");
        normalize(e);
        return e;
    }

    Element from_int(i64 n) const {
        Element e = one();
        return scale(e, n);
    }

    Element add(const Element& a, const Element& b) const {
        Element out{Vec(rank()), std::min(a.prec, b.prec)};
        for (std::size_t i = 0; i < rank(); ++i) {
            out.c[i] = a.c[i] + b.c[i];
        }
        normalize(out);
        return out;
    }

    Element neg(const Element& a) const {
        Element out{Vec(rank()), a.prec};
        for (std::size_t i = 0; i < rank(); ++i) {
            out.c[i] = (mod_ - a.c[i] % mod_) % mod_;
        }
        normalize(out);
        return out;
    }

    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

    Element scale(const Element& a, i64 n) const {
        const u64 f = reduce_signed(n, mod_);
        Element out{Vec(rank()), a.prec};
        for (std::size_t i = 0; i < rank(); ++i) {
            out.c[i] = a.c[i] * f % mod_;
        }
        normalize(out);
        return out;
    }

    Element mul(const Element& a, const Element& b) const {
        Vec acc(rank(), 0);
        for (std::size_t i = 0; i < rank(); ++i) {
            if (a.c[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < rank(); ++j) {
                if (b.c[j] == 0) {
                    continue;
                }
                const u64 t = a.c[i] * b.c[j] % mod_;
                for (const auto& [k, coef] : sparse_[i][j]) {
                    acc[k] = (acc[k] + t * coef) % mod_;
                }
            }
        }
        Element out{std::move(acc), std::min(a.prec, b.prec)};
        normalize(out);
        return out;
    }

    Element pow(Element a, u64 e) const {
        Element result = one();
        result.prec = a.prec;
        normalize(result);
        while (e > 0) {
            if (e & 1U) {
                result = mul(result, a);
            }
            a = mul(a, a);
            e >>= 1U;
        }
        return result;
    }

    /// Equality on the common known precision.
    bool equal(const Element& a, const Element& b) const {
        const int prec = std::min(a.prec, b.prec);
        for (std::size_t i = 0; i < rank(); ++i) {
            const u64 m = coord_modulus(i, prec);
            if (a.c[i] % m != b.c[i] % m) {
                return false;
            }
        }
        return true;
    }

    bool is_zero(const Element& a) const {
        return std::all_of(a.c.begin(), a.c.end(), [](u64 x) { return x == 0; });
    }

    /// Image in the residue field F_p[Y]/(h mod p), as r coordinates.
    Vec residue(const Element& a) const {
        Vec out(static_cast<std::size_t>(residue_degree()), 0);
        for (std::size_t i = 0; i < rank(); ++i) {
            const u64 x = a.c[i] % p();
            if (x == 0) {
                continue;
            }
            for (std::size_t j = 0; j < out.size(); ++j) {
                out[j] = (out[j] + x * reduction_[i][j]) % p();
            }
        }
        return out;
    }

    /// Section of the reduction map: sum_j c_j y^j.
    Element lift_residue(const Vec& r) const {
        Element out = zero();
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r[j] % p() != 0) {
                out = add(out, scale(y_powers_[j], static_cast<i64>(r[j] % p())));
            }
        }
        return out;
    }

    bool is_unit(const Element& a) const { return !field_.is_zero(residue(a)); }

    bool in_maximal_ideal(const Element& a) const { return !is_unit(a); }

    Element inverse(const Element& a) const {
        require(is_unit(a), "not_a_unit", "element is not a unit");
        Element x{a.c, top_};
        Element inv = pow(x, field_.size() - 2);
        const Element unit = one();
        for (int iter = 0; iter < 64; ++iter) {
            const Element err = sub(unit, mul(x, inv));
            if (is_zero(err)) {
                inv.prec = a.prec;
                normalize(inv);
                return inv;
            }
            inv = add(inv, mul(inv, err));
        }
        fail("internal", "Newton inversion did not converge");
    }

    /// True iff multiplication by a is not injective (rank test on its matrix).
    bool is_zero_divisor(const Element& a) const { return multiple_module(a).log_size() < log_size(); }

    /// The principal ideal aR as a submodule.
    Submodule multiple_module(const Element& a) const {
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < rank(); ++i) {
            gens.push_back(mul(a, basis(i)).c);
        }
        return Submodule(d_.shape, gens);
    }

    /// Divides every coordinate by p; precision drops by one.
    Element divide_by_p(const Element& a) const {
        require(is_precision_model(), "wrong_mode", "division by p needs a precision-model ring");
        require(a.prec >= 2, "precision_exhausted", "no precision left to divide by p");
        Element out{Vec(rank()), a.prec - 1};
        for (std::size_t i = 0; i < rank(); ++i) {
            const u64 x = a.c[i] % coord_modulus(i, a.prec);
            require(x % p() == 0, "not_divisible", "element is not divisible by p");
            out.c[i] = x / p();
        }
        normalize(out);
        return out;
    }

    /// The unique x with a*x = b. Exact rings need a non-zero-divisor a; precision models
    /// accept a = p^v * u with u a unit and lose v digits of precision.
    Element exact_divide(const Element& b, const Element& a) const {
        if (!is_precision_model()) {
            require(!is_zero_divisor(a), "zero_divisor", "divisor is a zero-divisor");
            return mul(b, inverse(a));
        }
        int v = a.prec;
        for (std::size_t i = 0; i < rank(); ++i) {
            v = std::min(v, valuation(a.c[i] % coord_modulus(i, a.prec), p(), a.prec));
        }
        require(v < a.prec, "not_divisible", "divisor vanishes at its known precision");
        Element u = a;
        Element q = b;
        for (int k = 0; k < v; ++k) {
            u = divide_by_p(u);
            q = divide_by_p(q);
        }
        require(is_unit(u), "not_divisible", "divisor is not of the form p^v times a unit");
        return mul(q, inverse(u));
    }

    /// log_p of the additive order.
    int additive_order_log(const Element& a) const {
        int best = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (a.c[i] != 0) {
                best = std::max(best, d_.shape.orders[i] - valuation(a.c[i], p(), d_.shape.orders[i]));
            }
        }
        return best;
    }

    /// Smallest e >= 1 with a^e = 0, or 0 for units.
    int nilpotency_index(const Element& a) const {
        if (is_unit(a)) {
            return 0;
        }
        Element x = a;
        for (int e = 1;; ++e) {
            if (is_zero(x)) {
                return e;
            }
            x = mul(x, a);
        }
    }

    /// All elements in lexicographic coordinate order.
    std::vector<Element> elements(std::size_t cap = 1000000) const {
        require(ipow_ld(log_size()) <= static_cast<long double>(cap), "cap_exceeded",
                "ring " + name() + " has more elements than the enumeration cap " + std::to_string(cap));
        std::vector<Element> out;
        Vec cur(rank(), 0);
        for (;;) {
            out.push_back(Element{cur, top_});
            std::size_t i = rank();
            for (;;) {
                if (i == 0) {
                    return out;
                }
                --i;
                if (++cur[i] < d_.shape.modulus(i)) {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    std::vector<Element> maximal_ideal_elements(std::size_t cap = 1000000) const {
        std::vector<Element> out;
        for (auto& v : max_ideal_.elements(cap)) {
            out.push_back(Element{std::move(v), top_});
        }
        return out;
    }

    /// Evaluates a polynomial in the generators at the given ring elements.
    Element evaluate(const IntPoly& f, const std::vector<Element>& args) const {
        int prec = top_;
        for (const auto& a : args) {
            prec = std::min(prec, a.prec);
        }
        Element out = zero();
        out.prec = prec;
        std::vector<std::vector<Element>> powers(args.size());
        for (const auto& [mono, coef] : f.terms) {
            const mpz_class c = ((coef % mod_) + mod_) % mod_;
            Element t = scale(one(), static_cast<i64>(c.get_ui()));
            t.prec = prec;
            for (std::size_t i = 0; i < args.size(); ++i) {
                const int e = mono.exps[i];
                if (e == 0) {
                    continue;
                }
                auto& pw = powers[i];
                if (pw.empty()) {
                    pw.push_back(args[i]);
                }
                while (static_cast<int>(pw.size()) < e) {
                    pw.push_back(mul(pw.back(), args[i]));
                }
                t = mul(t, pw[static_cast<std::size_t>(e) - 1]);
            }
            out = add(out, t);
        }
        return out;
    }

    /// Commutativity, associativity and unit laws on every basis triple, plus
    /// well-definedness of the structure constants under the additive orders.
    bool verify_laws() const {
        const std::size_t n = rank();
        for (std::size_t i = 0; i < n; ++i) {
            if (!equal(mul(one(), basis(i)), basis(i))) {
                return false;
            }
            for (std::size_t j = 0; j < n; ++j) {
                const Element bij = mul(basis(i), basis(j));
                if (!equal(bij, mul(basis(j), basis(i)))) {
                    return false;
                }
                if (!is_zero(scale(bij, static_cast<i64>(d_.shape.modulus(i))))) {
                    return false;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    if (!equal(mul(bij, basis(k)), mul(basis(i), mul(basis(j), basis(k))))) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    std::string describe(const Element& a) const {
        std::string out = "[";
        for (std::size_t i = 0; i < rank(); ++i) {
            out += (i ? "," : "") + std::to_string(a.c[i]);
        }
        return out + "]";
    }

private:
    explicit FiniteLocalRing(RingData data) : d_(std::move(data)) {
        const std::size_t n = d_.shape.rank();
        require(n >= 1, "invalid_ring", "the zero ring is not local");
        top_ = d_.shape.top();
        mod_ = ipow(p(), top_);
        require(d_.table.size() == n, "invalid_ring", "structure table has the wrong size");
        sparse_.assign(n, std::vector<std::vector<std::pair<std::size_t, u64>>>(n));
        for (std::size_t i = 0; i < n; ++i) {
            require(d_.table[i].size() == n, "invalid_ring", "structure table has the wrong size");
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    const u64 c = d_.table[i][j][k] % d_.shape.modulus(k);
                    if (c != 0) {
                        sparse_[i][j].emplace_back(k, c);
                    }
                }
            }
        }
        if (d_.mode == RingMode::PrecisionModel) {
            for (int e : d_.shape.orders) {
                require(e == top_, "not_free", "precision models must be free over Z/p^m");
            }
        }
        require(d_.basis_exprs.size() == n, "invalid_ring", "missing basis expressions");
        require(d_.base.r == 1 || d_.base_generator.has_value(), "invalid_ring",
                "rings with residue degree > 1 need a designated Galois-ring generator");
        field_ = ResidueField{p(), d_.base.r, d_.base.residue_modulus()};
        require(verify_laws(), "invalid_ring", "structure constants violate the ring axioms");
        compute_residue_map();
    }

    static long double ipow_ld_impl(u64 p, int e) {
        long double r = 1;
        for (int i = 0; i < e; ++i) {
            r *= static_cast<long double>(p);
        }
        return r;
    }

    long double ipow_ld(int e) const { return ipow_ld_impl(p(), e); }

    u64 coord_modulus(std::size_t i, int prec) const {
        return ipow(p(), std::min(prec, d_.shape.orders[i]));
    }

    void normalize(Element& e) const {
        for (std::size_t i = 0; i < e.c.size(); ++i) {
            e.c[i] %= coord_modulus(i, e.prec);
        }
    }

    void compute_residue_map() {
        const std::size_t n = rank();
        const int r = residue_degree();
        // The radical of R/pR is the kernel of a high enough Frobenius power.
        u64 frob = p();
        while (frob < n) {
            frob *= p();
        }
        std::vector<Vec> images;
        for (std::size_t i = 0; i < n; ++i) {
            Vec v = pow(basis(i), frob).c;
            for (auto& x : v) {
                x %= p();
            }
            images.push_back(std::move(v));
        }
        const auto radical = kernel_mod_p(images, n, p());
        require(n - radical.size() == static_cast<std::size_t>(r), "not_local",
                "ring " + name() + " is not local with residue field of degree " + std::to_string(r));
        std::vector<Vec> gens = radical;
        for (std::size_t i = 0; i < n; ++i) {
            Vec v(n, 0);
            v[i] = p() % d_.shape.modulus(i);
            gens.push_back(v);
        }
        max_ideal_ = Submodule(d_.shape, gens);

        y_powers_.clear();
        y_powers_.push_back(one());
        if (r > 1) {
            const Element y = generator(*d_.base_generator);
            for (int j = 1; j < r; ++j) {
                y_powers_.push_back(mul(y_powers_.back(), y));
            }
        }
        std::vector<Vec> columns = radical;
        for (const auto& yp : y_powers_) {
            Vec v = yp.c;
            for (auto& x : v) {
                x %= p();
            }
            columns.push_back(v);
        }
        reduction_.assign(n, Vec(static_cast<std::size_t>(r), 0));
        for (std::size_t i = 0; i < n; ++i) {
            Vec target(n, 0);
            target[i] = 1;
            auto sol = solve_mod_p(columns, target, p());
            require(sol.has_value(), "not_local", "residue field of " + name() + " is not spanned by powers of y");
            for (int j = 0; j < r; ++j) {
                reduction_[i][static_cast<std::size_t>(j)] = (*sol)[radical.size() + static_cast<std::size_t>(j)];
            }
        }
        require(residue(one()) == field_.one(), "not_local", "unity does not reduce to 1");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (residue(mul(basis(i), basis(j))) != field_.mul(residue(basis(i)), residue(basis(j)))) {
                    fail("not_local", "reduction of " + name() + " is not multiplicative; residue field mismatch");
                }
            }
        }
    }

    RingData d_;
    int top_ = 1;
    u64 mod_ = 2;
    std::vector<std::vector<std::vector<std::pair<std::size_t, u64>>>> sparse_;
    ResidueField field_;
    Submodule max_ideal_;
    std::vector<Element> y_powers_;
    std::vector<Vec> reduction_;
};

} // namespace udr
