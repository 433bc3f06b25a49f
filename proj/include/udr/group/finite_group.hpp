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
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "../error.hpp"
#include "../modular.hpp"

namespace udr {

inline constexpr std::size_t kMaxGroupOrder = 2000;

/// A finite group given by its Cayley table, with a generating set and, for each
/// element, a shortest word in the generators (breadth-first, generators tried in order).
class FiniteGroup {
public:
    using Table = std::vector<std::vector<std::size_t>>;

    FiniteGroup() = default;

    FiniteGroup(Table table, std::vector<std::size_t> generators, std::string name)
        : table_(std::move(table)), generators_(std::move(generators)), name_(std::move(name)) {
        validate();
        if (generators_.empty() && order() > 1) {
            generators_ = greedy_generators();
        }
        build_words();
    }

    std::size_t order() const { return table_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    const std::vector<std::size_t>& generators() const { return generators_; }
    const std::vector<std::size_t>& word(std::size_t g) const { return words_[g]; }
    const Table& table() const { return table_; }
    const std::string& name() const { return name_; }

    /// Parent of g in the word tree: g = mul(parent, generators()[last letter]).
    std::size_t parent(std::size_t g) const { return parent_[g]; }
    /// Elements in breadth-first order of their words.
    const std::vector<std::size_t>& bfs_order() const { return bfs_; }

    std::size_t element_order(std::size_t g) const {
        std::size_t k = 1;
        for (std::size_t x = g; x != identity_; x = mul(x, g)) {
            ++k;
        }
        return k;
    }

    std::size_t power(std::size_t g, std::size_t e) const {
        std::size_t out = identity_;
        for (std::size_t i = 0; i < e; ++i) {
            out = mul(out, g);
        }
        return out;
    }

    bool is_abelian() const {
        for (std::size_t a = 0; a < order(); ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                if (mul(a, b) != mul(b, a)) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    void validate() {
        const std::size_t n = table_.size();
        require(n >= 1, "invalid_group", "a group needs at least one element");
        require(n <= kMaxGroupOrder, "group_too_large", "groups of order above 2000 are not supported");
        for (const auto& row : table_) {
            require(row.size() == n, "invalid_group", "Cayley table is not square");
            std::vector<bool> seen(n, false);
            for (auto x : row) {
                require(x < n, "invalid_group", "Cayley table entry out of range");
                require(!seen[x], "invalid_group", "Cayley table row is not a permutation");
                seen[x] = true;
            }
        }
        std::optional<std::size_t> e;
        for (std::size_t a = 0; a < n && !e; ++a) {
            bool ok = true;
            for (std::size_t x = 0; x < n && ok; ++x) {
                ok = table_[a][x] == x && table_[x][a] == x;
            }
            if (ok) {
                e = a;
            }
        }
        require(e.has_value(), "invalid_group", "Cayley table has no identity");
        identity_ = *e;
        inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (table_[a][b] == identity_ && table_[b][a] == identity_) {
                    inverse_[a] = b;
                }
            }
            require(inverse_[a] < n, "invalid_group", "element without a two-sided inverse");
        }
        auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
            require(table_[table_[a][b]][c] == table_[a][table_[b][c]], "invalid_group",
                    "Cayley table is not associative");
        };
        if (n <= 256) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    for (std::size_t c = 0; c < n; ++c) {
                        assoc(a, b, c);
                    }
                }
            }
        } else {
            std::mt19937_64 rng(0x5eed);
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            for (int i = 0; i < 200000; ++i) {
                assoc(pick(rng), pick(rng), pick(rng));
            }
        }
    }

    std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const {
        std::vector<bool> in(order(), false);
        std::vector<std::size_t> out{identity_};
        in[identity_] = true;
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (auto s : gens) {
                const std::size_t y = mul(out[i], s);
                if (!in[y]) {
                    in[y] = true;
                    out.push_back(y);
                }
            }
        }
        return out;
    }

    std::vector<std::size_t> greedy_generators() const {
        std::vector<std::size_t> gens;
        std::size_t covered = 1;
        while (covered < order()) {
            std::size_t best = identity_;
            std::size_t best_size = covered;
            for (std::size_t g = 0; g < order(); ++g) {
                auto trial = gens;
                trial.push_back(g);
                const std::size_t s = closure(trial).size();
                if (s > best_size) {
                    best = g;
                    best_size = s;
                }
            }
            gens.push_back(best);
            covered = best_size;
        }
        return gens;
    }

    void build_words() {
        const std::size_t n = order();
        for (auto g : generators_) {
            require(g < n, "invalid_group", "generator index out of range");
        }
        words_.assign(n, {});
        parent_.assign(n, n);
        std::vector<bool> seen(n, false);
        seen[identity_] = true;
        parent_[identity_] = identity_;
        bfs_ = {identity_};
        for (std::size_t i = 0; i < bfs_.size(); ++i) {
            const std::size_t x = bfs_[i];
            for (std::size_t k = 0; k < generators_.size(); ++k) {
                const std::size_t y = mul(x, generators_[k]);
                if (!seen[y]) {
                    seen[y] = true;
                    parent_[y] = x;
                    words_[y] = words_[x];
                    words_[y].push_back(k);
                    bfs_.push_back(y);
                }
            }
        }
        require(bfs_.size() == n, "not_generating", "the given elements do not generate the group");
    }

    Table table_;
    std::vector<std::size_t> generators_;
    std::string name_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
    std::vector<std::vector<std::size_t>> words_;
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> bfs_;
};

inline FiniteGroup from_cayley_table(FiniteGroup::Table table, std::vector<std::size_t> generators = {},
                                     std::string name = "G") {
    return FiniteGroup(std::move(table), std::move(generators), std::move(name));
}

/// C_n = <g>, element k is g^k.
inline FiniteGroup cyclic(std::size_t n) {
    require(n >= 1, "invalid_parameter", "cyclic group order must be positive");
    FiniteGroup::Table t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            t[a][b] = (a + b) % n;
        }
    }
    return FiniteGroup(std::move(t), n > 1 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{},
                       "C" + std::to_string(n));
}

/// D_n of order 2n = <r, s | r^n, s^2, srs = r^-1>; element r^k s^e has index k + n e.
inline FiniteGroup dihedral(std::size_t n) {
    require(n >= 1, "invalid_parameter", "dihedral parameter must be positive");
    const std::size_t order = 2 * n;
    FiniteGroup::Table t(order, std::vector<std::size_t>(order));
    for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) {
            const std::size_t ka = a % n;
            const std::size_t ea = a / n;
            const std::size_t kb = b % n;
            const std::size_t eb = b / n;
            // r^ka s^ea r^kb s^eb = r^(ka +- kb) s^(ea+eb)
            const std::size_t k = ea == 0 ? (ka + kb) % n : (ka + n - kb) % n;
            t[a][b] = k + n * ((ea + eb) % 2);
        }
    }
    std::vector<std::size_t> gens;
    if (n > 1) {
        gens.push_back(1);
    }
    gens.push_back(n);
    return FiniteGroup(std::move(t), gens, "D" + std::to_string(n));
}

/// S_n (n <= 5), permutations in lexicographic order; generators (0 1) and (0 1 ... n-1).
/// Composition: (a*b)(i) = a(b(i)).
inline FiniteGroup symmetric(std::size_t n) {
    require(n >= 1 && n <= 5, "invalid_parameter", "symmetric groups are supported for n <= 5");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        index[perms[i]] = i;
    }
    FiniteGroup::Table t(perms.size(), std::vector<std::size_t>(perms.size()));
    for (std::size_t a = 0; a < perms.size(); ++a) {
        for (std::size_t b = 0; b < perms.size(); ++b) {
            std::vector<std::size_t> c(n);
            for (std::size_t i = 0; i < n; ++i) {
                c[i] = perms[a][perms[b][i]];
            }
            t[a][b] = index[c];
        }
    }
    std::vector<std::size_t> gens;
    if (n > 1) {
        std::vector<std::size_t> tr(n);
        std::iota(tr.begin(), tr.end(), 0);
        std::swap(tr[0], tr[1]);
        gens.push_back(index[tr]);
    }
    if (n > 2) {
        std::vector<std::size_t> cyc(n);
        for (std::size_t i = 0; i < n; ++i) {
            cyc[i] = (i + 1) % n;
        }
        gens.push_back(index[cyc]);
    }
    return FiniteGroup(std::move(t), gens, "S" + std::to_string(n));
}

/// Q_8 with elements 1, i, j, k, -1, -i, -j, -k (indices 0..7); generators i, j.
inline FiniteGroup quaternion8() {
    // unit quaternion products on {1,i,j,k}: sign and result
    static const int unit[4][4][2] = {
        {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
        {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
        {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
        {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
    };
    FiniteGroup::Table t(8, std::vector<std::size_t>(8));
    for (std::size_t a = 0; a < 8; ++a) {
        for (std::size_t b = 0; b < 8; ++b) {
            const int sign = (a >= 4 ? -1 : 1) * (b >= 4 ? -1 : 1) * unit[a % 4][b % 4][0];
            const auto base = static_cast<std::size_t>(unit[a % 4][b % 4][1]);
            t[a][b] = base + (sign < 0 ? 4 : 0);
        }
    }
    return FiniteGroup(std::move(t), {1, 2}, "Q8");
}

/// G x H, element (g, h) has index g |H| + h; generators of G then of H.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const std::size_t n = g.order() * h.order();
    require(n <= kMaxGroupOrder, "group_too_large", "direct product exceeds the order limit");
    FiniteGroup::Table t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            t[a][b] = g.mul(a / h.order(), b / h.order()) * h.order() + h.mul(a % h.order(), b % h.order());
        }
    }
    std::vector<std::size_t> gens;
    for (auto x : g.generators()) {
        gens.push_back(x * h.order() + h.identity());
    }
    for (auto y : h.generators()) {
        gens.push_back(g.identity() * h.order() + y);
    }
    return FiniteGroup(std::move(t), gens, g.name() + "x" + h.name());
}

/// |G| = p^r s with p not dividing s.
inline std::pair<int, u64> p_part(const FiniteGroup& g, u64 p) { return split_prime_power(g.order(), p); }

/// Invariant factors d_1 | d_2 | ... of G/[G,G] (empty for a perfect group).
inline std::vector<u64> abelianization(const FiniteGroup& g) {
    const std::size_t n = g.order();
    std::vector<bool> in(n, false);
    std::vector<std::size_t> sub{g.identity()};
    in[g.identity()] = true;
    std::vector<std::size_t> comms;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            comms.push_back(g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)));
        }
    }
    for (std::size_t i = 0; i < sub.size(); ++i) {
        for (auto c : comms) {
            const std::size_t y = g.mul(sub[i], c);
            if (!in[y]) {
                in[y] = true;
                sub.push_back(y);
            }
        }
    }
    const u64 quotient_order = n / sub.size();
    // Order of the coset of x: least k with x^k in [G,G].
    std::vector<u64> coset_order(n);
    for (std::size_t x = 0; x < n; ++x) {
        u64 k = 1;
        for (std::size_t y = x; !in[y]; y = g.mul(y, x)) {
            ++k;
        }
        coset_order[x] = k;
    }
    std::vector<std::vector<int>> primary; // exponents per prime, descending
    std::vector<u64> primes = prime_factors(quotient_order);
    for (u64 q : primes) {
        // c_k = #{cosets killed by q^k}; the number of cyclic factors of exponent >= k
        // is log_q(c_k / c_{k-1}).
        std::vector<int> at_least;
        u64 prev = 1;
        for (int k = 1;; ++k) {
            const u64 qk = ipow(q, k);
            u64 count = 0;
            for (std::size_t x = 0; x < n; ++x) {
                if (qk % coset_order[x] == 0) {
                    ++count;
                }
            }
            count /= sub.size();
            if (count == prev) {
                break;
            }
            at_least.push_back(split_prime_power(count / prev, q).first);
            prev = count;
        }
        std::vector<int> exps;
        for (std::size_t k = 0; k < at_least.size(); ++k) {
            const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
            for (int c = 0; c < at_least[k] - next; ++c) {
                exps.push_back(static_cast<int>(k) + 1);
            }
        }
        std::sort(exps.rbegin(), exps.rend());
        primary.push_back(exps);
    }
    std::vector<u64> factors;
    for (std::size_t slot = 0;; ++slot) {
        u64 d = 1;
        bool any = false;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (slot < primary[i].size()) {
                d *= ipow(primes[i], primary[i][slot]);
                any = true;
            }
        }
        if (!any) {
            break;
        }
        factors.push_back(d);
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

template <class T>
struct HomExtension {
    bool valid = false;
    std::vector<T> images;
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

enum class HomCheck { AllPairs, CayleyEdges };

/// Extends generator images along the word table and verifies the result. AllPairs
/// checks every product; CayleyEdges checks f(x s) = f(x) f(s) for every element x and
/// generator s, which is equivalent.
template <class T, class Mul, class Eq>
HomExtension<T> extend_and_verify_hom(const FiniteGroup& g, const std::vector<T>& generator_images, const T& identity,
                                      Mul mul, Eq eq, HomCheck check = HomCheck::AllPairs) {
    require(generator_images.size() == g.generators().size(), "dimension_mismatch",
            "one image per group generator required");
    HomExtension<T> out;
    out.images.assign(g.order(), identity);
    for (std::size_t i = 1; i < g.bfs_order().size(); ++i) {
        const std::size_t x = g.bfs_order()[i];
        out.images[x] = mul(out.images[g.parent(x)], generator_images[g.word(x).back()]);
    }
    if (check == HomCheck::AllPairs) {
        for (std::size_t a = 0; a < g.order(); ++a) {
            for (std::size_t b = 0; b < g.order(); ++b) {
                if (!eq(out.images[g.mul(a, b)], mul(out.images[a], out.images[b]))) {
                    out.violation = std::make_pair(a, b);
                    return out;
                }
            }
        }
    } else {
        for (std::size_t a = 0; a < g.order(); ++a) {
            for (std::size_t k = 0; k < g.generators().size(); ++k) {
                const std::size_t s = g.generators()[k];
                if (!eq(out.images[g.mul(a, s)], mul(out.images[a], generator_images[k]))) {
                    out.violation = std::make_pair(a, s);
                    return out;
                }
            }
        }
    }
    out.valid = true;
    return out;
}

} // namespace udr
