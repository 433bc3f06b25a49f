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

// Linear algebra over the chain ring Z/p^E, applied to finite abelian p-groups
// written as (+)_i Z/p^{e_i}. Submodules are kept in Howell (echelon) form; quotients
// are computed by a Smith normal form that tracks the column transform.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "modular.hpp"

namespace udr {

using Vec = std::vector<u64>;

/// Additive group (+)_i Z/p^{orders[i]}.
struct PGroupShape {
    u64 p = 2;
    std::vector<int> orders;

    std::size_t rank() const { return orders.size(); }

    int top() const {
        int e = 0;
        for (int o : orders) {
            e = std::max(e, o);
        }
        return e;
    }

    u64 modulus(std::size_t i) const { return ipow(p, orders[i]); }

    int log_size() const { return std::accumulate(orders.begin(), orders.end(), 0); }

    Vec normalize(Vec v) const {
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] %= modulus(i);
        }
        return v;
    }
};

/// Submodule of a PGroupShape in Howell form: one pivot row per coordinate.
class Submodule {
public:
    Submodule() = default;

    Submodule(PGroupShape shape, const std::vector<Vec>& generators) : shape_(std::move(shape)) {
        const std::size_t n = shape_.rank();
        const int top = std::max(shape_.top(), 1);
        top_ = top;
        mod_ = ipow(shape_.p, top);
        std::vector<Vec> pool;
        for (const auto& g : generators) {
            require(g.size() == n, "dimension_mismatch", "generator length does not match module rank");
            pool.push_back(lift_coords(g));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (shape_.orders[i] < top) {
                Vec rel(n, 0);
                rel[i] = ipow(shape_.p, shape_.orders[i]);
                pool.push_back(rel);
            }
        }
        rows_.assign(n, Vec(n, 0));
        pivot_exp_.assign(n, top);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t best = pool.size();
            int best_v = top;
            for (std::size_t k = 0; k < pool.size(); ++k) {
                if (pool[k][c] != 0) {
                    int v = valuation(pool[k][c], shape_.p, top);
                    if (v < best_v) {
                        best_v = v;
                        best = k;
                    }
                }
            }
            if (best == pool.size()) {
                continue;
            }
            Vec h = pool[best];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
            const u64 pa = ipow(shape_.p, best_v);
            const u64 unit = h[c] / pa;
            const u64 uinv = invmod(unit, mod_);
            for (auto& x : h) {
                x = mulmod(x, uinv, mod_);
            }
            for (auto& row : pool) {
                if (row[c] != 0) {
                    const u64 q = row[c] / pa;
                    for (std::size_t j = c; j < n; ++j) {
                        row[j] = submod(row[j], mulmod(q, h[j], mod_), mod_);
                    }
                }
            }
            if (best_v > 0) {
                Vec extra(n, 0);
                const u64 f = ipow(shape_.p, top - best_v);
                bool nonzero = false;
                for (std::size_t j = c + 1; j < n; ++j) {
                    extra[j] = mulmod(f, h[j], mod_);
                    nonzero = nonzero || extra[j] != 0;
                }
                if (nonzero) {
                    pool.push_back(std::move(extra));
                }
            }
            std::erase_if(pool, [](const Vec& r) { return std::all_of(r.begin(), r.end(), [](u64 x) { return x == 0; }); });
            rows_[c] = std::move(h);
            pivot_exp_[c] = best_v;
        }
        // Reduce entries to the right of each pivot modulo the later pivots.
        for (std::size_t c = 0; c < n; ++c) {
            if (pivot_exp_[c] >= top) {
                continue;
            }
            for (std::size_t d = c + 1; d < n; ++d) {
                if (pivot_exp_[d] >= top) {
                    continue;
                }
                const u64 pd = ipow(shape_.p, pivot_exp_[d]);
                const u64 q = rows_[c][d] / pd;
                if (q != 0) {
                    for (std::size_t j = d; j < n; ++j) {
                        rows_[c][j] = submod(rows_[c][j], mulmod(q, rows_[d][j], mod_), mod_);
                    }
                }
            }
        }
    }

    const PGroupShape& shape() const { return shape_; }

    /// log_p of the number of elements.
    int log_size() const {
        int total = 0;
        for (std::size_t c = 0; c < shape_.rank(); ++c) {
            total += shape_.orders[c] - std::min(pivot_exp_[c], shape_.orders[c]);
        }
        return total;
    }

    /// Exponent a_c of the pivot p^{a_c} in column c (top() when the column has no pivot).
    int pivot_exponent(std::size_t c) const { return pivot_exp_[c]; }

    bool contains(const Vec& x) const {
        Vec r = lift_coords(x);
        for (std::size_t c = 0; c < shape_.rank(); ++c) {
            if (r[c] == 0) {
                continue;
            }
            if (pivot_exp_[c] >= top_ || valuation(r[c], shape_.p, top_) < pivot_exp_[c]) {
                return false;
            }
            const u64 q = r[c] / ipow(shape_.p, pivot_exp_[c]);
            for (std::size_t j = c; j < shape_.rank(); ++j) {
                r[j] = submod(r[j], mulmod(q, rows_[c][j], mod_), mod_);
            }
        }
        return true;
    }

    /// Generators of the submodule: the nonzero Howell rows, with their additive orders (log_p).
    std::vector<std::pair<Vec, int>> generators() const {
        std::vector<std::pair<Vec, int>> out;
        for (std::size_t c = 0; c < shape_.rank(); ++c) {
            if (pivot_exp_[c] < shape_.orders[c]) {
                out.emplace_back(shape_.normalize(rows_[c]), shape_.orders[c] - pivot_exp_[c]);
            }
        }
        return out;
    }

    /// Every element, sorted lexicographically by coordinate vector.
    std::vector<Vec> elements(std::size_t cap) const {
        const auto gens = generators();
        const std::size_t n = shape_.rank();
        long double count = 1;
        for (const auto& g : gens) {
            count *= static_cast<long double>(ipow(shape_.p, g.second));
        }
        require(count <= static_cast<long double>(cap), "cap_exceeded",
                "submodule has more elements than the enumeration cap " + std::to_string(cap));
        std::vector<Vec> out{Vec(n, 0)};
        for (const auto& [g, ord] : gens) {
            const u64 m = ipow(shape_.p, ord);
            std::vector<Vec> next;
            next.reserve(out.size() * m);
            for (const auto& base : out) {
                Vec cur = base;
                for (u64 t = 0; t < m; ++t) {
                    next.push_back(cur);
                    for (std::size_t j = 0; j < n; ++j) {
                        cur[j] = addmod(cur[j], g[j], shape_.modulus(j));
                    }
                }
            }
            out = std::move(next);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    Vec lift_coords(const Vec& v) const {
        Vec out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] = v[i] % shape_.modulus(i) % mod_;
        }
        return out;
    }

    PGroupShape shape_;
    int top_ = 1;
    u64 mod_ = 2;
    std::vector<Vec> rows_;
    std::vector<int> pivot_exp_;
};

/// Quotient of a PGroupShape by a subgroup, diagonalized. New coordinate k corresponds
/// to old column kept[k]; the new basis element is row kept[k] of v_inv.
struct QuotientMap {
    PGroupShape source;
    PGroupShape target;
    std::vector<std::size_t> kept;
    std::vector<Vec> v;     // N x N, column transform
    std::vector<Vec> v_inv; // N x N
    u64 mod = 2;

    Vec project(const Vec& x) const {
        Vec y(kept.size(), 0);
        for (std::size_t k = 0; k < kept.size(); ++k) {
            const u64 m = target.modulus(k);
            u64 acc = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i] != 0) {
                    acc = addmod(acc, mulmod(x[i] % mod, v[i][kept[k]], mod), mod);
                }
            }
            y[k] = acc % m;
        }
        return y;
    }

    Vec lift(const Vec& y) const {
        const std::size_t n = source.rank();
        Vec x(n, 0);
        for (std::size_t k = 0; k < kept.size(); ++k) {
            if (y[k] == 0) {
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = addmod(x[i], mulmod(y[k], v_inv[kept[k]][i], mod), mod);
            }
        }
        return source.normalize(x);
    }
};

/// Quotient of `shape` by the subgroup generated by `relations`.
inline QuotientMap snf_quotient(const PGroupShape& shape, const std::vector<Vec>& relations) {
    const std::size_t n = shape.rank();
    const int top = std::max(shape.top(), 1);
    const u64 mod = ipow(shape.p, top);
    std::vector<Vec> m;
    for (const auto& r : relations) {
        Vec row(n);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = r[i] % shape.modulus(i);
        }
        m.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (shape.orders[i] < top) {
            Vec row(n, 0);
            row[i] = ipow(shape.p, shape.orders[i]);
            m.push_back(std::move(row));
        }
    }
    QuotientMap q;
    q.source = shape;
    q.mod = mod;
    q.v.assign(n, Vec(n, 0));
    q.v_inv.assign(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        q.v[i][i] = 1;
        q.v_inv[i][i] = 1;
    }
    std::vector<bool> row_done(m.size(), false);
    std::vector<bool> col_done(n, false);
    std::vector<int> col_exp(n, top);
    for (;;) {
        int best_v = top;
        std::size_t br = 0;
        std::size_t bc = 0;
        bool found = false;
        // Minimal valuation; ties prefer the later column so that low-degree basis
        // elements survive unchanged.
        for (std::size_t c = n; c-- > 0;) {
            if (col_done[c]) {
                continue;
            }
            for (std::size_t r = 0; r < m.size(); ++r) {
                if (row_done[r] || m[r][c] == 0) {
                    continue;
                }
                int v = valuation(m[r][c], shape.p, top);
                if (v < best_v) {
                    best_v = v;
                    br = r;
                    bc = c;
                    found = true;
                }
            }
        }
        if (!found) {
            break;
        }
        const u64 pa = ipow(shape.p, best_v);
        const u64 uinv = invmod(m[br][bc] / pa, mod);
        for (auto& x : m[br]) {
            x = mulmod(x, uinv, mod);
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == br || row_done[r] || m[r][bc] == 0) {
                continue;
            }
            const u64 f = m[r][bc] / pa;
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] = submod(m[r][j], mulmod(f, m[br][j], mod), mod);
            }
        }
        for (std::size_t d = 0; d < n; ++d) {
            if (d == bc || col_done[d] || m[br][d] == 0) {
                continue;
            }
            const u64 f = m[br][d] / pa;
            m[br][d] = 0;
            for (std::size_t i = 0; i < n; ++i) {
                q.v[i][d] = submod(q.v[i][d], mulmod(f, q.v[i][bc], mod), mod);
            }
            for (std::size_t j = 0; j < n; ++j) {
                q.v_inv[bc][j] = addmod(q.v_inv[bc][j], mulmod(f, q.v_inv[d][j], mod), mod);
            }
        }
        row_done[br] = true;
        col_done[bc] = true;
        col_exp[bc] = best_v;
    }
    q.target.p = shape.p;
    for (std::size_t c = 0; c < n; ++c) {
        if (col_exp[c] > 0) {
            q.kept.push_back(c);
            q.target.orders.push_back(col_exp[c]);
        }
    }
    return q;
}

/// Kernel of the F_p-linear map sending basis vector i to images[i] (vectors of length m).
/// The returned basis is in reduced echelon form, ordered by leading free column.
inline std::vector<Vec> kernel_mod_p(const std::vector<Vec>& images, std::size_t m, u64 p) {
    const std::size_t n = images.size();
    // Matrix with rows = output coordinates, columns = input basis vectors.
    std::vector<Vec> a(m, Vec(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            a[i][j] = images[j][i] % p;
        }
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t piv = row;
        while (piv < m && a[piv][c] == 0) {
            ++piv;
        }
        if (piv == m) {
            continue;
        }
        std::swap(a[piv], a[row]);
        const u64 inv = invmod(a[row][c], p);
        for (auto& x : a[row]) {
            x = mulmod(x, inv, p);
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i != row && a[i][c] != 0) {
                const u64 f = a[i][c];
                for (std::size_t j = 0; j < n; ++j) {
                    a[i][j] = submod(a[i][j], mulmod(f, a[row][j], p), p);
                }
            }
        }
        pivot_cols.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        Vec v(n, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
            v[pivot_cols[k]] = (p - a[k][f]) % p;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve sum_j x_j * columns[j] = target over F_p; empty optional when inconsistent.
inline std::optional<Vec> solve_mod_p(const std::vector<Vec>& columns, const Vec& target, u64 p) {
    const std::size_t n = columns.size();
    const std::size_t m = target.size();
    std::vector<Vec> a(m, Vec(n + 1, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = columns[j][i] % p;
        }
        a[i][n] = target[i] % p;
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t piv = row;
        while (piv < m && a[piv][c] == 0) {
            ++piv;
        }
        if (piv == m) {
            continue;
        }
        std::swap(a[piv], a[row]);
        const u64 inv = invmod(a[row][c], p);
        for (auto& x : a[row]) {
            x = mulmod(x, inv, p);
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i != row && a[i][c] != 0) {
                const u64 f = a[i][c];
                for (std::size_t j = 0; j <= n; ++j) {
                    a[i][j] = submod(a[i][j], mulmod(f, a[row][j], p), p);
                }
            }
        }
        pivot_cols.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i) {
        if (a[i][n] != 0) {
            return std::nullopt;
        }
    }
    Vec x(n, 0);
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
        x[pivot_cols[k]] = a[k][n];
    }
    return x;
}

} // namespace udr
