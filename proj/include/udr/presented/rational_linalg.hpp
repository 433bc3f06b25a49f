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
#include <vector>

#include <gmpxx.h>

namespace udr {

using QVec = std::vector<mpq_class>;
using QMatrix = std::vector<QVec>;

namespace qla {

inline bool is_zero(const QVec& v) {
    for (const auto& x : v) {
        if (x != 0) {
            return false;
        }
    }
    return true;
}

/// Row-reduces in place; returns the pivot columns.
inline std::vector<std::size_t> rref(QMatrix& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) {
        return pivots;
    }
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[piv], a[r]);
        const mpq_class inv = 1 / a[r][c];
        for (auto& x : a[r]) {
            x *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && a[i][c] != 0) {
                const mpq_class f = a[i][c];
                for (std::size_t j = c; j < cols; ++j) {
                    a[i][j] -= f * a[r][j];
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(QMatrix a) { return rref(a).size(); }

inline mpq_class determinant(QMatrix a) {
    const std::size_t n = a.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) {
            ++piv;
        }
        if (piv == n) {
            return 0;
        }
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] != 0) {
                const mpq_class f = a[i][c] / a[c][c];
                for (std::size_t j = c; j < n; ++j) {
                    a[i][j] -= f * a[c][j];
                }
            }
        }
    }
    return det;
}

/// Basis of {x : a x = 0}, one vector per free column.
inline std::vector<QVec> kernel(QMatrix a, std::size_t cols) {
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<QVec> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        QVec v(cols, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            v[pivots[k]] = -a[k][f];
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace qla
} // namespace udr
