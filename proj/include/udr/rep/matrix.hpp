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

#include "../local_ring/finite_local_ring.hpp"

namespace udr {

/// n x n matrix over a FiniteLocalRing, row-major.
using Matrix = std::vector<Element>;

/// Matrix arithmetic M_n(R).
class MatrixRing {
public:
    MatrixRing(RingPtr ring, std::size_t n) : ring_(std::move(ring)), n_(n) {}

    const RingPtr& ring() const { return ring_; }
    std::size_t dim() const { return n_; }

    Element& at(Matrix& a, std::size_t i, std::size_t j) const { return a[i * n_ + j]; }
    const Element& at(const Matrix& a, std::size_t i, std::size_t j) const { return a[i * n_ + j]; }

    Matrix zero() const { return Matrix(n_ * n_, ring_->zero()); }

    Matrix identity() const {
        Matrix a = zero();
        for (std::size_t i = 0; i < n_; ++i) {
            at(a, i, i) = ring_->one();
        }
        return a;
    }

    Matrix scalar(const Element& x) const {
        Matrix a = zero();
        for (std::size_t i = 0; i < n_; ++i) {
            at(a, i, i) = x;
        }
        return a;
    }

    Matrix add(const Matrix& a, const Matrix& b) const {
        Matrix c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            c[i] = ring_->add(a[i], b[i]);
        }
        return c;
    }

    Matrix sub(const Matrix& a, const Matrix& b) const {
        Matrix c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            c[i] = ring_->sub(a[i], b[i]);
        }
        return c;
    }

    Matrix scale(const Matrix& a, const Element& x) const {
        Matrix c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            c[i] = ring_->mul(x, a[i]);
        }
        return c;
    }

    Matrix mul(const Matrix& a, const Matrix& b) const {
        Matrix c = zero();
        int prec = ring_->precision();
        for (const auto& x : a) {
            prec = std::min(prec, x.prec);
        }
        for (const auto& x : b) {
            prec = std::min(prec, x.prec);
        }
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                Element acc = ring_->zero();
                acc.prec = prec;
                for (std::size_t k = 0; k < n_; ++k) {
                    acc = ring_->add(acc, ring_->mul(at(a, i, k), at(b, k, j)));
                }
                at(c, i, j) = acc;
            }
        }
        return c;
    }

    bool equal(const Matrix& a, const Matrix& b) const {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!ring_->equal(a[i], b[i])) {
                return false;
            }
        }
        return true;
    }

    /// Entrywise image in the residue field.
    std::vector<Vec> residue(const Matrix& a) const {
        std::vector<Vec> out;
        for (const auto& x : a) {
            out.push_back(ring_->residue(x));
        }
        return out;
    }

    bool reduces_to_identity(const Matrix& a) const { return residue(a) == residue(identity()); }

    /// Gauss-Jordan with unit pivots; empty when the matrix is singular.
    std::optional<Matrix> inverse(const Matrix& a) const {
        Matrix m = a;
        Matrix inv = identity();
        for (std::size_t c = 0; c < n_; ++c) {
            std::size_t piv = c;
            while (piv < n_ && !ring_->is_unit(at(m, piv, c))) {
                ++piv;
            }
            if (piv == n_) {
                return std::nullopt;
            }
            if (piv != c) {
                for (std::size_t j = 0; j < n_; ++j) {
                    std::swap(at(m, piv, j), at(m, c, j));
                    std::swap(at(inv, piv, j), at(inv, c, j));
                }
            }
            const Element u = ring_->inverse(at(m, c, c));
            for (std::size_t j = 0; j < n_; ++j) {
                at(m, c, j) = ring_->mul(u, at(m, c, j));
                at(inv, c, j) = ring_->mul(u, at(inv, c, j));
            }
            for (std::size_t i = 0; i < n_; ++i) {
                if (i == c || ring_->is_zero(at(m, i, c))) {
                    continue;
                }
                const Element f = at(m, i, c);
                for (std::size_t j = 0; j < n_; ++j) {
                    at(m, i, j) = ring_->sub(at(m, i, j), ring_->mul(f, at(m, c, j)));
                    at(inv, i, j) = ring_->sub(at(inv, i, j), ring_->mul(f, at(inv, c, j)));
                }
            }
        }
        return inv;
    }

    bool is_invertible(const Matrix& a) const { return inverse(a).has_value(); }

    /// Sort key: all coordinates, row-major.
    static Vec key(const Matrix& a) {
        Vec out;
        for (const auto& x : a) {
            out.insert(out.end(), x.c.begin(), x.c.end());
        }
        return out;
    }

    std::vector<std::vector<Vec>> coordinates(const Matrix& a) const {
        std::vector<std::vector<Vec>> rows(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                rows[i].push_back(at(a, i, j).c);
            }
        }
        return rows;
    }

private:
    RingPtr ring_;
    std::size_t n_;
};

} // namespace udr
