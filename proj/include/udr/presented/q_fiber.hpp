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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "../presentation.hpp"
#include "rational_groebner.hpp"
#include "rational_linalg.hpp"

namespace udr {

/// The rational fibre A = Q[X]/(relations) with its standard-monomial basis.
class QFiberAlgebra {
public:
    explicit QFiberAlgebra(const Presentation& pres, std::size_t bit_cap = kDefaultBitCap)
        : variables_(pres.variables), gb_engine_(pres.nvars(), bit_cap) {
        std::vector<QPoly> gens;
        for (const auto& f : pres.relations) {
            gens.push_back(to_qpoly(f));
        }
        groebner_ = gb_engine_.basis(gens);
        const std::size_t n = pres.nvars();
        for (std::size_t i = 0; i < n && finite_; ++i) {
            bool bounded = false;
            for (const auto& g : groebner_) {
                const Monomial& lm = g.begin()->first;
                bounded = bounded || lm.is_one() || lm.pure_power_variable() == static_cast<int>(i);
            }
            if (!bounded) {
                finite_ = false;
                unbounded_variable_ = i;
            }
        }
        if (!finite_) {
            return;
        }
        std::set<Monomial, DegRevLexGreater> seen;
        std::vector<Monomial> frontier{Monomial(n)};
        while (!frontier.empty()) {
            std::vector<Monomial> next;
            for (const auto& m : frontier) {
                if (!seen.insert(m).second || is_leading(m)) {
                    continue;
                }
                basis_.push_back(m);
                for (std::size_t i = 0; i < n; ++i) {
                    Monomial up = m;
                    ++up.exps[i];
                    next.push_back(up);
                }
            }
            frontier = std::move(next);
        }
        std::sort(basis_.begin(), basis_.end(), graded_basis_less);
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            index_[basis_[k]] = k;
        }
        const std::size_t d = basis_.size();
        table_.assign(d, std::vector<QVec>(d));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                QPoly prod;
                prod.emplace(basis_[i] * basis_[j], mpq_class(1));
                table_[i][j] = coords(prod);
                table_[j][i] = table_[i][j];
            }
        }
        QPoly one;
        one.emplace(Monomial(n), mpq_class(1));
        unity_ = coords(one);
    }

    bool finite() const { return finite_; }
    std::size_t dim() const { return basis_.size(); }
    std::optional<std::size_t> unbounded_variable() const { return unbounded_variable_; }
    const std::vector<QPoly>& groebner() const { return groebner_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    const std::vector<std::string>& variables() const { return variables_; }
    const QVec& unity() const { return unity_; }
    const QVec& product_of_basis(std::size_t i, std::size_t j) const { return table_[i][j]; }

    QPoly normal_form(const QPoly& f) const { return gb_engine_.reduce(f, groebner_); }

    QVec coords(const QPoly& f) const {
        require(finite_, "not_finite", "the rational fibre is infinite-dimensional");
        QVec v(dim(), 0);
        for (const auto& [m, c] : normal_form(f)) {
            v[index_.at(m)] = c;
        }
        return v;
    }

    QVec element(const IntPoly& f) const { return coords(to_qpoly(f)); }

    QPoly to_poly(const QVec& v) const {
        QPoly out;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] != 0) {
                out.emplace(basis_[k], v[k]);
            }
        }
        return out;
    }

    std::string to_string(const QVec& v) const { return qpoly_to_string(to_poly(v), variables_); }

    QVec mul(const QVec& a, const QVec& b) const {
        QVec out(dim(), 0);
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < dim(); ++j) {
                if (b[j] == 0) {
                    continue;
                }
                const mpq_class f = a[i] * b[j];
                const QVec& t = table_[i][j];
                for (std::size_t k = 0; k < dim(); ++k) {
                    if (t[k] != 0) {
                        out[k] += f * t[k];
                    }
                }
            }
        }
        return out;
    }

    /// Matrix of multiplication by a, columns indexed by the basis.
    QMatrix multiplication_matrix(const QVec& a) const {
        QMatrix m(dim(), QVec(dim(), 0));
        for (std::size_t j = 0; j < dim(); ++j) {
            QVec e(dim(), 0);
            e[j] = 1;
            const QVec col = mul(a, e);
            for (std::size_t i = 0; i < dim(); ++i) {
                m[i][j] = col[i];
            }
        }
        return m;
    }

    mpq_class trace(const QVec& a) const {
        const QMatrix m = multiplication_matrix(a);
        mpq_class t = 0;
        for (std::size_t i = 0; i < dim(); ++i) {
            t += m[i][i];
        }
        return t;
    }

private:
    bool is_leading(const Monomial& m) const {
        for (const auto& g : groebner_) {
            if (g.begin()->first.divides(m)) {
                return true;
            }
        }
        return false;
    }

    std::vector<std::string> variables_;
    RationalGroebner gb_engine_;
    std::vector<QPoly> groebner_;
    bool finite_ = true;
    std::optional<std::size_t> unbounded_variable_;
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t, DegRevLexGreater> index_;
    std::vector<std::vector<QVec>> table_;
    QVec unity_;
};

} // namespace udr
