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

#include "../presentation.hpp"
#include "q_fiber.hpp"
#include "rational_linalg.hpp"

namespace udr {

enum class EtaleVerdict { Pass, FailNotFinite, FailNotReduced };

inline std::string to_string(EtaleVerdict v) {
    switch (v) {
    case EtaleVerdict::Pass:
        return "PASS";
    case EtaleVerdict::FailNotFinite:
        return "FAIL_NOT_FINITE";
    case EtaleVerdict::FailNotReduced:
        return "FAIL_NOT_REDUCED";
    }
    return "?";
}

struct NilpotentWitness {
    QVec element;
    std::string polynomial;
    int power = 0; // least e with element^e = 0
};

struct EtaleReport {
    bool finite_dimensional = false;
    std::size_t dim = 0;
    std::optional<mpq_class> trace_det;
    std::optional<std::size_t> omega_rank;
    std::optional<bool> reduced;
    std::optional<bool> squarefree; // only for one relation in one variable
    EtaleVerdict verdict = EtaleVerdict::FailNotFinite;
    std::optional<NilpotentWitness> witness;
    std::string unbounded_variable;
    std::vector<std::string> groebner_basis;
    std::vector<std::string> standard_monomials;
};

/// Gram matrix of the trace pairing (x, y) -> Tr(xy) on the standard basis.
inline QMatrix trace_form(const QFiberAlgebra& a) {
    require(a.finite(), "not_finite", "trace form needs a finite-dimensional algebra");
    const std::size_t d = a.dim();
    QVec tr(d, 0);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            tr[k] += a.product_of_basis(k, l)[l];
        }
    }
    QMatrix t(d, QVec(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const QVec& prod = a.product_of_basis(i, j);
            for (std::size_t k = 0; k < d; ++k) {
                if (prod[k] != 0) {
                    t[i][j] += prod[k] * tr[k];
                }
            }
        }
    }
    return t;
}

/// dim_Q of Omega_{A/Q}: the cokernel of the Jacobian map A^s -> A^t.
inline std::size_t omega_rank(const Presentation& pres, const QFiberAlgebra& a) {
    require(a.finite(), "not_finite", "omega rank needs a finite-dimensional algebra");
    const std::size_t d = a.dim();
    const std::size_t t = pres.nvars();
    if (d == 0 || t == 0) {
        return 0;
    }
    QMatrix rows;
    for (const auto& f : pres.relations) {
        std::vector<QVec> partials;
        for (std::size_t j = 0; j < t; ++j) {
            partials.push_back(a.element(f.derivative(j)));
        }
        for (std::size_t l = 0; l < d; ++l) {
            QVec e(d, 0);
            e[l] = 1;
            QVec row;
            row.reserve(d * t);
            for (std::size_t j = 0; j < t; ++j) {
                const QVec v = a.mul(e, partials[j]);
                row.insert(row.end(), v.begin(), v.end());
            }
            rows.push_back(std::move(row));
        }
    }
    return d * t - qla::rank(std::move(rows));
}

/// A nonzero nilpotent element from the kernel of the trace form: the first basis
/// monomial in the kernel if there is one, otherwise the first kernel vector.
inline NilpotentWitness nilpotent_witness(const QFiberAlgebra& a) {
    const QMatrix t = trace_form(a);
    const std::size_t d = a.dim();
    require(d > 0 && qla::determinant(t) == 0, "reduced_algebra", "the algebra is reduced; no nilpotent exists");
    QVec x;
    for (std::size_t k = 1; k < d && x.empty(); ++k) {
        bool column_zero = true;
        for (std::size_t i = 0; i < d; ++i) {
            column_zero = column_zero && t[i][k] == 0;
        }
        if (column_zero) {
            x.assign(d, 0);
            x[k] = 1;
        }
    }
    if (x.empty()) {
        x = qla::kernel(t, d).front();
    }
    NilpotentWitness w{x, a.to_string(x), 0};
    QVec power = x;
    for (int e = 1; e <= static_cast<int>(d); ++e) {
        if (qla::is_zero(power)) {
            w.power = e;
            return w;
        }
        power = a.mul(power, x);
    }
    fail("internal_inconsistency", "trace-form kernel element is not nilpotent");
}

/// gcd(f, f') = 1 over Q for a univariate f.
inline bool univariate_squarefree(const IntPoly& f) {
    require(f.nvars == 1, "dimension_mismatch", "squarefree test needs one variable");
    auto dense = [](const IntPoly& g) {
        std::vector<mpq_class> c(static_cast<std::size_t>(std::max(g.degree(), 0)) + 1, 0);
        for (const auto& [m, v] : g.terms) {
            c[static_cast<std::size_t>(m.exps[0])] = v;
        }
        while (!c.empty() && c.back() == 0) {
            c.pop_back();
        }
        return c;
    };
    auto rem = [](std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
        while (a.size() >= b.size() && !a.empty()) {
            const mpq_class q = a.back() / b.back();
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                a[shift + i] -= q * b[i];
            }
            while (!a.empty() && a.back() == 0) {
                a.pop_back();
            }
        }
        return a;
    };
    std::vector<mpq_class> a = dense(f);
    std::vector<mpq_class> b = dense(f.derivative(0));
    if (a.empty()) {
        return false;
    }
    while (!b.empty()) {
        auto r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.size() == 1;
}

inline EtaleReport etale_check(const Presentation& pres, std::size_t bit_cap = kDefaultBitCap) {
    const QFiberAlgebra a(pres, bit_cap);
    EtaleReport rep;
    for (const auto& g : a.groebner()) {
        rep.groebner_basis.push_back(qpoly_to_string(g, pres.variables));
    }
    rep.finite_dimensional = a.finite();
    if (!a.finite()) {
        rep.verdict = EtaleVerdict::FailNotFinite;
        rep.unbounded_variable = pres.variables[*a.unbounded_variable()];
        return rep;
    }
    rep.dim = a.dim();
    for (const auto& m : a.basis()) {
        rep.standard_monomials.push_back(monomial_to_string(m, pres.variables));
    }
    rep.trace_det = qla::determinant(trace_form(a));
    rep.omega_rank = omega_rank(pres, a);
    const bool by_trace = *rep.trace_det != 0;
    const bool by_omega = *rep.omega_rank == 0;
    require(by_trace == by_omega, "internal_inconsistency",
            "trace-form and Kaehler-differential reducedness criteria disagree");
    if (pres.nvars() == 1 && pres.relations.size() == 1) {
        rep.squarefree = univariate_squarefree(pres.relations.front());
        require(*rep.squarefree == by_trace, "internal_inconsistency",
                "gcd(f, f') criterion disagrees with the trace form");
    }
    rep.reduced = by_trace;
    if (by_trace) {
        rep.verdict = EtaleVerdict::Pass;
    } else {
        rep.verdict = EtaleVerdict::FailNotReduced;
        rep.witness = nilpotent_witness(a);
    }
    return rep;
}

/// The two-variable family (X,Y)^5 + (X^4, Y^4 - X^2 Y^2 - alpha X^3 Y).
inline Presentation r_alpha_presentation(i64 alpha, u64 p) {
    std::vector<std::string> rels;
    for (int i = 5; i >= 0; --i) {
        std::string mono;
        if (i > 0) {
            mono += "X^" + std::to_string(i);
        }
        if (5 - i > 0) {
            mono += (mono.empty() ? "" : "*") + std::string("Y^") + std::to_string(5 - i);
        }
        rels.push_back(mono);
    }
    rels.push_back("X^4");
    std::string last = "Y^4 - X^2*Y^2";
    if (alpha != 0) {
        last += (alpha > 0 ? " - " : " + ") + std::to_string(alpha > 0 ? alpha : -alpha) + "*X^3*Y";
    }
    rels.push_back(last);
    return Presentation::make(p, {"X", "Y"}, rels);
}

} // namespace udr
