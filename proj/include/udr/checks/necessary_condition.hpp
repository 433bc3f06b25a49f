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

#include <optional>
#include <string>

#include "../presentation.hpp"
#include "../presented/etale.hpp"

namespace udr {

struct NecessaryConditionVerdict {
    EtaleReport report;
    bool excluded = false;
    std::string interpretation;
    std::string certificate;
    std::optional<std::string> open_problem; // set for the rings posed as open test problems
};

inline constexpr const char* kExcluded = "NOT in U (nor in Q)";
inline constexpr const char* kSatisfied = "necessary condition satisfied; membership in U unknown";

namespace detail {

/// Recognizes W(k)[p^(1/r)] (r > 1), W(k)[X]/(X^2 - p^r X) and W(k)[[X]]/(p^r X) (r >= 1)
/// among one-variable, one-relation presentations.
inline std::optional<std::string> open_problem_tag(const Presentation& pres) {
    if (pres.nvars() != 1 || pres.relations.size() != 1 || pres.residue_degree < 1) {
        return std::nullopt;
    }
    const IntPoly& f = pres.relations.front();
    const mpz_class p = static_cast<unsigned long>(pres.p);
    auto is_p_power = [&](mpz_class c, int min_exp) {
        int e = 0;
        while (c != 0 && c % p == 0) {
            c /= p;
            ++e;
        }
        return c == 1 && e >= min_exp;
    };
    auto mono = [](int e) { return Monomial(std::vector<int>{e}); };
    if (f.terms.size() == 2) {
        const auto top = *f.terms.begin();
        const auto low = *std::next(f.terms.begin());
        if (top.second == 1 && low.first.is_one() && top.first.degree() > 1 && low.second < 0 &&
            -low.second == p) {
            if (pres.p == 5 && top.first.degree() == 2 && pres.residue_degree == 1) {
                return std::nullopt;
            }
            return "open test problem: W(k)[p^(1/r)]";
        }
        if (top.second == 1 && top.first == mono(2) && low.first == mono(1) && low.second < 0 &&
            is_p_power(-low.second, 1)) {
            return "open test problem: W(k)[X]/(X^2 - p^r X)";
        }
    }
    if (f.terms.size() == 1) {
        const auto t = *f.terms.begin();
        const mpz_class c = t.second > 0 ? mpz_class(t.second) : mpz_class(-t.second);
        if (t.first == mono(1) && is_p_power(c, 1)) {
            if (pres.p == 3 && c == 3 && pres.residue_degree == 1) {
                return std::nullopt;
            }
            return "open test problem: W(k)[[X]]/(p^r X)";
        }
    }
    return std::nullopt;
}

} // namespace detail

/// One-sided: a failing etale check excludes R; passing proves nothing.
inline NecessaryConditionVerdict necessary_condition(const Presentation& pres, std::size_t bit_cap = kDefaultBitCap) {
    NecessaryConditionVerdict v;
    v.report = etale_check(pres, bit_cap);
    v.excluded = v.report.verdict != EtaleVerdict::Pass;
    v.interpretation = v.excluded ? kExcluded : kSatisfied;
    if (v.report.verdict == EtaleVerdict::FailNotReduced) {
        v.certificate = "(" + v.report.witness->polynomial + ")^" + std::to_string(v.report.witness->power) +
                        " = 0 in R[1/p] with " + v.report.witness->polynomial + " != 0";
    } else if (v.report.verdict == EtaleVerdict::FailNotFinite) {
        v.certificate = v.report.unbounded_variable + "^k is a standard monomial for every k";
    }
    v.open_problem = detail::open_problem_tag(pres);
    return v;
}

} // namespace udr
