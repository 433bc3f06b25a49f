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
#include <string>
#include <vector>

#include "int_poly.hpp"
#include "modular.hpp"

namespace udr {

/// A W(k)-algebra W(k)[X_1..X_t]/(f_1..f_s) with integer-coefficient relations.
/// Power-series presentations are modelled by the same polynomial data: every check
/// in this library factors through the rational fibre or a finite truncation, and
/// both agree for a polynomial presentation and its completion.
struct Presentation {
    u64 p = 2;
    int residue_degree = 1;
    std::vector<std::string> variables;
    std::vector<IntPoly> relations;
    /// Value of each variable in the residue field F_p (only r = 1 uses this); defaults to 0.
    std::vector<i64> residue_point;

    std::size_t nvars() const { return variables.size(); }

    static Presentation make(u64 p, std::vector<std::string> vars, const std::vector<std::string>& relations,
                             int residue_degree = 1) {
        require(is_prime(p), "not_prime", std::to_string(p) + " is not prime");
        require(residue_degree >= 1, "invalid_degree", "residue degree must be at least 1");
        for (std::size_t i = 0; i < vars.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                require(vars[i] != vars[j], "duplicate_variable", "variable '" + vars[i] + "' declared twice");
            }
        }
        Presentation pres;
        pres.p = p;
        pres.residue_degree = residue_degree;
        pres.variables = std::move(vars);
        for (const auto& text : relations) {
            IntPoly f = parse_poly(text, pres.variables);
            require(!f.is_zero(), "zero_relation", "relation \"" + text + "\" is the zero polynomial");
            pres.relations.push_back(std::move(f));
        }
        pres.residue_point.assign(pres.variables.size(), 0);
        return pres;
    }

    std::vector<std::string> relation_strings() const {
        std::vector<std::string> out;
        for (const auto& f : relations) {
            out.push_back(to_string(f, variables));
        }
        return out;
    }

    /// Same algebra with variables permuted: new variable i is old variable perm[i].
    Presentation permuted_variables(const std::vector<std::size_t>& perm) const {
        Presentation out = *this;
        std::vector<IntPoly> images(nvars(), IntPoly(nvars()));
        for (std::size_t i = 0; i < nvars(); ++i) {
            out.variables[i] = variables[perm[i]];
            out.residue_point[i] = residue_point[perm[i]];
            images[perm[i]] = IntPoly::variable(nvars(), i);
        }
        out.relations.clear();
        for (const auto& f : relations) {
            out.relations.push_back(f.substitute(images));
        }
        return out;
    }
};

} // namespace udr
