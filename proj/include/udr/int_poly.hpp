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

// Integer-coefficient multivariate polynomials: monomials, the degree reverse
// lexicographic order, a small parser and a canonical printer.

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace udr {

struct Monomial {
    std::vector<int> exps;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
    explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

    static Monomial variable(std::size_t nvars, std::size_t i, int power = 1) {
        Monomial m(nvars);
        m.exps[i] = power;
        return m;
    }

    int degree() const {
        int d = 0;
        for (int e : exps) {
            d += e;
        }
        return d;
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] > other.exps[i]) {
                return false;
            }
        }
        return true;
    }

    bool is_one() const {
        for (int e : exps) {
            if (e != 0) {
                return false;
            }
        }
        return true;
    }

    /// Some variable index if this is a pure power of one variable, else -1.
    int pure_power_variable() const {
        int var = -1;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] != 0) {
                if (var >= 0) {
                    return -1;
                }
                var = static_cast<int>(i);
            }
        }
        return var;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m(a.exps.size());
        for (std::size_t i = 0; i < a.exps.size(); ++i) {
            m.exps[i] = a.exps[i] + b.exps[i];
        }
        return m;
    }

    /// a / b, assuming b divides a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial m(a.exps.size());
        for (std::size_t i = 0; i < a.exps.size(); ++i) {
            m.exps[i] = a.exps[i] - b.exps[i];
        }
        return m;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.exps.size());
    for (std::size_t i = 0; i < a.exps.size(); ++i) {
        m.exps[i] = std::max(a.exps[i], b.exps[i]);
    }
    return m;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.exps.size(); ++i) {
        if (a.exps[i] != 0 && b.exps[i] != 0) {
            return false;
        }
    }
    return true;
}

/// Strict degrevlex comparison: a < b.
inline bool degrevlex_less(const Monomial& a, const Monomial& b) {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) {
        return da < db;
    }
    for (std::size_t i = a.exps.size(); i-- > 0;) {
        if (a.exps[i] != b.exps[i]) {
            return a.exps[i] > b.exps[i];
        }
    }
    return false;
}

/// Orders terms leading-first.
struct DegRevLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_less(b, a); }
};

/// Graded order used for basis listings: by degree, then earlier variables first
/// (X before Y within a degree).
inline bool graded_basis_less(const Monomial& a, const Monomial& b) {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) {
        return da < db;
    }
    return a.exps > b.exps;
}

template <class Coeff>
using TermMap = std::map<Monomial, Coeff, DegRevLexGreater>;

struct IntPoly {
    std::size_t nvars = 0;
    TermMap<mpz_class> terms;

    IntPoly() = default;
    explicit IntPoly(std::size_t n) : nvars(n) {}

    static IntPoly constant(std::size_t n, const mpz_class& c) {
        IntPoly p(n);
        if (c != 0) {
            p.terms[Monomial(n)] = c;
        }
        return p;
    }

    static IntPoly variable(std::size_t n, std::size_t i) {
        IntPoly p(n);
        p.terms[Monomial::variable(n, i)] = 1;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms) {
            d = std::max(d, m.degree());
        }
        return d;
    }

    void add_term(const Monomial& m, const mpz_class& c) {
        auto [it, inserted] = terms.emplace(m, c);
        if (!inserted) {
            it->second += c;
        }
        if (it->second == 0) {
            terms.erase(it);
        }
    }

    friend IntPoly operator+(IntPoly a, const IntPoly& b) {
        for (const auto& [m, c] : b.terms) {
            a.add_term(m, c);
        }
        return a;
    }

    friend IntPoly operator-(IntPoly a, const IntPoly& b) {
        for (const auto& [m, c] : b.terms) {
            a.add_term(m, -c);
        }
        return a;
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        IntPoly out(a.nvars);
        for (const auto& [ma, ca] : a.terms) {
            for (const auto& [mb, cb] : b.terms) {
                out.add_term(ma * mb, ca * cb);
            }
        }
        return out;
    }

    IntPoly pow(unsigned e) const {
        IntPoly out = constant(nvars, 1);
        for (unsigned i = 0; i < e; ++i) {
            out = out * *this;
        }
        return out;
    }

    /// Formal partial derivative with respect to variable i.
    IntPoly derivative(std::size_t i) const {
        IntPoly out(nvars);
        for (const auto& [m, c] : terms) {
            if (m.exps[i] == 0) {
                continue;
            }
            Monomial d = m;
            d.exps[i] -= 1;
            out.add_term(d, c * m.exps[i]);
        }
        return out;
    }

    /// Substitute polynomial images for every variable (all images share one ring of nvars').
    IntPoly substitute(const std::vector<IntPoly>& images) const {
        require(images.size() == nvars, "dimension_mismatch", "substitution needs one image per variable");
        const std::size_t target = images.empty() ? 0 : images.front().nvars;
        IntPoly out(target);
        for (const auto& [m, c] : terms) {
            IntPoly t = constant(target, c);
            for (std::size_t i = 0; i < nvars; ++i) {
                if (m.exps[i] > 0) {
                    t = t * images[i].pow(static_cast<unsigned>(m.exps[i]));
                }
            }
            out = out + t;
        }
        return out;
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.terms == b.terms; }
};

inline std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += names[i];
        if (m.exps[i] > 1) {
            out += "^" + std::to_string(m.exps[i]);
        }
    }
    return out.empty() ? "1" : out;
}

/// Canonical rendering, leading term first: "X^2 - 5*X".
template <class Coeff>
std::string poly_to_string(const TermMap<Coeff>& terms, const std::vector<std::string>& names) {
    if (terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        Coeff mag = c < 0 ? Coeff(-c) : c;
        if (first) {
            if (c < 0) {
                os << "-";
            }
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << mag;
        } else if (mag == 1) {
            os << monomial_to_string(m, names);
        } else {
            os << mag << "*" << monomial_to_string(m, names);
        }
    }
    return os.str();
}

inline std::string to_string(const IntPoly& p, const std::vector<std::string>& names) {
    return poly_to_string(p.terms, names);
}

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, const std::vector<std::string>& names) : s_(text), names_(names) {}

    IntPoly parse() {
        IntPoly p = expr();
        skip();
        if (pos_ != s_.size()) {
            error("unexpected character '" + std::string(1, s_[pos_]) + "'");
        }
        return p;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail("parse_error", "polynomial \"" + s_ + "\", column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) {
            return false;
        }
        const char c = s_[pos_];
        return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    IntPoly expr() {
        IntPoly acc = term();
        for (;;) {
            skip();
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                const char op = s_[pos_++];
                IntPoly t = term();
                acc = op == '+' ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    IntPoly term() {
        IntPoly acc = unary();
        for (;;) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                acc = acc * unary();
            } else if (starts_factor()) {
                acc = acc * unary();
            } else {
                return acc;
            }
        }
    }

    IntPoly unary() {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '-') {
            ++pos_;
            return IntPoly::constant(names_.size(), 0) - unary();
        }
        if (pos_ < s_.size() && s_[pos_] == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    IntPoly power() {
        IntPoly base = primary();
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                error("expected a non-negative integer exponent");
            }
            const unsigned long e = std::stoul(s_.substr(start, pos_ - start));
            if (e > 4096) {
                error("exponent too large");
            }
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    IntPoly primary() {
        skip();
        if (pos_ >= s_.size()) {
            error("unexpected end of input");
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            IntPoly inner = expr();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')') {
                error("expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            return IntPoly::constant(names_.size(), mpz_class(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            const std::string name = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < names_.size(); ++i) {
                if (names_[i] == name) {
                    return IntPoly::variable(names_.size(), i);
                }
            }
            pos_ = start;
            error("unknown variable '" + name + "'");
        }
        error("unexpected character '" + std::string(1, c) + "'");
    }

    std::string s_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline IntPoly parse_poly(const std::string& text, const std::vector<std::string>& names) {
    return detail::PolyParser(text, names).parse();
}

} // namespace udr
