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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "../group/finite_group.hpp"
#include "../local_ring/construct.hpp"
#include "../presented/etale.hpp"
#include "../rep/representation.hpp"
#include "job.hpp"

namespace udr::cli {

inline constexpr int kDefaultPrecision = 8;

/// Effective parameters: command-line flags override [options], which overrides defaults.
struct Parameters {
    int precision = kDefaultPrecision;
    std::size_t cap_elements = kDefaultElementCap;
    std::size_t cap_maps = kDefaultMapCap;
    int degree_cap = kDefaultDegreeCap;
    std::size_t bit_cap = kDefaultBitCap;

    EnumerationOptions enumeration(unsigned threads) const { return {cap_elements, cap_maps, threads}; }

    ordered_json to_json() const {
        ordered_json out;
        out["precision"] = precision;
        out["cap_elements"] = cap_elements;
        out["cap_maps"] = cap_maps;
        out["degree_cap"] = degree_cap;
        out["bit_cap"] = bit_cap;
        return out;
    }
};

struct Overrides {
    std::optional<int> precision;
    std::optional<std::size_t> cap_elements;
    std::optional<std::size_t> cap_maps;
    std::optional<int> degree_cap;
};

namespace detail {

[[noreturn]] inline void bad(const Entry& e, const std::string& code, const std::string& message) {
    throw JobError(code, message, e.line, e.column);
}

inline const Entry& need(const Section& sec, const std::string& name, const std::string& key) {
    const auto it = sec.entries.find(key);
    if (it == sec.entries.end()) {
        throw JobError("missing_key", "[" + name + "] needs '" + key + "'", sec.line, 1);
    }
    return it->second;
}

inline i64 as_int(const Entry& e, const std::string& key) {
    if (!e.value.is_number_integer()) {
        bad(e, "type_error", "'" + key + "' must be an integer");
    }
    return e.value.get<i64>();
}

inline i64 get_int(const Section& sec, const std::string& name, const std::string& key, std::optional<i64> fallback = {}) {
    const auto it = sec.entries.find(key);
    if (it == sec.entries.end()) {
        if (!fallback) {
            need(sec, name, key);
        }
        return *fallback;
    }
    return as_int(it->second, key);
}

inline std::string get_string(const Section& sec, const std::string& name, const std::string& key,
                              std::optional<std::string> fallback = {}) {
    const auto it = sec.entries.find(key);
    if (it == sec.entries.end()) {
        if (!fallback) {
            need(sec, name, key);
        }
        return *fallback;
    }
    if (!it->second.value.is_string()) {
        bad(it->second, "type_error", "'" + key + "' must be a string");
    }
    return it->second.value.get<std::string>();
}

/// A JSON list of strings, or one string split at commas.
inline std::vector<std::string> get_string_list(const Section& sec, const std::string& key) {
    const auto it = sec.entries.find(key);
    if (it == sec.entries.end()) {
        return {};
    }
    const json& v = it->second.value;
    std::vector<std::string> out;
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        std::size_t start = 0;
        while (start <= s.size()) {
            const auto comma = s.find(',', start);
            const std::string part = trim(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (!part.empty()) {
                out.push_back(part);
            }
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        return out;
    }
    if (!v.is_array()) {
        bad(it->second, "type_error", "'" + key + "' must be a list of strings");
    }
    for (const auto& x : v) {
        if (!x.is_string()) {
            bad(it->second, "type_error", "'" + key + "' must be a list of strings");
        }
        out.push_back(x.get<std::string>());
    }
    return out;
}

inline std::vector<i64> get_int_list(const Section& sec, const std::string& key) {
    const auto it = sec.entries.find(key);
    if (it == sec.entries.end()) {
        return {};
    }
    const json& v = it->second.value;
    std::vector<i64> out;
    if (!v.is_array()) {
        bad(it->second, "type_error", "'" + key + "' must be a list of integers");
    }
    for (const auto& x : v) {
        if (!x.is_number_integer()) {
            bad(it->second, "type_error", "'" + key + "' must be a list of integers");
        }
        out.push_back(x.get<i64>());
    }
    return out;
}

/// Re-raises library errors at the position of the entry that caused them.
template <class F>
auto at_entry(const Section& sec, const std::string& key, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const JobError&) {
        throw;
    } catch (const Error& e) {
        const auto it = sec.entries.find(key);
        const std::size_t line = it == sec.entries.end() ? sec.line : it->second.line;
        const std::size_t col = it == sec.entries.end() ? 1 : it->second.column;
        throw JobError(e.code(), e.what(), line, col);
    }
}

} // namespace detail

inline Parameters effective_parameters(const Job& job, const Overrides& o) {
    Parameters p;
    if (job.has("options")) {
        const Section& s = job.section("options");
        p.precision = static_cast<int>(detail::get_int(s, "options", "precision", p.precision));
        p.cap_elements = static_cast<std::size_t>(detail::get_int(s, "options", "cap_elements", static_cast<i64>(p.cap_elements)));
        p.cap_maps = static_cast<std::size_t>(detail::get_int(s, "options", "cap_maps", static_cast<i64>(p.cap_maps)));
        p.degree_cap = static_cast<int>(detail::get_int(s, "options", "degree_cap", p.degree_cap));
        p.bit_cap = static_cast<std::size_t>(detail::get_int(s, "options", "bit_cap", static_cast<i64>(p.bit_cap)));
    }
    if (o.precision) {
        p.precision = *o.precision;
    }
    if (o.cap_elements) {
        p.cap_elements = *o.cap_elements;
    }
    if (o.cap_maps) {
        p.cap_maps = *o.cap_maps;
    }
    if (o.degree_cap) {
        p.degree_cap = *o.degree_cap;
    }
    require(p.precision >= 1, "invalid_precision", "precision must be at least 1");
    return p;
}

inline Presentation build_presentation(const Job& job, const std::string& name) {
    const Section& s = job.section(name);
    const u64 p = static_cast<u64>(detail::get_int(s, name, "p"));
    const std::string family = detail::get_string(s, name, "family", "");
    if (!family.empty()) {
        if (family != "r_alpha") {
            detail::bad(s.entries.at("family"), "unknown_family", "unknown presentation family '" + family + "'");
        }
        const i64 alpha = detail::get_int(s, name, "alpha");
        return detail::at_entry(s, "alpha", [&] { return r_alpha_presentation(alpha, p); });
    }
    const int r = static_cast<int>(detail::get_int(s, name, "residue_degree", 1));
    const auto vars = detail::get_string_list(s, "variables");
    const auto rels = detail::get_string_list(s, "relations");
    Presentation pres = detail::at_entry(s, "relations", [&] { return Presentation::make(p, vars, rels, r); });
    if (s.has("residue_point")) {
        const auto pt = detail::get_int_list(s, "residue_point");
        if (pt.size() != vars.size()) {
            detail::bad(s.entries.at("residue_point"), "dimension_mismatch", "one residue value per variable required");
        }
        pres.residue_point = pt;
    }
    return pres;
}

inline RingPtr build_ring(const Job& job, const std::string& name, const Parameters& params) {
    const Section& s = job.section(name);
    const std::string kind = detail::get_string(s, name, "kind", "galois");
    const u64 p = static_cast<u64>(detail::get_int(s, name, "p"));
    const int m = static_cast<int>(detail::get_int(s, name, "m", params.precision));
    const int r = static_cast<int>(detail::get_int(s, name, "r", 1));
    const std::string mode_name = detail::get_string(s, name, "mode", "exact");
    RingMode mode = RingMode::ExactFinite;
    if (mode_name == "precision_model") {
        mode = RingMode::PrecisionModel;
    } else if (mode_name != "exact") {
        detail::bad(s.entries.at("mode"), "invalid_value", "mode must be 'exact' or 'precision_model'");
    }
    if (kind == "galois") {
        std::vector<u64> h;
        for (i64 c : detail::get_int_list(s, "h")) {
            h.push_back(static_cast<u64>(c));
        }
        return detail::at_entry(s, "p", [&] { return build_galois_ring(p, m, r, h, mode); });
    }
    if (kind == "dual_numbers") {
        return detail::at_entry(s, "p", [&] { return dual_numbers(p, r); });
    }
    if (kind == "presentation") {
        const auto vars = detail::get_string_list(s, "variables");
        const auto rels = detail::get_string_list(s, "relations");
        const Presentation pres = detail::at_entry(s, "relations", [&] { return Presentation::make(p, vars, rels, r); });
        return detail::at_entry(s, "relations", [&] {
            return ring_from_truncated_presentation(pres, m, params.degree_cap, mode);
        });
    }
    detail::bad(s.entries.at("kind"), "invalid_value", "ring kind must be galois, dual_numbers or presentation");
}

inline FiniteGroup named_group(const std::string& kind, std::size_t n) {
    if (kind == "cyclic") {
        return cyclic(n);
    }
    if (kind == "dihedral") {
        return dihedral(n);
    }
    if (kind == "symmetric") {
        return symmetric(n);
    }
    if (kind == "quaternion8") {
        return quaternion8();
    }
    if (kind == "klein") {
        return direct_product(cyclic(2), cyclic(2));
    }
    fail("invalid_value", "unknown group kind '" + kind + "'");
}

inline GroupPtr build_group(const Job& job) {
    const Section& s = job.section("group");
    const std::string kind = detail::get_string(s, "group", "kind");
    return detail::at_entry(s, "kind", [&]() -> GroupPtr {
        if (kind == "table") {
            const Entry& t = detail::need(s, "group", "table");
            FiniteGroup::Table table;
            try {
                table = t.value.get<FiniteGroup::Table>();
            } catch (const json::exception&) {
                detail::bad(t, "type_error", "'table' must be a square array of element indices");
            }
            std::vector<std::size_t> gens;
            for (i64 g : detail::get_int_list(s, "generators")) {
                gens.push_back(static_cast<std::size_t>(g));
            }
            return std::make_shared<const FiniteGroup>(detail::at_entry(s, "table", [&] {
                return from_cayley_table(std::move(table), gens);
            }));
        }
        if (kind == "product") {
            const Entry& f = detail::need(s, "group", "factors");
            if (!f.value.is_array() || f.value.empty()) {
                detail::bad(f, "type_error", "'factors' must be a non-empty list of [kind, n] pairs");
            }
            std::optional<FiniteGroup> g;
            for (const auto& factor : f.value) {
                if (!factor.is_array() || factor.size() != 2 || !factor[0].is_string() || !factor[1].is_number_integer()) {
                    detail::bad(f, "type_error", "'factors' must be a non-empty list of [kind, n] pairs");
                }
                FiniteGroup h = detail::at_entry(s, "factors", [&] {
                    return named_group(factor[0].get<std::string>(), factor[1].get<std::size_t>());
                });
                g = g ? direct_product(*g, h) : h;
            }
            return std::make_shared<const FiniteGroup>(std::move(*g));
        }
        const std::size_t n = static_cast<std::size_t>(detail::get_int(s, "group", "n", 0));
        return std::make_shared<const FiniteGroup>(named_group(kind, n));
    });
}

/// Matrices listed one per group generator; an entry is an integer or a coordinate list.
inline std::vector<Matrix> parse_matrices(const Section& s, const std::string& name, const RingPtr& ring,
                                          std::size_t n, std::size_t count) {
    const Entry& e = detail::need(s, name, "matrices");
    if (!e.value.is_array() || e.value.size() != count) {
        detail::bad(e, "dimension_mismatch", "[" + name + "] needs one matrix per group generator (" +
                                                 std::to_string(count) + ")");
    }
    std::vector<Matrix> out;
    for (const auto& m : e.value) {
        if (!m.is_array() || m.size() != n) {
            detail::bad(e, "dimension_mismatch", "every matrix must have " + std::to_string(n) + " rows");
        }
        Matrix mat;
        for (const auto& row : m) {
            if (!row.is_array() || row.size() != n) {
                detail::bad(e, "dimension_mismatch", "every matrix row must have " + std::to_string(n) + " entries");
            }
            for (const auto& x : row) {
                if (x.is_number_integer()) {
                    mat.push_back(ring->from_int(x.get<i64>()));
                    continue;
                }
                if (!x.is_array() || x.size() != ring->rank()) {
                    detail::bad(e, "type_error", "matrix entries are integers or coordinate lists of length " +
                                                     std::to_string(ring->rank()));
                }
                Vec c;
                for (const auto& v : x) {
                    if (!v.is_number_integer()) {
                        detail::bad(e, "type_error", "coordinates must be integers");
                    }
                    const i64 mod = static_cast<i64>(ipow(ring->p(), ring->precision()));
                    c.push_back(static_cast<u64>(((v.get<i64>() % mod) + mod) % mod));
                }
                mat.push_back(ring->element(std::move(c)));
            }
        }
        out.push_back(std::move(mat));
    }
    return out;
}

/// The residual representation over F_q; p and the residue degree come from the block
/// or, failing that, from the ring.
inline Representation build_residual(const Job& job, const GroupPtr& group, const RingPtr& ring) {
    const Section& s = job.section("representation");
    const i64 p = ring ? static_cast<i64>(ring->p()) : detail::get_int(s, "representation", "p");
    const i64 r = ring ? ring->residue_degree() : detail::get_int(s, "representation", "residue_degree", 1);
    if (ring && s.has("residue_degree") && detail::get_int(s, "representation", "residue_degree") != r) {
        detail::bad(s.entries.at("residue_degree"), "inconsistent_field", "residue degree differs from the ring");
    }
    const RingPtr field = detail::at_entry(s, "p", [&] { return build_galois_ring(static_cast<u64>(p), 1, static_cast<int>(r)); });
    const std::size_t n = static_cast<std::size_t>(detail::get_int(s, "representation", "dim"));
    if (n == 0) {
        detail::bad(s.entries.at("dim"), "invalid_value", "dimension must be positive");
    }
    const auto mats = parse_matrices(s, "representation", field, n, group->generators().size());
    return detail::at_entry(s, "matrices", [&] { return residual_rep(group, field, n, mats); });
}

} // namespace udr::cli
