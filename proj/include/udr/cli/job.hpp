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

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../error.hpp"

namespace udr::cli {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// A parse or validation failure pinned to a position in the job text (1-based; 0 if unknown).
class JobError : public Error {
public:
    JobError(std::string code, const std::string& message, std::size_t line, std::size_t column)
        : Error(std::move(code), message), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct Entry {
    json value;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Section {
    std::size_t line = 0;
    std::map<std::string, Entry> entries;

    bool has(const std::string& key) const { return entries.count(key) > 0; }
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> all = {"etale-check", "necessary-condition", "defcount", "tangent",
                                                 "maranda-check", "order-bound", "hom-count", "fingerprint",
                                                 "w-check"};
    return all;
}

/// Keys accepted in each section.
inline const std::map<std::string, std::set<std::string>>& section_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"presentation", {"p", "residue_degree", "variables", "relations", "residue_point", "family", "alpha"}},
        {"codomain", {"p", "residue_degree", "variables", "relations", "residue_point", "family", "alpha"}},
        {"ring", {"kind", "p", "m", "r", "h", "variables", "relations", "mode"}},
        {"target", {"kind", "p", "m", "r", "h", "variables", "relations", "mode"}},
        {"group", {"kind", "n", "factors", "table", "generators"}},
        {"representation", {"p", "residue_degree", "dim", "matrices"}},
        {"lift1", {"matrices"}},
        {"lift2", {"matrices"}},
        {"homs", {"f1", "f2"}},
        {"options", {"precision", "cap_elements", "cap_maps", "degree_cap", "bit_cap"}},
    };
    return keys;
}

/// Sections each command requires and may use.
struct CommandShape {
    std::set<std::string> required;
    std::set<std::string> optional;
};

inline const std::map<std::string, CommandShape>& command_shapes() {
    static const std::map<std::string, CommandShape> shapes = {
        {"etale-check", {{"presentation"}, {"options"}}},
        {"necessary-condition", {{"presentation"}, {"options"}}},
        {"w-check", {{"presentation"}, {"options"}}},
        {"order-bound", {{"presentation", "homs"}, {"codomain", "options"}}},
        {"defcount", {{"group", "representation", "ring"}, {"options"}}},
        {"tangent", {{"group", "representation"}, {"options"}}},
        {"maranda-check", {{"group", "representation", "ring", "lift1", "lift2"}, {"options"}}},
        {"hom-count", {{"ring", "target"}, {"options"}}},
        {"fingerprint", {{"ring"}, {"target", "options"}}},
    };
    return shapes;
}

struct Job {
    std::string command;
    std::size_t command_line = 0;
    std::map<std::string, Section> sections;

    bool has(const std::string& name) const { return sections.count(name) > 0; }
    const Section& section(const std::string& name) const { return sections.at(name); }

    /// Canonical form: the command, then sections and keys in sorted order.
    ordered_json to_json() const {
        ordered_json out;
        out["command"] = command;
        ordered_json secs = ordered_json::object();
        for (const auto& [name, sec] : sections) {
            ordered_json keys = ordered_json::object();
            for (const auto& [k, e] : sec.entries) {
                keys[k] = ordered_json::parse(e.value.dump());
            }
            secs[name] = std::move(keys);
        }
        out["sections"] = std::move(secs);
        return out;
    }

    /// Job text that parses back to an equal Job.
    std::string to_text() const {
        std::ostringstream os;
        os << "command = " << command << "\n";
        for (const auto& [name, sec] : sections) {
            os << "\n[" << name << "]\n";
            for (const auto& [k, e] : sec.entries) {
                os << k << " = " << e.value.dump() << "\n";
            }
        }
        return os.str();
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return s.substr(a, b - a);
}

inline bool is_identifier(const std::string& s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
            return false;
        }
    }
    return true;
}

inline bool looks_numeric(const std::string& s) {
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i >= s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

/// JSON for values starting with '[', '{' or '"', integers and booleans; bare text otherwise.
inline json parse_value(const std::string& raw, std::size_t line, std::size_t column) {
    if (raw.empty()) {
        throw JobError("syntax", "missing value", line, column);
    }
    const char c = raw[0];
    if (c == '[' || c == '{' || c == '"' || looks_numeric(raw) || raw == "true" || raw == "false") {
        try {
            return json::parse(raw);
        } catch (const json::parse_error& e) {
            const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
            throw JobError("syntax", std::string("malformed value: ") + e.what(), line, column + off);
        }
    }
    return json(raw);
}

inline std::optional<std::size_t> entry_int(const Section& sec, const std::string& key) {
    const auto it = sec.entries.find(key);
    if (it == sec.entries.end()) {
        return std::nullopt;
    }
    if (!it->second.value.is_number_integer() || it->second.value.get<long long>() < 0) {
        throw JobError("type_error", "'" + key + "' must be a non-negative integer", it->second.line,
                       it->second.column);
    }
    return it->second.value.get<std::size_t>();
}

} // namespace detail

/// Parses the job text; the command given on the command line (if any) must agree with
/// the file. Every failure is a JobError with a line and column.
inline Job parse_job(const std::string& text, const std::string& command_override = "") {
    Job job;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    Section* current = nullptr;
    std::string section_name;
    const auto& keys = section_keys();
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
        }
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        const std::size_t indent = raw.find_first_not_of(" \t") + 1;
        if (line[0] == '[') {
            const auto close = line.find(']');
            if (close == std::string::npos) {
                throw JobError("syntax", "section header is missing ']'", line_no, indent + line.size());
            }
            if (!detail::trim(line.substr(close + 1)).empty()) {
                throw JobError("syntax", "unexpected text after section header", line_no, indent + close + 1);
            }
            const std::string name = detail::trim(line.substr(1, close - 1));
            if (!keys.count(name)) {
                throw JobError("unknown_section", "unknown section [" + name + "]", line_no, indent);
            }
            if (job.sections.count(name)) {
                throw JobError("duplicate_section", "section [" + name + "] appears twice", line_no, indent);
            }
            current = &job.sections[name];
            section_name = name;
            current->line = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw JobError("syntax", "expected 'key = value'", line_no, indent);
        }
        const std::string key = detail::trim(line.substr(0, eq));
        if (!detail::is_identifier(key)) {
            throw JobError("syntax", "invalid key '" + key + "'", line_no, indent);
        }
        const std::size_t value_start = line.find_first_not_of(" \t", eq + 1);
        const std::string value = value_start == std::string::npos ? "" : line.substr(value_start);
        const std::size_t value_col = indent + (value_start == std::string::npos ? line.size() : value_start);
        if (current == nullptr) {
            if (key != "command") {
                throw JobError("unknown_key", "unknown top-level key '" + key + "'", line_no, indent);
            }
            const json v = detail::parse_value(value, line_no, value_col);
            if (!v.is_string()) {
                throw JobError("type_error", "command must be a string", line_no, value_col);
            }
            job.command = v.get<std::string>();
            job.command_line = line_no;
            continue;
        }
        if (!keys.at(section_name).count(key)) {
            throw JobError("unknown_key", "unknown key '" + key + "' in [" + section_name + "]", line_no, indent);
        }
        if (current->entries.count(key)) {
            throw JobError("duplicate_key", "key '" + key + "' set twice in [" + section_name + "]", line_no, indent);
        }
        current->entries[key] = Entry{detail::parse_value(value, line_no, value_col), line_no, indent};
    }

    if (!command_override.empty()) {
        if (!job.command.empty() && job.command != command_override) {
            throw JobError("command_mismatch",
                           "job file declares '" + job.command + "' but '" + command_override + "' was requested",
                           job.command_line, 1);
        }
        job.command = command_override;
    }
    if (job.command.empty()) {
        throw JobError("missing_command", "no command given", 0, 0);
    }
    const auto shape = command_shapes().find(job.command);
    if (shape == command_shapes().end()) {
        throw JobError("unknown_command", "unknown command '" + job.command + "'", job.command_line, 1);
    }
    for (const auto& name : shape->second.required) {
        if (!job.has(name)) {
            throw JobError("missing_section", job.command + " needs a [" + name + "] section", 0, 0);
        }
    }
    for (const auto& [name, sec] : job.sections) {
        if (!shape->second.required.count(name) && !shape->second.optional.count(name)) {
            throw JobError("unexpected_section", job.command + " does not use [" + name + "]", sec.line, 1);
        }
    }

    // Every block that names a prime must name the same one.
    std::optional<std::size_t> p;
    std::string p_from;
    for (const auto& [name, sec] : job.sections) {
        const auto q = detail::entry_int(sec, "p");
        if (!q) {
            continue;
        }
        if (p && *p != *q) {
            const Entry& e = sec.entries.at("p");
            throw JobError("inconsistent_prime",
                           "p = " + std::to_string(*q) + " in [" + name + "] but p = " + std::to_string(*p) + " in [" +
                               p_from + "]",
                           e.line, e.column);
        }
        p = q;
        p_from = name;
    }
    return job;
}

} // namespace udr::cli
