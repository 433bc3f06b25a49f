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

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udr/cli/run.hpp"

namespace {

std::string read_source(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path);
    if (!in) {
        throw udr::Error("io_error", "cannot read job file '" + path + "'");
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// "--set section.key=value" assignments become job text appended after the file.
std::string inline_job(const std::vector<std::string>& sets) {
    std::map<std::string, std::vector<std::string>> by_section;
    for (const auto& s : sets) {
        const auto dot = s.find('.');
        const auto eq = s.find('=');
        if (dot == std::string::npos || eq == std::string::npos || dot > eq) {
            throw udr::Error("syntax", "--set expects section.key=value, got '" + s + "'");
        }
        by_section[s.substr(0, dot)].push_back(s.substr(dot + 1));
    }
    std::string out;
    for (const auto& [section, lines] : by_section) {
        out += "[" + section + "]\n";
        for (const auto& l : lines) {
            out += l + "\n";
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"udrcheck: checks on universal deformation rings of finite group representations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", udr::cli::kVersion);

    std::string job_path;
    std::vector<std::string> sets;
    std::string output;
    std::string cache_dir = ".udrcheck-cache";
    bool no_cache = false;
    unsigned threads = 1;
    int precision = 0;
    std::size_t cap_elements = 0;
    std::size_t cap_maps = 0;
    int degree_cap = 0;

    for (const auto& name : udr::cli::commands()) {
        CLI::App* sub = app.add_subcommand(name, udr::cli::clause_tag(name));
        sub->add_option("job", job_path, "job file ('-' for standard input)");
        sub->add_option("--set", sets, "inline assignment section.key=value (repeatable)");
        sub->add_option("--precision", precision, "working precision N")->check(CLI::PositiveNumber);
        sub->add_option("--cap-elements", cap_elements, "largest ring enumerated element by element")
            ->check(CLI::PositiveNumber);
        sub->add_option("--cap-maps", cap_maps, "largest candidate family enumerated")->check(CLI::PositiveNumber);
        sub->add_option("--degree-cap", degree_cap, "degree cap for truncation Groebner bases")
            ->check(CLI::PositiveNumber);
        sub->add_option("--output", output, "write the report to this file instead of standard output");
        sub->add_flag("--no-cache", no_cache, "neither read nor write the result cache");
        sub->add_option("--cache-dir", cache_dir, "result cache directory");
        sub->add_option("--threads", threads, "worker threads for lift enumeration")->check(CLI::Range(1u, 256u));
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    udr::cli::RunOptions opts;
    opts.threads = threads;
    opts.use_cache = !no_cache;
    opts.cache_dir = cache_dir;
    if (precision > 0) {
        opts.overrides.precision = precision;
    }
    if (cap_elements > 0) {
        opts.overrides.cap_elements = cap_elements;
    }
    if (cap_maps > 0) {
        opts.overrides.cap_maps = cap_maps;
    }
    if (degree_cap > 0) {
        opts.overrides.degree_cap = degree_cap;
    }

    udr::cli::RunResult result;
    try {
        if (job_path.empty() && sets.empty()) {
            throw udr::Error("missing_job", "give a job file or --set assignments");
        }
        std::string text = job_path.empty() ? "" : read_source(job_path);
        if (!sets.empty()) {
            if (!job_path.empty()) {
                throw udr::Error("syntax", "use either a job file or --set assignments, not both");
            }
            text = inline_job(sets);
        }
        result = udr::cli::run_text(text, command, opts);
    } catch (const udr::Error& e) {
        result = {udr::cli::error_report(command, e), udr::cli::kExitError, false};
    }

    const std::string rendered = udr::cli::render(result.report);
    if (output.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "udrcheck: cannot write '" << output << "'\n";
            return udr::cli::kExitError;
        }
        out << rendered;
    }
    if (result.exit_code == udr::cli::kExitError) {
        std::cerr << "udrcheck: " << result.report["error"]["code"].get<std::string>() << ": "
                  << result.report["error"]["message"].get<std::string>() << "\n";
    }
    return result.exit_code;
}
