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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "../checks/crosschecks.hpp"
#include "../checks/necessary_condition.hpp"
#include "../checks/order_bound.hpp"
#include "../local_ring/fingerprint.hpp"
#include "../local_ring/hom.hpp"
#include "../presented/w_membership.hpp"
#include "../rep/maranda.hpp"
#include "build.hpp"

namespace udr::cli {

inline constexpr const char* kToolName = "udrcheck";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::size_t kMaxListedMaps = 256;

enum ExitCode { kExitOk = 0, kExitError = 1, kExitVerdictFail = 2 };

inline std::string clause_tag(const std::string& command) {
    static const std::map<std::string, std::string> tags = {
        {"etale-check", "finite etale criterion: R[1/p] finite-dimensional and reduced"},
        {"necessary-condition", "necessary condition for universal deformation rings (one-sided)"},
        {"w-check", "finite free W(k)-module criterion"},
        {"order-bound", "order lower bound: f1 = f2 mod p^l m_S with ptor(S) = 0 forces p^(l+1) | #G"},
        {"defcount", "deformation functor: lifts modulo strict equivalence"},
        {"tangent", "tangent space: Def over the dual numbers"},
        {"maranda-check", "strict equivalence detected modulo J = |G| m_R by averaging"},
        {"hom-count", "local homomorphisms between finite local rings"},
        {"fingerprint", "isomorphism invariants (non-isomorphism certificates only)"},
    };
    return tags.at(command);
}

struct RunOptions {
    Overrides overrides;
    unsigned threads = 1;
    bool use_cache = false;
    std::string cache_dir = ".udrcheck-cache";
};

struct RunResult {
    ordered_json report;
    int exit_code = kExitOk;
    bool cache_hit = false;
};

namespace detail {

inline ordered_json element_json(const FiniteLocalRing& ring, const Element& x) {
    if (ring.rank() == 1) {
        return x.c[0];
    }
    return ordered_json(x.c);
}

inline ordered_json matrix_json(const FiniteLocalRing& ring, std::size_t n, const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < n; ++j) {
            row.push_back(element_json(ring, m[i * n + j]));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ordered_json generator_images_json(const Representation& rho) {
    ordered_json out = ordered_json::array();
    for (const auto& m : rho.generator_images()) {
        out.push_back(matrix_json(*rho.ring, rho.dim, m));
    }
    return out;
}

inline ordered_json ring_summary(const FiniteLocalRing& ring) {
    ordered_json out;
    out["name"] = ring.name();
    out["p"] = ring.p();
    out["residue_degree"] = ring.residue_degree();
    out["precision"] = ring.precision();
    out["log_p_size"] = ring.log_size();
    out["mode"] = ring.is_precision_model() ? "precision_model" : "exact";
    return out;
}

inline ordered_json group_summary(const FiniteGroup& g) {
    ordered_json out;
    out["name"] = g.name();
    out["order"] = g.order();
    out["generators"] = g.generators().size();
    return out;
}

inline std::vector<std::string> qvec_strings(const QVec& v) {
    std::vector<std::string> out;
    for (const auto& x : v) {
        out.push_back(x.get_str());
    }
    return out;
}

inline ordered_json etale_json(const EtaleReport& r) {
    ordered_json out;
    out["verdict"] = to_string(r.verdict);
    out["finite_dimensional"] = r.finite_dimensional;
    out["dim"] = r.dim;
    out["groebner_basis"] = r.groebner_basis;
    out["standard_monomials"] = r.standard_monomials;
    out["trace_form_determinant"] = r.trace_det ? ordered_json(r.trace_det->get_str()) : ordered_json(nullptr);
    out["omega_rank"] = r.omega_rank ? ordered_json(*r.omega_rank) : ordered_json(nullptr);
    out["reduced"] = r.reduced ? ordered_json(*r.reduced) : ordered_json(nullptr);
    out["squarefree"] = r.squarefree ? ordered_json(*r.squarefree) : ordered_json(nullptr);
    if (r.witness) {
        ordered_json w;
        w["polynomial"] = r.witness->polynomial;
        w["coordinates"] = qvec_strings(r.witness->element);
        w["power"] = r.witness->power;
        out["nilpotent_witness"] = std::move(w);
    } else {
        out["nilpotent_witness"] = nullptr;
    }
    out["unbounded_variable"] = r.unbounded_variable.empty() ? ordered_json(nullptr) : ordered_json(r.unbounded_variable);
    return out;
}

inline ordered_json fingerprint_json(const Fingerprint& fp) {
    ordered_json out;
    out["characteristic"] = fp.characteristic;
    out["log_p_cardinality"] = fp.log_cardinality;
    out["log_p_maximal_ideal"] = fp.log_maximal_ideal;
    out["hilbert_function"] = fp.hilbert;
    ordered_json orders = ordered_json::array();
    for (const auto& [o, c] : fp.additive_orders) {
        orders.push_back({o, c});
    }
    out["additive_orders"] = std::move(orders);
    ordered_json nil = ordered_json::array();
    for (const auto& [k, c] : fp.nilpotency) {
        nil.push_back({k, c});
    }
    out["nilpotency_indices"] = std::move(nil);
    return out;
}

inline Representation build_lift(const Job& job, const std::string& name, const Representation& rbar,
                                 const RingPtr& ring) {
    const Section& s = job.section(name);
    const auto mats = parse_matrices(s, name, ring, rbar.dim, rbar.group->generators().size());
    Representation rho = at_entry(s, "matrices", [&] { return make_representation(rbar.group, ring, rbar.dim, mats); });
    const MatrixRing alg(ring, rbar.dim);
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const auto red = alg.residue(mats[k]);
        for (std::size_t e = 0; e < red.size(); ++e) {
            if (red[e] != rbar.ring->residue(rbar.generator_images()[k][e])) {
                bad(s.entries.at("matrices"), "not_a_lift", "[" + name + "] does not reduce to the residual representation");
            }
        }
    }
    return rho;
}

} // namespace detail

/// Runs a validated job; library errors propagate as exceptions.
inline RunResult compute(const Job& job, const Parameters& params, unsigned threads) {
    RunResult res;
    ordered_json result;
    const std::string& cmd = job.command;
    const EnumerationOptions opt = params.enumeration(threads);

    if (cmd == "etale-check") {
        const Presentation pres = build_presentation(job, "presentation");
        const EtaleReport r = etale_check(pres, params.bit_cap);
        result["presentation"] = pres.relation_strings();
        result["etale"] = detail::etale_json(r);
        res.exit_code = r.verdict == EtaleVerdict::Pass ? kExitOk : kExitVerdictFail;
    } else if (cmd == "necessary-condition") {
        const Presentation pres = build_presentation(job, "presentation");
        const NecessaryConditionVerdict v = necessary_condition(pres, params.bit_cap);
        result["presentation"] = pres.relation_strings();
        result["verdict"] = to_string(v.report.verdict);
        result["interpretation"] = v.interpretation;
        result["certificate"] = v.certificate.empty() ? ordered_json(nullptr) : ordered_json(v.certificate);
        result["open_problem"] = v.open_problem ? ordered_json(*v.open_problem) : ordered_json(nullptr);
        result["etale"] = detail::etale_json(v.report);
        res.exit_code = v.excluded ? kExitVerdictFail : kExitOk;
    } else if (cmd == "w-check") {
        const Presentation pres = build_presentation(job, "presentation");
        const WMembershipReport r = w_membership_check(pres, params.precision, params.degree_cap, params.bit_cap);
        result["presentation"] = pres.relation_strings();
        result["verdict"] = r.verdict;
        result["member"] = r.member;
        result["q_fiber_finite"] = r.q_fiber_finite;
        result["dim"] = r.dim;
        result["precision"] = r.precision;
        result["truncation_orders"] = r.truncation_orders ? ordered_json(*r.truncation_orders) : ordered_json(nullptr);
        result["p_torsion_detected"] = r.p_torsion_detected ? ordered_json(*r.p_torsion_detected) : ordered_json(nullptr);
        result["torsion_witness"] = r.torsion_witness.empty() ? ordered_json(nullptr) : ordered_json(r.torsion_witness);
        result["caveat"] = r.caveat;
    } else if (cmd == "order-bound") {
        const Presentation source = build_presentation(job, "presentation");
        const Presentation target = job.has("codomain") ? build_presentation(job, "codomain") : source;
        const Section& h = job.section("homs");
        auto images = [&](const std::string& key) {
            std::vector<IntPoly> out;
            for (const auto& text : detail::get_string_list(h, key)) {
                out.push_back(detail::at_entry(h, key, [&] { return parse_poly(text, target.variables); }));
            }
            if (out.size() != source.nvars()) {
                detail::bad(detail::need(h, "homs", key), "dimension_mismatch", "one image per source variable required");
            }
            return out;
        };
        const auto f1 = images("f1");
        const auto f2 = images("f2");
        const OrderBoundReport r = order_lower_bound(source, target, f1, f2, params.degree_cap, params.bit_cap);
        result["source"] = source.relation_strings();
        result["codomain"] = target.relation_strings();
        result["f1"] = detail::get_string_list(h, "f1");
        result["f2"] = detail::get_string_list(h, "f2");
        result["level"] = r.level;
        result["claim"] = r.claim;
        result["bound"] = r.bound;
        result["codomain_rank"] = r.target_rank;
        result["hom_check"] = r.symbolic_hom_check ? "symbolic" : "truncation";
        ordered_json cert;
        cert["precision"] = r.precision;
        cert["reverified_precision"] = r.reverified_precision;
        cert["congruence"] = "f1(x) - f2(x) in p^" + std::to_string(r.level) + " m_S for every generator x";
        cert["non_congruence"] = "f1(" + r.separating_generator + ") - f2(" + r.separating_generator + ") not in p^" +
                                 std::to_string(r.level + 1) + " m_S";
        cert["ptor_zero"] = "truncations free of rank " + std::to_string(r.target_rank) + " at both precisions";
        result["certificates"] = std::move(cert);
    } else if (cmd == "defcount" || cmd == "tangent" || cmd == "maranda-check") {
        const GroupPtr group = build_group(job);
        const RingPtr ring = job.has("ring") ? build_ring(job, "ring", params) : nullptr;
        const Representation rbar = build_residual(job, group, ring);
        result["group"] = detail::group_summary(*group);
        result["residual"] = detail::generator_images_json(rbar);
        if (cmd == "defcount") {
            const DefSet d = def_set(rbar, ring, opt);
            result["ring"] = detail::ring_summary(*ring);
            result["dim"] = rbar.dim;
            result["lift_count"] = d.lift_count;
            result["kernel_size"] = d.kernel_size;
            result["class_count"] = d.class_count();
            result["orbit_sizes"] = d.orbit_sizes;
            ordered_json reps = ordered_json::array();
            for (const auto& rho : d.representatives) {
                reps.push_back(detail::generator_images_json(rho));
            }
            result["representatives"] = std::move(reps);
            if (rbar.dim == 1) {
                const OneDimCrosscheck c = one_dim_crosscheck(rbar, ring, opt);
                ordered_json x;
                x["abelianization_p_parts"] = c.p_factors;
                x["predicted"] = c.predicted;
                x["agree"] = c.agree;
                result["one_dim_crosscheck"] = std::move(x);
            }
        } else if (cmd == "tangent") {
            const TangentReport t = tangent_space(rbar, opt);
            result["dim"] = rbar.dim;
            result["q"] = t.q;
            result["class_count"] = t.classes.class_count();
            result["tangent_dimension"] = t.dimension;
            result["lift_count"] = t.classes.lift_count;
        } else {
            const Representation rho1 = detail::build_lift(job, "lift1", rbar, ring);
            const Representation rho2 = detail::build_lift(job, "lift2", rbar, ring);
            const MarandaDecision d = maranda_decide(rho1, rho2, opt);
            result["ring"] = detail::ring_summary(*ring);
            result["dim"] = rbar.dim;
            result["averaging_ideal"] = "|G| m_R with |G| = " + std::to_string(group->order());
            result["quotient_log_p_size"] = d.quotient_log_size;
            result["equivalent"] = d.equivalent;
            if (d.certificate) {
                ordered_json c;
                c["b0"] = detail::matrix_json(*ring, rbar.dim, d.certificate->b0);
                c["precision"] = d.certificate->precision;
                c["conjugation_verified"] = d.certificate->conjugation_verified;
                c["reduces_to_identity"] = d.certificate->reduces_to_identity;
                result["certificate"] = std::move(c);
            } else {
                result["certificate"] = nullptr;
            }
        }
    } else if (cmd == "hom-count") {
        const RingPtr src = build_ring(job, "ring", params);
        const RingPtr dst = build_ring(job, "target", params);
        const auto homs = hom_enumerate(src, dst, params.cap_elements, params.cap_maps);
        result["source"] = detail::ring_summary(*src);
        result["target"] = detail::ring_summary(*dst);
        result["source_generators"] = src->generator_names();
        result["count"] = homs.size();
        ordered_json maps = ordered_json::array();
        for (std::size_t i = 0; i < homs.size() && i < kMaxListedMaps; ++i) {
            ordered_json imgs = ordered_json::array();
            for (const auto& x : homs[i].generator_images) {
                imgs.push_back(dst->describe(x));
            }
            maps.push_back(std::move(imgs));
        }
        result["maps"] = std::move(maps);
        result["maps_listed"] = std::min(homs.size(), kMaxListedMaps);
    } else if (cmd == "fingerprint") {
        const RingPtr ring = build_ring(job, "ring", params);
        const Fingerprint a = fingerprint(ring, params.cap_elements);
        result["ring"] = detail::ring_summary(*ring);
        result["fingerprint"] = detail::fingerprint_json(a);
        if (job.has("target")) {
            const RingPtr other = build_ring(job, "target", params);
            const Fingerprint b = fingerprint(other, params.cap_elements);
            result["target"] = detail::ring_summary(*other);
            result["target_fingerprint"] = detail::fingerprint_json(b);
            result["comparison"] = compare_fingerprints(a, b);
        }
    }
    res.report["tool"] = kToolName;
    res.report["version"] = kVersion;
    res.report["command"] = cmd;
    res.report["clause"] = clause_tag(cmd);
    res.report["parameters"] = params.to_json();
    res.report["job"] = job.to_json();
    res.report["result"] = std::move(result);
    res.report["exit_code"] = res.exit_code;
    return res;
}

inline ordered_json error_report(const std::string& command, const Error& e) {
    ordered_json out;
    out["tool"] = kToolName;
    out["version"] = kVersion;
    out["command"] = command.empty() ? ordered_json(nullptr) : ordered_json(command);
    ordered_json err;
    err["code"] = e.code();
    err["message"] = e.what();
    if (const auto* je = dynamic_cast<const JobError*>(&e)) {
        err["line"] = je->line();
        err["column"] = je->column();
    }
    out["error"] = std::move(err);
    out["exit_code"] = static_cast<int>(kExitError);
    return out;
}

// ---------------------------------------------------------------------------
// Cache

inline u64 fnv1a64(const std::string& s) {
    u64 h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string cache_material(const Job& job, const Parameters& params) {
    return std::string(kVersion) + "\n" + job.to_json().dump() + "\n" + params.to_json().dump();
}

inline std::string cache_key(const Job& job, const Parameters& params) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(cache_material(job, params));
    return os.str();
}

namespace detail {

inline Matrix matrix_from_json(const RingPtr& ring, std::size_t n, const ordered_json& m, int prec) {
    Matrix out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto& x = m.at(i).at(j);
            Vec c = x.is_array() ? x.get<Vec>() : Vec{x.get<u64>()};
            out.push_back(ring->element(std::move(c), prec));
        }
    }
    return out;
}

/// Cheap checks of the certificates stored in a cached report.
inline bool reverify(const Job& job, const Parameters& params, const ordered_json& report) {
    const ordered_json& r = report.at("result");
    const std::string& cmd = job.command;
    if (cmd == "etale-check" || cmd == "necessary-condition") {
        const ordered_json& e = r.at("etale");
        if (e.at("nilpotent_witness").is_null()) {
            return e.at("verdict") != "FAIL_NOT_REDUCED";
        }
        const Presentation pres = build_presentation(job, "presentation");
        const QFiberAlgebra a(pres, params.bit_cap);
        QVec x;
        for (const auto& s : e.at("nilpotent_witness").at("coordinates")) {
            x.emplace_back(s.get<std::string>());
        }
        const int power = e.at("nilpotent_witness").at("power").get<int>();
        if (x.size() != a.dim() || power < 2) {
            return false;
        }
        QVec y = x;
        for (int k = 1; k < power - 1; ++k) {
            y = a.mul(y, x);
        }
        return !qla::is_zero(y) && qla::is_zero(a.mul(y, x));
    }
    if (cmd == "order-bound") {
        const Presentation source = build_presentation(job, "presentation");
        const Presentation target = job.has("codomain") ? build_presentation(job, "codomain") : source;
        std::vector<IntPoly> f1;
        std::vector<IntPoly> f2;
        for (const auto& t : get_string_list(job.section("homs"), "f1")) {
            f1.push_back(parse_poly(t, target.variables));
        }
        for (const auto& t : get_string_list(job.section("homs"), "f2")) {
            f2.push_back(parse_poly(t, target.variables));
        }
        const int level = r.at("level").get<int>();
        for (const char* key : {"precision", "reverified_precision"}) {
            const int n = r.at("certificates").at(key).get<int>();
            if (udr::detail::level_at(source, target, f1, f2, n, params.degree_cap).level != level) {
                return false;
            }
        }
        return true;
    }
    if (cmd == "maranda-check") {
        if (r.at("certificate").is_null()) {
            return true;
        }
        const GroupPtr group = build_group(job);
        const RingPtr ring = build_ring(job, "ring", params);
        const Representation rbar = build_residual(job, group, ring);
        const Representation rho1 = build_lift(job, "lift1", rbar, ring);
        const Representation rho2 = build_lift(job, "lift2", rbar, ring);
        const ordered_json& c = r.at("certificate");
        const Matrix b0 = matrix_from_json(ring, rbar.dim, c.at("b0"), c.at("precision").get<int>());
        const MatrixRing alg(ring, rbar.dim);
        if (!alg.reduces_to_identity(b0)) {
            return false;
        }
        for (std::size_t x = 0; x < group->order(); ++x) {
            if (!alg.equal(alg.mul(rho1.matrices[x], b0), alg.mul(b0, rho2.matrices[x]))) {
                return false;
            }
        }
        return true;
    }
    if (cmd == "defcount") {
        const GroupPtr group = build_group(job);
        const RingPtr ring = build_ring(job, "ring", params);
        const Representation rbar = build_residual(job, group, ring);
        std::size_t total = 0;
        for (const auto& s : r.at("orbit_sizes")) {
            total += s.get<std::size_t>();
        }
        if (total != r.at("lift_count").get<std::size_t>() ||
            r.at("representatives").size() != r.at("class_count").get<std::size_t>()) {
            return false;
        }
        for (const auto& rep : r.at("representatives")) {
            std::vector<Matrix> mats;
            for (const auto& m : rep) {
                mats.push_back(matrix_from_json(ring, rbar.dim, m, ring->precision()));
            }
            const Representation rho = make_representation(group, ring, rbar.dim, mats);
            const MatrixRing alg(ring, rbar.dim);
            for (std::size_t k = 0; k < mats.size(); ++k) {
                const auto red = alg.residue(mats[k]);
                for (std::size_t e = 0; e < red.size(); ++e) {
                    if (red[e] != rbar.ring->residue(rbar.generator_images()[k][e])) {
                        return false;
                    }
                }
            }
        }
        return true;
    }
    return true;
}

inline std::optional<ordered_json> cache_load(const std::filesystem::path& file, const std::string& material) {
    std::ifstream in(file);
    if (!in) {
        return std::nullopt;
    }
    try {
        const ordered_json doc = ordered_json::parse(in);
        if (doc.at("material").get<std::string>() != material) {
            return std::nullopt;
        }
        return doc.at("report");
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline void cache_store(const std::filesystem::path& dir, const std::filesystem::path& file,
                        const std::string& material, const ordered_json& report) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        return;
    }
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            return;
        }
        ordered_json doc;
        doc["material"] = material;
        doc["report"] = report;
        out << doc.dump() << "\n";
    }
    std::filesystem::rename(tmp, file, ec);
}

} // namespace detail

/// Runs a parsed job through the cache and turns errors into reports.
inline RunResult run(const Job& job, const RunOptions& options) {
    try {
        const Parameters params = effective_parameters(job, options.overrides);
        if (!options.use_cache) {
            return compute(job, params, options.threads);
        }
        const std::string material = cache_material(job, params);
        const std::filesystem::path dir(options.cache_dir);
        const std::filesystem::path file = dir / (cache_key(job, params) + ".json");
        if (auto cached = detail::cache_load(file, material)) {
            bool ok = false;
            try {
                ok = detail::reverify(job, params, *cached);
            } catch (const std::exception&) {
                ok = false;
            }
            if (ok) {
                RunResult res;
                res.report = std::move(*cached);
                res.exit_code = res.report.at("exit_code").get<int>();
                res.cache_hit = true;
                return res;
            }
        }
        RunResult res = compute(job, params, options.threads);
        detail::cache_store(dir, file, material, res.report);
        return res;
    } catch (const Error& e) {
        return RunResult{error_report(job.command, e), kExitError, false};
    } catch (const std::exception& e) {
        return RunResult{error_report(job.command, Error("internal", e.what())), kExitError, false};
    }
}

/// Parses and runs job text; parse errors become error reports with positions.
inline RunResult run_text(const std::string& text, const std::string& command, const RunOptions& options) {
    Job job;
    try {
        job = parse_job(text, command);
    } catch (const Error& e) {
        return RunResult{error_report(command, e), kExitError, false};
    }
    return run(job, options);
}

inline std::string render(const ordered_json& report) { return report.dump(2) + "\n"; }

} // namespace udr::cli
