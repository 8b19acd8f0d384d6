#pragma once

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"

namespace pivext {

inline const std::vector<std::string>& problem_commands()
{
    static const std::vector<std::string> names{"extend-character", "cohomology", "ty", "picard", "les", "module-pivotal"};
    return names;
}

struct problem_options {
    std::optional<std::int64_t> level;
    std::string format = "json";
    cohomology_guards guards;
};

/// A validated command with its JSON payload.
struct problem_file {
    std::string command;
    json payload;
    problem_options options;
};

namespace detail {

inline void apply_guard(cohomology_guards& g, const std::string& key, std::int64_t value, const std::string& path)
{
    if (key == "kx_max_order")
        g.kx_max_order = static_cast<int>(value);
    else if (key == "kx_h3_max_order")
        g.kx_h3_max_order = static_cast<int>(value);
    else if (key == "max_cochain_dim")
        g.max_cochain_dim = value;
    else
        schema_fail(path, "one of kx_max_order, kx_h3_max_order, max_cochain_dim; got \"" + key + "\"");
}

/// PIVEXT_GUARDS="kx_max_order=64,max_cochain_dim=6000" raises the guards. Unsupported territory.
inline void apply_guard_env(cohomology_guards& g)
{
    const char* env = std::getenv("PIVEXT_GUARDS");
    if (!env || !*env)
        return;
    for (const auto& item : split_top(env)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            schema_fail("PIVEXT_GUARDS", "key=value pairs");
        std::int64_t v = 0;
        const auto num = item.substr(eq + 1);
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
        if (ec != std::errc() || ptr != num.data() + num.size())
            schema_fail("PIVEXT_GUARDS", "integer guard values");
        apply_guard(g, item.substr(0, eq), v, "PIVEXT_GUARDS");
    }
}

inline const json& require(const json& j, const std::string& key, const std::string& expected)
{
    if (!j.contains(key))
        schema_fail("$." + key, expected);
    return j[key];
}

inline subgroup subgroup_from_json(const finite_group& g, const json& j, const std::string& path,
                                   std::vector<element>* gens_out = nullptr)
{
    const auto gens = parse_elements(g, labels_from_json(j, path));
    if (gens_out)
        *gens_out = gens;
    return generated_subgroup(g, gens);
}

} // namespace detail

/// Validates a problem object {"command": ..., <payload fields>, "options": {...}}.
inline problem_file parse_problem(const json& j)
{
    if (!j.is_object())
        detail::schema_fail("$", "a problem object");
    if (!j.contains("command") || !j["command"].is_string())
        detail::schema_fail("$.command", "one of extend-character, cohomology, ty, picard, les, module-pivotal");
    problem_file p;
    p.command = j["command"].get<std::string>();
    if (std::find(problem_commands().begin(), problem_commands().end(), p.command) == problem_commands().end())
        detail::schema_fail("$.command", "one of extend-character, cohomology, ty, picard, les, module-pivotal");
    p.payload = j;
    p.payload.erase("command");
    p.payload.erase("options");
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object())
            detail::schema_fail("$.options", "an object");
        for (const auto& [key, value] : o.items()) {
            if (key == "level") {
                if (!value.is_number_integer() || value.get<std::int64_t>() < 1)
                    detail::schema_fail("$.options.level", "a positive integer");
                p.options.level = value.get<std::int64_t>();
            } else if (key == "format") {
                if (!value.is_string() || (value != "json" && value != "text"))
                    detail::schema_fail("$.options.format", "\"json\" or \"text\"");
                p.options.format = value.get<std::string>();
            } else if (key == "guards") {
                if (!value.is_object())
                    detail::schema_fail("$.options.guards", "an object");
                for (const auto& [gk, gv] : value.items()) {
                    if (!gv.is_number_integer())
                        detail::schema_fail("$.options.guards." + gk, "an integer");
                    detail::apply_guard(p.options.guards, gk, gv.get<std::int64_t>(), "$.options.guards." + gk);
                }
            } else {
                detail::schema_fail("$.options." + key, "one of level, format, guards");
            }
        }
    }
    detail::apply_guard_env(p.options.guards);
    return p;
}

inline problem_file parse_problem_text(const std::string& text, const std::string& origin = "<input>")
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw error(errc::schema_error, origin + ": malformed JSON (" + std::string(e.what()) + ")");
    }
    return parse_problem(j);
}

inline problem_file parse_problem_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw error(errc::schema_error, "cannot read problem file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str(), path);
}

namespace detail {

inline json run_extend_character(const problem_file& p)
{
    const auto& j = p.payload;
    const auto d = group_from_json(require(j, "group", "a group"));
    std::vector<element> c_gens;
    const auto c = subgroup_from_json(d, require(j, "subgroup", "subgroup generator labels"), "$.subgroup", &c_gens);
    require_normal_abelian(d, c);
    const auto cg = c.as_group();
    std::vector<element> chi_gens;
    for (element x : c_gens)
        chi_gens.push_back(c.position(x));
    const auto chi = character_from_json(require(j, "character", "character values"), cg, chi_gens, "$.character");
    extension_problem prob(d, c, chi);
    auto r = extend_character(prob, p.options.guards, p.options.level);
    return report_to_json(prob, r, c_gens);
}

inline gmodule module_from_json(const finite_group& g, const json& j, const std::string& path, finite_group& acting)
{
    acting = g;
    if (j.is_object() && j.contains("mu")) {
        if (!j["mu"].is_number_integer())
            schema_fail(path + ".mu", "a positive integer");
        return mu_module(g, j["mu"].get<std::int64_t>());
    }
    if (j.is_object() && j.contains("trivial")) {
        abelian_group a;
        for (const auto& f : j["trivial"]) {
            if (!f.is_number_integer() || f.get<std::int64_t>() < 2)
                schema_fail(path + ".trivial", "invariant factors >= 2");
            a.invariant_factors.push_back(f.get<std::int64_t>());
        }
        for (std::size_t i = 1; i < a.invariant_factors.size(); ++i)
            if (a.invariant_factors[i] % a.invariant_factors[i - 1] != 0)
                throw error(errc::invalid_module, "invariant factors must form a divisibility chain");
        return gmodule::trivial(g, a);
    }
    for (const char* key : {"conj_character", "inv_center"}) {
        if (j.is_object() && j.contains(key)) {
            const auto c = subgroup_from_json(g, require(j[key], "subgroup", "subgroup labels"),
                                              path + "." + key + ".subgroup");
            auto m = std::string(key) == "conj_character" ? conj_character_module(g, c) : inv_center_module(g, c);
            acting = m.group();
            return m;
        }
    }
    schema_fail(path, "\"kx\", {\"mu\": N}, {\"trivial\": [...]}, {\"conj_character\": {...}} or {\"inv_center\": {...}}");
}

inline json run_cohomology(const problem_file& p)
{
    const auto& j = p.payload;
    const auto g = group_from_json(require(j, "group", "a group"));
    const auto& deg = require(j, "degree", "an integer 1..3");
    if (!deg.is_number_integer())
        schema_fail("$.degree", "an integer 1..3");
    const int n = deg.get<int>();
    const json coeffs = j.value("coefficients", json("kx"));
    json out{{"group", group_to_json(g)}, {"degree", n}};
    if (coeffs.is_string()) {
        if (coeffs != "kx")
            schema_fail("$.coefficients", "\"kx\" or a module object");
        out["coefficients"] = "kx";
        out["cohomology"] = abelian_to_json(cohomology_group(n, g, kx, p.options.guards));
        out["method"] = "H^" + std::to_string(n + 1) + "(G, Z) from the integral normalized bar complex";
        return out;
    }
    finite_group acting;
    const auto m = module_from_json(g, coeffs, "$.coefficients", acting);
    out["coefficients"] = coeffs;
    if (!(acting == g))
        out["acting_group"] = group_to_json(acting);
    out["carrier"] = m.carrier().invariant_factors;
    out["cohomology"] = abelian_to_json(cohomology_group(n, acting, m, p.options.guards));
    if (j.value("reduced_h1", false)) {
        const auto z = reduced_h1(acting, m);
        json basis = json::array();
        for (const auto& f : z.basis)
            basis.push_back(cochain_to_json(f));
        out["reduced_h1"] = json{{"group", abelian_to_json(z.group)}, {"basis", basis}};
    }
    return out;
}

inline json run_ty(const problem_file& p)
{
    const auto& j = p.payload;
    finite_group a;
    if (j.contains("order")) {
        if (!j["order"].is_number_integer() || j["order"].get<int>() < 1)
            schema_fail("$.order", "a positive integer");
        a = resolve_standard({group_kind::cyclic, {j["order"].get<int>()}, {}}, "$.order");
    } else {
        a = group_from_json(require(j, "group", "\"order\" or \"group\""));
    }
    if (!a.is_abelian())
        throw error(errc::not_abelian, "A must be abelian");
    const json bj = j.value("bichar", json("standard"));
    std::vector<std::vector<qz>> b;
    if (bj.is_string()) {
        if (bj != "standard")
            schema_fail("$.bichar", "\"standard\" or a matrix of fractions");
        b = standard_bichar(a);
    } else {
        if (!bj.is_array() || static_cast<int>(bj.size()) != a.order())
            schema_fail("$.bichar", "a " + std::to_string(a.order()) + "x" + std::to_string(a.order()) + " matrix");
        for (std::size_t r = 0; r < bj.size(); ++r) {
            auto row = fractions_from_json(bj[r], "$.bichar[" + std::to_string(r) + "]");
            if (static_cast<int>(row.size()) != a.order())
                schema_fail("$.bichar[" + std::to_string(r) + "]", std::to_string(a.order()) + " entries");
            b.push_back(std::move(row));
        }
    }
    const json tj = j.value("tau", json("+"));
    if (!tj.is_string() || (tj != "+" && tj != "-"))
        schema_fail("$.tau", "\"+\" or \"-\"");
    const auto ty = validate_ty(a, std::move(b), tj == "+" ? 1 : -1);
    const auto gens = greedy_generators(a);
    const auto phi = j.contains("phi") ? character_from_json(j["phi"], a, gens, "$.phi") : character::trivial(a);
    const auto r = ty_pivotal_report(ty, phi);
    return json{{"group", group_to_json(a)},
                {"tau", r.tau},
                {"phi", character_to_json(phi, gens)},
                {"d1_pivotalizable", r.d1_pivotalizable},
                {"o2_group", abelian_to_json(r.o2_group)},
                {"h1_order", r.h1_order},
                {"pivotal_count", r.pivotal_count},
                {"notes", r.notes}};
}

inline json run_picard(const problem_file& p)
{
    const auto& j = p.payload;
    const auto a = group_from_json(require(j, "group", "an abelian group"));
    if (!a.is_abelian())
        throw error(errc::not_abelian, "A must be abelian");
    const auto gens = greedy_generators(a);
    const auto phi = j.contains("phi") ? character_from_json(j["phi"], a, gens, "$.phi") : character::trivial(a);
    const auto h = hyperbolic_space(a);
    const auto s = stabilizer_pivotal_image(a, phi);
    json q = json::object();
    for (element x = 0; x < h.space.carrier.order(); ++x)
        q[h.space.carrier.label(x)] = h.space.q[x].str();
    return json{{"group", group_to_json(a)},
                {"phi", character_to_json(phi, gens)},
                {"carrier_order", h.space.carrier.order()},
                {"quadratic_form", q},
                {"z_phi", h.space.carrier.label(s.z)},
                {"orthogonal_order", s.orthogonal_order},
                {"stabilizer_order", s.order()},
                {"notes", json::array({"braided autoequivalences of Z(Vec_A) are modeled as isometries of (A x A^, q)"})}};
}

inline carrier_cocycle alpha_from_json(const gmodule& m, const json& j)
{
    if (!j.is_object())
        schema_fail("$.alpha", "an object keyed by \"x;y;z\" coordinate triples");
    carrier_cocycle alpha;
    for (const auto& [key, value] : j.items()) {
        const auto path = "$.alpha[\"" + key + "\"]";
        std::array<gmodule::value_type, 3> k;
        std::size_t start = 0;
        for (int i = 0; i < 3; ++i) {
            const auto end = i < 2 ? key.find(';', start) : key.size();
            if (end == std::string::npos)
                schema_fail(path, "three ';'-separated coordinate lists");
            gmodule::value_type v;
            for (auto& part : split_top(std::string_view(key).substr(start, end - start)))
                if (!part.empty())
                    v.push_back(parse_int(part, path));
            if (static_cast<int>(v.size()) != m.dim())
                schema_fail(path, std::to_string(m.dim()) + " coordinates per entry");
            k[i] = m.reduce(v);
            start = end + 1;
        }
        alpha[k] = fraction_from_json(value, path);
    }
    return alpha;
}

inline json run_les(const problem_file& p)
{
    const auto& j = p.payload;
    const auto g = group_from_json(require(j, "group", "a group"));
    std::optional<gmodule> inv;
    json out{{"group", group_to_json(g)}};
    if (j.contains("subgroup")) {
        const auto c = subgroup_from_json(g, j["subgroup"], "$.subgroup");
        require_normal_abelian(g, c);
        inv = inv_center_module(g, c);
        out["subgroup"] = labels_json(g, c.members());
        out["quotient"] = group_to_json(inv->group());
    } else {
        finite_group acting;
        inv = module_from_json(g, require(j, "module", "\"subgroup\" or a declared \"module\""), "$.module", acting);
        out["module"] = j["module"];
    }
    std::optional<carrier_cocycle> alpha;
    if (j.contains("alpha"))
        alpha = alpha_from_json(*inv, j["alpha"]);
    auto r = les_report(*inv, alpha, p.options.guards);
    if (j.contains("subgroup"))
        r.notes.push_back("Inv(Z(Vec_C)) taken as C x Hom(C, Q/Z); the C factor is a modeling assumption");
    out["inv_carrier"] = inv->carrier().invariant_factors;
    out["h2_kx"] = abelian_to_json(r.h2);
    out["h1_twisted"] = abelian_to_json(r.h1_twisted);
    out["h3_kx"] = abelian_to_json(r.h3);
    out["pi1_window"] = json{{"multiple_of", r.window_low}, {"divides", r.window_high}};
    out["connecting_kernel_order"] = r.kernel_order ? json(*r.kernel_order) : json("not evaluated");
    out["notes"] = r.notes;
    return out;
}

inline json run_module_pivotal(const problem_file& p)
{
    const auto& j = p.payload;
    const auto g = group_from_json(require(j, "group", "an abelian group"));
    if (!g.is_abelian())
        throw error(errc::not_abelian, "the grading group must be abelian");
    const auto gens = greedy_generators(g);
    const auto phi = character_from_json(require(j, "phi", "character values"), g, gens, "$.phi");
    const auto h = subgroup_from_json(g, require(j, "subgroup", "subgroup generator labels"), "$.subgroup");
    const auto v = module_pivotalizable(g, phi, h);
    json solution = nullptr;
    if (v.pivotalizable) {
        solution = json::object();
        for (std::size_t i = 0; i < v.solution.size(); ++i)
            solution[g.label(v.coset_representatives[i])] = v.solution[i].str();
    }
    return json{{"group", group_to_json(g)},
                {"phi", character_to_json(phi, gens)},
                {"subgroup", labels_json(g, h.members())},
                {"pivotalizable", v.pivotalizable},
                {"witness", v.witness ? json(g.label(*v.witness)) : json(nullptr)},
                {"solution_on_cosets", solution},
                {"family", v.family}};
}

inline void render_text(const json& j, const std::string& prefix, std::ostream& out)
{
    if (j.is_object()) {
        if (j.empty())
            out << prefix << ": {}\n";
        for (const auto& [k, v] : j.items())
            render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) {
                   return x.is_primitive() && !(x.is_string() && x.get<std::string>().find(", ") != std::string::npos);
               })) {
        out << prefix << ": [";
        for (std::size_t i = 0; i < j.size(); ++i)
            out << (i ? ", " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
        out << "]\n";
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

} // namespace detail

/// Computes the report for a validated problem; throws pivext::error on failure.
inline json run_problem(const problem_file& p)
{
    json report;
    if (p.command == "extend-character")
        report = detail::run_extend_character(p);
    else if (p.command == "cohomology")
        report = detail::run_cohomology(p);
    else if (p.command == "ty")
        report = detail::run_ty(p);
    else if (p.command == "picard")
        report = detail::run_picard(p);
    else if (p.command == "les")
        report = detail::run_les(p);
    else
        report = detail::run_module_pivotal(p);
    json out{{"command", p.command}};
    out.update(report);
    return out;
}

/// 0 = computed (obstructed outcomes included), 2 = guard violation, 3 = schema or validation error.
inline int exit_code(errc code)
{
    return code == errc::too_large || code == errc::unsupported_parameter ? 2 : 3;
}

inline json error_json(const error& e)
{
    return json{{"error", std::string(to_string(e.code()))}, {"message", e.detail()}};
}

inline std::string render(const json& report, const std::string& format)
{
    if (format == "text") {
        std::ostringstream ss;
        detail::render_text(report, "", ss);
        return ss.str();
    }
    return report.dump(2) + "\n";
}

inline int run_and_emit(const problem_file& p, std::ostream& out, std::ostream& err)
{
    try {
        out << render(run_problem(p), p.options.format);
        return 0;
    } catch (const error& e) {
        err << error_json(e).dump() << "\n";
        return exit_code(e.code());
    }
}

/// Runs independent problem files concurrently; reports come back in input order.
inline int run_batch(const std::vector<std::string>& paths, const std::string& format, std::ostream& out)
{
    std::vector<std::future<json>> jobs;
    for (const auto& path : paths)
        jobs.push_back(std::async(std::launch::async, [path] {
            json entry{{"file", path}};
            try {
                entry["exit"] = 0;
                entry["report"] = run_problem(parse_problem_file(path));
            } catch (const error& e) {
                entry["exit"] = exit_code(e.code());
                entry.erase("report");
                entry["error"] = error_json(e);
            }
            return entry;
        }));
    json results = json::array();
    int status = 0;
    for (auto& job : jobs) {
        auto entry = job.get();
        status = std::max(status, entry["exit"].get<int>());
        results.push_back(std::move(entry));
    }
    out << render(results, format);
    return status;
}

} // namespace pivext
