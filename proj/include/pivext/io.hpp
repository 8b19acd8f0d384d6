#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "picard.hpp"
#include "ty.hpp"

namespace pivext {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& expected)
{
    throw error(errc::schema_error, path + ": expected " + expected);
}

inline std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return std::string(s);
}

/// Splits on commas that are not nested inside parentheses.
inline std::vector<std::string> split_top(std::string_view s)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (s[i] == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

inline int parse_int(std::string_view s, const std::string& path)
{
    const auto t = trim(s);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        schema_fail(path, "an integer, got \"" + t + "\"");
    return v;
}

inline int catalog_order(const standard_spec& s)
{
    switch (s.kind) {
    case group_kind::cyclic:
    case group_kind::dihedral:
    case group_kind::quaternion: return s.params.at(0);
    case group_kind::symmetric: return s.params.at(0) <= 4 ? std::vector<int>{1, 1, 2, 6, 24}[s.params.at(0)] : 120;
    case group_kind::elementary_abelian: {
        long n = 1;
        for (int i = 0; i < s.params.at(1) && n <= 1024; ++i)
            n *= s.params.at(0);
        return static_cast<int>(n);
    }
    case group_kind::direct_product: return catalog_order(s.factors.at(0)) * catalog_order(s.factors.at(1));
    }
    return 0;
}

} // namespace detail

/// The built-in catalog: cyclic of order <= 16, dihedral and quaternion of order <= 16, symmetric
/// of degree <= 4, elementary abelian of order <= 16, and direct products of these of order <= 64.
inline bool in_catalog(const standard_spec& s)
{
    switch (s.kind) {
    case group_kind::cyclic: return s.params.size() == 1 && s.params[0] >= 1 && s.params[0] <= 16;
    case group_kind::dihedral:
        return s.params.size() == 1 && s.params[0] >= 2 && s.params[0] % 2 == 0 && s.params[0] <= 16;
    case group_kind::quaternion:
        return s.params.size() == 1 && s.params[0] >= 8 && s.params[0] % 4 == 0 && s.params[0] <= 16;
    case group_kind::symmetric: return s.params.size() == 1 && s.params[0] >= 1 && s.params[0] <= 4;
    case group_kind::elementary_abelian:
        return s.params.size() == 2 && detail::is_prime(s.params[0]) && s.params[1] >= 1 &&
               detail::catalog_order(s) <= 16;
    case group_kind::direct_product:
        return s.factors.size() == 2 && in_catalog(s.factors[0]) && in_catalog(s.factors[1]) &&
               detail::catalog_order(s) <= max_group_order;
    }
    return false;
}

/// Names of the catalog groups without direct products, e.g. "dihedral:8".
inline std::vector<std::string> catalog_names()
{
    std::vector<std::string> out;
    for (int n = 1; n <= 16; ++n)
        out.push_back("cyclic:" + std::to_string(n));
    for (int n = 2; n <= 16; n += 2)
        out.push_back("dihedral:" + std::to_string(n));
    for (int n = 8; n <= 16; n += 4)
        out.push_back("quaternion:" + std::to_string(n));
    for (int n = 1; n <= 4; ++n)
        out.push_back("symmetric:" + std::to_string(n));
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1},
                                                        {11, 1}, {13, 1}})
        out.push_back("elementary_abelian:" + std::to_string(p) + "," + std::to_string(k));
    return out;
}

/// "cyclic:4", "dihedral:8", "quaternion:8", "symmetric:3", "elementary_abelian:2,3" (or "2^3"),
/// "product(cyclic:2,dihedral:8)".
inline standard_spec parse_group_spec(std::string_view text, const std::string& path = "$.group")
{
    const auto s = detail::trim(text);
    if (s.rfind("product(", 0) == 0 || s.rfind("direct_product(", 0) == 0) {
        if (s.back() != ')')
            detail::schema_fail(path, "product(<group>,<group>)");
        const auto open = s.find('(');
        // a comma followed by a digit continues elementary_abelian:p,k
        std::vector<std::string> parts;
        for (auto& piece : detail::split_top(std::string_view(s).substr(open + 1, s.size() - open - 2))) {
            if (!parts.empty() && !piece.empty() && std::isdigit(static_cast<unsigned char>(piece.front())))
                parts.back() += "," + piece;
            else
                parts.push_back(piece);
        }
        if (parts.size() != 2)
            detail::schema_fail(path, "exactly two factors in product(...)");
        return {group_kind::direct_product, {}, {parse_group_spec(parts[0], path), parse_group_spec(parts[1], path)}};
    }
    const auto colon = s.find(':');
    const auto kind = s.substr(0, colon);
    const auto params = colon == std::string::npos ? std::string() : s.substr(colon + 1);
    standard_spec spec;
    if (kind == "cyclic")
        spec.kind = group_kind::cyclic;
    else if (kind == "dihedral")
        spec.kind = group_kind::dihedral;
    else if (kind == "quaternion")
        spec.kind = group_kind::quaternion;
    else if (kind == "symmetric")
        spec.kind = group_kind::symmetric;
    else if (kind == "elementary_abelian")
        spec.kind = group_kind::elementary_abelian;
    else
        throw error(errc::unknown_group, "unknown group family \"" + kind + "\"");
    if (colon == std::string::npos)
        detail::schema_fail(path, kind + ":<parameters>");
    if (spec.kind == group_kind::elementary_abelian) {
        const auto sep = params.find_first_of(",^");
        if (sep == std::string::npos)
            detail::schema_fail(path, "elementary_abelian:p,k");
        spec.params = {detail::parse_int(params.substr(0, sep), path), detail::parse_int(params.substr(sep + 1), path)};
    } else {
        spec.params = {detail::parse_int(params, path)};
    }
    return spec;
}

inline std::string to_spec_string(const standard_spec& s)
{
    if (s.kind == group_kind::direct_product)
        return "product(" + to_spec_string(s.factors[0]) + "," + to_spec_string(s.factors[1]) + ")";
    std::string out = std::string(to_string(s.kind)) + ":" + std::to_string(s.params[0]);
    if (s.kind == group_kind::elementary_abelian)
        out += "," + std::to_string(s.params[1]);
    return out;
}

inline finite_group resolve_standard(const standard_spec& s, const std::string& path = "$.group")
{
    if (!in_catalog(s))
        throw error(errc::unknown_group, path + ": " + to_spec_string(s) + " is not in the built-in catalog");
    return make_standard(s);
}

inline standard_spec standard_from_json(const json& j, const std::string& path)
{
    if (j.is_string())
        return parse_group_spec(j.get<std::string>(), path);
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        detail::schema_fail(path, "{\"kind\": ..., \"params\": [...]}");
    const auto kind = j["kind"].get<std::string>();
    const json params = j.value("params", json::array());
    if (!params.is_array())
        detail::schema_fail(path + ".params", "an array");
    if (kind == "direct_product") {
        if (params.size() != 2)
            detail::schema_fail(path + ".params", "two factor groups");
        auto factor = [&](int i) {
            const auto& f = params[i];
            const auto p = path + ".params[" + std::to_string(i) + "]";
            return f.is_object() && f.contains("standard") ? standard_from_json(f["standard"], p + ".standard")
                                                           : standard_from_json(f, p);
        };
        return {group_kind::direct_product, {}, {factor(0), factor(1)}};
    }
    std::string text = kind + ":";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!params[i].is_number_integer())
            detail::schema_fail(path + ".params[" + std::to_string(i) + "]", "an integer");
        text += (i ? "," : "") + std::to_string(params[i].get<int>());
    }
    return parse_group_spec(text, path);
}

/// A group from a spec string, {"standard": {...}} or {"table": [[...]], "labels": [...]}.
inline finite_group group_from_json(const json& j, const std::string& path = "$.group")
{
    if (j.is_string())
        return resolve_standard(parse_group_spec(j.get<std::string>(), path), path);
    if (!j.is_object())
        detail::schema_fail(path, "a group spec string or object");
    if (j.contains("standard"))
        return resolve_standard(standard_from_json(j["standard"], path + ".standard"), path);
    if (!j.contains("table"))
        detail::schema_fail(path, "\"standard\" or \"table\"");
    const auto& t = j["table"];
    if (!t.is_array())
        detail::schema_fail(path + ".table", "a square array of element indices");
    std::vector<std::vector<int>> table;
    for (std::size_t r = 0; r < t.size(); ++r) {
        if (!t[r].is_array() || t[r].size() != t.size())
            detail::schema_fail(path + ".table[" + std::to_string(r) + "]", "a row of length " + std::to_string(t.size()));
        std::vector<int> row;
        for (const auto& v : t[r]) {
            if (!v.is_number_integer())
                detail::schema_fail(path + ".table[" + std::to_string(r) + "]", "integers");
            row.push_back(v.get<int>());
        }
        table.push_back(std::move(row));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array())
            detail::schema_fail(path + ".labels", "an array of strings");
        for (const auto& l : j["labels"]) {
            if (!l.is_string())
                detail::schema_fail(path + ".labels", "an array of strings");
            labels.push_back(l.get<std::string>());
        }
    }
    return finite_group::from_table(table, std::move(labels));
}

inline json standard_to_json(const standard_spec& s)
{
    json params = json::array();
    if (s.kind == group_kind::direct_product)
        for (const auto& f : s.factors)
            params.push_back(json{{"standard", standard_to_json(f)}});
    else
        for (int p : s.params)
            params.push_back(p);
    return json{{"kind", std::string(to_string(s.kind))}, {"params", params}};
}

inline json group_to_json(const finite_group& g)
{
    if (auto s = g.standard(); s && in_catalog(*s))
        return json{{"standard", standard_to_json(*s)}};
    return json{{"table", g.table()}, {"labels", g.labels()}};
}

inline qz fraction_from_json(const json& j, const std::string& path)
{
    if (j.is_number_integer())
        return qz(j.get<std::int64_t>(), 1);
    if (!j.is_string())
        detail::schema_fail(path, "a fraction string \"a/b\"");
    try {
        return qz::parse(j.get<std::string>());
    } catch (const error&) {
        detail::schema_fail(path, "a fraction \"a/b\" with b > 0, got \"" + j.get<std::string>() + "\"");
    }
}

inline std::vector<std::string> labels_from_json(const json& j, const std::string& path)
{
    std::vector<std::string> out;
    if (j.is_string()) {
        const auto s = detail::trim(j.get<std::string>());
        if (!s.empty())
            for (auto& part : detail::split_top(s))
                out.push_back(part);
        return out;
    }
    if (!j.is_array())
        detail::schema_fail(path, "element labels as an array or comma-separated string");
    for (const auto& l : j) {
        if (!l.is_string())
            detail::schema_fail(path, "element labels as strings");
        out.push_back(l.get<std::string>());
    }
    return out;
}

inline std::vector<qz> fractions_from_json(const json& j, const std::string& path)
{
    std::vector<qz> out;
    if (j.is_string()) {
        const auto parts = detail::split_top(j.get<std::string>());
        for (std::size_t i = 0; i < parts.size(); ++i)
            out.push_back(fraction_from_json(json(parts[i]), path + "[" + std::to_string(i) + "]"));
        return out;
    }
    if (!j.is_array())
        detail::schema_fail(path, "fractions as an array or comma-separated string");
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(fraction_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

/// Reads {"on_elements": [...]}, {"on_generators": [...], "generators": [...]} or a bare list of
/// values on `default_gens`.
inline character character_from_json(const json& j, const finite_group& g, const std::vector<element>& default_gens,
                                     const std::string& path)
{
    if (j.is_object() && j.contains("on_elements")) {
        auto v = fractions_from_json(j["on_elements"], path + ".on_elements");
        if (static_cast<int>(v.size()) != g.order())
            detail::schema_fail(path + ".on_elements", std::to_string(g.order()) + " values");
        return character(g, std::move(v));
    }
    const json* values = &j;
    auto gens = default_gens;
    if (j.is_object()) {
        if (!j.contains("on_generators"))
            detail::schema_fail(path, "\"on_generators\" or \"on_elements\"");
        values = &j["on_generators"];
        if (j.contains("generators"))
            gens = parse_elements(g, labels_from_json(j["generators"], path + ".generators"));
    }
    const auto v = fractions_from_json(*values, path + (j.is_object() ? ".on_generators" : ""));
    if (v.size() != gens.size())
        detail::schema_fail(path, std::to_string(gens.size()) + " generator value(s), got " + std::to_string(v.size()));
    return character::from_generators(g, gens, v);
}

inline json labels_json(const finite_group& g, const std::vector<element>& xs)
{
    json out = json::array();
    for (element x : xs)
        out.push_back(g.label(x));
    return out;
}

inline json character_to_json(const character& chi, const std::vector<element>& gens)
{
    json on_gens = json::array();
    for (element x : gens)
        on_gens.push_back(chi(x).str());
    json on_elems = json::array();
    for (const auto& v : chi.values())
        on_elems.push_back(v.str());
    return json{{"generators", labels_json(chi.domain(), gens)}, {"on_generators", on_gens}, {"on_elements", on_elems}};
}

inline json abelian_to_json(const abelian_group& a)
{
    return json{{"invariant_factors", a.invariant_factors}, {"order", a.order()}, {"text", a.str()}};
}

namespace detail {

inline std::string tuple_key(const finite_group& g, const std::vector<element>& t)
{
    std::string key;
    for (std::size_t i = 0; i < t.size(); ++i)
        key += (i ? "," : "") + g.label(t[i]);
    return key;
}

} // namespace detail

inline json cochain_to_json(const qz_cochain& f)
{
    json values = json::object();
    for (std::int64_t t = 0; t < f.size(); ++t)
        if (!f.at(t).is_zero())
            values[detail::tuple_key(f.group(), f.tuple(t))] = f.at(t).str();
    return json{{"degree", f.degree()}, {"values", values}};
}

inline json cochain_to_json(const module_cochain& f)
{
    json values = json::object();
    for (std::int64_t t = 0; t < f.size(); ++t)
        if (!f.module().is_zero(f.at(t)))
            values[detail::tuple_key(f.group(), f.tuple(t))] = f.at(t);
    return json{{"degree", f.degree()}, {"carrier", f.module().carrier().invariant_factors}, {"values", values}};
}

/// {"degree": n, "values": {"g1,g2": "a/b", ...}}; omitted tuples are zero.
inline qz_cochain cochain_from_json(const json& j, const finite_group& g, const std::string& path = "$.cochain")
{
    if (!j.is_object() || !j.contains("degree") || !j["degree"].is_number_integer())
        detail::schema_fail(path, "{\"degree\": n, \"values\": {...}}");
    qz_cochain f(qz_coefficients(g), j["degree"].get<int>());
    if (!j.contains("values"))
        return f;
    if (!j["values"].is_object())
        detail::schema_fail(path + ".values", "an object keyed by comma-separated element labels");
    for (const auto& [key, value] : j["values"].items()) {
        const auto labels = f.degree() == 0 ? std::vector<std::string>{} : detail::split_top(key);
        if (static_cast<int>(labels.size()) != f.degree())
            detail::schema_fail(path + ".values[\"" + key + "\"]", std::to_string(f.degree()) + " element labels");
        f.set(parse_elements(g, labels), fraction_from_json(value, path + ".values[\"" + key + "\"]"));
    }
    return f;
}

inline json report_to_json(const extension_problem& p, const obstruction_report& r, const std::vector<element>& c_gens)
{
    json extensions = json::array();
    const auto d_gens = greedy_generators(p.d);
    for (const auto& e : r.extensions)
        extensions.push_back(character_to_json(e, d_gens));
    std::vector<element> chi_gens;
    for (element x : c_gens)
        chi_gens.push_back(p.c.position(x));
    return json{
        {"group", group_to_json(p.d)},
        {"subgroup", labels_json(p.d, p.c.members())},
        {"quotient_section", labels_json(p.d, p.quotient.section)},
        {"character", character_to_json(p.chi, chi_gens)},
        {"o1_trivial", r.o1_trivial},
        {"o1_cocycle", cochain_to_json(r.o1)},
        {"o2_class", r.o2 ? json{{"representative", cochain_to_json(*r.o2)},
                                 {"ambient", r.o2_ambient ? abelian_to_json(*r.o2_ambient) : json(nullptr)}}
                          : json(nullptr)},
        {"o2_trivial", r.o2_trivial ? json(*r.o2_trivial) : json("not-applicable")},
        {"o2_witness", r.o2_witness ? cochain_to_json(*r.o2_witness) : json(nullptr)},
        {"extensions", extensions},
        {"torsor_size", r.torsor_size},
        {"notes", r.notes},
    };
}

} // namespace pivext
