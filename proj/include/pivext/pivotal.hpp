#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cohomology.hpp"

namespace pivext {

/// Extend a character chi of an abelian normal subgroup C of D to all of D.
/// chi lives on c.as_group(), whose element i is c.members()[i].
struct extension_problem {
    finite_group d;
    subgroup c;
    character chi;
    quotient_data quotient;

    extension_problem(finite_group d_, subgroup c_, character chi_)
        : d(std::move(d_)), c(std::move(c_)), chi(std::move(chi_)), quotient(quotient_with_section(d, c))
    {
        detail::require_normal_abelian(d, c);
        if (!(chi.domain() == c.as_group()))
            throw error(errc::not_a_character, "character is not defined on the subgroup");
    }

    const finite_group& g() const noexcept { return quotient.quotient; }
    /// chi at an element of D lying in C.
    qz chi_at(element x) const { return chi(c.position(x)); }
};

namespace detail {

/// Dual coordinates (in the basis of conj_character_module) of c -> chi(s^-1 c s) - chi(c).
inline std::vector<std::int64_t> o1_value(const extension_problem& p, const dual_group_data& dual, element s)
{
    std::vector<std::int64_t> y;
    for (std::size_t j = 0; j < dual.structure.generators.size(); ++j) {
        const element f = p.c.members()[dual.structure.generators[j]];
        const qz v = p.chi_at(p.d.conj(s, f)) - p.chi_at(f);
        y.push_back(v.scaled(dual.type.invariant_factors[j]));
    }
    return y;
}

inline void check_section(const extension_problem& p, const std::vector<element>& s)
{
    const auto& q = p.quotient;
    if (s.size() != q.section.size())
        throw error(errc::schema_error, "section has " + std::to_string(s.size()) + " entries, expected " +
                                            std::to_string(q.section.size()));
    for (std::size_t x = 0; x < s.size(); ++x)
        if (s[x] < 0 || s[x] >= p.d.order() || q.projection[s[x]] != static_cast<int>(x))
            throw error(errc::schema_error, "section entry " + std::to_string(x) + " is not in its coset");
    if (s[q.projection[p.d.identity()]] != p.d.identity())
        throw error(errc::schema_error, "section must send the identity coset to the identity");
}

} // namespace detail

/// O1(g) = g.chi - chi, a crossed homomorphism G -> Hom(C, Q/Z).
inline module_cochain o1_cocycle(const extension_problem& p)
{
    const auto m = conj_character_module(p.d, p.c);
    const auto dual = dual_group(p.c.as_group());
    module_cochain f(m, 1);
    for (std::int64_t t = 0; t < f.size(); ++t) {
        const element x = f.tuple(t)[0];
        f.set_at(t, m.reduce(detail::o1_value(p, dual, p.quotient.section[x])));
    }
    return f;
}

/// chi(d^-1 c d) = chi(c) for all d in D, c in C.
inline bool chi_is_invariant(const extension_problem& p)
{
    for (element x = 0; x < p.d.order(); ++x)
        for (element a : p.c.members())
            if (p.chi_at(p.d.conj(x, a)) != p.chi_at(a))
                return false;
    return true;
}

inline bool o1_vanishes(const extension_problem& p)
{
    const bool by_cochain = o1_cocycle(p).is_zero();
    if (by_cochain != chi_is_invariant(p))
        throw std::logic_error("O1 vanishing disagrees with invariance of chi");
    return by_cochain;
}

/// (x, y) -> chi(s(x) s(y) s(xy)^-1), a normalized 2-cocycle on G = D/C.
inline qz_cochain o2_transgression(const extension_problem& p, std::optional<std::vector<element>> section = std::nullopt)
{
    if (!chi_is_invariant(p))
        throw error(errc::o1_obstructed, "chi is not invariant under conjugation, so O2 is undefined");
    const auto& s = section ? *section : p.quotient.section;
    if (section)
        detail::check_section(p, s);
    const auto& g = p.g();
    qz_cochain f(qz_coefficients(g), 2);
    for (std::int64_t t = 0; t < f.size(); ++t) {
        const auto xy = f.tuple(t);
        const element u = p.d.mul(p.d.mul(s[xy[0]], s[xy[1]]), p.d.inv(s[g.mul(xy[0], xy[1])]));
        f.set_at(t, p.chi_at(u));
    }
    return f;
}

/// Hom(G, Q/Z) pulled back along D -> G^ab, for any finite group.
inline std::vector<character> hom_to_qz(const finite_group& g)
{
    const auto ab = abelianization(g);
    std::vector<character> out;
    for (const auto& phi : dual_group(ab.group).all(ab.group)) {
        std::vector<qz> v(g.order());
        for (element x = 0; x < g.order(); ++x)
            v[x] = phi(ab.projection[x]);
        out.emplace_back(g, std::move(v));
    }
    return out;
}

/// Sorts characters of g lexicographically by their values on greedy_generators(g).
inline void sort_characters(std::vector<character>& chars)
{
    if (chars.empty())
        return;
    const auto gens = greedy_generators(chars.front().domain());
    std::sort(chars.begin(), chars.end(), [&](const character& a, const character& b) {
        for (element x : gens)
            if (a(x) != b(x))
                return a(x) < b(x);
        return false;
    });
}

struct obstruction_report {
    bool o1_trivial = false;
    module_cochain o1;
    std::optional<qz_cochain> o2;                // present once O1 vanishes
    std::optional<bool> o2_trivial;
    std::optional<abelian_group> o2_ambient;     // H^2(G, k^x), when within guards
    std::optional<qz_cochain> o2_witness;        // c with dc = O2
    std::vector<character> extensions;           // characters of D, canonically sorted
    std::int64_t torsor_size = 0;                // |Hom(G, Q/Z)|
    std::vector<std::string> notes;
};

/// Full obstruction pipeline: O1, then O2 and its class, then every extension of chi.
/// `level` overrides the coefficient level mu_N of the triviality test.
inline obstruction_report extend_character(const extension_problem& p, const cohomology_guards& guards = {},
                                           std::optional<std::int64_t> level = std::nullopt)
{
    obstruction_report r{false, o1_cocycle(p), {}, {}, {}, {}, {}, 0, {}};
    const auto homs = hom_to_qz(p.g());
    r.torsor_size = static_cast<std::int64_t>(homs.size());
    r.o1_trivial = r.o1.is_zero();
    r.notes.push_back("O1 is computed as the ratio g.chi - chi, which satisfies the twisted cocycle law; "
                      "the unnormalized g -> g.chi has the same vanishing locus");
    if (r.o1_trivial != chi_is_invariant(p))
        throw std::logic_error("O1 vanishing disagrees with invariance of chi");
    if (!r.o1_trivial) {
        r.notes.push_back("O1 is nonzero: chi is not invariant under conjugation by D, no extension exists");
        return r;
    }
    r.o2 = o2_transgression(p);
    try {
        r.o2_ambient = cohomology_group(2, p.g(), kx, guards);
    } catch (const error& e) {
        if (e.code() != errc::too_large)
            throw;
        r.notes.push_back("H^2(G, k^x) not computed: " + e.detail());
    }
    r.o2_witness = coboundary_witness(*r.o2, level);
    if (level)
        r.notes.push_back("O2 triviality tested at the user-supplied level mu_" + std::to_string(*level));
    r.o2_trivial = r.o2_witness.has_value();
    if (!*r.o2_trivial) {
        r.notes.push_back("O2 is a nontrivial class in H^2(G, k^x): no extension exists");
        return r;
    }
    std::vector<qz> base(p.d.order());
    for (element x = 0; x < p.d.order(); ++x) {
        const int coset = p.quotient.projection[x];
        const element s = p.quotient.section[coset];
        const element cpart = p.d.mul(x, p.d.inv(s));
        base[x] = p.chi_at(cpart) + (*r.o2_witness)({coset});
    }
    const character psi(p.d, std::move(base));
    for (const auto& h : homs) {
        std::vector<qz> v(p.d.order());
        for (element x = 0; x < p.d.order(); ++x)
            v[x] = psi(x) + h(p.quotient.projection[x]);
        r.extensions.emplace_back(p.d, std::move(v));
    }
    sort_characters(r.extensions);
    r.notes.push_back("extensions form a torsor over Hom(G, Q/Z)");
    return r;
}

/// Pivotal structures on the module category over Vec_G graded by G/H, with respect to phi.
struct module_pivotal_verdict {
    bool pivotalizable = false;
    std::optional<element> witness;  // h in H with phi(h) != 0
    std::vector<qz> solution;        // f(xH) per coset (ordered as the quotient), when pivotalizable
    std::vector<element> coset_representatives;
    std::string family;
};

inline module_pivotal_verdict module_pivotalizable(const finite_group& g, const character& phi, const subgroup& h)
{
    if (!g.is_abelian())
        throw error(errc::not_abelian, "the grading group must be abelian");
    if (!(phi.domain() == g))
        throw error(errc::not_a_character, "phi is not a character of the grading group");
    module_pivotal_verdict v;
    for (element x : h.members())
        if (!phi(x).is_zero()) {
            v.witness = x;
            v.family = "none: phi(" + g.label(x) + ") = " + phi(x).str() + " is nonzero on H";
            return v;
        }
    v.pivotalizable = true;
    const auto q = quotient_with_section(g, h);
    v.coset_representatives = q.section;
    for (element s : q.section)
        v.solution.push_back(phi(s));
    v.family = "f(xH) = phi(x) + f(H), one free scalar f(H)";
    return v;
}

} // namespace pivext
