#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pivotal.hpp"

namespace pivext {

/// Tambara-Yamagami data (A, chi, tau) with tau = tau_sign * |A|^{-1/2}.
struct ty_data {
    finite_group a;
    std::vector<std::vector<qz>> bichar; // bichar[x][y]
    int tau_sign = 1;

    std::string tau() const { return std::string(tau_sign > 0 ? "+" : "-") + "|A|^{-1/2}"; }
};

/// sum_i x_i y_i / d_i in invariant-factor coordinates.
inline std::vector<std::vector<qz>> standard_bichar(const finite_group& a)
{
    const auto st = decompose_abelian(a);
    std::vector<std::vector<qz>> b(a.order(), std::vector<qz>(a.order()));
    for (element x = 0; x < a.order(); ++x)
        for (element y = 0; y < a.order(); ++y)
            for (std::size_t i = 0; i < st.generators.size(); ++i)
                b[x][y] += qz(st.coords[x][i] * st.coords[y][i], st.type.invariant_factors[i]);
    return b;
}

inline ty_data validate_ty(const finite_group& a, std::vector<std::vector<qz>> bichar, int tau_sign)
{
    if (!a.is_abelian())
        throw error(errc::not_abelian, "A must be abelian");
    if (tau_sign != 1 && tau_sign != -1)
        throw error(errc::schema_error, "tau sign must be + or -");
    const int n = a.order();
    if (static_cast<int>(bichar.size()) != n ||
        std::any_of(bichar.begin(), bichar.end(), [&](auto& row) { return static_cast<int>(row.size()) != n; }))
        throw error(errc::schema_error, "bicharacter must be a " + std::to_string(n) + "x" + std::to_string(n) + " table");
    for (element x = 0; x < n; ++x)
        for (element y = 0; y < n; ++y)
            for (element z = 0; z < n; ++z)
                if (bichar[a.mul(x, y)][z] != bichar[x][z] + bichar[y][z])
                    throw error(errc::not_biadditive, "b(" + a.label(x) + "+" + a.label(y) + ", " + a.label(z) +
                                                          ") != b(" + a.label(x) + ", " + a.label(z) + ") + b(" +
                                                          a.label(y) + ", " + a.label(z) + ")");
    for (element x = 0; x < n; ++x)
        for (element y = x + 1; y < n; ++y)
            if (bichar[x][y] != bichar[y][x]) {
                // name the pair with the nonzero value first
                const auto [u, v] = bichar[x][y].is_zero() ? std::pair{y, x} : std::pair{x, y};
                throw error(errc::not_symmetric, "b(" + a.label(u) + ", " + a.label(v) + ") = " + bichar[u][v].str() +
                                                     " but b(" + a.label(v) + ", " + a.label(u) + ") = " +
                                                     bichar[v][u].str());
            }
    for (element x = 0; x < n; ++x) {
        if (x == a.identity())
            continue;
        if (std::all_of(bichar[x].begin(), bichar[x].end(), [](const qz& v) { return v.is_zero(); }))
            throw error(errc::degenerate, "b(" + a.label(x) + ", -) = 0");
    }
    return {a, std::move(bichar), tau_sign};
}

struct ty_report {
    bool d1_pivotalizable = false;
    abelian_group o2_group;            // H^2(Z/2, k^x)
    std::int64_t h1_order = 0;         // |Hom(Z/2, Q/Z)|
    std::int64_t pivotal_count = 0;
    std::string tau;
    std::vector<std::string> notes;
};

/// Pivotal extensions of (Vec_A, p^phi) to the Z/2-graded TY category.
inline ty_report ty_pivotal_report(const ty_data& ty, const character& phi)
{
    if (!(phi.domain() == ty.a))
        throw error(errc::not_a_character, "phi is not a character of A");
    const auto z2 = make_cyclic(2);
    ty_report r;
    r.d1_pivotalizable = phi.is_trivial();
    r.o2_group = cohomology_group(2, z2, kx);
    r.h1_order = static_cast<std::int64_t>(hom_to_qz(z2).size());
    r.pivotal_count = r.d1_pivotalizable && r.o2_group.is_trivial() ? r.h1_order : 0;
    r.tau = ty.tau();
    if (!r.d1_pivotalizable)
        r.notes.push_back("the odd component is not pivotalizable for nontrivial phi");
    else
        r.notes.push_back("pivotal extensions are in bijection with Hom(Z/2, Q/Z)");
    r.notes.push_back("tau enters no computed quantity and is only echoed");
    return r;
}

} // namespace pivext
