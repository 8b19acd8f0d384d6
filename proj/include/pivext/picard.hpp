#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pivotal.hpp"

namespace pivext {

/// A finite abelian group with a quadratic form q valued in Q/Z.
struct quadratic_space {
    finite_group carrier;
    std::vector<qz> q;

    qz polar(element x, element y) const { return q[carrier.mul(x, y)] - q[x] - q[y]; }

    void validate() const
    {
        if (!carrier.is_abelian())
            throw error(errc::not_abelian, "quadratic space carrier must be abelian");
        if (static_cast<int>(q.size()) != carrier.order())
            throw error(errc::schema_error, "q needs one value per element");
        if (!q[carrier.identity()].is_zero())
            throw error(errc::not_biadditive, "q(0) != 0");
        for (element x = 0; x < carrier.order(); ++x)
            for (element y = 0; y < carrier.order(); ++y)
                for (element z = 0; z < carrier.order(); ++z)
                    if (polar(carrier.mul(x, y), z) != polar(x, z) + polar(y, z))
                        throw error(errc::not_biadditive, "polar form of q is not biadditive at (" + carrier.label(x) +
                                                              ", " + carrier.label(y) + ", " + carrier.label(z) + ")");
    }
};

/// A x Hom(A, Q/Z) with q(a, chi) = chi(a). Element (a, chi) sits at a * |A| + j where j indexes
/// chi by its dual coordinates as in make_abelian.
struct hyperbolic_data {
    finite_group a;
    quadratic_space space;
    dual_group_data dual;
    int dual_order = 1;
};

inline constexpr int hyperbolic_max_order = 16;

inline hyperbolic_data hyperbolic_space(const finite_group& a)
{
    if (!a.is_abelian())
        throw error(errc::not_abelian, "A must be abelian");
    if (a.order() > hyperbolic_max_order)
        throw error(errc::too_large, "|A| = " + std::to_string(a.order()) + " exceeds " +
                                         std::to_string(hyperbolic_max_order));
    hyperbolic_data h{a, {make_cyclic(1), {}}, dual_group(a), a.order()};
    const auto dual_group_elems = make_abelian(h.dual.type);
    const int m = dual_group_elems.order();
    std::vector<std::vector<std::int64_t>> coords(m);
    for (int j = 0; j < m; ++j) {
        std::vector<std::int64_t> y(h.dual.type.invariant_factors.size());
        int r = j;
        for (int i = static_cast<int>(y.size()) - 1; i >= 0; --i) {
            y[i] = r % h.dual.type.invariant_factors[i];
            r /= static_cast<int>(h.dual.type.invariant_factors[i]);
        }
        coords[j] = std::move(y);
    }
    std::vector<std::string> labels;
    for (element x = 0; x < a.order(); ++x)
        for (int j = 0; j < m; ++j)
            labels.push_back(a.label(x) + "|" + dual_group_elems.label(j));
    const int n = a.order() * m;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            table[x][y] = a.mul(x / m, y / m) * m + dual_group_elems.mul(x % m, y % m);
    // the carrier may exceed the catalog bound on group orders
    h.space.carrier = finite_group::from_table(table, std::move(labels), hyperbolic_max_order * hyperbolic_max_order);
    h.space.q.resize(a.order() * m);
    for (element x = 0; x < a.order(); ++x)
        for (int j = 0; j < m; ++j)
            h.space.q[x * m + j] = h.dual.pairing(x, coords[j]);
    return h;
}

/// An isometry as the image of every carrier element.
using isometry = std::vector<element>;

struct orthogonal_guards {
    int max_order = 16;
    int max_order_elementary_2 = 64;
};

namespace detail {

inline bool is_elementary_2(const finite_group& g)
{
    for (element x = 0; x < g.order(); ++x)
        if (g.mul(x, x) != g.identity())
            return false;
    return true;
}

} // namespace detail

/// All automorphisms of the carrier preserving q, sorted lexicographically. Generator images are
/// chosen by backtracking with pruning on element order, q and the polar form.
inline std::vector<isometry> orthogonal_group(const quadratic_space& sp, const orthogonal_guards& guards = {})
{
    const auto& g = sp.carrier;
    const int n = g.order();
    const int limit = detail::is_elementary_2(g) ? guards.max_order_elementary_2 : guards.max_order;
    if (n > limit)
        throw error(errc::too_large, "orthogonal group enumeration limited to " + std::to_string(limit) + " elements");
    const auto st = decompose_abelian(g);
    const auto& gens = st.generators;
    const int r = static_cast<int>(gens.size());
    std::vector<isometry> out;
    std::vector<element> img(r);
    std::vector<std::vector<element>> candidates(r);
    for (int i = 0; i < r; ++i)
        for (element x = 0; x < n; ++x)
            if (g.element_order(x) == g.element_order(gens[i]) && sp.q[x] == sp.q[gens[i]])
                candidates[i].push_back(x);
    std::vector<element> multiples(n);
    auto finish = [&] {
        isometry map(n);
        std::vector<char> hit(n, 0);
        for (element x = 0; x < n; ++x) {
            element y = g.identity();
            for (int i = 0; i < r; ++i)
                y = g.mul(y, power(g, img[i], st.coords[x][i]));
            if (hit[y] || sp.q[y] != sp.q[x])
                return;
            hit[y] = 1;
            map[x] = y;
        }
        out.push_back(std::move(map));
    };
    std::function<void(int)> extend = [&](int i) {
        if (i == r) {
            finish();
            return;
        }
        for (element x : candidates[i]) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                ok = sp.polar(img[j], x) == sp.polar(gens[j], gens[i]);
            if (!ok)
                continue;
            img[i] = x;
            extend(i + 1);
        }
    };
    extend(0);
    std::sort(out.begin(), out.end());
    // closure under composition and inverses, exhaustively when affordable
    std::set<isometry> members(out.begin(), out.end());
    const std::size_t checks = out.size() * out.size() <= 1'000'000 ? out.size() : std::min<std::size_t>(out.size(), 16);
    for (std::size_t i = 0; i < checks; ++i) {
        isometry inv(n);
        for (element x = 0; x < n; ++x)
            inv[out[i][x]] = x;
        if (!members.count(inv))
            throw std::logic_error("orthogonal group not closed under inverses");
        for (const auto& b : out) {
            isometry c(n);
            for (element x = 0; x < n; ++x)
                c[x] = out[i][b[x]];
            if (!members.count(c))
                throw std::logic_error("orthogonal group not closed under composition");
        }
    }
    return out;
}

/// The unit object with half-braiding phi(deg -): the element (0, phi) of A x Hom(A, Q/Z).
inline element z_phi(const hyperbolic_data& h, const character& phi)
{
    if (!(phi.domain() == h.a))
        throw error(errc::not_a_character, "phi is not a character of A");
    return h.a.identity() * h.dual_order + abelian_index(h.dual.type, h.dual.coordinates(phi));
}

struct stabilizer_report {
    element z;
    std::size_t orthogonal_order = 0;
    std::vector<isometry> stabilizer;
    std::size_t order() const { return stabilizer.size(); }
};

/// Isometries fixing Z_phi: the image of the pivotal Brauer-Picard group in O(A x A^).
inline stabilizer_report stabilizer_pivotal_image(const finite_group& a, const character& phi,
                                                  const orthogonal_guards& guards = {})
{
    if (!(phi.domain() == a))
        throw error(errc::not_a_character, "phi is not a character of A");
    const auto h = hyperbolic_space(a);
    stabilizer_report r;
    r.z = z_phi(h, phi);
    const auto o = orthogonal_group(h.space, guards);
    r.orthogonal_order = o.size();
    for (const auto& alpha : o)
        if (alpha[r.z] == r.z)
            r.stabilizer.push_back(alpha);
    if (r.orthogonal_order % r.stabilizer.size() != 0)
        throw std::logic_error("stabilizer order does not divide the group order");
    return r;
}

/// Optional 3-cocycle on the carrier of Inv(Z(C)), given on coordinate triples; omitted triples are 0.
using carrier_cocycle = std::map<std::array<gmodule::value_type, 3>, qz>;

struct les_report_data {
    abelian_group h2;            // H^2(G, k^x)
    abelian_group h1_twisted;    // Z^1(G, Inv(Z(C)))
    abelian_group h3;            // H^3(G, k^x)
    std::int64_t window_low = 1; // |pi_1| is a multiple of this ...
    std::int64_t window_high = 1; // ... and divides this
    std::optional<std::int64_t> kernel_order; // |ker(H^1 -> H^3)| when alpha is supplied
    std::vector<std::string> notes;
};

namespace detail {

/// Enumerates every element of Z^1 from its basis.
inline std::vector<module_cochain> all_crossed(const crossed_homomorphisms& z)
{
    std::vector<module_cochain> out;
    if (z.basis.empty())
        return out;
    const auto& m = z.basis.front().module();
    std::vector<std::int64_t> k(z.basis.size(), 0);
    for (;;) {
        module_cochain f(m, 1);
        for (std::int64_t t = 0; t < f.size(); ++t) {
            auto v = m.zero();
            for (std::size_t i = 0; i < k.size(); ++i)
                v = m.add(v, m.scale(k[i], z.basis[i].at(t)));
            f.set_at(t, v);
        }
        out.push_back(std::move(f));
        int i = static_cast<int>(k.size()) - 1;
        while (i >= 0 && ++k[i] == z.group.invariant_factors[i])
            k[i--] = 0;
        if (i < 0)
            break;
    }
    return out;
}

} // namespace detail

/// Group orders in the exact sequence H^2(G, k^x) -> pi_1 -> H^1(G, Inv) -> H^3(G, k^x) for a
/// user-declared coefficient module.
inline les_report_data les_report(const gmodule& inv, const std::optional<carrier_cocycle>& alpha = std::nullopt,
                                  const cohomology_guards& guards = {})
{
    const auto& g = inv.group();
    les_report_data r;
    r.h2 = cohomology_group(2, g, kx, guards);
    r.h3 = cohomology_group(3, g, kx, guards);
    const auto z1 = reduced_h1(g, inv);
    r.h1_twisted = z1.group;
    r.window_low = r.h2.order();
    r.window_high = r.h2.order() * r.h1_twisted.order();
    if (!alpha) {
        r.notes.push_back("connecting map to H^3 not evaluated: no 3-cocycle alpha supplied");
        return r;
    }
    if (r.h1_twisted.order() > 4096)
        throw error(errc::too_large, "too many crossed homomorphisms to test against alpha");
    std::int64_t kernel = 0;
    for (const auto& f : detail::all_crossed(z1)) {
        // (g1, g2, g3) -> alpha(f(g1), g1.f(g2), g1g2.f(g3))
        qz_cochain pulled(qz_coefficients(g), 3);
        for (std::int64_t t = 0; t < pulled.size(); ++t) {
            const auto x = pulled.tuple(t);
            const std::array<gmodule::value_type, 3> key{f({x[0]}), inv.act(x[0], f({x[1]})),
                                                         inv.act(g.mul(x[0], x[1]), f({x[2]}))};
            if (auto it = alpha->find(key); it != alpha->end())
                pulled.set_at(t, it->second);
        }
        if (!is_cocycle(pulled).holds)
            throw error(errc::not_a_cocycle, "alpha pulled back along a crossed homomorphism is not a 3-cocycle");
        if (coboundary_witness(pulled))
            ++kernel;
    }
    r.kernel_order = kernel;
    r.window_high = r.h2.order() * kernel;
    r.notes.push_back("connecting map evaluated by pulling alpha back along each crossed homomorphism");
    return r;
}

/// les_report for a pointed category Vec_C inside Vec_D, with Inv(Z(Vec_C)) = C x Hom(C, Q/Z).
inline les_report_data les_report(const finite_group& d, const subgroup& c,
                                  const std::optional<carrier_cocycle>& alpha = std::nullopt,
                                  const cohomology_guards& guards = {})
{
    auto r = les_report(inv_center_module(d, c), alpha, guards);
    r.notes.push_back("Inv(Z(Vec_C)) taken as C x Hom(C, Q/Z); the C factor is a modeling assumption");
    return r;
}

} // namespace pivext
