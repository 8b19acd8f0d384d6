#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "group.hpp"
#include "smith.hpp"

namespace pivext {

/// Finite abelian group by invariant factors d1 | d2 | ... (all >= 2; empty = trivial).
struct abelian_group {
    std::vector<std::int64_t> invariant_factors;

    std::int64_t order() const
    {
        return std::accumulate(invariant_factors.begin(), invariant_factors.end(), std::int64_t{1},
                               std::multiplies<>());
    }
    std::int64_t exponent() const { return invariant_factors.empty() ? 1 : invariant_factors.back(); }
    bool is_trivial() const { return invariant_factors.empty(); }
    int rank() const { return static_cast<int>(invariant_factors.size()); }

    friend bool operator==(const abelian_group&, const abelian_group&) = default;

    std::string str() const
    {
        if (invariant_factors.empty())
            return "1";
        std::string s;
        for (auto d : invariant_factors)
            s += (s.empty() ? "Z/" : " x Z/") + std::to_string(d);
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const abelian_group& a) { return os << a.str(); }
};

/// Merges p-primary cyclic factors (given as prime powers, any order) into invariant factors.
inline abelian_group from_primary_factors(std::vector<std::int64_t> powers)
{
    std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> by_prime;
    for (auto q : powers) {
        if (q <= 1)
            continue;
        const auto p = factorize(q).front().first;
        auto it = std::find_if(by_prime.begin(), by_prime.end(), [&](auto& e) { return e.first == p; });
        if (it == by_prime.end())
            by_prime.push_back({p, {q}});
        else
            it->second.push_back(q);
    }
    std::size_t len = 0;
    for (auto& [p, qs] : by_prime) {
        std::sort(qs.begin(), qs.end(), std::greater<>());
        len = std::max(len, qs.size());
    }
    std::vector<std::int64_t> inv(len, 1);
    for (auto& [p, qs] : by_prime)
        for (std::size_t i = 0; i < qs.size(); ++i)
            inv[len - 1 - i] *= qs[i];
    return {inv};
}

inline abelian_group from_integers(const std::vector<integer>& factors)
{
    std::vector<std::int64_t> powers;
    for (const auto& d : factors)
        for (auto [p, e] : factorize(static_cast<std::int64_t>(d))) {
            std::int64_t q = 1;
            for (int i = 0; i < e; ++i)
                q *= p;
            powers.push_back(q);
        }
    return from_primary_factors(powers);
}

inline element power(const finite_group& g, element a, std::int64_t k)
{
    const auto n = g.element_order(a);
    k %= n;
    if (k < 0)
        k += n;
    element r = g.identity();
    for (std::int64_t i = 0; i < k; ++i)
        r = g.mul(r, a);
    return r;
}

/// Invariant-factor decomposition of an abelian group given by its table: generators[i] has
/// order invariant_factors[i] and every element is uniquely sum_i coords[a][i] * generators[i].
struct abelian_structure {
    abelian_group type;
    std::vector<element> generators;
    std::vector<std::vector<std::int64_t>> coords;

    std::int64_t coordinate(element a, int i) const { return coords[a][i]; }
};

inline abelian_structure decompose_abelian(const finite_group& g)
{
    if (!g.is_abelian())
        throw error(errc::not_abelian, "group of order " + std::to_string(g.order()) + " is not abelian");
    const auto gens = greedy_generators(g);
    const int s = static_cast<int>(gens.size());
    abelian_structure out;
    out.coords.assign(g.order(), {});
    if (s == 0)
        return out;

    std::vector<std::vector<integer>> old(g.order());
    std::vector<char> seen(g.order(), 0);
    std::vector<element> queue{g.identity()};
    old[g.identity()] = std::vector<integer>(s, 0);
    seen[g.identity()] = 1;
    std::vector<std::vector<integer>> relations;
    for (std::size_t k = 0; k < queue.size(); ++k) {
        const element a = queue[k];
        for (int i = 0; i < s; ++i) {
            const element b = g.mul(a, gens[i]);
            auto v = old[a];
            v[i] += 1;
            if (!seen[b]) {
                seen[b] = 1;
                old[b] = std::move(v);
                queue.push_back(b);
            } else {
                for (int j = 0; j < s; ++j)
                    v[j] -= old[b][j];
                if (std::any_of(v.begin(), v.end(), [](auto& x) { return x != 0; }))
                    relations.push_back(std::move(v));
            }
        }
    }
    auto snf = smith_with_columns(std::move(relations), s);
    snf.diagonal.resize(s, 0);

    std::vector<int> kept;
    for (int j = 0; j < s; ++j)
        if (snf.diagonal[j] != 1)
            kept.push_back(j);
    for (int j : kept) {
        const auto d = static_cast<std::int64_t>(snf.diagonal[j]);
        out.type.invariant_factors.push_back(d);
        element f = g.identity();
        for (int i = 0; i < s; ++i)
            f = g.mul(f, power(g, gens[i], static_cast<std::int64_t>(snf.v_inverse[j][i] % g.order())));
        out.generators.push_back(f);
    }
    for (element a = 0; a < g.order(); ++a) {
        std::vector<std::int64_t> y;
        for (std::size_t t = 0; t < kept.size(); ++t) {
            integer acc = 0;
            for (int i = 0; i < s; ++i)
                acc += old[a][i] * snf.v[i][kept[t]];
            const auto d = out.type.invariant_factors[t];
            auto r = static_cast<std::int64_t>(acc % d);
            y.push_back(r < 0 ? r + d : r);
        }
        out.coords[a] = std::move(y);
    }
    return out;
}

/// Z/d1 x ... x Z/dk with lexicographic coordinate ordering, labels "a.b.c".
inline finite_group make_abelian(const abelian_group& type)
{
    if (type.invariant_factors.empty())
        return make_cyclic(1);
    auto g = make_cyclic(static_cast<int>(type.invariant_factors[0]));
    for (std::size_t i = 1; i < type.invariant_factors.size(); ++i)
        g = direct_product(g, make_cyclic(static_cast<int>(type.invariant_factors[i])));
    return g;
}

/// Index in make_abelian(type) of the element with the given coordinates.
inline element abelian_index(const abelian_group& type, const std::vector<std::int64_t>& coords)
{
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const auto d = type.invariant_factors[i];
        idx = idx * d + ((coords[i] % d) + d) % d;
    }
    return static_cast<element>(idx);
}

struct abelianization_data {
    finite_group group;         // make_abelian(type)
    abelian_group type;
    std::vector<int> projection; // G -> group
};

/// G/[G,G] in invariant-factor ordering together with the projection.
inline abelianization_data abelianization(const finite_group& g)
{
    auto q = quotient_with_section(g, commutator_subgroup(g));
    auto st = decompose_abelian(q.quotient);
    abelianization_data out{make_abelian(st.type), st.type, std::vector<int>(g.order())};
    for (element x = 0; x < g.order(); ++x)
        out.projection[x] = abelian_index(st.type, st.coords[q.projection[x]]);
    return out;
}

} // namespace pivext
