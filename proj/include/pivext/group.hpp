#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace pivext {

/// Elements of a finite group are indices into its multiplication table.
using element = int;

inline constexpr int max_group_order = 64;

enum class group_kind { cyclic, dihedral, quaternion, symmetric, elementary_abelian, direct_product };

inline std::string_view to_string(group_kind kind)
{
    switch (kind) {
    case group_kind::cyclic: return "cyclic";
    case group_kind::dihedral: return "dihedral";
    case group_kind::quaternion: return "quaternion";
    case group_kind::symmetric: return "symmetric";
    case group_kind::elementary_abelian: return "elementary_abelian";
    case group_kind::direct_product: return "direct_product";
    }
    return "";
}

/// How a catalog group was built; kept so the group can be re-emitted in the same form.
struct standard_spec {
    group_kind kind = group_kind::cyclic;
    std::vector<int> params;
    std::vector<standard_spec> factors; // direct_product only

    friend bool operator==(const standard_spec&, const standard_spec&) = default;
};

/// A finite group given by a validated multiplication table. Copies share the immutable table.
class finite_group {
public:
    finite_group() : finite_group(from_table({{0}})) {}

    /// Validates the group axioms. The identity is detected, it need not be element 0.
    static finite_group from_table(const std::vector<std::vector<int>>& table, std::vector<std::string> labels = {},
                                   int max_order = max_group_order)
    {
        const int n = static_cast<int>(table.size());
        if (n == 0)
            throw error(errc::not_closed, "empty table");
        if (n > max_order)
            throw error(errc::too_large, "group order " + std::to_string(n) + " exceeds " + std::to_string(max_order));
        auto impl = std::make_shared<data>();
        impl->n = n;
        impl->table.resize(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(table[a].size()) != n)
                throw error(errc::not_closed, "row " + std::to_string(a) + " has length " +
                                                  std::to_string(table[a].size()) + ", expected " + std::to_string(n));
            for (int b = 0; b < n; ++b) {
                const int c = table[a][b];
                if (c < 0 || c >= n)
                    throw error(errc::not_closed, "product (" + std::to_string(a) + "," + std::to_string(b) +
                                                      ") = " + std::to_string(c) + " is not an element");
                impl->table[static_cast<std::size_t>(a) * n + b] = c;
            }
        }
        auto at = [&](int a, int b) { return impl->table[static_cast<std::size_t>(a) * n + b]; };

        int identity = -1;
        for (int e = 0; e < n && identity < 0; ++e) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x)
                ok = at(e, x) == x && at(x, e) == x;
            if (ok)
                identity = e;
        }
        if (identity < 0)
            throw error(errc::no_identity, "no element acts trivially on both sides");
        impl->identity = identity;

        impl->inverse.assign(n, -1);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (at(a, b) == identity && at(b, a) == identity) {
                    impl->inverse[a] = b;
                    break;
                }
            }
            if (impl->inverse[a] < 0)
                throw error(errc::no_inverse, "element " + std::to_string(a) + " has no two-sided inverse");
        }

        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (at(at(a, b), c) != at(a, at(b, c)))
                        throw error(errc::not_associative, "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                                               std::to_string(c) + " != " + std::to_string(a) + "*(" +
                                                               std::to_string(b) + "*" + std::to_string(c) + ")");

        if (labels.empty()) {
            labels.reserve(n);
            for (int a = 0; a < n; ++a)
                labels.push_back(std::to_string(a));
        }
        if (static_cast<int>(labels.size()) != n)
            throw error(errc::schema_error, "expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
        auto sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw error(errc::schema_error, "duplicate element label \"" + *std::adjacent_find(sorted.begin(), sorted.end()) + "\"");
        impl->labels = std::move(labels);
        return finite_group(std::move(impl));
    }

    int order() const noexcept { return impl_->n; }
    element identity() const noexcept { return impl_->identity; }
    element mul(element a, element b) const noexcept { return impl_->table[static_cast<std::size_t>(a) * impl_->n + b]; }
    element inv(element a) const noexcept { return impl_->inverse[a]; }
    /// g^-1 x g
    element conj(element g, element x) const noexcept { return mul(mul(inv(g), x), g); }
    element commutator(element a, element b) const noexcept { return mul(mul(inv(a), inv(b)), mul(a, b)); }

    const std::string& label(element a) const { return impl_->labels[a]; }
    const std::vector<std::string>& labels() const noexcept { return impl_->labels; }
    std::optional<element> find(std::string_view lbl) const
    {
        for (int a = 0; a < order(); ++a)
            if (impl_->labels[a] == lbl)
                return a;
        return std::nullopt;
    }

    std::vector<std::vector<int>> table() const
    {
        std::vector<std::vector<int>> t(order(), std::vector<int>(order()));
        for (int a = 0; a < order(); ++a)
            for (int b = 0; b < order(); ++b)
                t[a][b] = mul(a, b);
        return t;
    }

    bool is_abelian() const noexcept
    {
        for (int a = 0; a < order(); ++a)
            for (int b = a + 1; b < order(); ++b)
                if (mul(a, b) != mul(b, a))
                    return false;
        return true;
    }

    int element_order(element a) const noexcept
    {
        int k = 1;
        for (element x = a; x != identity(); x = mul(x, a))
            ++k;
        return k;
    }

    int exponent() const noexcept
    {
        int e = 1;
        for (int a = 0; a < order(); ++a)
            e = std::lcm(e, element_order(a));
        return e;
    }

    /// Elements other than the identity, in increasing index order.
    const std::vector<element>& non_identity() const noexcept { return impl_->non_identity; }

    const std::optional<standard_spec>& standard() const noexcept { return impl_->standard; }
    finite_group with_standard(standard_spec spec) const
    {
        auto copy = std::make_shared<data>(*impl_);
        copy->standard = std::move(spec);
        return finite_group(std::move(copy));
    }

    /// Same table and labels.
    friend bool operator==(const finite_group& a, const finite_group& b)
    {
        return a.impl_ == b.impl_ || (a.impl_->table == b.impl_->table && a.impl_->labels == b.impl_->labels);
    }

private:
    struct data {
        int n = 0;
        element identity = 0;
        std::vector<int> table;
        std::vector<int> inverse;
        std::vector<std::string> labels;
        std::vector<element> non_identity;
        std::optional<standard_spec> standard;
    };

    explicit finite_group(std::shared_ptr<data> impl) : impl_(std::move(impl))
    {
        if (impl_->non_identity.empty())
            for (int a = 0; a < impl_->n; ++a)
                if (a != impl_->identity)
                    impl_->non_identity.push_back(a);
    }

    std::shared_ptr<data> impl_;
};

/// A subgroup, stored as the sorted list of member indices of its parent.
class subgroup {
public:
    subgroup(finite_group parent, std::vector<element> members) : parent_(std::move(parent)), members_(std::move(members))
    {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (!members_.empty() && (members_.front() < 0 || members_.back() >= parent_.order()))
            throw error(errc::not_closed, "subgroup member out of range");
        position_.assign(parent_.order(), -1);
        for (int i = 0; i < static_cast<int>(members_.size()); ++i)
            position_[members_[i]] = i;
        if (!contains(parent_.identity()))
            throw error(errc::not_closed, "subgroup must contain the identity");
        for (element a : members_)
            for (element b : members_)
                if (!contains(parent_.mul(a, b)))
                    throw error(errc::not_closed, "subgroup is not closed at (" + parent_.label(a) + "," +
                                                      parent_.label(b) + ")");
    }

    const finite_group& parent() const noexcept { return parent_; }
    const std::vector<element>& members() const noexcept { return members_; }
    int order() const noexcept { return static_cast<int>(members_.size()); }
    bool contains(element a) const noexcept { return position_[a] >= 0; }
    /// Position of a member in members(), -1 if not a member.
    int position(element a) const noexcept { return position_[a]; }

    /// The subgroup as a group in its own right; element i is members()[i].
    finite_group as_group() const
    {
        const int n = order();
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) {
            labels.push_back(parent_.label(members_[i]));
            for (int j = 0; j < n; ++j) {
                const int p = position_[parent_.mul(members_[i], members_[j])];
                if (p < 0)
                    throw error(errc::not_closed, "subgroup is not closed at (" + parent_.label(members_[i]) + "," +
                                                      parent_.label(members_[j]) + ")");
                t[i][j] = p;
            }
        }
        return finite_group::from_table(t, std::move(labels));
    }

    friend bool operator==(const subgroup& a, const subgroup& b)
    {
        return a.parent_ == b.parent_ && a.members_ == b.members_;
    }

private:
    finite_group parent_;
    std::vector<element> members_;
    std::vector<int> position_;
};

/// Smallest subgroup containing `gens` (and the identity).
inline subgroup generated_subgroup(const finite_group& g, const std::vector<element>& gens)
{
    std::vector<char> in(g.order(), 0);
    std::vector<element> members{g.identity()};
    in[g.identity()] = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (element s : gens) {
            const element x = g.mul(members[i], s);
            if (!in[x]) {
                in[x] = 1;
                members.push_back(x);
            }
        }
    }
    return subgroup(g, std::move(members));
}

/// A pair (g, n) with g^-1 n g outside N, if any.
inline std::optional<std::pair<element, element>> normality_witness(const finite_group& g, const subgroup& n)
{
    for (element x = 0; x < g.order(); ++x)
        for (element m : n.members())
            if (!n.contains(g.conj(x, m)))
                return std::pair{x, m};
    return std::nullopt;
}

inline bool is_normal(const finite_group& g, const subgroup& n) { return !normality_witness(g, n).has_value(); }

inline void require_normal(const finite_group& g, const subgroup& n)
{
    if (auto w = normality_witness(g, n))
        throw error(errc::not_normal, "conjugate " + g.label(w->first) + "^-1 " + g.label(w->second) + " " +
                                          g.label(w->first) + " = " + g.label(g.conj(w->first, w->second)) +
                                          " escapes the subgroup");
}

inline subgroup center(const finite_group& g)
{
    std::vector<element> members;
    for (element z = 0; z < g.order(); ++z) {
        bool central = true;
        for (element x = 0; x < g.order() && central; ++x)
            central = g.mul(z, x) == g.mul(x, z);
        if (central)
            members.push_back(z);
    }
    return subgroup(g, std::move(members));
}

inline subgroup commutator_subgroup(const finite_group& g)
{
    std::vector<element> gens;
    for (element a = 0; a < g.order(); ++a)
        for (element b = 0; b < g.order(); ++b)
            gens.push_back(g.commutator(a, b));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return generated_subgroup(g, gens);
}

/// Greedy generating set: scan elements by index, keep those outside the span so far.
inline std::vector<element> greedy_generators(const finite_group& g)
{
    std::vector<element> gens;
    auto span = generated_subgroup(g, gens);
    for (element a = 0; a < g.order() && span.order() < g.order(); ++a) {
        if (!span.contains(a)) {
            gens.push_back(a);
            span = generated_subgroup(g, gens);
        }
    }
    return gens;
}

struct quotient_data {
    finite_group quotient;
    std::vector<int> projection; // element of G -> coset index
    std::vector<element> section; // coset index -> element of G
};

/// G/N on coset representatives. Cosets are ordered by their minimal element; the
/// section picks that minimal element, except on the identity coset where it picks e.
inline quotient_data quotient_with_section(const finite_group& g, const subgroup& n)
{
    require_normal(g, n);
    std::vector<int> projection(g.order(), -1);
    std::vector<element> section;
    for (element x = 0; x < g.order(); ++x) {
        if (projection[x] >= 0)
            continue;
        const int coset = static_cast<int>(section.size());
        for (element m : n.members())
            projection[g.mul(x, m)] = coset;
        section.push_back(n.contains(x) ? g.identity() : x);
    }
    const int q = static_cast<int>(section.size());
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    std::vector<std::string> labels;
    for (int a = 0; a < q; ++a) {
        labels.push_back(g.label(section[a]));
        for (int b = 0; b < q; ++b)
            table[a][b] = projection[g.mul(section[a], section[b])];
    }
    return {finite_group::from_table(table, std::move(labels)), std::move(projection), std::move(section)};
}

/// The automorphism n -> g^-1 n g of a normal subgroup N, as a map on positions in N.
inline std::vector<int> conjugation_map(const finite_group& g, const subgroup& n, element x)
{
    require_normal(g, n);
    std::vector<int> map(n.order());
    for (int i = 0; i < n.order(); ++i)
        map[i] = n.position(g.conj(x, n.members()[i]));
    return map;
}

namespace detail {

inline finite_group tabulate(int n, auto&& product, std::vector<std::string> labels)
{
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[a][b] = product(a, b);
    return finite_group::from_table(t, std::move(labels));
}

inline void require_param(bool ok, const std::string& what)
{
    if (!ok)
        throw error(errc::unsupported_parameter, what);
}

inline bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

} // namespace detail

/// Z/n on residues 0..n-1.
inline finite_group make_cyclic(int n)
{
    detail::require_param(n >= 1 && n <= max_group_order, "cyclic order must be in [1, 64], got " + std::to_string(n));
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a)
        labels.push_back(std::to_string(a));
    return detail::tabulate(n, [n](int a, int b) { return (a + b) % n; }, std::move(labels))
        .with_standard({group_kind::cyclic, {n}, {}});
}

/// Dihedral group of the given order 2m, elements r^a s^b at index 2a+b.
inline finite_group make_dihedral(int order)
{
    detail::require_param(order >= 2 && order % 2 == 0 && order <= max_group_order,
                          "dihedral order must be even and in [2, 64], got " + std::to_string(order));
    const int m = order / 2;
    std::vector<std::string> labels;
    for (int a = 0; a < m; ++a) {
        const std::string r = a == 0 ? "" : (a == 1 ? "r" : "r" + std::to_string(a));
        labels.push_back(a == 0 ? "e" : r);
        labels.push_back(r + "s");
    }
    auto product = [m](int x, int y) {
        const int a = x / 2, b = x % 2, c = y / 2, d = y % 2;
        const int na = ((a + (b ? -c : c)) % m + m) % m;
        return 2 * na + (b ^ d);
    };
    return detail::tabulate(order, product, std::move(labels)).with_standard({group_kind::dihedral, {order}, {}});
}

/// Dicyclic (generalized quaternion) group of order 4m, m >= 2: <x, y | x^2m = 1, y^2 = x^m, y^-1 x y = x^-1>.
/// Order 8 uses the ordering 1, -1, i, -i, j, -j, k, -k; larger orders use x^a y^b at index 2a+b.
inline finite_group make_quaternion(int order)
{
    detail::require_param(order >= 8 && order % 4 == 0 && order <= max_group_order,
                          "quaternion order must be a multiple of 4 in [8, 64], got " + std::to_string(order));
    const int m = order / 4;
    auto product = [m](int x, int y) {
        const int a = x / 2, b = x % 2, c = y / 2, d = y % 2;
        int na = a + (b ? -c : c) + ((b && d) ? m : 0);
        na = ((na % (2 * m)) + 2 * m) % (2 * m);
        return 2 * na + (b ^ d);
    };
    if (order != 8) {
        std::vector<std::string> labels;
        for (int a = 0; a < 2 * m; ++a) {
            const std::string x = a == 0 ? "" : (a == 1 ? "x" : "x" + std::to_string(a));
            labels.push_back(a == 0 ? "e" : x);
            labels.push_back(x + "y");
        }
        return detail::tabulate(order, product, std::move(labels)).with_standard({group_kind::quaternion, {order}, {}});
    }
    // x = i, y = j, xy = k; canonical position -> x^a y^b index
    const std::vector<int> to_generic{0, 4, 2, 6, 1, 5, 3, 7};
    std::vector<int> to_canonical(8);
    for (int c = 0; c < 8; ++c)
        to_canonical[to_generic[c]] = c;
    return detail::tabulate(
               8, [&](int x, int y) { return to_canonical[product(to_generic[x], to_generic[y])]; },
               {"1", "-1", "i", "-i", "j", "-j", "k", "-k"})
        .with_standard({group_kind::quaternion, {8}, {}});
}

/// S_n, n <= 5, permutations in lexicographic order of one-line notation; (st)(i) = s(t(i)).
inline finite_group make_symmetric(int n)
{
    detail::require_param(n >= 1 && n <= 5, "symmetric degree must be in [1, 5], got " + std::to_string(n));
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> labels;
    for (const auto& q : perms) {
        std::string s;
        for (int v : q)
            s += static_cast<char>('1' + v);
        labels.push_back(s);
    }
    auto index = [&](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<int> r(n);
    auto product = [&](int a, int b) {
        for (int i = 0; i < n; ++i)
            r[i] = perms[a][perms[b][i]];
        return index(r);
    };
    return detail::tabulate(static_cast<int>(perms.size()), product, std::move(labels))
        .with_standard({group_kind::symmetric, {n}, {}});
}

/// G x H with (g,h) at index g*|H| + h, labelled "g.h".
inline finite_group direct_product(const finite_group& g, const finite_group& h)
{
    const int n = g.order() * h.order();
    detail::require_param(n <= max_group_order, "direct product order " + std::to_string(n) + " exceeds 64");
    std::vector<std::string> labels;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < h.order(); ++b)
            labels.push_back(g.label(a) + "." + h.label(b));
    const int m = h.order();
    auto product = [&](int x, int y) { return g.mul(x / m, y / m) * m + h.mul(x % m, y % m); };
    auto result = detail::tabulate(n, product, std::move(labels));
    if (g.standard() && h.standard())
        return result.with_standard({group_kind::direct_product, {}, {*g.standard(), *h.standard()}});
    return result;
}

/// (Z/p)^k as an iterated direct product of cyclic groups.
inline finite_group make_elementary_abelian(int p, int k)
{
    detail::require_param(detail::is_prime(p) && k >= 1, "elementary abelian needs prime p and k >= 1");
    std::int64_t n = 1;
    for (int i = 0; i < k; ++i) {
        n *= p;
        detail::require_param(n <= max_group_order, "elementary abelian order exceeds 64");
    }
    auto g = make_cyclic(p);
    for (int i = 1; i < k; ++i)
        g = direct_product(g, make_cyclic(p));
    return g.with_standard({group_kind::elementary_abelian, {p, k}, {}});
}

inline finite_group make_standard(const standard_spec& spec)
{
    auto need = [&](std::size_t count) {
        detail::require_param(spec.params.size() == count, std::string(to_string(spec.kind)) + " takes " +
                                                               std::to_string(count) + " parameter(s)");
    };
    switch (spec.kind) {
    case group_kind::cyclic: need(1); return make_cyclic(spec.params[0]);
    case group_kind::dihedral: need(1); return make_dihedral(spec.params[0]);
    case group_kind::quaternion: need(1); return make_quaternion(spec.params[0]);
    case group_kind::symmetric: need(1); return make_symmetric(spec.params[0]);
    case group_kind::elementary_abelian: need(2); return make_elementary_abelian(spec.params[0], spec.params[1]);
    case group_kind::direct_product:
        detail::require_param(spec.factors.size() == 2 && spec.params.empty(), "direct_product takes two factor groups");
        return direct_product(make_standard(spec.factors[0]), make_standard(spec.factors[1]));
    }
    throw error(errc::unsupported_parameter, "unknown group kind");
}

/// Resolves element labels, SchemaError on an unknown label.
inline std::vector<element> parse_elements(const finite_group& g, const std::vector<std::string>& labels)
{
    std::vector<element> out;
    for (const auto& l : labels) {
        auto e = g.find(l);
        if (!e)
            throw error(errc::schema_error, "unknown element label \"" + l + "\"");
        out.push_back(*e);
    }
    return out;
}

} // namespace pivext
