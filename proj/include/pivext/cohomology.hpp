#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gmodule.hpp"
#include "smith.hpp"

namespace pivext {

/// Q/Z with trivial G-action: the torsion of k^x, where cocycle values of characters live.
class qz_coefficients {
public:
    using value_type = qz;

    explicit qz_coefficients(finite_group g) : group_(std::move(g)) {}

    const finite_group& group() const noexcept { return group_; }
    qz zero() const { return {}; }
    qz add(const qz& a, const qz& b) const { return a + b; }
    qz neg(const qz& a) const { return -a; }
    qz act(element, const qz& a) const { return a; }
    bool is_zero(const qz& a) const { return a.is_zero(); }

    friend bool operator==(const qz_coefficients& a, const qz_coefficients& b) { return a.group_ == b.group_; }

private:
    finite_group group_;
};

/// Normalized n-cochains: values on n-tuples of non-identity elements; a tuple with an identity
/// entry evaluates to zero. Tuples are indexed lexicographically by position among non-identity elements.
template <class Module>
class cochain {
public:
    using value_type = typename Module::value_type;

    cochain(Module module, int degree) : module_(std::move(module)), degree_(degree)
    {
        if (degree < 0)
            throw error(errc::unsupported_parameter, "negative cochain degree");
        values_.assign(static_cast<std::size_t>(count(group(), degree)), module_.zero());
    }

    static std::int64_t count(const finite_group& g, int degree)
    {
        std::int64_t n = 1;
        for (int i = 0; i < degree; ++i)
            n *= g.order() - 1;
        return n;
    }

    const Module& module() const noexcept { return module_; }
    const finite_group& group() const noexcept { return module_.group(); }
    int degree() const noexcept { return degree_; }
    std::int64_t size() const noexcept { return static_cast<std::int64_t>(values_.size()); }

    /// Index of a tuple of non-identity elements, -1 if some entry is the identity.
    std::int64_t index(const std::vector<element>& tuple) const
    {
        const auto& g = group();
        std::int64_t idx = 0;
        for (element x : tuple) {
            if (x == g.identity())
                return -1;
            idx = idx * (g.order() - 1) + (x < g.identity() ? x : x - 1);
        }
        return idx;
    }

    std::vector<element> tuple(std::int64_t idx) const
    {
        const auto& g = group();
        std::vector<element> t(degree_);
        for (int i = degree_ - 1; i >= 0; --i) {
            t[i] = g.non_identity()[idx % (g.order() - 1)];
            idx /= g.order() - 1;
        }
        return t;
    }

    value_type operator()(const std::vector<element>& t) const
    {
        const auto idx = index(t);
        return idx < 0 ? module_.zero() : values_[idx];
    }
    const value_type& at(std::int64_t idx) const { return values_[idx]; }
    void set_at(std::int64_t idx, value_type v) { values_[idx] = std::move(v); }
    void set(const std::vector<element>& t, value_type v)
    {
        const auto idx = index(t);
        if (idx < 0) {
            if (!module_.is_zero(v))
                throw error(errc::unsupported_parameter, "normalized cochains vanish on tuples containing the identity");
            return;
        }
        values_[idx] = std::move(v);
    }
    const std::vector<value_type>& values() const noexcept { return values_; }

    bool is_zero() const
    {
        return std::all_of(values_.begin(), values_.end(), [&](const value_type& v) { return module_.is_zero(v); });
    }

    friend cochain operator-(const cochain& a, const cochain& b)
    {
        if (!(a.module_ == b.module_) || a.degree_ != b.degree_)
            throw error(errc::coefficient_mismatch, "cochains live in different groups");
        cochain r = a;
        for (std::size_t i = 0; i < r.values_.size(); ++i)
            r.values_[i] = a.module_.add(a.values_[i], a.module_.neg(b.values_[i]));
        return r;
    }
    friend bool operator==(const cochain& a, const cochain& b)
    {
        return a.degree_ == b.degree_ && a.module_ == b.module_ && a.values_ == b.values_;
    }

private:
    Module module_;
    int degree_;
    std::vector<value_type> values_;
};

using qz_cochain = cochain<qz_coefficients>;
using module_cochain = cochain<gmodule>;

/// (df)(g1..g_{n+1}) = g1.f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g1..g_n)
template <class Module>
cochain<Module> differential(const cochain<Module>& f)
{
    const auto& g = f.group();
    const auto& m = f.module();
    const int n = f.degree();
    cochain<Module> out(m, n + 1);
    std::vector<element> face(n);
    for (std::int64_t idx = 0; idx < out.size(); ++idx) {
        const auto t = out.tuple(idx);
        std::copy(t.begin() + 1, t.end(), face.begin());
        auto acc = m.act(t[0], f(face));
        for (int i = 0; i < n; ++i) {
            for (int j = 0, k = 0; j <= n; ++j) {
                if (j == i + 1)
                    continue;
                face[k++] = (j == i) ? g.mul(t[i], t[i + 1]) : t[j];
            }
            auto v = f(face);
            acc = m.add(acc, (i % 2 == 0) ? m.neg(v) : v);
        }
        std::copy(t.begin(), t.end() - 1, face.begin());
        auto last = f(face);
        acc = m.add(acc, ((n + 1) % 2 == 0) ? last : m.neg(last));
        out.set_at(idx, std::move(acc));
    }
    return out;
}

struct cocycle_check {
    bool holds = true;
    std::vector<element> witness; // first tuple where df != 0
};

template <class Module>
cocycle_check is_cocycle(const cochain<Module>& f)
{
    const auto d = differential(f);
    for (std::int64_t idx = 0; idx < d.size(); ++idx)
        if (!d.module().is_zero(d.at(idx)))
            return {false, d.tuple(idx)};
    return {};
}

/// Size limits for the bar-complex computations.
struct cohomology_guards {
    int kx_max_order = 32;    // H^1, H^2 with k^x coefficients
    int kx_h3_max_order = 16; // H^3(G, k^x) = H^4(G, Z)
    std::int64_t max_cochain_dim = 3000; // coordinates of C^n(G, M)
};

namespace detail {

inline std::int64_t ipow(std::int64_t b, int e)
{
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

} // namespace detail

/// Integer matrix of d: C^n(G, M) -> C^{n+1}(G, M) on coordinates (tuple, generator), tuple-major.
/// Entries are integer lifts; the action enters through its matrices.
inline sparse_matrix bar_matrix(const gmodule& m, int n, bool normalized = true)
{
    const auto& g = m.group();
    const int k = m.dim();
    const std::int64_t base = normalized ? g.order() - 1 : g.order();
    const auto rows_t = detail::ipow(base, n + 1);
    const auto cols_t = detail::ipow(base, n);
    sparse_matrix out(static_cast<int>(rows_t * k), static_cast<int>(cols_t * k));
    auto pos = [&](element x) -> std::int64_t {
        if (!normalized)
            return x;
        return x == g.identity() ? -1 : (x < g.identity() ? x : x - 1);
    };
    auto elem = [&](std::int64_t p) -> element { return normalized ? g.non_identity()[p] : static_cast<element>(p); };
    std::vector<element> t(n + 1);
    std::vector<element> face(n);
    auto face_index = [&]() -> std::int64_t {
        std::int64_t idx = 0;
        for (element x : face) {
            const auto p = pos(x);
            if (p < 0)
                return -1;
            idx = idx * base + p;
        }
        return idx;
    };
    for (std::int64_t r = 0; r < rows_t; ++r) {
        auto rr = r;
        for (int i = n; i >= 0; --i) {
            t[i] = elem(rr % base);
            rr /= base;
        }
        auto emit = [&](std::int64_t col_t, std::int64_t sign, bool act) {
            if (col_t < 0)
                return;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    const std::int64_t a = act ? m.action(t[0])[i][j] : (i == j ? 1 : 0);
                    if (a != 0)
                        out.add(static_cast<int>(r * k + i), static_cast<int>(col_t * k + j), sign * a);
                }
        };
        std::copy(t.begin() + 1, t.end(), face.begin());
        emit(face_index(), 1, true);
        for (int i = 0; i < n; ++i) {
            for (int j = 0, c = 0; j <= n; ++j) {
                if (j == i + 1)
                    continue;
                face[c++] = (j == i) ? g.mul(t[i], t[i + 1]) : t[j];
            }
            emit(face_index(), (i % 2 == 0) ? -1 : 1, false);
        }
        std::copy(t.begin(), t.end() - 1, face.begin());
        emit(face_index(), ((n + 1) % 2 == 0) ? 1 : -1, false);
    }
    out.normalize();
    return out;
}

/// The integral bar differential d^n: C^n(G, Z) -> C^{n+1}(G, Z).
inline sparse_matrix integral_bar_matrix(const finite_group& g, int n, bool normalized = true)
{
    // a trivial one-generator module has action matrices (1), which is exactly Z
    return bar_matrix(gmodule::trivial(g, abelian_group{{2}}), n, normalized);
}

/// Stacked matrix [D_{n-1} R; 0 -E_n] of the cone of C^*(G, Z^k) --R--> C^*(G, Z^k). When the
/// action matrices form an action over Z the cone is a complex whose cokernel torsion is H^n(G, M).
inline sparse_matrix total_complex_matrix(const gmodule& m, int n, bool normalized = true)
{
    const auto& g = m.group();
    const int k = m.dim();
    const std::int64_t base = normalized ? g.order() - 1 : g.order();
    const auto dn_1 = bar_matrix(m, n - 1, normalized); // C^{n-1} -> C^n
    const auto dn = bar_matrix(m, n, normalized);       // C^n -> C^{n+1}
    const auto mn_1 = detail::ipow(base, n - 1) * k;
    const auto mn = detail::ipow(base, n) * k;
    const auto mn1 = detail::ipow(base, n + 1) * k;
    sparse_matrix out(static_cast<int>(mn + mn1), static_cast<int>(mn_1 + mn));
    for (int r = 0; r < dn_1.rows; ++r)
        for (auto& [c, v] : dn_1.entries[r])
            out.add(r, c, v);
    for (std::int64_t r = 0; r < mn; ++r)
        out.add(static_cast<int>(r), static_cast<int>(mn_1 + r), m.modulus(static_cast<int>(r % k)));
    for (int r = 0; r < dn.rows; ++r)
        for (auto& [c, v] : dn.entries[r]) {
            const auto dr = m.modulus(r % k);
            const auto dc = m.modulus(c % k);
            const auto scaled = static_cast<__int128>(v) * dc;
            out.add(static_cast<int>(mn + r), static_cast<int>(mn_1 + c), -static_cast<std::int64_t>(scaled / dr));
        }
    out.normalize();
    return out;
}

/// Marker for k^x coefficients (k algebraically closed, characteristic zero).
struct kx_t {};
inline constexpr kx_t kx{};

using coefficients = std::variant<kx_t, gmodule>;

/// H^n(G, Z) for n >= 1 from the integral normalized bar complex.
inline abelian_group integral_cohomology(const finite_group& g, int n, bool normalized = true)
{
    if (n <= 1 || g.order() == 1)
        return {};
    auto m = integral_bar_matrix(g, n - 1, normalized);
    return from_integers(cokernel_torsion(m));
}

namespace detail {

/// Per-prime view of a module: coordinates embedded into (Z/p^a)^k via x_i -> p^{a - a_i} x_i.
struct primary_part {
    std::int64_t p;
    int a;                  // v_p(exponent of M)
    std::vector<int> local; // a_i = v_p(d_i)
};

inline std::vector<primary_part> primary_parts(const gmodule& m)
{
    std::vector<primary_part> parts;
    if (m.dim() == 0)
        return parts;
    for (auto [p, a] : factorize(m.carrier().exponent())) {
        primary_part part{p, a, {}};
        for (int i = 0; i < m.dim(); ++i) {
            int v = 0;
            for (auto d = m.modulus(i); d % p == 0; d /= p)
                ++v;
            part.local.push_back(v);
        }
        parts.push_back(part);
    }
    return parts;
}

/// Rewrites an integer matrix between module coordinates into embedded p-local coordinates.
/// Rows whose target component has no p-part are dropped.
inline std::vector<std::vector<std::pair<int, std::int64_t>>> embed_rows(const sparse_matrix& a, const primary_part& part,
                                                                         const local_ring& ring, int k)
{
    std::vector<std::vector<std::pair<int, std::int64_t>>> rows;
    for (int r = 0; r < a.rows; ++r) {
        const int ai = part.local[r % k];
        if (ai == 0)
            continue;
        std::vector<std::pair<int, std::int64_t>> row;
        for (auto& [c, v] : a.entries[r]) {
            const int aj = part.local[c % k];
            if (aj == 0)
                continue;
            const std::int64_t e = aj >= ai ? v * ring.power(aj - ai) : v / ring.power(ai - aj);
            if (auto x = ring.reduce(e); x != 0)
                row.emplace_back(c, x);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<local_vector> embedded_generators(const primary_part& part, const local_ring& ring, int k,
                                                     std::int64_t count)
{
    std::vector<local_vector> gens;
    for (std::int64_t c = 0; c < count; ++c) {
        const int aj = part.local[c % k];
        if (aj == 0)
            continue;
        local_vector v(count, 0);
        v[c] = ring.power(part.a - aj);
        gens.push_back(std::move(v));
    }
    return gens;
}

/// Module coordinates of the element whose p-component has embedded coordinates y and whose
/// other primary components vanish.
inline std::vector<std::int64_t> lift_embedded(const gmodule& m, const primary_part& part, const local_ring& ring,
                                               const local_vector& y)
{
    const int k = m.dim();
    std::vector<std::int64_t> x(y.size(), 0);
    for (std::size_t c = 0; c < y.size(); ++c) {
        const int aj = part.local[c % k];
        if (aj == 0 || y[c] == 0)
            continue;
        const auto pa = ring.power(aj);
        const auto xp = (y[c] / ring.power(part.a - aj)) % pa;
        const auto d = m.modulus(static_cast<int>(c % k));
        const auto cofactor = d / pa;
        const auto inv = cofactor == 1 ? 0 : modular_ops::inverse(cofactor % pa, pa);
        x[c] = cofactor == 1 ? xp : static_cast<std::int64_t>(static_cast<__int128>(xp) * cofactor % d * inv % d);
    }
    return x;
}

} // namespace detail

namespace detail {

/// Full-length embedded images under a of embedded vectors; rows without p-part are zero.
inline std::vector<local_vector> embedded_images(const sparse_matrix& a, const primary_part& part, const local_ring& ring,
                                                 int k, const std::vector<local_vector>& xs)
{
    std::vector<int> kept;
    for (int r = 0; r < a.rows; ++r)
        if (part.local[r % k] > 0)
            kept.push_back(r);
    const auto rows = embed_rows(a, part, ring, k);
    std::vector<local_vector> out;
    for (const auto& x : xs) {
        local_vector y(a.rows, 0);
        for (std::size_t t = 0; t < kept.size(); ++t) {
            std::int64_t s = 0;
            for (auto& [c, v] : rows[t])
                if (x[c] != 0)
                    s = ring.add(s, ring.mul(v, x[c]));
            y[kept[t]] = s;
        }
        out.push_back(std::move(y));
    }
    return out;
}

inline int log_order(const local_basis_result& b) { return std::accumulate(b.orders.begin(), b.orders.end(), 0); }

/// p-part of H^n = Z^n / B^n, read off from log_p |p^j (Z/B)| = log_p |p^j Z + B| - log_p |B|.
inline std::vector<std::int64_t> primary_cohomology(const gmodule& m, int n, const primary_part& part)
{
    const auto& g = m.group();
    const int k = m.dim();
    const local_ring ring(part.p, part.a);
    const std::int64_t count = ipow(g.order() - 1, n) * k;
    auto cycles = local_kernel(ring, embedded_generators(part, ring, k, count), embed_rows(bar_matrix(m, n), part, ring, k));
    const auto z = local_basis(ring, std::move(cycles), static_cast<int>(count));
    const auto b = local_basis(
        ring, embedded_images(bar_matrix(m, n - 1), part, ring, k, embedded_generators(part, ring, k, ipow(g.order() - 1, n - 1) * k)),
        static_cast<int>(count));
    const int log_b = log_order(b);
    std::vector<int> sizes; // log_p |p^j H|, j = 0..a
    for (int j = 0; j <= part.a; ++j) {
        auto gens = b.basis;
        for (const auto& v : z.basis) {
            local_vector w(v.size());
            for (std::size_t c = 0; c < v.size(); ++c)
                w[c] = ring.mul(v[c], ring.power(j));
            gens.push_back(std::move(w));
        }
        sizes.push_back(log_order(local_basis(ring, std::move(gens), static_cast<int>(count))) - log_b);
    }
    std::vector<std::int64_t> powers;
    for (int t = 1; t <= part.a; ++t) {
        const int at_least_t = sizes[t - 1] - sizes[t];
        const int at_least_next = t < part.a ? sizes[t] - sizes[t + 1] : 0;
        for (int i = 0; i < at_least_t - at_least_next; ++i)
            powers.push_back(ring.power(t));
    }
    return powers;
}

} // namespace detail

/// H^n(G, coefficients), 1 <= n <= 3. k^x coefficients are computed as H^{n+1}(G, Z).
inline abelian_group cohomology_group(int n, const finite_group& g, const coefficients& coeffs,
                                      const cohomology_guards& guards = {})
{
    if (n < 1 || n > 3)
        throw error(errc::unsupported_parameter, "cohomology degree must be 1, 2 or 3");
    if (std::holds_alternative<kx_t>(coeffs)) {
        const int limit = n == 3 ? guards.kx_h3_max_order : guards.kx_max_order;
        if (g.order() > limit)
            throw error(errc::too_large, "H^" + std::to_string(n) + "(G, k^x) limited to |G| <= " + std::to_string(limit));
        return integral_cohomology(g, n + 1);
    }
    const auto& m = std::get<gmodule>(coeffs);
    if (!(m.group() == g))
        throw error(errc::coefficient_mismatch, "module is over a different group");
    if (m.dim() == 0 || g.order() == 1)
        return {};
    const auto dim = detail::ipow(g.order() - 1, n) * m.dim();
    if (dim > guards.max_cochain_dim)
        throw error(errc::too_large, "C^" + std::to_string(n) + "(G, M) has " + std::to_string(dim) + " coordinates");
    std::vector<std::int64_t> powers;
    for (const auto& part : detail::primary_parts(m))
        for (auto q : detail::primary_cohomology(m, n, part))
            powers.push_back(q);
    return from_primary_factors(powers);
}

/// H^n(G, k^x) through Smith forms over Z/p^e for each p dividing |G| (H^n is killed by |G|).
inline abelian_group cohomology_group_local(int n, const finite_group& g)
{
    if (g.order() == 1)
        return {};
    const auto m = integral_bar_matrix(g, n);
    std::vector<std::int64_t> powers;
    for (auto [p, e] : factorize(g.order()))
        for (int v : local_smith_valuations(m, p, e + 1))
            if (v > 0)
                powers.push_back(detail::ipow(p, v));
    return from_primary_factors(powers);
}

/// The action with entries lifted to (-d_i/2, d_i/2], if those lifts compose as an action over Z.
inline std::optional<gmodule> integral_lift(const gmodule& m)
{
    const auto& g = m.group();
    const int k = m.dim();
    std::vector<int_matrix> lifted;
    for (element x = 0; x < g.order(); ++x) {
        auto a = m.action(x);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                auto& v = a[i][j];
                v %= m.modulus(i);
                if (v < 0)
                    v += m.modulus(i);
                if (2 * v > m.modulus(i))
                    v -= m.modulus(i);
            }
        lifted.push_back(std::move(a));
    }
    for (element x = 0; x < g.order(); ++x)
        for (element y = 0; y < g.order(); ++y)
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    std::int64_t s = 0;
                    for (int t = 0; t < k; ++t)
                        s += lifted[x][i][t] * lifted[y][t][j];
                    if (s != lifted[g.mul(x, y)][i][j])
                        return std::nullopt;
                }
    return gmodule(g, m.carrier(), std::move(lifted));
}

/// H^n(G, M) as the torsion of the stacked relation/differential matrix over Z. Needs an
/// integral lift of the action, otherwise the stacked matrix is not a complex.
inline abelian_group cohomology_group_stacked(int n, const gmodule& m)
{
    if (m.dim() == 0 || m.group().order() == 1)
        return {};
    const auto lift = integral_lift(m);
    if (!lift)
        throw error(errc::unsupported_parameter, "the action does not lift to an action on Z^k");
    return from_integers(cokernel_torsion(total_complex_matrix(*lift, n)));
}

/// Crossed homomorphisms Z^1(G, M) = {f : f(gh) = f(g) + g.f(h)} with an independent basis:
/// basis[i] has order group.invariant_factors[i].
struct crossed_homomorphisms {
    abelian_group group;
    std::vector<module_cochain> basis;
};

inline crossed_homomorphisms reduced_h1(const finite_group& g, const gmodule& m)
{
    if (!(m.group() == g))
        throw error(errc::coefficient_mismatch, "module is over a different group");
    const int k = m.dim();
    crossed_homomorphisms out;
    if (k == 0 || g.order() == 1)
        return out;
    const auto d1 = bar_matrix(m, 1);
    const std::int64_t count = static_cast<std::int64_t>(g.order() - 1) * k;
    // (order, coordinates) per prime, orders descending
    std::vector<std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>>> per_prime;
    for (const auto& part : detail::primary_parts(m)) {
        const local_ring ring(part.p, part.a);
        auto gens = detail::embedded_generators(part, ring, k, count);
        gens = local_kernel(ring, std::move(gens), detail::embed_rows(d1, part, ring, k));
        auto basis = local_basis(ring, std::move(gens), static_cast<int>(count));
        std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> items;
        for (std::size_t i = 0; i < basis.basis.size(); ++i)
            if (basis.orders[i] > 0)
                items.emplace_back(ring.power(basis.orders[i]), detail::lift_embedded(m, part, ring, basis.basis[i]));
        std::reverse(items.begin(), items.end());
        per_prime.push_back(std::move(items));
    }
    std::size_t len = 0;
    for (auto& items : per_prime)
        len = std::max(len, items.size());
    std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> merged(len, {1, std::vector<std::int64_t>(count, 0)});
    for (auto& items : per_prime)
        for (std::size_t i = 0; i < items.size(); ++i) {
            merged[i].first *= items[i].first;
            for (std::int64_t c = 0; c < count; ++c)
                merged[i].second[c] += items[i].second[c];
        }
    std::reverse(merged.begin(), merged.end());
    for (auto& [order, coords] : merged) {
        out.group.invariant_factors.push_back(order);
        module_cochain f(m, 1);
        for (std::int64_t t = 0; t < f.size(); ++t)
            f.set_at(t, m.reduce(std::vector<std::int64_t>(coords.begin() + t * k, coords.begin() + (t + 1) * k)));
        out.basis.push_back(std::move(f));
    }
    return out;
}

/// Some c with dc = f at coefficient level mu_N (N defaults to m * |G|, m = lcm of the value
/// denominators), or nullopt if the class of f is nontrivial there.
inline std::optional<qz_cochain> coboundary_witness(const qz_cochain& f, std::optional<std::int64_t> level = std::nullopt)
{
    const auto& g = f.group();
    if (f.degree() < 1)
        throw error(errc::unsupported_parameter, "coboundary witness needs degree >= 1");
    if (auto chk = is_cocycle(f); !chk.holds)
        throw error(errc::not_a_cocycle, "cocycle identity fails");
    std::int64_t m = 1;
    for (const auto& v : f.values())
        m = std::lcm(m, v.den());
    const std::int64_t n = level.value_or(m * g.order());
    if (n % m != 0)
        throw error(errc::unsupported_parameter, "level " + std::to_string(n) + " is not a multiple of " + std::to_string(m));
    qz_cochain c(f.module(), f.degree() - 1);
    if (f.is_zero())
        return c;
    const auto a = integral_bar_matrix(g, f.degree() - 1);
    std::vector<std::int64_t> total(c.size(), 0);
    for (auto [p, e] : factorize(n)) {
        const local_ring ring(p, e);
        local_vector b(f.size());
        for (std::int64_t i = 0; i < f.size(); ++i)
            b[i] = ring.reduce(f.at(i).scaled(n));
        std::vector<local_vector> gens;
        for (std::int64_t i = 0; i < c.size(); ++i) {
            local_vector v(c.size(), 0);
            v[i] = 1;
            gens.push_back(std::move(v));
        }
        auto x = local_solve(ring, a, b, gens);
        if (!x)
            return std::nullopt;
        const auto q = ring.modulus();
        const auto cofactor = n / q;
        const auto lift = static_cast<__int128>(cofactor) * (cofactor == 1 ? 1 : detail::modular_ops::inverse(cofactor % q, q));
        for (std::int64_t i = 0; i < c.size(); ++i)
            total[i] = static_cast<std::int64_t>((static_cast<__int128>(total[i]) + lift % n * (*x)[i]) % n);
    }
    for (std::int64_t i = 0; i < c.size(); ++i)
        c.set_at(i, qz(total[i], n));
    if (!(differential(c) == f))
        throw std::logic_error("coboundary witness failed verification");
    return c;
}

/// Module-valued version: some c with dc = f in C^{n-1}(G, M), or nullopt.
inline std::optional<module_cochain> coboundary_witness(const module_cochain& f)
{
    const auto& m = f.module();
    if (f.degree() < 1)
        throw error(errc::unsupported_parameter, "coboundary witness needs degree >= 1");
    if (auto chk = is_cocycle(f); !chk.holds)
        throw error(errc::not_a_cocycle, "cocycle identity fails");
    module_cochain c(m, f.degree() - 1);
    if (f.is_zero())
        return c;
    const int k = m.dim();
    const auto a = bar_matrix(m, f.degree() - 1);
    const std::int64_t count = c.size() * k;
    std::vector<std::int64_t> total(count, 0);
    for (const auto& part : detail::primary_parts(m)) {
        const local_ring ring(part.p, part.a);
        sparse_matrix embedded(0, static_cast<int>(count));
        local_vector b;
        const auto rows = detail::embed_rows(a, part, ring, k);
        embedded.rows = static_cast<int>(rows.size());
        embedded.entries = rows;
        for (int r = 0; r < a.rows; ++r) {
            const int ai = part.local[r % k];
            if (ai == 0)
                continue;
            b.push_back(ring.mul(f.at(r / k)[r % k] % ring.power(ai), ring.power(part.a - ai)));
        }
        auto x = local_solve(ring, embedded, b, detail::embedded_generators(part, ring, k, count));
        if (!x)
            return std::nullopt;
        const auto lifted = detail::lift_embedded(m, part, ring, *x);
        for (std::int64_t i = 0; i < count; ++i)
            total[i] += lifted[i];
    }
    for (std::int64_t t = 0; t < c.size(); ++t)
        c.set_at(t, m.reduce(std::vector<std::int64_t>(total.begin() + t * k, total.begin() + (t + 1) * k)));
    if (!(differential(c) == f))
        throw std::logic_error("coboundary witness failed verification");
    return c;
}

} // namespace pivext
