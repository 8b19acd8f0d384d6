#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace pivext {

using integer = boost::multiprecision::cpp_int;

/// Row-major sparse integer matrix; each row is sorted by column with no zero entries.
struct sparse_matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> entries;

    sparse_matrix() = default;
    sparse_matrix(int r, int c) : rows(r), cols(c), entries(r) {}

    /// Adds v at (r, c); rows must be finalized with normalize() afterwards.
    void add(int r, int c, std::int64_t v) { entries[r].emplace_back(c, v); }

    void normalize()
    {
        for (auto& row : entries) {
            std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
            std::vector<std::pair<int, std::int64_t>> merged;
            for (auto& [c, v] : row) {
                if (!merged.empty() && merged.back().first == c)
                    merged.back().second += v;
                else
                    merged.emplace_back(c, v);
            }
            std::erase_if(merged, [](auto& e) { return e.second == 0; });
            row = std::move(merged);
        }
    }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (auto& r : entries)
            n += r.size();
        return n;
    }
};

namespace detail {

struct overflow : std::exception {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow{};
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw overflow{};
    return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow{};
    return r;
}
inline integer checked_mul(const integer& a, const integer& b) { return a * b; }
inline integer checked_sub(const integer& a, const integer& b) { return a - b; }
inline integer checked_add(const integer& a, const integer& b) { return a + b; }

inline std::int64_t abs_value(std::int64_t a) { return a < 0 ? -a : a; }
inline integer abs_value(const integer& a) { return boost::multiprecision::abs(a); }

/// Arithmetic policies for the sparse unit-pivot eliminator.
template <class Int>
struct integer_ops {
    using value_type = Int;
    bool is_unit(const Int& v) const { return abs_value(v) == 1; }
    /// a - f*b with f chosen so that the pivot column cancels.
    Int factor(const Int& entry, const Int& pivot) const { return checked_mul(entry, pivot); }
    Int sub_mul(const Int& a, const Int& f, const Int& b) const { return checked_sub(a, checked_mul(f, b)); }
};

struct modular_ops {
    using value_type = std::int64_t;
    std::int64_t p = 2;
    std::int64_t q = 2;

    static std::int64_t inverse(std::int64_t a, std::int64_t m)
    {
        std::int64_t g = m, x = 0, x1 = 1, r = ((a % m) + m) % m;
        while (r != 0) {
            const auto t = g / r;
            std::tie(g, r) = std::pair{r, g - t * r};
            std::tie(x, x1) = std::pair{x1, x - t * x1};
        }
        return ((x % m) + m) % m;
    }
    std::int64_t mul(std::int64_t a, std::int64_t b) const
    {
        return static_cast<std::int64_t>(static_cast<__int128>(a) * b % q);
    }
    bool is_unit(std::int64_t v) const { return v % p != 0; }
    std::int64_t factor(std::int64_t entry, std::int64_t pivot) const { return mul(entry, inverse(pivot, q)); }
    std::int64_t sub_mul(std::int64_t a, std::int64_t f, std::int64_t b) const
    {
        auto r = (a - mul(f, b)) % q;
        return r < 0 ? r + q : r;
    }
};

template <class Int>
using sparse_row = std::vector<std::pair<int, Int>>;

/// Repeatedly pivots on unit entries (Markowitz-style: sparsest row, then sparsest column),
/// each pivot splitting off a 1x1 unit block. Returns the number of pivots; `rows` keeps the
/// remaining block, which has no unit entries.
template <class Ops>
std::size_t eliminate_units(std::vector<sparse_row<typename Ops::value_type>>& rows, int cols, const Ops& ops)
{
    using Int = typename Ops::value_type;
    std::vector<std::vector<int>> col_rows(cols);
    std::vector<char> alive(rows.size(), 1);
    using item = std::pair<std::size_t, int>;
    std::priority_queue<item, std::vector<item>, std::greater<>> heap;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        for (auto& e : rows[r])
            col_rows[e.first].push_back(r);
        heap.emplace(rows[r].size(), r);
    }
    std::size_t pivots = 0;
    sparse_row<Int> merged;
    while (!heap.empty()) {
        const auto [nnz, r] = heap.top();
        heap.pop();
        if (!alive[r] || rows[r].size() != nnz)
            continue;
        if (nnz == 0) {
            alive[r] = 0;
            continue;
        }
        int best = -1;
        std::size_t best_count = 0;
        Int pivot{};
        for (auto& [c, v] : rows[r]) {
            if (ops.is_unit(v) && (best < 0 || col_rows[c].size() < best_count)) {
                best = c;
                best_count = col_rows[c].size();
                pivot = v;
            }
        }
        if (best < 0)
            continue;

        const auto& prow = rows[r];
        auto targets = std::move(col_rows[best]);
        col_rows[best].clear();
        for (int k : targets) {
            if (k == r || !alive[k])
                continue;
            auto& krow = rows[k];
            auto it = std::lower_bound(krow.begin(), krow.end(), best, [](auto& e, int c) { return e.first < c; });
            if (it == krow.end() || it->first != best)
                continue;
            const Int f = ops.factor(it->second, pivot);
            merged.clear();
            auto a = krow.begin();
            auto b = prow.begin();
            while (a != krow.end() || b != prow.end()) {
                if (b == prow.end() || (a != krow.end() && a->first < b->first)) {
                    merged.push_back(*a++);
                } else if (a == krow.end() || b->first < a->first) {
                    Int v = ops.sub_mul(Int{0}, f, b->second);
                    if (v != 0) {
                        merged.emplace_back(b->first, v);
                        col_rows[b->first].push_back(k);
                    }
                    ++b;
                } else {
                    Int v = ops.sub_mul(a->second, f, b->second);
                    if (v != 0)
                        merged.emplace_back(a->first, v);
                    ++a;
                    ++b;
                }
            }
            krow.swap(merged);
            heap.emplace(krow.size(), k);
        }
        alive[r] = 0;
        rows[r].clear();
        ++pivots;
    }
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!alive[r])
            rows[r].clear();
    std::erase_if(rows, [](auto& row) { return row.empty(); });
    return pivots;
}

/// Invariant factors of a dense matrix; pivots on the entry of least magnitude.
template <class Int>
std::vector<Int> dense_smith(std::vector<std::vector<Int>> a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<Int> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        auto bring_min = [&](bool whole) {
            std::size_t bi = rows, bj = cols;
            Int best{};
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (!whole && i != t && j != t)
                        continue;
                    if (a[i][j] != 0 && (bi == rows || abs_value(a[i][j]) < best)) {
                        best = abs_value(a[i][j]);
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == rows)
                return false;
            std::swap(a[t], a[bi]);
            for (auto& row : a)
                std::swap(row[t], row[bj]);
            return true;
        };
        if (!bring_min(true))
            break;
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                const Int q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    if (a[t][j] != 0)
                        a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                const Int q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    if (a[i][t] != 0)
                        a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
                if (a[t][j] != 0)
                    clean = false;
            }
            if (!clean) {
                bring_min(false);
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols && divides; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k)
                            a[t][k] = checked_add(a[t][k], a[i][k]);
                        divides = false;
                    }
            if (divides)
                break;
        }
        diag.push_back(abs_value(a[t][t]));
    }
    return diag;
}

template <class Int>
std::vector<integer> sparse_smith_impl(const sparse_matrix& m, std::size_t dense_limit)
{
    std::vector<sparse_row<Int>> rows(m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (auto& [c, v] : m.entries[r])
            rows[r].emplace_back(c, Int(v));
    const auto units = eliminate_units(rows, m.cols, integer_ops<Int>{});

    std::vector<int> col_index(m.cols, -1);
    int used = 0;
    for (auto& row : rows)
        for (auto& e : row)
            if (col_index[e.first] < 0)
                col_index[e.first] = used++;
    if (rows.size() * static_cast<std::size_t>(used) > dense_limit)
        throw error(errc::too_large, "Smith normal form remainder " + std::to_string(rows.size()) + "x" +
                                         std::to_string(used) + " exceeds the dense limit");
    std::vector<std::vector<Int>> dense(rows.size(), std::vector<Int>(used, Int{0}));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto& [c, v] : rows[r])
            dense[r][col_index[c]] = v;

    std::vector<integer> result(units, integer(1));
    for (auto& d : dense_smith(std::move(dense)))
        result.emplace_back(d);
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace detail

/// Nonzero invariant factors of an integer matrix (ascending, each divides the next).
/// Runs in checked 64-bit arithmetic and redoes the computation with arbitrary precision on overflow.
inline std::vector<integer> smith_invariants(const sparse_matrix& m, std::size_t dense_limit = 4'000'000)
{
    try {
        return detail::sparse_smith_impl<std::int64_t>(m, dense_limit);
    } catch (const detail::overflow&) {
        return detail::sparse_smith_impl<integer>(m, dense_limit);
    }
}

/// Invariant factors > 1 of the torsion subgroup of coker(m).
inline std::vector<integer> cokernel_torsion(const sparse_matrix& m, std::size_t dense_limit = 4'000'000)
{
    auto inv = smith_invariants(m, dense_limit);
    std::erase_if(inv, [](const integer& d) { return d == 1; });
    return inv;
}

/// Dense Smith form with the column transform V and its inverse: diag = U * A * V.
struct smith_transform {
    std::vector<integer> diagonal; // length min(rows, cols); zeros at the end
    std::vector<std::vector<integer>> v;
    std::vector<std::vector<integer>> v_inverse;
};

inline smith_transform smith_with_columns(std::vector<std::vector<integer>> a, int cols)
{
    const std::size_t rows = a.size();
    const auto c = static_cast<std::size_t>(cols);
    smith_transform out;
    out.v.assign(c, std::vector<integer>(c, 0));
    out.v_inverse = out.v;
    for (std::size_t i = 0; i < c; ++i)
        out.v[i][i] = out.v_inverse[i][i] = 1;

    auto swap_cols = [&](std::size_t x, std::size_t y) {
        if (x == y)
            return;
        for (auto& row : a)
            std::swap(row[x], row[y]);
        for (auto& row : out.v)
            std::swap(row[x], row[y]);
        std::swap(out.v_inverse[x], out.v_inverse[y]);
    };
    // col_j -= q * col_t
    auto col_op = [&](std::size_t j, std::size_t t, const integer& q) {
        for (auto& row : a)
            row[j] -= q * row[t];
        for (auto& row : out.v)
            row[j] -= q * row[t];
        for (std::size_t k = 0; k < c; ++k)
            out.v_inverse[t][k] += q * out.v_inverse[j][k];
    };

    for (std::size_t t = 0; t < std::min(rows, c); ++t) {
        auto bring_min = [&](bool whole) {
            std::size_t bi = rows, bj = c;
            integer best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (!whole && i != t && j != t)
                        continue;
                    if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < best)) {
                        best = abs(a[i][j]);
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == rows)
                return false;
            std::swap(a[t], a[bi]);
            swap_cols(t, bj);
            return true;
        };
        if (!bring_min(true))
            break;
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                const integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < c; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a[t][j] == 0)
                    continue;
                col_op(j, t, a[t][j] / a[t][t]);
                if (a[t][j] != 0)
                    clean = false;
            }
            if (!clean) {
                bring_min(false);
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < c && divides; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < c; ++k)
                            a[t][k] += a[i][k];
                        divides = false;
                    }
            if (divides)
                break;
        }
        if (a[t][t] < 0) {
            // negate column t
            for (auto& row : a)
                row[t] = -row[t];
            for (auto& row : out.v)
                row[t] = -row[t];
            for (auto& x : out.v_inverse[t])
                x = -x;
        }
    }
    out.diagonal.resize(std::min(rows, c));
    for (std::size_t t = 0; t < out.diagonal.size(); ++t)
        out.diagonal[t] = a[t][t];
    return out;
}

/// Linear algebra over the local ring Z/p^e.
class local_ring {
public:
    local_ring(std::int64_t p, int e) : p_(p), e_(e), q_(1)
    {
        for (int i = 0; i < e; ++i)
            q_ *= p;
    }

    std::int64_t p() const noexcept { return p_; }
    int exponent() const noexcept { return e_; }
    std::int64_t modulus() const noexcept { return q_; }

    std::int64_t reduce(std::int64_t a) const noexcept
    {
        a %= q_;
        return a < 0 ? a + q_ : a;
    }
    std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept
    {
        return static_cast<std::int64_t>(static_cast<__int128>(a) * b % q_);
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const noexcept { return (a + b) % q_; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept { return reduce(a - b); }
    /// p-adic valuation of a nonzero residue; e for zero.
    int valuation(std::int64_t a) const noexcept
    {
        if (a == 0)
            return e_;
        int v = 0;
        while (a % p_ == 0) {
            a /= p_;
            ++v;
        }
        return v;
    }
    std::int64_t power(int k) const noexcept
    {
        std::int64_t r = 1;
        for (int i = 0; i < k; ++i)
            r *= p_;
        return r;
    }
    std::int64_t unit_inverse(std::int64_t u) const { return detail::modular_ops::inverse(u, q_); }

    /// t with t * b = a, assuming valuation(a) >= valuation(b).
    std::int64_t divide(std::int64_t a, std::int64_t b) const
    {
        const int v = valuation(b);
        const auto pv = power(v);
        return mul(reduce(a) / pv, unit_inverse(b / pv));
    }

private:
    std::int64_t p_;
    int e_;
    std::int64_t q_;
};

using local_vector = std::vector<std::int64_t>;

/// Valuations (< e) of the nonzero Smith invariants of m over Z/p^e.
inline std::vector<int> local_smith_valuations(const sparse_matrix& m, std::int64_t p, int e)
{
    local_ring ring(p, e);
    std::vector<detail::sparse_row<std::int64_t>> rows(m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (auto& [c, v] : m.entries[r])
            if (auto x = ring.reduce(v); x != 0)
                rows[r].emplace_back(c, x);
    std::vector<int> valuations;
    std::int64_t q = ring.modulus();
    for (int level = 0; level < e && !rows.empty(); ++level) {
        const auto pivots = detail::eliminate_units(rows, m.cols, detail::modular_ops{p, q});
        valuations.insert(valuations.end(), pivots, level);
        q /= p;
        for (auto& row : rows) {
            for (auto& entry : row)
                entry.second = (entry.second / p) % q;
            std::erase_if(row, [](auto& entry) { return entry.second == 0; });
        }
        std::erase_if(rows, [](auto& row) { return row.empty(); });
    }
    return valuations;
}

/// Restricts the submodule spanned by `gens` (vectors over Z/p^e) to the common kernel of the
/// linear forms in `constraints`. Generator count never grows.
inline std::vector<local_vector> local_kernel(const local_ring& ring, std::vector<local_vector> gens,
                                              const std::vector<std::vector<std::pair<int, std::int64_t>>>& constraints)
{
    std::vector<std::int64_t> f(gens.size());
    for (const auto& row : constraints) {
        int best = -1;
        int best_val = ring.exponent();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            std::int64_t s = 0;
            for (auto& [c, v] : row)
                s = ring.add(s, ring.mul(ring.reduce(v), gens[i][c]));
            f[i] = s;
            if (s != 0 && ring.valuation(s) < best_val) {
                best_val = ring.valuation(s);
                best = static_cast<int>(i);
            }
        }
        if (best < 0)
            continue;
        const auto& pivot = gens[best];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (static_cast<int>(i) == best || f[i] == 0)
                continue;
            const auto t = ring.divide(f[i], f[best]);
            for (std::size_t c = 0; c < pivot.size(); ++c)
                if (pivot[c] != 0)
                    gens[i][c] = ring.sub(gens[i][c], ring.mul(t, pivot[c]));
        }
        const auto scale = ring.power(ring.exponent() - best_val);
        for (auto& x : gens[best])
            x = ring.mul(x, scale);
        std::erase_if(gens, [](const local_vector& g) { return std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; }); });
        f.resize(gens.size());
    }
    return gens;
}

/// An independent generating set of the submodule spanned by `gens`: element i has
/// additive order p^orders[i].
struct local_basis_result {
    std::vector<local_vector> basis;
    std::vector<int> orders; // exponents, ascending
};

inline local_basis_result local_basis(const local_ring& ring, std::vector<local_vector> gens, int dim)
{
    const std::size_t rows = gens.size();
    const auto cols = static_cast<std::size_t>(dim);
    std::vector<local_vector> v_inverse(cols, local_vector(cols, 0));
    for (std::size_t i = 0; i < cols; ++i)
        v_inverse[i][i] = 1;
    auto& a = gens;
    std::vector<std::int64_t> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        std::size_t bi = rows, bj = cols;
        int best = ring.exponent();
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && ring.valuation(a[i][j]) < best) {
                    best = ring.valuation(a[i][j]);
                    bi = i;
                    bj = j;
                }
        if (bi == rows)
            break;
        std::swap(a[t], a[bi]);
        if (bj != t) {
            for (auto& row : a)
                std::swap(row[t], row[bj]);
            std::swap(v_inverse[t], v_inverse[bj]);
        }
        const auto piv = a[t][t];
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (a[i][t] == 0)
                continue;
            const auto q = ring.divide(a[i][t], piv);
            for (std::size_t j = t; j < cols; ++j)
                a[i][j] = ring.sub(a[i][j], ring.mul(q, a[t][j]));
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (a[t][j] == 0)
                continue;
            const auto q = ring.divide(a[t][j], piv);
            // col_j -= q col_t  ==>  row_t of V^-1 += q row_j
            for (std::size_t i = t; i < rows; ++i)
                a[i][j] = ring.sub(a[i][j], ring.mul(q, a[i][t]));
            for (std::size_t k = 0; k < cols; ++k)
                v_inverse[t][k] = ring.add(v_inverse[t][k], ring.mul(q, v_inverse[j][k]));
        }
        diag.push_back(piv);
    }
    local_basis_result out;
    std::vector<std::pair<int, local_vector>> items;
    for (std::size_t t = 0; t < diag.size(); ++t) {
        local_vector b(cols);
        for (std::size_t k = 0; k < cols; ++k)
            b[k] = ring.mul(diag[t], v_inverse[t][k]);
        items.emplace_back(ring.exponent() - ring.valuation(diag[t]), std::move(b));
    }
    std::stable_sort(items.begin(), items.end(), [](auto& x, auto& y) { return x.first < y.first; });
    for (auto& [o, b] : items) {
        out.orders.push_back(o);
        out.basis.push_back(std::move(b));
    }
    return out;
}

/// Some x in the span of `var_gens` with A x = b over Z/p^e, if one exists.
inline std::optional<local_vector> local_solve(const local_ring& ring, const sparse_matrix& a, const local_vector& b,
                                               const std::vector<local_vector>& var_gens)
{
    const int n = a.cols;
    std::vector<local_vector> gens;
    for (const auto& g : var_gens) {
        auto x = g;
        x.push_back(0);
        gens.push_back(std::move(x));
    }
    local_vector t(n + 1, 0);
    t[n] = 1;
    gens.push_back(std::move(t));
    std::vector<std::vector<std::pair<int, std::int64_t>>> rows(a.rows);
    for (int r = 0; r < a.rows; ++r) {
        rows[r] = a.entries[r];
        if (b[r] != 0)
            rows[r].emplace_back(n, ring.reduce(-b[r]));
    }
    for (auto& g : local_kernel(ring, std::move(gens), rows)) {
        if (g[n] % ring.p() != 0) {
            const auto inv = ring.unit_inverse(g[n]);
            local_vector x(g.begin(), g.begin() + n);
            for (auto& v : x)
                v = ring.mul(v, inv);
            return x;
        }
    }
    return std::nullopt;
}

/// Prime factorization as (p, e) pairs, ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n)
{
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

} // namespace pivext
