#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "qz.hpp"

namespace pivext {

/// A linear character G -> Q/Z, stored by its value on every element.
class character {
public:
    character(finite_group domain, std::vector<qz> values) : domain_(std::move(domain)), values_(std::move(values))
    {
        const auto& g = domain_;
        if (static_cast<int>(values_.size()) != g.order())
            throw error(errc::not_a_character, "expected " + std::to_string(g.order()) + " values");
        for (element a = 0; a < g.order(); ++a)
            for (element b = 0; b < g.order(); ++b)
                if (values_[g.mul(a, b)] != values_[a] + values_[b])
                    throw error(errc::not_a_character, "value(" + g.label(a) + "*" + g.label(b) +
                                                           ") != value(" + g.label(a) + ") + value(" + g.label(b) + ")");
    }

    static character trivial(const finite_group& g) { return character(g, std::vector<qz>(g.order())); }

    /// Extends values on generators to a homomorphism; NotACharacter if no such homomorphism exists
    /// or the generators do not generate.
    static character from_generators(const finite_group& g, const std::vector<element>& gens, const std::vector<qz>& vals)
    {
        if (gens.size() != vals.size())
            throw error(errc::not_a_character, "got " + std::to_string(vals.size()) + " values for " +
                                                   std::to_string(gens.size()) + " generators");
        std::vector<qz> values(g.order());
        std::vector<char> seen(g.order(), 0);
        std::vector<element> queue{g.identity()};
        seen[g.identity()] = 1;
        for (std::size_t k = 0; k < queue.size(); ++k)
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const element b = g.mul(queue[k], gens[i]);
                if (!seen[b]) {
                    seen[b] = 1;
                    values[b] = values[queue[k]] + vals[i];
                    queue.push_back(b);
                }
            }
        if (static_cast<int>(queue.size()) != g.order())
            throw error(errc::not_a_character, "the given elements do not generate the group");
        return character(g, std::move(values));
    }

    const finite_group& domain() const noexcept { return domain_; }
    const std::vector<qz>& values() const noexcept { return values_; }
    qz operator()(element a) const { return values_[a]; }
    bool is_trivial() const
    {
        return std::all_of(values_.begin(), values_.end(), [](const qz& x) { return x.is_zero(); });
    }

    friend character operator+(const character& a, const character& b)
    {
        std::vector<qz> v(a.values_.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = a.values_[i] + b.values_[i];
        return character(a.domain_, std::move(v));
    }
    friend character operator-(const character& a, const character& b)
    {
        std::vector<qz> v(a.values_.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = a.values_[i] - b.values_[i];
        return character(a.domain_, std::move(v));
    }
    friend bool operator==(const character& a, const character& b)
    {
        return a.domain_ == b.domain_ && a.values_ == b.values_;
    }

private:
    finite_group domain_;
    std::vector<qz> values_;
};

/// Hom(A, Q/Z) for abelian A with the basis dual to the invariant-factor decomposition:
/// basis[j](structure.generators[i]) = delta_ij / d_i.
struct dual_group_data {
    abelian_structure structure; // of A
    abelian_group type;          // same invariant factors as A
    std::vector<character> basis;

    /// Value of the character with dual coordinates y at a.
    qz pairing(element a, const std::vector<std::int64_t>& y) const
    {
        qz s;
        for (std::size_t j = 0; j < y.size(); ++j)
            s += qz(structure.coords[a][j] * y[j], type.invariant_factors[j]);
        return s;
    }

    character from_coordinates(const finite_group& a, const std::vector<std::int64_t>& y) const
    {
        std::vector<qz> v(a.order());
        for (element x = 0; x < a.order(); ++x)
            v[x] = pairing(x, y);
        return character(a, std::move(v));
    }

    /// Dual coordinates y_j = chi(f_j) * d_j.
    std::vector<std::int64_t> coordinates(const character& chi) const
    {
        std::vector<std::int64_t> y;
        for (std::size_t j = 0; j < structure.generators.size(); ++j)
            y.push_back(chi(structure.generators[j]).scaled(type.invariant_factors[j]));
        return y;
    }

    /// All characters, in lexicographic order of dual coordinates.
    std::vector<character> all(const finite_group& a) const
    {
        std::vector<character> out;
        std::vector<std::int64_t> y(type.invariant_factors.size(), 0);
        for (;;) {
            out.push_back(from_coordinates(a, y));
            int i = static_cast<int>(y.size()) - 1;
            while (i >= 0 && ++y[i] == type.invariant_factors[i])
                y[i--] = 0;
            if (i < 0)
                break;
        }
        return out;
    }
};

inline dual_group_data dual_group(const finite_group& a)
{
    dual_group_data out{decompose_abelian(a), {}, {}};
    out.type = out.structure.type;
    for (std::size_t j = 0; j < out.type.invariant_factors.size(); ++j) {
        std::vector<std::int64_t> y(out.type.invariant_factors.size(), 0);
        y[j] = 1;
        out.basis.push_back(out.from_coordinates(a, y));
    }
    return out;
}

using int_matrix = std::vector<std::vector<std::int64_t>>;

/// A finite abelian group M = Z/d1 x ... x Z/dk with a left G-action by automorphisms.
/// action(g) is a k x k integer matrix acting on coordinate column vectors.
class gmodule {
public:
    using value_type = std::vector<std::int64_t>;

    gmodule(finite_group group, abelian_group carrier, std::vector<int_matrix> action)
        : group_(std::move(group)), carrier_(std::move(carrier)), action_(std::move(action))
    {
        validate();
    }

    static gmodule trivial(const finite_group& g, const abelian_group& carrier)
    {
        const auto k = carrier.invariant_factors.size();
        int_matrix id(k, std::vector<std::int64_t>(k, 0));
        for (std::size_t i = 0; i < k; ++i)
            id[i][i] = 1;
        return gmodule(g, carrier, std::vector<int_matrix>(g.order(), id));
    }

    const finite_group& group() const noexcept { return group_; }
    const abelian_group& carrier() const noexcept { return carrier_; }
    const int_matrix& action(element g) const { return action_[g]; }
    int dim() const noexcept { return static_cast<int>(carrier_.invariant_factors.size()); }
    std::int64_t modulus(int i) const { return carrier_.invariant_factors[i]; }

    value_type zero() const { return value_type(dim(), 0); }
    value_type reduce(value_type x) const
    {
        for (int i = 0; i < dim(); ++i) {
            x[i] %= modulus(i);
            if (x[i] < 0)
                x[i] += modulus(i);
        }
        return x;
    }
    value_type add(const value_type& a, const value_type& b) const
    {
        value_type r(dim());
        for (int i = 0; i < dim(); ++i)
            r[i] = (a[i] + b[i]) % modulus(i);
        return r;
    }
    value_type neg(const value_type& a) const
    {
        value_type r(dim());
        for (int i = 0; i < dim(); ++i)
            r[i] = (modulus(i) - a[i]) % modulus(i);
        return r;
    }
    value_type scale(std::int64_t k, const value_type& a) const
    {
        value_type r(dim());
        for (int i = 0; i < dim(); ++i)
            r[i] = static_cast<std::int64_t>(static_cast<__int128>(k) * a[i] % modulus(i));
        return reduce(std::move(r));
    }
    value_type act(element g, const value_type& a) const
    {
        value_type r(dim(), 0);
        for (int i = 0; i < dim(); ++i) {
            __int128 s = 0;
            for (int j = 0; j < dim(); ++j)
                s += static_cast<__int128>(action_[g][i][j]) * a[j];
            r[i] = static_cast<std::int64_t>(s % modulus(i));
        }
        return reduce(std::move(r));
    }
    bool is_zero(const value_type& a) const
    {
        return std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
    }
    bool is_trivial_action() const
    {
        for (element g = 0; g < group_.order(); ++g)
            for (int j = 0; j < dim(); ++j) {
                value_type e(dim(), 0);
                e[j] = 1;
                if (act(g, e) != e)
                    return false;
            }
        return true;
    }

    friend bool operator==(const gmodule& a, const gmodule& b)
    {
        if (!(a.group_ == b.group_ && a.carrier_ == b.carrier_))
            return false;
        for (element g = 0; g < a.group_.order(); ++g)
            for (int j = 0; j < a.dim(); ++j) {
                value_type e(a.dim(), 0);
                e[j] = 1;
                if (a.act(g, e) != b.act(g, e))
                    return false;
            }
        return true;
    }

private:
    void validate()
    {
        const auto& inv = carrier_.invariant_factors;
        for (std::size_t i = 0; i < inv.size(); ++i)
            if (inv[i] < 2 || (i + 1 < inv.size() && inv[i + 1] % inv[i] != 0))
                throw error(errc::invalid_module, "carrier factors must be >= 2 and form a divisibility chain");
        if (static_cast<int>(action_.size()) != group_.order())
            throw error(errc::invalid_module, "need one action matrix per group element");
        for (element g = 0; g < group_.order(); ++g) {
            if (static_cast<int>(action_[g].size()) != dim())
                throw error(errc::invalid_module, "action matrix of " + group_.label(g) + " has wrong shape");
            for (int i = 0; i < dim(); ++i) {
                if (static_cast<int>(action_[g][i].size()) != dim())
                    throw error(errc::invalid_module, "action matrix of " + group_.label(g) + " has wrong shape");
                for (int j = 0; j < dim(); ++j)
                    if (static_cast<__int128>(action_[g][i][j]) * modulus(j) % modulus(i) != 0)
                        throw error(errc::invalid_module, "action of " + group_.label(g) + " is not well defined at (" +
                                                              std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
        for (int j = 0; j < dim(); ++j) {
            value_type e(dim(), 0);
            e[j] = 1;
            if (act(group_.identity(), e) != e)
                throw error(errc::invalid_module, "identity does not act trivially");
            for (element g = 0; g < group_.order(); ++g)
                for (element h = 0; h < group_.order(); ++h)
                    if (act(g, act(h, e)) != act(group_.mul(g, h), e))
                        throw error(errc::invalid_module, "action(" + group_.label(g) + ")action(" + group_.label(h) +
                                                              ") != action(" + group_.label(group_.mul(g, h)) + ")");
        }
    }

    finite_group group_;
    abelian_group carrier_;
    std::vector<int_matrix> action_;
};

/// mu_N, the N-th roots of unity, as Z/N with trivial action.
inline gmodule mu_module(const finite_group& g, std::int64_t n)
{
    if (n < 1)
        throw error(errc::unsupported_parameter, "mu_N needs N >= 1");
    return gmodule::trivial(g, n == 1 ? abelian_group{} : abelian_group{{n}});
}

namespace detail {

inline void require_normal_abelian(const finite_group& d, const subgroup& c)
{
    require_normal(d, c);
    for (element a : c.members())
        for (element b : c.members())
            if (d.mul(a, b) != d.mul(b, a))
                throw error(errc::not_abelian, "subgroup elements " + d.label(a) + " and " + d.label(b) + " do not commute");
}

/// Matrix of chi -> chi(s(g)^-1 (-) s(g)) in the dual basis of C.
inline int_matrix dual_conjugation_matrix(const finite_group& d, const subgroup& c, const abelian_structure& st,
                                          element rep)
{
    const auto k = st.generators.size();
    int_matrix m(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
            const element fi = c.members()[st.generators[i]];
            const auto conj = c.position(d.conj(rep, fi));
            const qz value(st.coords[conj][j], st.type.invariant_factors[j]);
            m[i][j] = value.scaled(st.type.invariant_factors[i]);
        }
    return m;
}

/// Matrix of c -> s(g) c s(g)^-1 on generators of C.
inline int_matrix conjugation_matrix(const finite_group& d, const subgroup& c, const abelian_structure& st, element rep)
{
    const auto k = st.generators.size();
    int_matrix m(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t j = 0; j < k; ++j) {
        const element fj = c.members()[st.generators[j]];
        const auto img = c.position(d.mul(d.mul(rep, fj), d.inv(rep)));
        for (std::size_t i = 0; i < k; ++i)
            m[i][j] = st.coords[img][i];
    }
    return m;
}

} // namespace detail

/// Hom(C, Q/Z) as a module over G = D/C: (g.chi)(c) = chi(s(g)^-1 c s(g)), in the dual basis of C.
inline gmodule conj_character_module(const finite_group& d, const subgroup& c)
{
    detail::require_normal_abelian(d, c);
    const auto q = quotient_with_section(d, c);
    const auto st = decompose_abelian(c.as_group());
    std::vector<int_matrix> action;
    for (element x = 0; x < q.quotient.order(); ++x)
        action.push_back(detail::dual_conjugation_matrix(d, c, st, q.section[x]));
    return gmodule(q.quotient, st.type, std::move(action));
}

/// C x Hom(C, Q/Z) with the simultaneous conjugation action of G = D/C. Generators are
/// interleaved (f1, xi1, f2, xi2, ...) so the factors stay a divisibility chain.
inline gmodule inv_center_module(const finite_group& d, const subgroup& c)
{
    detail::require_normal_abelian(d, c);
    const auto q = quotient_with_section(d, c);
    const auto st = decompose_abelian(c.as_group());
    const auto k = st.generators.size();
    abelian_group carrier;
    for (auto f : st.type.invariant_factors) {
        carrier.invariant_factors.push_back(f);
        carrier.invariant_factors.push_back(f);
    }
    std::vector<int_matrix> action;
    for (element x = 0; x < q.quotient.order(); ++x) {
        const auto a = detail::conjugation_matrix(d, c, st, q.section[x]);
        const auto b = detail::dual_conjugation_matrix(d, c, st, q.section[x]);
        int_matrix m(2 * k, std::vector<std::int64_t>(2 * k, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                m[2 * i][2 * j] = a[i][j];
                m[2 * i + 1][2 * j + 1] = b[i][j];
            }
        action.push_back(std::move(m));
    }
    return gmodule(q.quotient, std::move(carrier), std::move(action));
}

} // namespace pivext
