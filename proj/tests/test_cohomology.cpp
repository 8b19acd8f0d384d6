#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "catalog.hpp"

using namespace pivext;

namespace {

finite_group named(const std::string& spec) { return resolve_standard(parse_group_spec(spec)); }

gmodule sign_module(const finite_group& d8, std::int64_t n)
{
    std::vector<int_matrix> action;
    for (element g = 0; g < d8.order(); ++g)
        action.push_back({{g % 2 == 0 ? 1 : n - 1}});
    return gmodule(d8, abelian_group{{n}}, action);
}

qz_cochain random_qz(const finite_group& g, int degree, std::int64_t den, std::mt19937& rng)
{
    qz_cochain c(qz_coefficients(g), degree);
    for (std::int64_t i = 0; i < c.size(); ++i)
        c.set_at(i, qz(static_cast<std::int64_t>(rng() % den), den));
    return c;
}

module_cochain random_module(const gmodule& m, int degree, std::mt19937& rng)
{
    module_cochain c(m, degree);
    for (std::int64_t i = 0; i < c.size(); ++i) {
        gmodule::value_type v(m.dim());
        for (int j = 0; j < m.dim(); ++j)
            v[j] = static_cast<std::int64_t>(rng() % m.modulus(j));
        c.set_at(i, v);
    }
    return c;
}

std::vector<gmodule> small_modules()
{
    std::vector<gmodule> out;
    for (const auto& [name, d] : catalog::groups(16, false))
        for (const auto& members : oracle::all_subgroups(d)) {
            if (!oracle::normal(d, members) || !oracle::commutative(d, members) || members.size() == 1)
                continue;
            subgroup c(d, members);
            if (d.order() / c.order() > 8)
                continue;
            out.push_back(conj_character_module(d, c));
            out.push_back(inv_center_module(d, c));
        }
    return out;
}

} // namespace

TEST(Differential, Examples)
{
    auto z2 = make_cyclic(2);
    qz_cochain chi(qz_coefficients(z2), 1);
    chi.set({1}, qz(1, 2));
    EXPECT_TRUE(differential(chi).is_zero());

    qz_cochain f(qz_coefficients(z2), 1);
    f.set({1}, qz(1, 4));
    const auto df = differential(f);
    EXPECT_EQ(df({1, 1}), qz(1, 2));

    auto d8 = make_dihedral(8);
    auto m = sign_module(d8, 4);
    module_cochain a(m, 0);
    a.set_at(0, {1});
    const auto da = differential(a);
    for (element g = 0; g < 8; ++g)
        EXPECT_EQ(da({g}), (gmodule::value_type{g % 2 == 0 ? 0 : 2}));
}

TEST(Differential, SquaresToZero)
{
    std::mt19937 rng(7);
    for (const char* spec : {"cyclic:3", "dihedral:8", "quaternion:8", "symmetric:3", "elementary_abelian:2,2"}) {
        const auto g = named(spec);
        for (int n = 0; n <= 2; ++n)
            for (int rep = 0; rep < 3; ++rep) {
                const auto c = random_qz(g, n, 12, rng);
                EXPECT_TRUE(differential(differential(c)).is_zero()) << spec << " degree " << n;
            }
    }
    const auto d8 = make_dihedral(8);
    const auto m = sign_module(d8, 4);
    for (int n = 0; n <= 2; ++n)
        for (int rep = 0; rep < 5; ++rep)
            EXPECT_TRUE(differential(differential(random_module(m, n, rng))).is_zero()) << n;
    for (const auto& mod : small_modules())
        EXPECT_TRUE(differential(differential(random_module(mod, 1, rng))).is_zero());
}

TEST(Differential, BarMatrixAgreesWithCochains)
{
    std::mt19937 rng(11);
    const auto d8 = make_dihedral(8);
    const auto m = inv_center_module(d8, generated_subgroup(d8, {*d8.find("r")}));
    for (int n = 0; n <= 2; ++n) {
        const auto c = random_module(m, n, rng);
        const auto a = bar_matrix(m, n);
        const auto dc = differential(c);
        std::vector<integer> x;
        for (const auto& v : c.values())
            for (auto e : v)
                x.push_back(e);
        for (int r = 0; r < a.rows; ++r) {
            integer s = 0;
            for (auto& [col, v] : a.entries[r])
                s += v * x[col];
            const auto k = m.dim();
            const auto d = m.modulus(r % k);
            auto want = static_cast<std::int64_t>(((s % d) + d) % d);
            EXPECT_EQ(want, dc.at(r / k)[r % k]);
        }
    }
}

TEST(IsCocycle, ReportsWitness)
{
    auto z3 = make_cyclic(3);
    qz_cochain f(qz_coefficients(z3), 2);
    f.set({1, 2}, qz(1, 3));
    const auto chk = is_cocycle(f);
    ASSERT_FALSE(chk.holds);
    EXPECT_FALSE(differential(f)(chk.witness).is_zero());
    qz_cochain zero(qz_coefficients(z3), 2);
    EXPECT_TRUE(is_cocycle(zero).holds);
}

TEST(CoboundaryWitness, CyclicTwo)
{
    auto z2 = make_cyclic(2);
    qz_cochain f(qz_coefficients(z2), 2);
    f.set({1, 1}, qz(1, 2));
    auto c = coboundary_witness(f);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(differential(*c), f);
    EXPECT_FALSE(coboundary_witness(f, 2).has_value());
    EXPECT_TRUE(coboundary_witness(f, 4).has_value());
    EXPECT_THROW(coboundary_witness(f, 3), error);
}

TEST(CoboundaryWitness, RejectsNonCocycles)
{
    auto z3 = make_cyclic(3);
    qz_cochain f(qz_coefficients(z3), 2);
    f.set({1, 2}, qz(1, 3));
    try {
        coboundary_witness(f);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_a_cocycle);
    }
}

TEST(CoboundaryWitness, RandomCoboundaries)
{
    std::mt19937 rng(3);
    for (const char* spec : {"cyclic:4", "dihedral:8", "quaternion:8", "symmetric:3", "product(cyclic:2,cyclic:4)"}) {
        const auto g = named(spec);
        for (int n = 1; n <= 2; ++n)
            for (int rep = 0; rep < 3; ++rep) {
                const auto f = differential(random_qz(g, n, 8, rng));
                auto c = coboundary_witness(f);
                ASSERT_TRUE(c.has_value()) << spec;
                EXPECT_EQ(differential(*c), f);
            }
    }
    for (const auto& m : small_modules())
        for (int n = 0; n <= 1; ++n) {
            const auto f = differential(random_module(m, n, rng));
            auto c = coboundary_witness(f);
            ASSERT_TRUE(c.has_value());
            EXPECT_EQ(differential(*c), f);
        }
}

TEST(CoboundaryWitness, NontrivialClassHasNone)
{
    // the generator of H^2(Z/2 x Z/2, Q/Z) = Z/2: f((a,b),(c,d)) = b c / 2
    auto v4 = make_elementary_abelian(2, 2);
    const auto st = decompose_abelian(v4);
    qz_cochain f(qz_coefficients(v4), 2);
    for (element x = 0; x < 4; ++x)
        for (element y = 0; y < 4; ++y)
            f.set({x, y}, qz(st.coords[x][1] * st.coords[y][0], 2));
    ASSERT_TRUE(is_cocycle(f).holds);
    EXPECT_FALSE(coboundary_witness(f).has_value());
    EXPECT_FALSE(coboundary_witness(f, 64).has_value());

    // a twisted module class: H^1(Z/2, Z/4 with sign action) = Z/2 generated by f(s) = 1
    const auto z2 = make_cyclic(2);
    const gmodule m(z2, abelian_group{{4}}, {{{1}}, {{3}}});
    module_cochain g(m, 1);
    g.set({1}, {1});
    ASSERT_TRUE(is_cocycle(g).holds);
    EXPECT_FALSE(coboundary_witness(g).has_value());
}

TEST(KxCohomology, Examples)
{
    auto h = [](int n, const char* spec) { return cohomology_group(n, named(spec), kx); };
    EXPECT_EQ(h(1, "cyclic:2"), (abelian_group{{2}}));
    EXPECT_EQ(h(2, "cyclic:2"), abelian_group{});
    EXPECT_EQ(h(3, "cyclic:2"), (abelian_group{{2}}));
    EXPECT_EQ(h(1, "quaternion:8"), (abelian_group{{2, 2}}));
    EXPECT_EQ(h(2, "quaternion:8"), abelian_group{});
    EXPECT_EQ(h(3, "quaternion:8"), (abelian_group{{8}}));
    EXPECT_EQ(h(2, "dihedral:8"), (abelian_group{{2}}));
    EXPECT_EQ(h(3, "dihedral:8"), (abelian_group{{2, 2, 4}}));
    EXPECT_EQ(h(2, "elementary_abelian:2,2"), (abelian_group{{2}}));
    EXPECT_EQ(h(3, "elementary_abelian:2,2"), (abelian_group{{2, 2, 2}}));
    EXPECT_EQ(h(1, "symmetric:3"), (abelian_group{{2}}));
    EXPECT_EQ(h(2, "symmetric:3"), abelian_group{});
    EXPECT_EQ(h(3, "symmetric:3"), (abelian_group{{6}}));
    EXPECT_EQ(h(3, "cyclic:5"), (abelian_group{{5}}));
    EXPECT_EQ(h(1, "cyclic:1"), abelian_group{});
}

TEST(KxCohomology, CyclicGroupsAreSchurTrivial)
{
    for (int n = 1; n <= 12; ++n) {
        const auto g = make_cyclic(n);
        EXPECT_TRUE(cohomology_group(2, g, kx).is_trivial()) << n;
        const auto h3 = cohomology_group(3, g, kx);
        EXPECT_EQ(h3.order(), n);
        EXPECT_LE(h3.rank(), 1);
    }
}

TEST(KxCohomology, EnumerationOracle)
{
    struct want {
        const char* spec;
        int n;
    };
    for (auto [spec, n] : {want{"cyclic:2", 1}, want{"cyclic:2", 2}, want{"cyclic:2", 3}, want{"cyclic:3", 1},
                           want{"cyclic:3", 2}, want{"cyclic:3", 3}, want{"cyclic:4", 1}, want{"cyclic:4", 2},
                           want{"elementary_abelian:2,2", 1}, want{"elementary_abelian:2,2", 2}}) {
        const auto g = named(spec);
        EXPECT_EQ(cohomology_group(n, g, kx).order(), oracle::kx_cohomology_order(g, n, g.order())) << spec << " " << n;
    }
}

TEST(KxCohomology, FirstGroupIsAbelianization)
{
    for (const auto& [name, g] : catalog::groups(32))
        EXPECT_EQ(cohomology_group(1, g, kx), abelianization(g).type) << name;
}

TEST(KxCohomology, KilledByGroupOrder)
{
    for (const auto& [name, g] : catalog::groups(12))
        for (int n = 1; n <= 3; ++n) {
            const auto h = cohomology_group(n, g, kx);
            EXPECT_EQ(g.order() % h.exponent(), 0) << name;
        }
}

TEST(KxCohomology, NormalizationDoesNotMatter)
{
    for (const auto& [name, g] : catalog::groups(8))
        for (int n = 2; n <= 4; ++n)
            EXPECT_EQ(integral_cohomology(g, n, true), integral_cohomology(g, n, false)) << name << " " << n;
}

TEST(KxCohomology, LocalRouteAgrees)
{
    for (const auto& [name, g] : catalog::groups(8))
        for (int n = 1; n <= 3; ++n)
            EXPECT_EQ(cohomology_group(n, g, kx), cohomology_group_local(n, g)) << name << " " << n;
    for (const char* spec : {"cyclic:12", "dihedral:12", "quaternion:12"})
        EXPECT_EQ(cohomology_group(3, named(spec), kx), cohomology_group_local(3, named(spec))) << spec;
}

TEST(ModuleCohomology, TrivialCoefficients)
{
    // H^1(G, Z/n) = Hom(G_ab, Z/n)
    for (const auto& [name, g] : catalog::groups(16))
        for (std::int64_t n : {2, 3, 4, 6}) {
            const auto m = gmodule::trivial(g, abelian_group{{n}});
            std::int64_t hom = 1;
            for (auto d : abelianization(g).type.invariant_factors)
                hom *= std::gcd(d, n);
            EXPECT_EQ(cohomology_group(1, g, m).order(), hom) << name << " " << n;
            if (std::pow(static_cast<double>(n), g.order() - 1.0) <= 3e4)
                EXPECT_EQ(hom, oracle::crossed_homomorphism_count(m)) << name << " " << n;
        }
    // H^2(Z/2, Z/2) = Z/2, H^2(Z/3, Z/2) = 0
    EXPECT_EQ(cohomology_group(2, make_cyclic(2), gmodule::trivial(make_cyclic(2), {{2}})), (abelian_group{{2}}));
    EXPECT_TRUE(cohomology_group(2, make_cyclic(3), gmodule::trivial(make_cyclic(3), {{2}})).is_trivial());
}

TEST(ModuleCohomology, TwistedExamples)
{
    const auto z2 = make_cyclic(2);
    const gmodule sign4(z2, abelian_group{{4}}, {{{1}}, {{3}}});
    EXPECT_EQ(cohomology_group(1, z2, sign4), (abelian_group{{2}}));
    EXPECT_EQ(cohomology_group(2, z2, sign4), (abelian_group{{2}}));
    const gmodule sign3(z2, abelian_group{{3}}, {{{1}}, {{2}}});
    EXPECT_TRUE(cohomology_group(1, z2, sign3).is_trivial());
    EXPECT_TRUE(cohomology_group(2, z2, sign3).is_trivial());
}

TEST(ModuleCohomology, EnumerationOracle)
{
    const auto z2 = make_cyclic(2);
    const auto z3 = make_cyclic(3);
    const auto v4 = make_elementary_abelian(2, 2);
    // Z/3 permuting the three nonzero vectors of (Z/2)^2
    const gmodule rotate(z3, abelian_group{{2, 2}}, {{{1, 0}, {0, 1}}, {{0, 1}, {1, 1}}, {{1, 1}, {1, 0}}});
    std::vector<gmodule> modules{gmodule(z2, abelian_group{{4}}, {{{1}}, {{3}}}),
                                 gmodule(z2, abelian_group{{3}}, {{{1}}, {{2}}}),
                                 gmodule(z2, abelian_group{{2, 2}}, {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}}),
                                 gmodule(z2, abelian_group{{6}}, {{{1}}, {{5}}}),
                                 gmodule::trivial(z3, abelian_group{{3}}),
                                 rotate,
                                 gmodule::trivial(v4, abelian_group{{2}})};
    for (const auto& m : modules)
        for (int n = 1; n <= 2; ++n) {
            if (std::pow(static_cast<double>(m.carrier().order()), std::pow(m.group().order() - 1.0, n)) > 3e5)
                continue;
            EXPECT_EQ(cohomology_group(n, m.group(), m).order(), oracle::module_cohomology_order(m, n))
                << m.carrier() << " degree " << n;
        }
}

TEST(ModuleCohomology, StackedRouteAgrees)
{
    int compared = 0;
    for (const auto& m : small_modules())
        for (int n = 1; n <= 2; ++n) {
            if (!integral_lift(m))
                continue;
            ++compared;
            EXPECT_EQ(cohomology_group(n, m.group(), m), cohomology_group_stacked(n, m)) << n;
        }
    EXPECT_GT(compared, 10);
    const auto z4 = make_cyclic(4);
    const gmodule twist(z4, abelian_group{{5}}, {{{1}}, {{2}}, {{4}}, {{3}}});
    EXPECT_FALSE(integral_lift(twist).has_value());
    EXPECT_THROW(cohomology_group_stacked(1, twist), error);
    EXPECT_TRUE(cohomology_group(1, z4, twist).is_trivial());
    EXPECT_TRUE(cohomology_group(2, z4, twist).is_trivial());
}

TEST(ModuleCohomology, RejectsMismatchedModule)
{
    EXPECT_THROW(cohomology_group(1, make_cyclic(3), gmodule::trivial(make_cyclic(2), {{2}})), error);
    EXPECT_THROW(reduced_h1(make_cyclic(3), gmodule::trivial(make_cyclic(2), {{2}})), error);
}

TEST(ReducedH1, MatchesEnumeration)
{
    for (const auto& m : small_modules()) {
        long total = 1;
        for (int i = 0; i < m.group().order() - 1; ++i)
            total *= m.carrier().order();
        if (total > 200000)
            continue;
        const auto z1 = reduced_h1(m.group(), m);
        EXPECT_EQ(z1.group.order(), oracle::crossed_homomorphism_count(m));
        ASSERT_EQ(z1.basis.size(), z1.group.invariant_factors.size());
        for (std::size_t i = 0; i < z1.basis.size(); ++i) {
            EXPECT_TRUE(is_cocycle(z1.basis[i]).holds);
            const auto d = z1.group.invariant_factors[i];
            for (auto [p, e] : factorize(d)) {
                module_cochain scaled(m, 1);
                for (std::int64_t t = 0; t < scaled.size(); ++t)
                    scaled.set_at(t, m.scale(d / p, z1.basis[i].at(t)));
                EXPECT_FALSE(scaled.is_zero()) << "basis element has order below " << d;
            }
        }
    }
}

TEST(Guards, TooLargeAndUnsupported)
{
    try {
        cohomology_group(3, make_cyclic(17), kx);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::too_large);
    }
    EXPECT_THROW(cohomology_group(2, make_cyclic(33), kx), error);
    try {
        cohomology_group(4, make_cyclic(2), kx);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::unsupported_parameter);
    }
    cohomology_guards tight;
    tight.max_cochain_dim = 10;
    const auto d8 = make_dihedral(8);
    EXPECT_THROW(cohomology_group(2, d8, sign_module(d8, 4), tight), error);
}

TEST(ReducedH1, Examples)
{
    const auto z2 = make_cyclic(2);
    const gmodule inversion(z2, abelian_group{{4}}, {{{1}}, {{3}}});
    const auto z = reduced_h1(z2, inversion);
    EXPECT_EQ(z.group, (abelian_group{{4}}));
    EXPECT_EQ(reduced_h1(z2, gmodule::trivial(z2, {{4}})).group, (abelian_group{{2}}));
    EXPECT_TRUE(reduced_h1(z2, gmodule::trivial(z2, {})).group.is_trivial());
    const auto s3 = make_symmetric(3);
    EXPECT_EQ(reduced_h1(s3, gmodule::trivial(s3, {{6}})).group, (abelian_group{{2}}));
}
