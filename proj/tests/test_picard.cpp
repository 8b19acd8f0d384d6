#include <gtest/gtest.h>

#include "catalog.hpp"

using namespace pivext;

namespace {

finite_group named(const std::string& spec) { return resolve_standard(parse_group_spec(spec)); }

std::set<isometry> as_set(const std::vector<isometry>& v) { return {v.begin(), v.end()}; }

std::set<isometry> oracle_isometries(const quadratic_space& sp)
{
    return oracle::isometries(sp.carrier, sp.q, greedy_generators(sp.carrier));
}

} // namespace

TEST(Hyperbolic, Examples)
{
    const auto z2 = hyperbolic_space(make_cyclic(2));
    ASSERT_EQ(z2.space.carrier.order(), 4);
    auto q = z2.space.q;
    std::sort(q.begin(), q.end());
    EXPECT_EQ(q, (std::vector<qz>{qz(), qz(), qz(), qz(1, 2)}));
    EXPECT_NO_THROW(z2.space.validate());

    const auto z3 = hyperbolic_space(make_cyclic(3));
    ASSERT_EQ(z3.space.carrier.order(), 9);
    EXPECT_EQ(z3.space.q[*z3.space.carrier.find("1|1")], qz(1, 3));
    EXPECT_EQ(z3.space.q[*z3.space.carrier.find("2|1")], qz(2, 3));

    const auto one = hyperbolic_space(make_cyclic(1));
    EXPECT_EQ(one.space.carrier.order(), 1);
    EXPECT_EQ(one.space.q[0], qz());
}

TEST(Hyperbolic, Errors)
{
    EXPECT_THROW(hyperbolic_space(make_dihedral(8)), error);
    try {
        hyperbolic_space(make_cyclic(17));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::too_large);
    }
}

TEST(Hyperbolic, FormIsQuadraticOnCatalog)
{
    for (const auto& [name, a] : catalog::groups(8)) {
        if (!a.is_abelian())
            continue;
        const auto h = hyperbolic_space(a);
        EXPECT_NO_THROW(h.space.validate()) << name;
        // the polar form is the evaluation pairing, which is nondegenerate
        const auto& c = h.space.carrier;
        for (element x = 0; x < c.order(); ++x) {
            if (x == c.identity())
                continue;
            bool nonzero = false;
            for (element y = 0; y < c.order() && !nonzero; ++y)
                nonzero = !h.space.polar(x, y).is_zero();
            EXPECT_TRUE(nonzero) << name;
        }
    }
}

TEST(QuadraticSpace, RejectsBadForms)
{
    quadratic_space sp{make_cyclic(3), {qz(1, 3), qz(), qz()}};
    EXPECT_THROW(sp.validate(), error);
    quadratic_space cubic{make_cyclic(4), {qz(), qz(1, 8), qz(1, 2), qz(1, 2)}};
    EXPECT_THROW(cubic.validate(), error);
}

TEST(OrthogonalGroup, Orders)
{
    EXPECT_EQ(orthogonal_group(hyperbolic_space(make_cyclic(2)).space).size(), 2u);
    EXPECT_EQ(orthogonal_group(hyperbolic_space(make_cyclic(3)).space).size(), 4u);
    EXPECT_EQ(orthogonal_group(hyperbolic_space(make_elementary_abelian(2, 2)).space).size(), 72u);
}

TEST(OrthogonalGroup, MatchesScanningOracle)
{
    for (const char* spec : {"cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "elementary_abelian:2,2"}) {
        const auto sp = hyperbolic_space(named(spec)).space;
        const auto o = orthogonal_group(sp);
        EXPECT_EQ(as_set(o), oracle_isometries(sp)) << spec;
        EXPECT_TRUE(std::is_sorted(o.begin(), o.end()));
        for (const auto& alpha : o)
            for (element x = 0; x < sp.carrier.order(); ++x)
                EXPECT_EQ(sp.q[alpha[x]], sp.q[x]);
        isometry id(sp.carrier.order());
        std::iota(id.begin(), id.end(), 0);
        EXPECT_TRUE(as_set(o).contains(id));
    }
}

TEST(OrthogonalGroup, ElementaryTwoFastPath)
{
    // the split form of rank 6 over F_2 has orthogonal group S_8
    const auto o = orthogonal_group(hyperbolic_space(make_elementary_abelian(2, 3)).space);
    EXPECT_EQ(o.size(), 40320u);
}

TEST(OrthogonalGroup, Guards)
{
    const auto sp = hyperbolic_space(make_cyclic(5)).space;
    try {
        orthogonal_group(sp);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::too_large);
    }
    orthogonal_guards wide;
    wide.max_order = 25;
    EXPECT_EQ(orthogonal_group(sp, wide).size(), 8u);
}

TEST(ZPhi, Examples)
{
    const auto z2 = make_cyclic(2);
    const auto h2 = hyperbolic_space(z2);
    EXPECT_EQ(z_phi(h2, character::trivial(z2)), h2.space.carrier.identity());
    const auto phi = character::from_generators(z2, {1}, {qz(1, 2)});
    const auto z = z_phi(h2, phi);
    EXPECT_NE(z, h2.space.carrier.identity());
    EXPECT_EQ(h2.space.q[z], qz());

    const auto z4 = make_cyclic(4);
    const auto h4 = hyperbolic_space(z4);
    const auto z4phi = z_phi(h4, character::from_generators(z4, {1}, {qz(1, 4)}));
    EXPECT_EQ(h4.space.carrier.element_order(z4phi), 4);
    EXPECT_THROW(z_phi(h4, phi), error);
}

TEST(ZPhi, AlwaysIsotropicAndPairsLikePhi)
{
    for (const auto& [name, a] : catalog::groups(16)) {
        if (!a.is_abelian())
            continue;
        const auto h = hyperbolic_space(a);
        const int m = h.dual_order;
        for (const auto& phi : dual_group(a).all(a)) {
            const auto z = z_phi(h, phi);
            EXPECT_EQ(h.space.q[z], qz()) << name;
            // polar pairing with (a, 0) recovers phi(a)
            for (element x = 0; x < a.order(); ++x)
                EXPECT_EQ(h.space.polar(z, x * m), phi(x)) << name;
        }
    }
}

TEST(Stabilizer, Examples)
{
    const auto z2 = make_cyclic(2);
    const auto full = stabilizer_pivotal_image(z2, character::trivial(z2));
    EXPECT_EQ(full.order(), full.orthogonal_order);
    EXPECT_EQ(stabilizer_pivotal_image(z2, character::from_generators(z2, {1}, {qz(1, 2)})).order(), 1u);

    const auto v4 = make_elementary_abelian(2, 2);
    const auto all = stabilizer_pivotal_image(v4, character::trivial(v4));
    EXPECT_EQ(all.order(), 72u);
}

TEST(Stabilizer, MatchesBruteForceFixCount)
{
    for (const char* spec : {"cyclic:2", "cyclic:3", "cyclic:4", "elementary_abelian:2,2"}) {
        const auto a = named(spec);
        const auto h = hyperbolic_space(a);
        const auto scan = oracle_isometries(h.space);
        for (const auto& phi : dual_group(a).all(a)) {
            const auto r = stabilizer_pivotal_image(a, phi);
            const auto z = z_phi(h, phi);
            std::size_t fixed = 0;
            for (const auto& alpha : scan)
                fixed += alpha[z] == z;
            EXPECT_EQ(r.order(), fixed) << spec;
            EXPECT_EQ(r.orthogonal_order % r.order(), 0u);
            for (const auto& alpha : r.stabilizer)
                EXPECT_EQ(alpha[r.z], r.z);
        }
    }
}

TEST(Les, TrivialQuotient)
{
    const auto z4 = make_cyclic(4);
    const auto r = les_report(z4, generated_subgroup(z4, {1}));
    EXPECT_TRUE(r.h2.is_trivial());
    EXPECT_TRUE(r.h1_twisted.is_trivial());
    EXPECT_TRUE(r.h3.is_trivial());
    EXPECT_EQ(r.window_low, 1);
    EXPECT_EQ(r.window_high, 1);
}

TEST(Les, DihedralOverRotations)
{
    const auto d8 = make_dihedral(8);
    const auto c = generated_subgroup(d8, {*d8.find("r")});
    const auto r = les_report(d8, c);
    EXPECT_EQ(r.h2.order(), 1);
    EXPECT_EQ(r.h3.order(), 2);
    EXPECT_EQ(r.h1_twisted, (abelian_group{{4, 4}}));
    EXPECT_EQ(r.h1_twisted.order(), oracle::crossed_homomorphism_count(inv_center_module(d8, c)));
    EXPECT_EQ(r.window_low, 1);
    EXPECT_EQ(r.window_high, 16);
    EXPECT_FALSE(r.kernel_order.has_value());
}

TEST(Les, KleinFourTrivialModule)
{
    const auto v4 = make_elementary_abelian(2, 2);
    const auto r = les_report(gmodule::trivial(v4, {}));
    EXPECT_EQ(r.h2.order(), 2);
    EXPECT_EQ(r.window_low, 2);
    EXPECT_EQ(r.window_high, 2);
}

TEST(Les, FibonacciLikeWindowIsTrivial)
{
    for (int n = 1; n <= 8; ++n) {
        const auto g = make_cyclic(n);
        const auto r = les_report(gmodule::trivial(g, {}));
        EXPECT_EQ(r.window_low, 1) << n;
        EXPECT_EQ(r.window_high, 1) << n;
    }
    const auto r = les_report(gmodule::trivial(make_symmetric(3), {}));
    EXPECT_EQ(r.window_high, 1);
}

TEST(Les, ZeroAlphaKeepsEveryCrossedHomomorphism)
{
    const auto d8 = make_dihedral(8);
    const auto r = les_report(d8, generated_subgroup(d8, {*d8.find("r2")}), carrier_cocycle{});
    ASSERT_TRUE(r.kernel_order.has_value());
    EXPECT_EQ(*r.kernel_order, r.h1_twisted.order());
    EXPECT_EQ(r.window_high, r.h2.order() * r.h1_twisted.order());
}

TEST(Les, NontrivialAlphaCutsTheKernel)
{
    // alpha(x, y, z) = xyz / 2 on Z/2 pulls back along the identity to the generator of H^3(Z/2, k^x)
    const auto z2 = make_cyclic(2);
    carrier_cocycle alpha{{{gmodule::value_type{1}, gmodule::value_type{1}, gmodule::value_type{1}}, qz(1, 2)}};
    const auto r = les_report(gmodule::trivial(z2, {{2}}), alpha);
    EXPECT_EQ(r.h1_twisted.order(), 2);
    ASSERT_TRUE(r.kernel_order.has_value());
    EXPECT_EQ(*r.kernel_order, 1);
    EXPECT_EQ(r.window_high, 1);
}
