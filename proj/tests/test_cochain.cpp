#include <gtest/gtest.h>

#include <random>

#include "qellr/cochain.hpp"

using namespace qellr;

TEST(Cochain, DifferentialSquaresToZeroInLowDegrees) {
    std::mt19937_64 rng(7);
    for (auto G : {dihedral_group(3), dihedral_group(4), split_graded(cyclic_group(2))})
        for (bool tw : {false, true})
            for (int deg = 0; deg <= 2; ++deg) {
                Cochain c = random_cochain(G, deg, tw, 6, rng);
                Cochain dd = differential(differential(c));
                EXPECT_TRUE(equal(dd, zero_cochain(G, deg + 2, tw, 6))) << G->name() << " " << deg << " " << tw;
            }
}

TEST(Cochain, RandomCocyclesAreCocycles) {
    for (auto G : {dihedral_group(4), symmetric_group(3, true)})
        for (bool tw : {false, true}) {
            Cochain c = random_cocycle(G, 2, tw, 4, 11);
            EXPECT_TRUE(is_cocycle(c));
            EXPECT_TRUE(is_normalized(c));
            EXPECT_EQ(c.modulus(), 4);
        }
    EXPECT_TRUE(is_cocycle(random_cocycle(dihedral_group(4), 3, false, 4, 3)));
    // same seed, same cocycle
    EXPECT_TRUE(equal(random_cocycle(dihedral_group(4), 3, false, 4, 5), random_cocycle(dihedral_group(4), 3, false, 4, 5)));
}

TEST(Cochain, CoboundaryShiftIsCohomologous) {
    auto G = dihedral_group(4);
    std::mt19937_64 rng(3);
    Cochain a = random_cocycle(G, 2, true, 4, 9);
    Cochain b = random_cochain(G, 1, true, 4, rng);
    Cochain shifted = add(a, differential(b));
    auto gamma = cohomologous(shifted, a);
    ASSERT_TRUE(gamma.has_value());
    EXPECT_TRUE(equal(differential(*gamma), add(shifted, negate(a))));
}

TEST(Cochain, LinearOperations) {
    auto G = dihedral_group(3);
    std::mt19937_64 rng(1);
    Cochain a = random_cochain(G, 2, false, 5, rng);
    EXPECT_TRUE(equal(add(a, negate(a)), zero_cochain(G, 2, false, 5)));
    EXPECT_TRUE(equal(scale(a, 2), add(a, a)));
    EXPECT_TRUE(equal(scale(a, 5), zero_cochain(G, 2, false, 5)));
    EXPECT_EQ(a.with_modulus(10)({1, 2}), 2 * a({1, 2}));
}

TEST(Cochain, ExtensionOfZ2ByNontrivialClassIsZ4) {
    auto G = cyclic_group(2);
    // theta(1,1) = 1/2
    Cochain th(G, 2, false, 2, std::vector<int64_t>{0, 0, 0, 1});
    ASSERT_TRUE(is_cocycle(th));
    auto E = central_extension(th);
    EXPECT_EQ(E->group->order(), 4);
    EXPECT_EQ(E->group->elem_order(E->encode(1, 0)), 4);
    auto E0 = central_extension(zero_cochain(G, 2, false, 2));
    for (int x = 0; x < 4; ++x) EXPECT_LE(E0->group->elem_order(x), 2);
}

TEST(Cochain, ExtensionFollowsTheDisplayedLaw) {
    auto G = dihedral_group(3);
    Cochain th = random_cocycle(G, 2, true, 4, 21);
    auto E = central_extension(th);
    const auto& H = *E->group;
    EXPECT_EQ(H.order(), 24);
    for (int w2 = 0; w2 < G->order(); ++w2)
        for (int w1 = 0; w1 < G->order(); ++w1)
            for (int z2 = 0; z2 < 4; ++z2)
                for (int z1 = 0; z1 < 4; ++z1) {
                    int e = H.mul(E->encode(w2, z2), E->encode(w1, z1));
                    EXPECT_EQ(e, E->encode(G->mul(w2, w1), th({w2, w1}) + z2 + G->pi(w2) * z1));
                }
    // the grading pulls back along the projection
    for (int e = 0; e < H.order(); ++e) EXPECT_EQ(H.pi(e), G->pi(E->base_of(e)));
}

TEST(Cochain, RestrictionAndPullback) {
    auto G = dihedral_group(4);
    Cochain a = random_cocycle(G, 3, false, 4, 2);
    auto K = make_subgroup(G, G->kernel());
    Cochain r = restrict_to(a, K);
    EXPECT_TRUE(is_cocycle(r));
    for (int x = 0; x < K.group->order(); ++x)
        for (int y = 0; y < K.group->order(); ++y)
            EXPECT_EQ(r({x, y, 0}), a({K.to_parent[x], K.to_parent[y], K.to_parent[0]}));
}
