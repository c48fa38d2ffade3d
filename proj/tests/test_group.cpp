#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "qellr/group.hpp"
#include "qellr/qellr.hpp"

using namespace qellr;

TEST(Group, FamilySpecsHaveExpectedOrders) {
    EXPECT_EQ(group_from_spec("dihedral:4")->order(), 8);
    EXPECT_EQ(group_from_spec("symmetric:4")->order(), 24);
    EXPECT_EQ(quaternion_group()->order(), 8);
    EXPECT_EQ(split_graded(cyclic_group(3))->order(), 6);
    EXPECT_EQ(direct_product(cyclic_group(2), symmetric_group(3))->order(), 12);
    EXPECT_THROW(group_from_spec("nonsense:3"), std::invalid_argument);
}

TEST(Group, GradingAndKernel) {
    auto D = dihedral_group(5);
    EXPECT_TRUE(D->graded());
    EXPECT_EQ(D->kernel().size(), 5u);
    for (int a = 0; a < D->order(); ++a)
        for (int b = 0; b < D->order(); ++b) EXPECT_EQ(D->pi(D->mul(a, b)), D->pi(a) * D->pi(b));
    EXPECT_FALSE(ungraded(D)->graded());
    EXPECT_EQ(D->exponent(), 10);
}

TEST(Group, RejectsNonGroupTables) {
    // not associative-closed: identity row broken
    EXPECT_THROW(GradedGroup(2, {0, 1, 0, 0}, {1, 1}), std::invalid_argument);
    // grading that is not a homomorphism
    EXPECT_THROW(GradedGroup(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, {1, -1, -1}), std::invalid_argument);
}

TEST(Group, ClassCounts) {
    EXPECT_EQ(ordinary_classes(*symmetric_group(4)).count(), 5);
    EXPECT_EQ(ordinary_classes(*quaternion_group()).count(), 5);
    EXPECT_EQ(ordinary_classes(*dihedral_group(4)).count(), 5);
    EXPECT_EQ(kernel_classes(*dihedral_group(4)).count(), 4);
    // reflections invert rotations, so Real conjugation fixes every rotation
    for (int n = 2; n <= 6; ++n) {
        auto R = real_classes(*dihedral_group(n));
        EXPECT_EQ(R.count(), n);
        for (int c = 0; c < R.count(); ++c) EXPECT_EQ(R.sign[c], -1);
    }
}

TEST(Group, RealCentralizerIsStabilizer) {
    auto G = symmetric_group(3, true);
    for (int x : G->kernel()) {
        auto C = real_centralizer(*G, x);
        std::set<int> brute;
        for (int s = 0; s < G->order(); ++s)
            if (G->real_conj(s, x) == x) brute.insert(s);
        EXPECT_EQ(std::set<int>(C.begin(), C.end()), brute);
    }
}

TEST(Group, PairClassesCountOrbits) {
    // abelian kernel: every commuting pair is its own kernel class
    EXPECT_EQ(ordinary_pair_classes(*dihedral_group(4)).size(), 16u);
    // orbit sizes add up to the number of commuting pairs in the kernel
    auto G = symmetric_group(3, true);
    int total = 0;
    for (const auto& p : real_pair_classes(*G)) total += p.orbit_size;
    EXPECT_EQ(total, 3 * 3);  // kernel A3 is cyclic of order 3
}

TEST(Group, SubgroupsAndHomomorphisms) {
    EXPECT_EQ(all_subgroups(*ungraded(symmetric_group(3))).size(), 6u);
    EXPECT_EQ(all_subgroups(*ungraded(dihedral_group(4))).size(), 10u);
    EXPECT_EQ(homomorphisms_to_cyclic(*ungraded(symmetric_group(3)), 2).size(), 2u);
    EXPECT_EQ(homomorphisms_to_cyclic(*cyclic_group(6), 3).size(), 3u);
    auto D = dihedral_group(4);
    EXPECT_TRUE(is_normal(*D, D->kernel()));
}

TEST(Group, QuotientOrder) {
    auto D = dihedral_group(6);
    auto Q = quotient_group(D, D->kernel());
    EXPECT_EQ(Q.group->order(), 2);
}

TEST(Group, PermutationHelpers) {
    std::vector<int> a = {1, 2, 0, 4, 3};
    auto cyc = perm_cycles(a);
    ASSERT_EQ(cyc.size(), 2u);
    EXPECT_EQ(cyc[0], (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(cyc[1], (std::vector<int>{3, 4}));
    std::vector<int> id = {0, 1, 2, 3, 4};
    EXPECT_EQ(perm_compose(a, perm_inverse(a)), id);
    EXPECT_EQ(all_permutations(4).size(), 24u);
}

TEST(Group, WreathProductKeepsUniformGrading) {
    auto W = graded_wreath(dihedral_group(3), 2);
    EXPECT_EQ(W->group->order(), 2 * 9 * 2);
    auto Wp = graded_wreath(cyclic_group(3), 3);
    EXPECT_EQ(Wp->group->order(), 27 * 6);
    // (g;s)(h;t) = (g_i h_{s^-1(i)}; st)
    const auto& G = *W->base;
    for (int x = 0; x < W->group->order(); ++x)
        for (int y = 0; y < W->group->order(); ++y) {
            int z = W->group->mul(x, y);
            auto sinv = perm_inverse(W->perms[x]);
            for (int i = 0; i < 2; ++i)
                EXPECT_EQ(W->comps[z][i], G.mul(W->comps[x][i], W->comps[y][sinv[i]]));
            EXPECT_EQ(W->perms[z], perm_compose(W->perms[x], W->perms[y]));
        }
}

TEST(Group, GSets) {
    auto D = dihedral_group(4);
    auto H = make_subgroup(D, {0, 2});
    GSet X = induce_gset(H, point_gset(*H.group));
    EXPECT_EQ(X.size, 4);
    EXPECT_NO_THROW(validate_gset(*D, X));
}

TEST(Group, OrderBound) {
    ::setenv("QELLR_ORDER_BOUND", "10", 1);
    EXPECT_THROW(group_from_spec("symmetric:4"), OrderBoundExceeded);
    ::unsetenv("QELLR_ORDER_BOUND");
    EXPECT_NO_THROW(group_from_spec("symmetric:4"));
}
