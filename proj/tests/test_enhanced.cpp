#include <gtest/gtest.h>

#include <set>

#include "qellr/enhanced.hpp"

using namespace qellr;

TEST(EnhancedModel, OrdersAndRelation) {
    auto D8 = dihedral_group(4);
    auto triv = enhanced_model(D8, 0, 1);
    EXPECT_EQ(triv.group->order(), 8);
    EXPECT_EQ(triv.group->table(), D8->table());
    auto M = enhanced_model(D8, 1, 4);
    EXPECT_EQ(M.group->order(), 8);
    EXPECT_TRUE(M.group->graded());
    EXPECT_TRUE(check_real_central(M));
    auto M8 = enhanced_model(D8, 1, 8);
    EXPECT_EQ(M8.group->order(), 16);
    EXPECT_THROW(enhanced_model(D8, 1, 6), std::invalid_argument);
    EXPECT_THROW(enhanced_model(D8, 4, 2), std::invalid_argument);
    // r^2 is central: C^R(r^2) = D8, order 2
    auto M2 = enhanced_model(D8, 2, 6);
    EXPECT_EQ(M2.group->order(), 6 * 8 / 2);
}

TEST(EnhancedModel, TwistedOrderAndRealCentral) {
    auto D8 = dihedral_group(4);
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        Cochain a = random_cocycle(D8, 3, false, 4, seed);
        for (int g : {1, 2, 3}) {
            auto M = enhanced_model(D8, g, 2 * D8->elem_order(g), &a);
            int64_t cr = static_cast<int64_t>(real_centralizer(*D8, g).size());
            EXPECT_EQ(M.group->order(), 2 * cr * 4);
            EXPECT_TRUE(check_real_central(M));
            EXPECT_TRUE(check_o2_kernel(M));
        }
    }
}

TEST(EnhancedModel, LevelFunctoriality) {
    auto D8 = dihedral_group(4);
    Cochain a = random_cocycle(D8, 3, false, 2, 7);
    auto A = enhanced_model(D8, 1, 4, &a);
    auto B = enhanced_model(D8, 1, 8, &a);
    EXPECT_TRUE(check_level_embedding(A, B));
    EXPECT_FALSE(check_level_embedding(B, A));
}

TEST(EnhancedModel, CyclicIrrepsMatchRotationConstraint) {
    for (int n : {2, 3, 4, 6}) {
        auto Zn = cyclic_group(n);
        for (int m = 0; m < n; ++m)
            for (int k : {1, 2}) {
                int L = n * k;
                auto M = enhanced_model(Zn, m, L, nullptr, false);
                auto irr = model_irreps(M);
                EXPECT_EQ(static_cast<int>(irr.size()), M.d * n);
                auto TE = twisted_irreps(M.ext);
                std::set<std::pair<int, Rational>> seen;
                for (const auto& r : irr) {
                    EXPECT_EQ(r.degree, 1);
                    int j = -1;
                    for (int t = 0; t < n; ++t)
                        if (TE.value(r.rho, M.ext->encode(1 % n, 0)) == Cyc::zeta(n, t)) j = t;
                    ASSERT_GE(j, 0);
                    EXPECT_TRUE((r.lambda - Rational(m * j, n)).frac() == Rational(0));
                    EXPECT_TRUE(r.lambda >= Rational(0) && r.lambda < Rational(M.d));
                    seen.insert({r.rho, r.lambda});
                }
                EXPECT_EQ(seen.size(), irr.size());
            }
    }
}

TEST(EnhancedModel, DihedralModelsAreReal) {
    for (int n : {3, 4, 5}) {
        auto D = dihedral_group(n);
        for (int j = 0; j < n; ++j) {
            auto M = enhanced_model(D, j, D->elem_order(j));
            for (const auto& r : model_irreps(M)) EXPECT_EQ(r.indicator, 1);
        }
    }
}

TEST(EnhancedModel, IgIsomorphism) {
    auto G = group_from_spec("product(symmetric:3,cyclic_graded:6)");
    ASSERT_EQ(G->order(), 36);
    int w = -1;
    for (int x = 0; x < G->order() && w < 0; ++x)
        if (G->odd(x)) w = x;
    Cochain zero = zero_cochain(G, 3, false, 3);
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        Cochain a = seed == 1 ? zero : random_cocycle(G, 3, false, 3, seed);
        int tested = 0;
        for (int g = 0; g < G->order(); ++g) {
            if (G->odd(g)) continue;
            bool plus = true;
            for (int s : real_centralizer(*G, g)) plus = plus && !G->odd(s);
            if (!plus) {
                EXPECT_THROW(i_g_isomorphism(a, g, w, G->elem_order(g)), std::invalid_argument);
                continue;
            }
            auto R = i_g_isomorphism(a, g, w, 2 * G->elem_order(g));
            EXPECT_TRUE(R.ok()) << "g=" << g;
            if (seed == 1) EXPECT_EQ(R.lift_shift, 0);
            ++tested;
        }
        EXPECT_GT(tested, 0);
    }
}
