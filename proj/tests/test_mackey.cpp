#include <gtest/gtest.h>

#include "qellr/enhanced.hpp"
#include "qellr/mackey.hpp"
#include "qellr/transgression.hpp"

using namespace qellr;

namespace {

std::vector<int> central_involutions(const GradedGroup& G) {
    std::vector<int> out;
    for (int x = 0; x < G.order(); ++x) {
        if (G.odd(x) || G.mul(x, x) != 0) continue;
        bool central = true;
        for (int y = 0; y < G.order() && central; ++y) central = G.commute(x, y);
        if (central) out.push_back(x);
    }
    return out;
}

void expect_counts(const MackeyData& D) {
    int64_t members = 0, over = 0;
    for (const auto& o : D.orbits) {
        members += static_cast<int64_t>(o.members.size());
        over += o.count_over;
        ASSERT_TRUE(o.nu.has_value());
        EXPECT_EQ(o.count_nu, o.count_over);
    }
    EXPECT_EQ(members, D.irreps_h.count());
    EXPECT_EQ(over, D.count_total);
    EXPECT_TRUE(D.identity_holds());
}

}  // namespace

TEST(Mackey, SplitCyclicPairsConjugates) {
    for (int m = 1; m <= 6; ++m) {
        auto G = group_from_spec("split(cyclic:" + std::to_string(m) + ")");
        std::vector<int> H;
        for (int x = 0; x < m; ++x) H.push_back(x);
        auto D = mackey_decompose(G, H);
        // odd elements act by complex conjugation
        EXPECT_EQ(static_cast<int>(D.orbits.size()), m / 2 + 1);
        expect_counts(D);
    }
}

TEST(Mackey, DihedralRotationSubgroup) {
    auto D8 = group_from_spec("ungraded(dihedral:4)");
    auto D = mackey_decompose(D8, {0, 1, 2, 3});
    EXPECT_EQ(D.orbits.size(), 3u);
    std::vector<size_t> sizes;
    for (const auto& o : D.orbits) sizes.push_back(o.members.size());
    EXPECT_EQ(sizes, (std::vector<size_t>{1, 2, 1}));
    expect_counts(D);
    EXPECT_EQ(D.count_total, 5);

    auto Dg = mackey_decompose(dihedral_group(4), {0, 1, 2, 3});
    EXPECT_EQ(Dg.orbits.size(), 4u);
    expect_counts(Dg);
}

TEST(Mackey, CentralSubgroups) {
    for (const char* spec : {"ungraded(dihedral:4)", "dihedral:4", "split(quaternion:8)", "quaternion:8"}) {
        auto G = group_from_spec(spec);
        auto D = mackey_decompose(G, central_involutions(*G));
        expect_counts(D);
    }
}

TEST(Mackey, TwistedDihedral) {
    auto D8 = dihedral_group(4);
    for (uint64_t seed = 1; seed <= 4; ++seed)
        for (int64_t m : {2, 4}) {
            Cochain th = random_cocycle(D8, 2, true, m, seed);
            expect_counts(mackey_decompose(D8, {0, 1, 2, 3}, &th));
            expect_counts(mackey_decompose(D8, {0, 2}, &th));
        }
}

TEST(Mackey, RotationSubgroupGivesTransgressedCocycle) {
    auto D8 = dihedral_group(4);
    Cochain a = random_cocycle(D8, 3, false, 4, 3);
    int g = 1, L = 8;
    auto tau = real_transgress(a).materialized();
    Subgroup C = make_subgroup(D8, real_centralizer(*D8, g));
    Cochain th = component(tau, g, C);
    const GradedGroup& CR = *C.group;
    int n = CR.order(), N = L * n;
    std::vector<int> table(static_cast<size_t>(N) * N), pi(N);
    for (int x = 0; x < N; ++x) {
        pi[x] = CR.pi(x / L);
        for (int y = 0; y < N; ++y) {
            int k = static_cast<int>(mod(x % L + CR.pi(x / L) * (y % L), L));
            table[static_cast<size_t>(x) * N + y] = k + L * CR.mul(x / L, y / L);
        }
    }
    auto G = std::make_shared<GradedGroup>(N, std::move(table), std::move(pi), "Z_L x| C^R(g)");
    std::vector<int> proj(N), H;
    for (int x = 0; x < N; ++x) proj[x] = x / L;
    for (int k = 0; k < L; ++k) H.push_back(k);
    Cochain thG = pullback(th, G, proj);
    auto D = mackey_decompose(G, H, &thG);
    EXPECT_EQ(static_cast<int>(D.orbits.size()), L);
    for (const auto& o : D.orbits) {
        ASSERT_EQ(o.members.size(), 1u);
        const Quotient& Q = o.quotient;
        Subgroup S = make_subgroup(G, o.stabilizer);
        int64_t scale = o.nu_modulus / th.modulus();
        for (int q1 = 0; q1 < Q.group->order(); ++q1)
            for (int q2 = 0; q2 < Q.group->order(); ++q2) {
                int c1 = S.to_parent[Q.section[q1]] / L, c2 = S.to_parent[Q.section[q2]] / L;
                EXPECT_EQ((*o.nu)({q1, q2}), mod(th({c1, c2}) * scale, o.nu_modulus));
            }
    }
    expect_counts(D);
}
