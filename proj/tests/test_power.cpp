#include <gtest/gtest.h>

#include <set>

#include "qellr/chartable.hpp"
#include "qellr/power.hpp"

using namespace qellr;

namespace {

// Regular representation of ker pi plus its linear characters when abelian; zero on odd elements.
std::vector<CycMatrix> test_representation(const GroupPtr& G) {
    auto K = make_subgroup(G, G->kernel());
    auto T = character_table(K.group);
    std::vector<int> lin;
    for (int r = 0; r < T->count(); ++r)
        if (T->degree(r) == 1) lin.push_back(r);
    int k = K.group->order();
    size_t d = k + lin.size();
    std::vector<CycMatrix> rho(G->order(), CycMatrix(d, std::vector<Cyc>(d, Cyc(0))));
    for (int g = 0; g < G->order(); ++g) {
        int gk = K.from_parent[g];
        if (gk < 0) continue;
        for (int b = 0; b < k; ++b) rho[g][K.group->mul(gk, b)][b] = Cyc(1);
        for (size_t i = 0; i < lin.size(); ++i) rho[g][k + i][k + i] = T->value(lin[i], gk);
    }
    return rho;
}

std::vector<Cyc> trace_of(const std::vector<CycMatrix>& rho) {
    std::vector<Cyc> chi;
    for (const auto& A : rho) {
        Cyc t(0);
        for (size_t i = 0; i < A.size(); ++i) t += A[i][i];
        chi.push_back(t);
    }
    return chi;
}

int identity_component(const QEllRSpace& S) {
    for (size_t i = 0; i < S.comps.size(); ++i)
        if (S.comps[i].g == 0) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST(Power, TwistIdentitiesOnD4) {
    auto D4 = dihedral_group(2);
    std::mt19937_64 rng(11);
    auto a = random_cochain(D4, 3, true, 4, rng);
    auto b = random_cochain(D4, 3, true, 4, rng);
    for (int M = 0; M <= 2; ++M)
        for (int N = 0; N <= 2; ++N) {
            auto r = verify_twist_identities(a, b, M, N);
            EXPECT_TRUE(r.all()) << M << " " << N;
            EXPECT_TRUE(r.exhaustive);
        }
    auto bad = verify_twist_identities(a, b, 2, 2, BlockEmbedding::Mutated);
    EXPECT_FALSE(bad.composite && bad.embedding_hom);
}

TEST(Power, CochainMapOnDihedral6) {
    auto D6 = dihedral_group(3);
    std::mt19937_64 rng(5);
    auto W = graded_wreath(D6, 2);
    for (int t = 0; t < 3; ++t) {
        auto a = random_cochain(D6, 2, true, 6, rng);
        EXPECT_TRUE(equal(differential(wreath_twist(a, W)), wreath_twist(differential(a), W)));
    }
    auto a = random_cochain(D6, 2, true, 6, rng);
    auto W1 = graded_wreath(D6, 1);
    std::vector<int> first(W1->group->order());
    for (int w = 0; w < W1->group->order(); ++w) first[w] = W1->comps[w][0];
    EXPECT_TRUE(equal(wreath_twist(a, W1).materialized(), pullback(a, W1->group, first)));
}

TEST(Power, BetaCoefficientsLandInTransporters) {
    auto W = graded_wreath(dihedral_group(2), 3);
    const GradedGroup& G = *W->group;
    int count = 0;
    for (int e = 0; e < G.order(); ++e) {
        if (G.odd(e)) continue;
        for (int h = 0; h < G.order(); ++h) {
            if (G.real_conj(h, e) != e) continue;
            for (const auto& b : beta_coefficients(*W, e, h)) {
                EXPECT_TRUE(b.in_transporter);
                EXPECT_TRUE(b.grade_ok);
                EXPECT_EQ(b.value, b.alternative);
                ++count;
            }
        }
    }
    EXPECT_EQ(count, 2112);
    // trivial element: beta is the component of h itself
    auto K = dihedral_group(2)->kernel();
    int e = W->index_of({K[1], K[0], K[1]}, {0, 1, 2});
    ASSERT_GE(e, 0);
    auto bs = beta_coefficients(*W, 0, e);
    ASSERT_EQ(bs.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(bs[i].value, W->comps[e][i]);
}

TEST(Power, CycleDataMatchesRealClasses) {
    for (auto [spec, N] : std::vector<std::pair<std::string, int>>{{"dihedral:2", 3}, {"cyclic_graded:2", 4},
                                                                    {"dihedral:3", 2}, {"split(cyclic:3)", 2}}) {
        auto G = group_from_spec(spec);
        auto W = graded_wreath(G, N);
        ClassData base = kernel_classes(*G);
        ClassData rc = real_classes(*W->group);
        std::set<std::vector<std::pair<int, int>>> invariants;
        for (int c = 0; c < rc.count(); ++c) {
            auto inv = cycle_type_invariant(*W, rc.reps[c], base);
            for (int y : rc.members[c]) EXPECT_EQ(cycle_type_invariant(*W, y, base), inv);
            invariants.insert(inv);
        }
        EXPECT_EQ(static_cast<int>(invariants.size()), rc.count()) << spec;
        for (int c = 0; c < rc.count(); ++c) {
            auto D = cycle_data(*W, rc.reps[c]);
            size_t covered = 0;
            for (const auto& b : D.blocks) covered += b.size();
            EXPECT_EQ(covered, D.cycles.size());
        }
    }
}

TEST(Power, PowerRepAgainstTensorTraces) {
    for (std::string spec : {"cyclic:2", "cyclic:3", "cyclic:4", "product(cyclic:2,cyclic:2)", "dihedral:2",
                             "dihedral:4", "split(cyclic:2)"}) {
        auto G = group_from_spec(spec);
        auto rho = test_representation(G);
        auto chi = trace_of(rho);
        for (int N = 1; N <= 3; ++N) {
            auto W = graded_wreath(G, N);
            auto P = power_rep(chi, *W);
            for (int e = 0; e < W->group->order(); ++e)
                if (!W->group->odd(e)) EXPECT_EQ(P[e], tensor_power_trace(rho, *W, e)) << spec << " N=" << N;
        }
    }
    // regular character of Z/2 squared, at ((e,e);(12))
    auto Z2 = cyclic_group(2);
    auto W = graded_wreath(Z2, 2);
    auto P = power_rep({Cyc(2), Cyc(0)}, *W);
    EXPECT_EQ(P[W->index_of({0, 0}, {1, 0})], Cyc(2));
    EXPECT_EQ(P[W->index_of({0, 0}, {0, 1})], Cyc(4));
}

TEST(Power, TwistedPowerRepIsAClassFunction) {
    auto D8 = dihedral_group(4);
    for (uint64_t seed : {1u, 2u, 3u}) {
        Cochain theta = random_cocycle(D8, 2, true, 2, seed);
        auto E = central_extension(theta);
        auto irr = twisted_irreps(E);
        auto W = graded_wreath(D8, 2);
        auto WE = central_extension(wreath_twist(theta, W).materialized());
        const GradedGroup& X = *WE->group;
        for (int k = 0; k < irr.count(); ++k) {
            std::vector<Cyc> chi(E->group->order(), Cyc(0));
            for (int e = 0; e < E->group->order(); ++e)
                if (!E->group->odd(e)) chi[e] = irr.value(k, e);
            auto F = power_rep_twisted(*E, chi, *W, *WE);
            Cyc norm(0);
            int even = 0;
            for (int x = 0; x < X.order(); ++x) {
                if (X.odd(x)) continue;
                ++even;
                norm += F[x] * F[x].conj();
                for (int y = 0; y < X.order(); ++y)
                    if (!X.odd(y)) ASSERT_EQ(F[X.conj(y, x)], F[x]);
            }
            ASSERT_TRUE(norm.is_rational());
            EXPECT_EQ(norm.rational() / Rational(even), Rational(1));
        }
    }
}

TEST(Power, UnitAndIdentityLaws) {
    for (std::string spec : {"cyclic_graded:2", "dihedral:2", "dihedral:3"}) {
        auto G = group_from_spec(spec);
        for (bool real : {true, false}) {
            auto S = real ? qellr_point(G) : qell_point(G);
            auto T0 = power_space(S, 0), T1 = power_space(S, 1);
            std::mt19937_64 rng(9);
            for (int t = 0; t < 5; ++t) {
                QClass x = random_class(S, rng, 4);
                EXPECT_EQ(power_operation(S, x, T0), unit_class(T0.space));
                EXPECT_EQ(power_operation(S, x, T1), x);
            }
        }
    }
}

TEST(Power, ExternalProductOverZ2) {
    auto Z2 = cyclic_group(2, true);
    auto R = qellr_point(Z2);
    std::mt19937_64 rng(4);
    for (int M = 1; M <= 3; ++M)
        for (int N = 1; M + N <= 4; ++N) {
            auto TM = power_space(R, M), TN = power_space(R, N), TMN = power_space(R, M + N);
            auto F = qellr_point(fibered_product(TM.wreath->group, TN.wreath->group));
            auto phi = external_embedding(*TM.wreath, *TN.wreath, *TMN.wreath);
            for (int t = 0; t < 4; ++t) {
                QClass x = random_class(R, rng, 3);
                QClass lhs = kunneth(TM.space, TN.space, F, power_operation(R, x, TM), power_operation(R, x, TN));
                QClass rhs = restrict_class(TMN.space, power_operation(R, x, TMN), F, phi);
                EXPECT_EQ(lhs, rhs) << M << "+" << N;
            }
        }
}

TEST(Power, ForgetfulCompatibility) {
    for (auto [spec, maxN] : std::vector<std::pair<std::string, int>>{{"dihedral:2", 3}, {"dihedral:3", 3},
                                                                       {"split(cyclic:3)", 2}, {"dihedral:4", 2}}) {
        auto G = group_from_spec(spec);
        auto R = qellr_point(G);
        auto C = qell_point(G);
        auto c = forgetful(R, C);
        std::mt19937_64 rng(21);
        for (int N = 2; N <= maxN; ++N) {
            auto TR = power_space(R, N), TC = power_space(C, N);
            auto cW = forgetful(TR.space, TC.space);
            for (int t = 0; t < 4; ++t) {
                QClass x = random_class(R, rng, 3);
                EXPECT_EQ(cW.apply(TC.space, power_operation(R, x, TR)), power_operation(C, c.apply(C, x), TC));
            }
        }
    }
}

TEST(Power, IdentityComponentIsTheTensorPower) {
    for (std::string spec : {"dihedral:2", "dihedral:3"}) {
        auto G = group_from_spec(spec);
        auto R = qellr_point(G);
        int i0 = identity_component(R);
        const QComponent& c0 = R.comps[i0];
        for (int N = 2; N <= 3; ++N) {
            auto T = power_space(R, N);
            int j0 = identity_component(T.space);
            const QComponent& cj = T.space.comps[j0];
            for (int b = 0; b < c0.rank(); ++b) {
                std::vector<Cyc> chi(G->order(), Cyc(0));
                for (int g = 0; g < G->order(); ++g)
                    if (!G->odd(g)) chi[g] = c0.value(b, c0.lift(g));
                auto P = power_rep(chi, *T.wreath);
                std::vector<Cyc> vals(cj.ext->group->order(), Cyc(0));
                for (int e = 0; e < cj.ext->group->order(); ++e)
                    if (!cj.ext->group->odd(e)) vals[e] = P[cj.stabilizer.to_parent[cj.ext->base_of(e)]];
                auto coeff = decompose_in_component(cj, vals);
                QClass p = power_operation(R, basis_class(R, i0, b), T);
                for (int w = 0; w < cj.rank(); ++w) {
                    int64_t got = p.c[j0][w].count(0) ? p.c[j0][w].at(0) : 0;
                    EXPECT_EQ(got, coeff[w]);
                }
            }
        }
    }
}

TEST(Power, RotationSlopesDivideByCycleLength) {
    auto R = qellr_point(cyclic_group(2, true));
    auto T = power_space(R, 2);
    int cyc = -1;
    for (size_t i = 0; i < T.space.comps.size(); ++i)
        if (T.wreath->perms[T.space.comps[i].g] == std::vector<int>{1, 0}) cyc = static_cast<int>(i);
    ASSERT_GE(cyc, 0);
    for (int s : {1, 3, 4}) {
        QClass p = power_operation(R, basis_class(R, 0, 0, s), T);
        Rational slope(s, 2);
        bool found = false;
        for (int b = 0; b < T.space.comps[cyc].rank(); ++b)
            for (auto [k, v] : p.c[cyc][b]) {
                EXPECT_EQ(Rational(k) + T.space.comps[cyc].basis[b].lambda, slope);
                found = found || v != 0;
            }
        EXPECT_TRUE(found);
    }
}

TEST(Power, StringyPowerTruncation) {
    auto G = dihedral_group(3);
    auto R = qellr_point(G);
    std::mt19937_64 rng(2);
    for (int N = 1; N <= 2; ++N) {
        auto T = power_space(R, N);
        for (int t = 0; t < 4; ++t) {
            QClass x = scale_q(random_class(R, rng, 3), 2);  // exponents >= 0
            for (int64_t P : {0, 1, 3}) {
                auto full = stringy_power(R, x, T, P);
                QClass cut;
                cut.c = tate_completion(R, x, N * (P + 1)).c;
                EXPECT_EQ(stringy_power(R, cut, T, P).c, full.c);
                if (N == 1) EXPECT_EQ(full.c, tate_completion(R, x, P).c);
            }
        }
    }
}

TEST(Power, TwistedInputIsRejected) {
    auto D8 = dihedral_group(4);
    Cochain alpha = random_cocycle(D8, 3, false, 2, 3);
    auto S = qellr_point(D8, &alpha);
    auto U = qellr_point(D8);
    auto T = power_space(U, 2);
    EXPECT_THROW(power_operation(S, zero_class(S), T), std::invalid_argument);
}
