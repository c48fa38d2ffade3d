#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qellr/chartable.hpp"

using namespace qellr;

namespace {

std::vector<int64_t> degrees(const CharacterTable& t) {
    std::vector<int64_t> d;
    for (int i = 0; i < t.count(); ++i) d.push_back(t.degree(i));
    return d;
}

void expect_orthogonal(const CharacterTable& t) {
    for (int i = 0; i < t.count(); ++i)
        for (int j = 0; j < t.count(); ++j)
            EXPECT_EQ(inner_product(t, t.chars[i], t.chars[j]), Rational(i == j ? 1 : 0));
    // column orthogonality
    int r = t.classes.count();
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            Cyc acc(0);
            for (int i = 0; i < t.count(); ++i) acc += t.chars[i][a] * t.chars[i][b].conj();
            Rational expect = a == b ? Rational(t.group->order(), t.classes.size(a)) : Rational(0);
            EXPECT_EQ(acc, Cyc(expect));
        }
}

}  // namespace

TEST(CharacterTable, CyclicGroupsAreDual) {
    for (int n = 1; n <= 8; ++n) {
        auto g = cyclic_group(n);
        auto t = character_table(g);
        ASSERT_EQ(t->count(), n);
        expect_orthogonal(*t);
        // the row set equals {k -> zeta^{jk}}
        for (int j = 0; j < n; ++j) {
            bool found = false;
            for (int i = 0; i < n && !found; ++i) {
                bool same = true;
                for (int k = 0; k < n; ++k)
                    if (!(t->value(i, k) == Cyc::zeta(n, int64_t(j) * k))) same = false;
                found = same;
            }
            EXPECT_TRUE(found) << n << " " << j;
        }
    }
}

TEST(CharacterTable, SmallNonabelianDegrees) {
    EXPECT_EQ(degrees(*character_table(symmetric_group(3))), (std::vector<int64_t>{1, 1, 2}));
    EXPECT_EQ(degrees(*character_table(dihedral_group(4))), (std::vector<int64_t>{1, 1, 1, 1, 2}));
    EXPECT_EQ(degrees(*character_table(quaternion_group())), (std::vector<int64_t>{1, 1, 1, 1, 2}));
    EXPECT_EQ(degrees(*character_table(symmetric_group(4))), (std::vector<int64_t>{1, 1, 2, 3, 3}));
    for (auto spec : {"symmetric:3", "dihedral:4", "dihedral:5", "quaternion:8", "symmetric:4",
                      "product(symmetric:3,cyclic:3)", "dihedral:6"})
        expect_orthogonal(*character_table(group_from_spec(spec)));
}

TEST(CharacterTable, SquareRootCount) {
    for (auto spec : {"symmetric:4", "quaternion:8", "dihedral:5"}) {
        auto g = group_from_spec(spec);
        auto t = character_table(g);
        for (int c = 0; c < t->classes.count(); ++c) {
            int x = t->classes.reps[c];
            int roots = 0;
            for (int h = 0; h < g->order(); ++h)
                if (g->mul(h, h) == x) ++roots;
            Cyc acc(0);
            for (int i = 0; i < t->count(); ++i) {
                Cyc fs(0);
                for (int h = 0; h < g->order(); ++h) fs += t->value(i, g->mul(h, h));
                acc += fs * Rational(1, g->order()) * t->chars[i][c];
            }
            EXPECT_EQ(acc, Cyc(roots)) << spec;
        }
    }
}

TEST(CharacterTable, InductionAndReciprocity) {
    auto g = symmetric_group(3);
    auto t = character_table(g);
    auto triv = make_subgroup(g, {0});
    auto tt = character_table(triv.group);
    auto reg = induce(*tt, triv, *t, tt->chars[0]);
    EXPECT_EQ(decompose(*t, reg), (std::vector<int64_t>{1, 1, 2}));
    // order-2 subgroup with the sign character
    int tr = -1;
    for (int x = 1; x < 6; ++x)
        if (g->elem_order(x) == 2) {
            tr = x;
            break;
        }
    auto h = make_subgroup(g, {0, tr});
    auto th = character_table(h.group);
    auto ind = induce(*th, h, *t, th->chars[1]);
    EXPECT_EQ(ind[0], Cyc(3));
    auto mult = decompose(*t, ind);
    EXPECT_EQ(mult, (std::vector<int64_t>{0, 1, 1}));
    for (int i = 0; i < th->count(); ++i)
        for (int j = 0; j < t->count(); ++j)
            EXPECT_EQ(inner_product(*t, induce(*th, h, *t, th->chars[i]), t->chars[j]),
                      inner_product(*th, th->chars[i], restrict_char(*t, h, *th, t->chars[j])));
}

namespace {
std::vector<RealType> types_of(const GroupPtr& g) {
    auto ext = central_extension(zero_cochain(g, 2, true, 1).materialized());
    auto T = twisted_irreps(ext);
    return T.type;
}
}  // namespace

TEST(RealType, Examples) {
    for (int n = 1; n <= 8; ++n)
        for (auto t : types_of(dihedral_group(n))) EXPECT_EQ(t, RealType::R) << n;
    auto c4 = types_of(split_graded(cyclic_group(4)));
    EXPECT_EQ(std::count(c4.begin(), c4.end(), RealType::C), 2);
    EXPECT_EQ(std::count(c4.begin(), c4.end(), RealType::R), 2);
    auto q = types_of(split_graded(quaternion_group()));
    EXPECT_EQ(q.back(), RealType::H);
    EXPECT_EQ(std::count(q.begin(), q.end(), RealType::R), 4);
}

TEST(TwistedIrreps, CountsRegularClasses) {
    // Z/4 as the extension of Z/2 by the nontrivial cocycle
    auto z2 = cyclic_group(2);
    Cochain theta(z2, 2, false, 2, std::vector<int64_t>{0, 0, 0, 1});
    auto T = twisted_irreps(central_extension(theta));
    EXPECT_EQ(T.count(), 2);
    // Klein four with the Heisenberg cocycle: one 2-dimensional twisted irrep
    auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
    Cochain h(v4, 2, false, 2, [](const int* t) { return int64_t((t[0] & 1) * ((t[1] >> 1) & 1)); });
    auto TH = twisted_irreps(central_extension(h.materialized()));
    ASSERT_EQ(TH.count(), 1);
    EXPECT_EQ(TH.degree(0), 2);
}
