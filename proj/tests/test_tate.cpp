#include <gtest/gtest.h>

#include "qellr/tate.hpp"

using namespace qellr;

namespace {

TatePoint pt(int N, int sign, int64_t a, Rational e, int i) { return TatePoint{N, TateUnit::make(sign, N, a, e), i}; }

}  // namespace

TEST(Tate, UnitArithmetic) {
    TateUnit u = TateUnit::make(-1, 4, 1, Rational(1, 2));
    EXPECT_EQ(u, TateUnit::make(1, 4, 3, Rational(1, 2)));  // -zeta_4 = zeta_4^3
    EXPECT_EQ(u * u.inverse(), q_power(Rational(0)));
    EXPECT_EQ(u.pow(4), q_power(Rational(2)));
    EXPECT_EQ(u.root_of_unity(4), std::make_pair(1, int64_t{3}));
    TateUnit m = TateUnit::make(-1, 3, 1, Rational(0));
    EXPECT_EQ(m.root_of_unity(3), std::make_pair(-1, int64_t{1}));
    EXPECT_THROW(m.root_of_unity(5), std::invalid_argument);
    EXPECT_TRUE(m.lies_in(TateRing{3, 1}));
    EXPECT_FALSE(u.lies_in(TateRing{4, 1}));
}

TEST(Tate, DisplayedLaw) {
    TatePoint h = pt(2, 1, 0, Rational(1, 2), 1);
    ASSERT_TRUE(is_torsion_point(h));
    EXPECT_EQ(multiply(h, h), tate_identity(2));
    EXPECT_EQ(invert(h), h);
    // i = 0: (xi^-1, 0)
    TatePoint z = a_N(5, 2);
    EXPECT_EQ(invert(z), a_N(5, 3));
    // wrap-around picks up q^-1
    TatePoint p = pt(3, 1, 1, Rational(2, 3), 2), q = pt(3, 1, 1, Rational(1, 3), 1);
    EXPECT_EQ(multiply(p, q), a_N(3, 2));
    EXPECT_THROW(multiply(p, h), std::invalid_argument);
    EXPECT_THROW(invert(pt(3, 1, 0, Rational(1, 2), 1)), std::invalid_argument);
}

TEST(Tate, GroupAxiomsExhaustive) {
    for (int N = 1; N <= 6; ++N) {
        auto r = check_group_axioms(N);
        EXPECT_EQ(r.points, N * N);
        EXPECT_TRUE(r.all()) << N;
    }
}

TEST(Tate, ExactSequence) {
    for (int N = 1; N <= 8; ++N) {
        auto r = exactness_check(N);
        EXPECT_TRUE(r.all()) << N;
        EXPECT_EQ(r.integral_surjective, N == 1);
    }
}

TEST(Tate, SplittingAndInvolution) {
    for (int N = 1; N <= 6; ++N) {
        auto r = check_split(N);
        EXPECT_TRUE(r.all()) << N;
        EXPECT_EQ(r.fixed_points, N % 2 == 0 ? 4 : 1);
    }
    EXPECT_EQ(split_iso(pt(4, 1, 1, Rational(3, 4), 3)), std::make_pair(int64_t{1}, 3));
    EXPECT_EQ(split_iso(invert(pt(4, 1, 1, Rational(3, 4), 3))), std::make_pair(int64_t{3}, 1));
}

TEST(Tate, PointsOverSmallerRings) {
    EXPECT_EQ(torsion_points(4, TateRing{1, 1}).size(), 2u);  // +-1 on the identity sheet
    EXPECT_EQ(torsion_points(3, TateRing{1, 1}).size(), 1u);
    EXPECT_EQ(torsion_points(4, TateRing{4, 2}).size(), 8u);  // sheets 0 and 2
    EXPECT_EQ(torsion_points(6, TateRing{3, 6}).size(), 36u);  // -zeta_3 generates mu_6
}

TEST(Tate, SheetsMatchQuasiEllipticPoint) {
    for (int N = 1; N <= 4; ++N) {
        auto t = torsion_vs_qell(N);
        EXPECT_TRUE(t.match) << N;
        EXPECT_EQ(t.qell_ranks, std::vector<int64_t>(N, N));
    }
    auto t = torsion_vs_qell(3);
    EXPECT_EQ(t.tate_relations[2], "x_2^3 - q^2");
}

TEST(Tate, RealTorsionPoints) {
    for (int N = 1; N <= 4; ++N) {
        auto r = real_fixed_points(N);
        EXPECT_TRUE(r.all()) << N;
        EXPECT_EQ(r.qellr_rank, N * N);
        auto s = pullback_square(N);
        EXPECT_TRUE(s.all()) << N;
    }
}

TEST(Tate, WeierstrassCoefficients) {
    EXPECT_EQ(tate_a4(4), (std::vector<int64_t>{0, -5, -45, -140, -365}));
    EXPECT_EQ(tate_a6(3), (std::vector<int64_t>{0, 1, 23, 154}));
}
