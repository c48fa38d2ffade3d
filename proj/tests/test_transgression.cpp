#include <gtest/gtest.h>

#include <random>

#include "qellr/transgression.hpp"

using namespace qellr;

namespace {

Subgroup kernel_of(const GroupPtr& g) { return make_subgroup(g, g->kernel()); }

}  // namespace

TEST(Cochain, DifferentialSquaresToZero) {
    std::mt19937_64 rng(1);
    for (auto spec : {"dihedral:2", "dihedral:3", "split(symmetric:3)"}) {
        auto g = group_from_spec(spec);
        for (bool tw : {false, true})
            for (int deg : {1, 2}) {
                auto c = random_cochain(g, deg, tw, 12, rng);
                EXPECT_TRUE(is_cocycle(differential(c))) << spec << " " << tw << " " << deg;
            }
    }
}

// Transgression anticommutes with the differentials in these conventions.
TEST(Transgression, WillertonAnticommutesWithDifferential) {
    for (auto spec : {"symmetric:3", "product(symmetric:3,cyclic:2)", "quaternion:8"}) {
        auto g = group_from_spec(spec);
        std::mt19937_64 rng(2);
        for (int deg : {1, 2, 3}) {
            auto lam = random_cochain(g, deg, false, 7, rng);
            auto lhs = transgress(differential(lam));
            auto rhs = groupoid_differential(transgress(lam));
            EXPECT_TRUE(groupoid_equal(lhs, groupoid_negate(rhs))) << spec << " " << deg;
            if (deg > 1 || std::string(spec) == "symmetric:3") {
                EXPECT_FALSE(groupoid_equal(lhs, rhs)) << spec << " " << deg;
            }
        }
    }
}

TEST(Transgression, RealAnticommutesWithDifferential) {
    for (auto spec : {"dihedral:4", "split(cyclic:3)", "split(symmetric:3)", "symmetric_sign:3"}) {
        auto g = group_from_spec(spec);
        std::mt19937_64 rng(3);
        auto lam = random_cochain(g, 2, false, 7, rng);
        auto lhs = real_transgress(differential(lam));
        auto rhs = groupoid_differential(real_transgress_deg2(lam));
        EXPECT_TRUE(groupoid_equal(lhs, groupoid_negate(rhs))) << spec;
        EXPECT_FALSE(groupoid_equal(lhs, rhs)) << spec;
        auto mu = random_cochain(g, 1, true, 7, rng);
        auto l2 = real_transgress_ref(differential(mu));
        auto r2 = groupoid_differential(real_transgress_ref_deg1(mu));
        EXPECT_TRUE(groupoid_equal(l2, groupoid_negate(r2))) << spec;
        auto alpha = random_cochain(g, 3, false, 7, rng);
        auto K = kernel_of(g);
        EXPECT_TRUE(groupoid_equal(restrict_even(real_transgress(alpha), K.group, K.to_parent),
                                   transgress(restrict_to(alpha, K))));
        auto theta = random_cochain(g, 2, true, 7, rng);
        EXPECT_TRUE(groupoid_equal(restrict_even(real_transgress_ref(theta), K.group, K.to_parent),
                                   transgress(restrict_to(theta, K))));
    }
}
