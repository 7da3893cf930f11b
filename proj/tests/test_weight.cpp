#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "bsmls/equivalence.hpp"
#include "bsmls/weight.hpp"
#include "oracles.hpp"

using namespace bsmls;

TEST(WeightTest, CardinalCubicValues) {
    const auto w = cardinal_weight(4);
    EXPECT_NEAR(weight_eval(w, 0.0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(weight_eval(w, 0.5), 23.0 / 48.0, 1e-15);
    EXPECT_NEAR(weight_eval(w, -1.0), 1.0 / 6.0, 1e-15);
    EXPECT_EQ(weight_eval(w, 2.3), 0.0);
    EXPECT_EQ(weight_eval(w, -2.0), 0.0);
}

TEST(WeightTest, CardinalCubicMatchesPiecewiseFormula) {
    const auto w = cardinal_weight(4);
    for (int k = -3000; k <= 3000; ++k) {
        const double s = k * 1e-3;
        ASSERT_NEAR(weight_eval(w, s), oracle::cubic_weight(s), 1e-14) << s;
        ASSERT_NEAR(weight_eval(w, s), weight_eval(w, -s), 1e-14) << s;
    }
}

TEST(WeightTest, CardinalOtherOrders) {
    EXPECT_NEAR(weight_eval(cardinal_weight(2), 0.0), 1.0, 1e-15);
    EXPECT_NEAR(weight_eval(cardinal_weight(2), 0.25), 0.75, 1e-15);
    EXPECT_NEAR(weight_eval(cardinal_weight(3), 0.0), 0.75, 1e-15);
    EXPECT_EQ(weight_eval(cardinal_weight(3), 1.5), 0.0);
    EXPECT_THROW((void)cardinal_weight(0), Error);
}

TEST(WeightTest, Catalog) {
    EXPECT_NEAR(weight_eval(WeightSpec::exp(2.0), 0.5), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(weight_eval(WeightSpec::shepard(1.0), 2.0), 0.5, 1e-15);
    EXPECT_TRUE(std::isinf(weight_eval(WeightSpec::shepard(1.0), 0.0)));
    EXPECT_NEAR(reciprocal_weight(WeightSpec::mclain(1.0), 2.0), 4.0 * std::exp(-4.0), 1e-15);
    EXPECT_NEAR(reciprocal_weight(WeightSpec::levin(1.0), 1.0), std::exp(1.0) - 1.0, 1e-15);
    EXPECT_NEAR(weight_eval(WeightSpec::levin(1.0), 1.0), 1.0 / (std::exp(1.0) - 1.0), 1e-15);
    EXPECT_THROW((void)WeightSpec::exp(0.0), Error);
    EXPECT_THROW((void)weight_eval(WeightSpec::exp(1.0), -1.0), Error);
}

TEST(WeightTest, CatalogNonNegativeAndPositiveOnSupport) {
    for (const auto& w : {WeightSpec::exp(1.3), WeightSpec::shepard(0.7), WeightSpec::mclain(1.1),
                          WeightSpec::levin(0.9), cardinal_weight(4)}) {
        for (int k = 0; k <= 400; ++k) {
            const double s = k * 0.01;
            const double value = weight_eval(w, s);
            EXPECT_GE(value, 0.0);
            if (s < w.support_radius()) {
                EXPECT_GT(value, 0.0) << w.describe() << " s=" << s;
            }
        }
    }
}

TEST(ReciprocalWeightTest, Values) {
    EXPECT_EQ(reciprocal_weight(WeightSpec::shepard(1.0), 0.0), 0.0);
    EXPECT_NEAR(reciprocal_weight(cardinal_weight(4), 0.0), 1.5, 1e-14);
    try {
        (void)reciprocal_weight(cardinal_weight(4), 2.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::division_by_zero_weight);
    }
}

TEST(ReciprocalWeightTest, ZeroAtOriginMeansInfiniteMlsWeight) {
    for (const auto& w : {WeightSpec::shepard(1.0), WeightSpec::mclain(1.0), WeightSpec::levin(1.0)}) {
        EXPECT_EQ(reciprocal_weight(w, 0.0), 0.0) << w.describe();
        EXPECT_TRUE(std::isinf(mls_weight(w, 0.0))) << w.describe();
    }
    EXPECT_EQ(mls_weight(cardinal_weight(4), 3.0), 0.0);
}

TEST(InterpolatoryWeightTest, ShiftAndReciprocal) {
    const auto w = make_interpolatory(cardinal_weight(4), 0.1);
    EXPECT_NEAR(weight_eval(w, 0.0), 2.0 / 3.0 + 0.1, 1e-15);
    EXPECT_EQ(reciprocal_weight(w, 0.0), 0.0);
    EXPECT_NEAR(reciprocal_weight(w, 3.0), 1.0 / 0.1 - 3.0 / 2.3, 1e-13);
    EXPECT_GE(weight_eval(w, 10.0), 0.1);
}

TEST(InterpolatoryWeightTest, MatchesClosedFormAndIsPositiveAwayFromZero) {
    for (double delta : {0.01, 0.1, 1.0}) {
        const auto w = make_interpolatory(cardinal_weight(4), delta);
        for (int k = -4000; k <= 4000; ++k) {
            if (k == 0) continue;
            const double x = k * 1e-3;
            const double literal = 1.0 / (oracle::cubic_weight(x) + delta) - 3.0 / (2.0 + 3.0 * delta);
            ASSERT_GT(reciprocal_weight(w, x), 0.0) << x;
            ASSERT_NEAR(reciprocal_weight(w, x), literal, 1e-12) << x;
            ASSERT_GE(weight_eval(w, x), delta);
        }
    }
}

TEST(InterpolatoryWeightTest, Errors) {
    EXPECT_THROW((void)make_interpolatory(cardinal_weight(4), 0.0), Error);
    try {
        (void)make_interpolatory(WeightSpec::exp(1.0), 0.1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported_base);
    }
    EXPECT_THROW((void)make_interpolatory(cardinal_weight(2), 0.1), Error);
}

TEST(TensorWeightTest, ProductOfProfiles) {
    const auto w = WeightSpec::tensor_product(cardinal_weight(4));
    const Point<2> d{0.5, -1.0};
    EXPECT_NEAR(mls_weight(w, d), 23.0 / 48.0 / 6.0, 1e-15);
    EXPECT_EQ(mls_weight(w, Point<2>{2.5, 0.0}), 0.0);
    EXPECT_THROW((void)WeightSpec::tensor_product(WeightSpec::shepard(1.0)), Error);
}
