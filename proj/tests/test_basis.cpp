#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bsmls/basis.hpp"
#include "bsmls/knots.hpp"
#include "oracles.hpp"

using namespace bsmls;

TEST(KnotVectorTest, UniformKnots) {
    const auto kv = make_uniform_knots(10, 4);
    ASSERT_EQ(kv.size(), 15u);
    for (std::size_t i = 0; i < kv.size(); ++i) EXPECT_EQ(kv[i], static_cast<double>(i));
    EXPECT_EQ(kv.domain_begin(), 3.0);
    EXPECT_EQ(kv.domain_end(), 11.0);
}

TEST(KnotVectorTest, MinimalInstance) {
    const auto kv = make_uniform_knots(0, 1);
    ASSERT_EQ(kv.size(), 2u);
    EXPECT_EQ(kv[0], 0.0);
    EXPECT_EQ(kv[1], 1.0);
}

TEST(KnotVectorTest, OrderOutOfRange) {
    try {
        (void)make_uniform_knots(2, 4);
        FAIL() << "expected order-out-of-range";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::order_out_of_range);
    }
    EXPECT_THROW((void)make_uniform_knots(5, 0), Error);
}

TEST(BasisEvalTest, KnownValues) {
    const auto kv = make_uniform_knots(10, 4);
    EXPECT_EQ(basis_eval(kv, 0, 1, 0.5), 1.0);
    EXPECT_NEAR(basis_eval(kv, 0, 4, 2.0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(basis_eval(kv, 0, 2, 1.0), 1.0, 1e-15);
    EXPECT_EQ(basis_eval(kv, 3, 4, 2.0), 0.0);
}

TEST(BasisEvalTest, HalfOpenBaseCase) {
    const auto kv = make_uniform_knots(4, 2);
    EXPECT_EQ(basis_eval(kv, 1, 1, 1.0), 1.0);
    EXPECT_EQ(basis_eval(kv, 0, 1, 1.0), 0.0);
}

TEST(BasisEvalTest, IndexOutOfRange) {
    const auto kv = make_uniform_knots(10, 4);
    EXPECT_THROW((void)basis_eval(kv, 12, 4, 1.0), Error);
    EXPECT_THROW((void)basis_eval(kv, 0, 5, 1.0), Error);
    EXPECT_THROW((void)basis_eval(kv, -1, 2, 1.0), Error);
    EXPECT_NO_THROW((void)basis_eval(kv, 13, 1, 1.0));
}

TEST(BasisEvalTest, MatchesLiteralRecursion) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> t_dist(-1.0, 16.0);
    const auto kv = make_uniform_knots(10, 6);
    for (int trial = 0; trial < 2000; ++trial) {
        const double t = t_dist(rng);
        for (int j = 1; j <= 6; ++j) {
            const int i = trial % (10 + 6 - j + 1);
            EXPECT_NEAR(basis_eval(kv, i, j, t), oracle::bspline(i, j, t), 1e-14);
        }
    }
}

TEST(CubicClosedFormTest, Values) {
    EXPECT_NEAR(basis_eval_cubic_closed(0, 1.0), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(basis_eval_cubic_closed(0, 2.5), 23.0 / 48.0, 1e-15);
    EXPECT_EQ(basis_eval_cubic_closed(5, 9.1), 0.0);
    EXPECT_EQ(basis_eval_cubic_closed(5, 4.9), 0.0);
}

TEST(CubicClosedFormTest, AgreesWithRecursion) {
    const auto kv = make_uniform_knots(10, 4);
    for (int k = 0; k <= 14000; ++k) {
        const double t = k * 1e-3;
        for (int i = 0; i <= 10; ++i) {
            ASSERT_NEAR(basis_eval_cubic_closed(i, t), basis_eval(kv, i, 4, t), 1e-13) << "i=" << i << " t=" << t;
        }
    }
}

TEST(BasisPropertyTest, PartitionOfUnity) {
    std::mt19937_64 rng(11);
    for (int r = 1; r <= 6; ++r) {
        const int n = r + 6;
        const auto kv = make_uniform_knots(n, r);
        std::uniform_real_distribution<double> dist(r - 1.0, n + 1.0);
        for (int s = 0; s < 1000; ++s) {
            const double t = dist(rng);
            double sum = 0.0;
            for (int i = 0; i <= n; ++i) sum += basis_eval(kv, i, r, t);
            ASSERT_NEAR(sum, 1.0, 1e-12) << "r=" << r << " t=" << t;
        }
    }
}

TEST(BasisPropertyTest, PositivityAndSupport) {
    std::mt19937_64 rng(13);
    const auto kv = make_uniform_knots(12, 6);
    std::uniform_real_distribution<double> dist(-2.0, 20.0);
    for (int s = 0; s < 5000; ++s) {
        const double t = dist(rng);
        for (int j = 1; j <= 6; ++j) {
            for (int i = 0; i <= 12 + 6 - j; ++i) {
                const double b = basis_eval(kv, i, j, t);
                if (t > i && t < i + j) {
                    ASSERT_GT(b, 0.0) << "i=" << i << " j=" << j << " t=" << t;
                } else if (t <= i || t >= i + j) {
                    ASSERT_EQ(b, 0.0) << "i=" << i << " j=" << j << " t=" << t;
                }
            }
        }
    }
}

TEST(BasisPropertyTest, TranslationInvariance) {
    std::mt19937_64 rng(17);
    const auto kv = make_uniform_knots(14, 5);
    for (int j = 1; j <= 5; ++j) {
        std::uniform_real_distribution<double> dist(0.0, j);
        for (int s = 0; s < 300; ++s) {
            const double t = dist(rng);
            for (int i = 0; i <= 14 + 5 - j; ++i) {
                const int k = (i * 7 + 3) % (14 + 5 - j + 1);
                ASSERT_NEAR(basis_eval(kv, i, j, t + i), basis_eval(kv, k, j, t + k), 1e-13);
            }
            for (int i = 2; i <= 14 + 5 - j; ++i) {
                const double u = i - 2 + t;
                ASSERT_NEAR(basis_eval(kv, i - 2, j, u), uniform_basis(i, j, u + 2), 1e-13);
            }
        }
    }
}

TEST(NonzeroBasisTest, MatchesCoxDeBoor) {
    for (int r = 1; r <= 6; ++r) {
        const int n = r + 5;
        const auto kv = make_uniform_knots(n, r);
        for (int k = 0; k <= 400; ++k) {
            const double t = kv.domain_begin() + (kv.domain_end() - kv.domain_begin()) * k / 400.0;
            const auto span = nonzero_basis(kv, t);
            ASSERT_EQ(span.values.size(), static_cast<std::size_t>(r));
            const bool right_end = t == kv.domain_end();
            for (int q = 0; q < r; ++q) {
                const int i = span.first + q;
                // at the right end the span is the left limit of the last interval
                const double expected = right_end ? oracle::bspline(i, r, std::nextafter(t, 0.0)) : basis_eval(kv, i, r, t);
                ASSERT_NEAR(span.values[static_cast<std::size_t>(q)], expected, 1e-12) << "r=" << r << " t=" << t;
            }
        }
    }
}

TEST(NonzeroBasisTest, OutOfDomain) {
    const auto kv = make_uniform_knots(10, 4);
    EXPECT_THROW((void)nonzero_basis(kv, 2.9), Error);
    EXPECT_THROW((void)nonzero_basis(kv, 11.01), Error);
}

TEST(BasisDerivativeTest, Examples) {
    const auto kv = make_uniform_knots(10, 4);
    EXPECT_NEAR(basis_derivative(kv, 0, 4, 2.0, 1), 0.0, 1e-9);
    EXPECT_EQ(basis_derivative(kv, 0, 4, 0.5, 0), basis_eval(kv, 0, 4, 0.5));
    EXPECT_NEAR(basis_derivative(kv, 0, 2, 0.5, 1), 1.0, 1e-9);
}

TEST(BasisDerivativeTest, CentralDifferencesMatchPiecewiseCubic) {
    // derivatives of the first closed-form piece t^3/6 on (0,1)
    const auto kv = make_uniform_knots(10, 4);
    for (double t : {0.3, 0.5, 0.8}) {
        EXPECT_NEAR(basis_derivative(kv, 0, 4, t, 1), t * t / 2.0, 1e-9);
        EXPECT_NEAR(basis_derivative(kv, 0, 4, t, 2), t, 1e-6);
        EXPECT_NEAR(basis_derivative(kv, 0, 4, t, 3), 1.0, 1e-5);
    }
}

TEST(BasisDerivativeTest, UnsupportedOrder) {
    const auto kv = make_uniform_knots(10, 4);
    try {
        (void)basis_derivative(kv, 0, 4, 1.5, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported_order);
    }
    EXPECT_THROW((void)basis_derivative(kv, 0, 4, 1.5, -1), Error);
}

TEST(BasisDerivativeTest, ContinuityClassAtKnots) {
    for (int r = 2; r <= 6; ++r) {
        const auto kv = make_uniform_knots(r + 4, r);
        for (int knot = 0; knot <= r; ++knot) {
            for (int order = 0; order <= r - 2; ++order) {
                const double left = basis_derivative(kv, 0, r, knot, order, DerivativeSide::left);
                const double right = basis_derivative(kv, 0, r, knot, order, DerivativeSide::right);
                EXPECT_NEAR(left, right, 1e-6) << "r=" << r << " knot=" << knot << " order=" << order;
            }
        }
        double max_jump = 0.0;
        for (int knot = 0; knot <= r; ++knot) {
            max_jump = std::max(max_jump, std::abs(basis_derivative(kv, 0, r, knot, r - 1, DerivativeSide::left) -
                                                   basis_derivative(kv, 0, r, knot, r - 1, DerivativeSide::right)));
        }
        EXPECT_GE(max_jump, 0.5) << "r=" << r;
    }
}

TEST(BasisDerivativeTest, OneSidedAwayFromKnots) {
    const auto kv = make_uniform_knots(10, 4);
    for (double t : {0.25, 1.6, 2.5, 3.9}) {
        const double central = basis_derivative(kv, 0, 4, t, 1);
        EXPECT_NEAR(basis_derivative(kv, 0, 4, t, 1, DerivativeSide::left), central, 1e-8);
        EXPECT_NEAR(basis_derivative(kv, 0, 4, t, 1, DerivativeSide::right), central, 1e-8);
    }
}
