#pragma once

/// Uniform B-spline basis functions.
///
/// Three independent evaluation routes are provided:
///  - `basis_eval`: the Cox-de Boor recursion on order-1 indicator functions,
///    with the half-open convention t_i <= t < t_{i+1} for the base case;
///  - `basis_eval_cubic_closed`: the six-piece closed form of B_{i,4};
///  - `nonzero_basis`: the triangular scheme over a single knot span, used by
///    curve and surface evaluation.
/// Derivatives are computed by finite differences (`basis_derivative`).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bsmls/error.hpp"
#include "bsmls/knots.hpp"

namespace bsmls {

namespace detail {

/// Cox-de Boor recursion for B_{i,j}(t) on the knot sequence `knot(k)`.
/// The table is raised from order 1 to order j in place; 0/0 terms are 0.
template <class KnotFn>
[[nodiscard]] double cox_de_boor(KnotFn knot, int i, int j, double t) {
    std::vector<double> table(static_cast<std::size_t>(j));
    for (int k = 0; k < j; ++k) {
        table[static_cast<std::size_t>(k)] = (knot(i + k) <= t && t < knot(i + k + 1)) ? 1.0 : 0.0;
    }
    for (int q = 2; q <= j; ++q) {
        for (int k = 0; k + q <= j; ++k) {
            const int lo = i + k;
            const auto kk = static_cast<std::size_t>(k);
            double value = 0.0;
            if (const double den = knot(lo + q - 1) - knot(lo); den != 0.0) {
                value += (t - knot(lo)) / den * table[kk];
            }
            if (const double den = knot(lo + q) - knot(lo + 1); den != 0.0) {
                value += (knot(lo + q) - t) / den * table[kk + 1];
            }
            table[kk] = value;
        }
    }
    return table[0];
}

/// Finite-difference weights for the `order`-th derivative at `x0` on the
/// given abscissae (Fornberg's recurrence).
[[nodiscard]] inline std::vector<double> fd_weights(const std::vector<double>& x, double x0, int order) {
    const auto n = x.size();
    const auto m = static_cast<std::size_t>(order);
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) weights[i] = c[i][m];
    return weights;
}

inline void check_basis_index(const KnotVector& kv, int i, int j) {
    if (j < 1 || j > kv.order() || i < 0 || i > kv.n() + kv.order() - j) {
        throw Error(ErrorCode::index_out_of_range,
                    "B_{" + std::to_string(i) + "," + std::to_string(j) + "} not defined for n=" +
                        std::to_string(kv.n()) + ", r=" + std::to_string(kv.order()));
    }
}

}  // namespace detail

/// B_{i,j}(t) on the unbounded uniform knot sequence t_k = k.
[[nodiscard]] inline double uniform_basis(int i, int j, double t) {
    if (j < 1) throw Error(ErrorCode::index_out_of_range, "basis order must be >= 1");
    return detail::cox_de_boor([](int k) { return static_cast<double>(k); }, i, j, t);
}

/// B_{i,j}(t) over the knots of `kv`, for 0 <= i <= n+r-j and 1 <= j <= r.
[[nodiscard]] inline double basis_eval(const KnotVector& kv, int i, int j, double t) {
    detail::check_basis_index(kv, i, j);
    const auto& knots = kv.knots();
    return detail::cox_de_boor([&knots](int k) { return knots[static_cast<std::size_t>(k)]; }, i, j, t);
}

/// Closed form of the uniform cubic B_{i,4}(t), piece by piece.
[[nodiscard]] inline double basis_eval_cubic_closed(int i, double t) {
    const double u = t - i;
    const auto cube = [](double v) { return v * v * v; };
    if (u < 0.0) return 0.0;
    if (u < 1.0) return cube(u) / 6.0;
    if (u < 2.0) return -2.0 / 3.0 * cube(u - 1.0) + cube(u) / 6.0;
    if (u < 3.0) return cube(u - 2.0) - 2.0 / 3.0 * cube(u - 1.0) + cube(u) / 6.0;
    if (u < 4.0) return -2.0 / 3.0 * cube(u - 3.0) + cube(u - 2.0) - 2.0 / 3.0 * cube(u - 1.0) + cube(u) / 6.0;
    return 0.0;
}

/// The r basis functions of order r that may be nonzero at t.
struct BasisSpan {
    int first = 0;               ///< index of values[0], i.e. B_{first, r}
    std::vector<double> values;  ///< B_{first+q, r}(t), q = 0..r-1
};

/// Nonzero basis functions at t in [r-1, n+1]. The span is clamped to
/// [n, n+1) at the right end, so t = n+1 evaluates as the left limit.
[[nodiscard]] inline BasisSpan nonzero_basis(const KnotVector& kv, double t) {
    if (!kv.in_domain(t)) {
        throw Error(ErrorCode::parameter_out_of_domain,
                    "t=" + std::to_string(t) + " outside [" + std::to_string(kv.domain_begin()) + ", " +
                        std::to_string(kv.domain_end()) + "]");
    }
    const int p = kv.degree();
    const int span = std::clamp(static_cast<int>(std::floor(t)), p, kv.n());
    std::vector<double> n_vals(static_cast<std::size_t>(p + 1), 0.0);
    std::vector<double> left(static_cast<std::size_t>(p + 1), 0.0);
    std::vector<double> right(static_cast<std::size_t>(p + 1), 0.0);
    n_vals[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        left[uj] = t - kv[static_cast<std::size_t>(span + 1 - j)];
        right[uj] = kv[static_cast<std::size_t>(span + j)] - t;
        double saved = 0.0;
        for (std::size_t q = 0; q < uj; ++q) {
            const double tmp = n_vals[q] / (right[q + 1] + left[uj - q]);
            n_vals[q] = saved + right[q + 1] * tmp;
            saved = left[uj - q] * tmp;
        }
        n_vals[uj] = saved;
    }
    return {span - p, std::move(n_vals)};
}

enum class DerivativeSide { central, left, right };

/// Central-difference step for a derivative of the given order:
/// 1e-5 (first), 1e-4 (second), 1e-3 (third), 1e-2 (fourth), 5e-2 beyond.
[[nodiscard]] constexpr double central_step(int order) noexcept {
    switch (order) {
        case 1: return 1e-5;
        case 2: return 1e-4;
        case 3: return 1e-3;
        case 4: return 1e-2;
        default: return 5e-2;
    }
}

/// order-th derivative of B_{i,j} at t by finite differences.
///
/// `central` uses a symmetric second-order stencil with step `central_step`.
/// `left` / `right` use j points strictly on one side of t, spaced d/(j+1)
/// where d is the distance to the next knot on that side (1 at a knot). Each
/// polynomial piece has degree j-1, so the one-sided stencil reproduces the
/// piece's derivative up to rounding; this is the variant to use at knots.
[[nodiscard]] inline double basis_derivative(const KnotVector& kv, int i, int j, double t, int order,
                                             DerivativeSide side = DerivativeSide::central) {
    detail::check_basis_index(kv, i, j);
    if (order < 0 || order >= j) {
        throw Error(ErrorCode::unsupported_order,
                    "derivative order " + std::to_string(order) + " not in [0, " + std::to_string(j - 1) + "]");
    }
    if (order == 0 && side == DerivativeSide::central) return basis_eval(kv, i, j, t);

    std::vector<double> points;
    if (side == DerivativeSide::central) {
        const double h = central_step(order);
        const int half = (order + 1) / 2;
        for (int m = -half; m <= half; ++m) points.push_back(t + m * h);
    } else {
        const bool at_knot = t == std::floor(t);
        double gap = 1.0;
        if (!at_knot) gap = side == DerivativeSide::left ? t - std::floor(t) : std::ceil(t) - t;
        const double h = gap / (j + 1);
        const double dir = side == DerivativeSide::left ? -1.0 : 1.0;
        for (int m = 1; m <= j; ++m) points.push_back(t + dir * m * h);
    }
    const auto weights = detail::fd_weights(points, t, order);
    double sum = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) sum += weights[k] * uniform_basis(i, j, points[k]);
    return sum;
}

}  // namespace bsmls
