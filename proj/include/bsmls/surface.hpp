#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsmls/basis.hpp"
#include "bsmls/error.hpp"
#include "bsmls/knots.hpp"
#include "bsmls/point.hpp"
#include "bsmls/weight.hpp"

namespace bsmls {

/// Square (n+1) x (n+1) grid of values f(i, j) at integer nodes, row i.
class ValueGrid {
public:
    ValueGrid(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
        if (n < 0) throw Error(ErrorCode::invalid_argument, "grid size must be non-negative");
        const auto side = static_cast<std::size_t>(n + 1);
        if (values_.size() != side * side) {
            throw Error(ErrorCode::invalid_argument, "expected " + std::to_string(side * side) + " grid values, got " +
                                                         std::to_string(values_.size()));
        }
    }

    template <class Fn>
    [[nodiscard]] static ValueGrid sample(int n, Fn&& f) {
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) values.push_back(f(static_cast<double>(i), static_cast<double>(j)));
        }
        return ValueGrid(n, std::move(values));
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::size_t side() const noexcept { return static_cast<std::size_t>(n_ + 1); }
    [[nodiscard]] double operator()(int i, int j) const {
        return values_.at(static_cast<std::size_t>(i) * side() + static_cast<std::size_t>(j));
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

private:
    int n_;
    std::vector<double> values_;
};

/// Tensor-product surface r(u,v) = sum_i sum_j B_{i,r}(u) B_{j,r}(v) p_ij over
/// the same uniform knots in both directions.
class Surface {
public:
    Surface(KnotVector knots, std::vector<Point<3>> control)
        : knots_u_(knots), knots_v_(std::move(knots)), control_(std::move(control)) {
        const auto side = static_cast<std::size_t>(knots_u_.n() + 1);
        if (control_.size() != side * side) {
            throw Error(ErrorCode::invalid_argument,
                        "control grid must be " + std::to_string(side) + "x" + std::to_string(side));
        }
    }

    [[nodiscard]] const KnotVector& knots_u() const noexcept { return knots_u_; }
    [[nodiscard]] const KnotVector& knots_v() const noexcept { return knots_v_; }
    [[nodiscard]] std::size_t side() const noexcept { return static_cast<std::size_t>(knots_u_.n() + 1); }
    [[nodiscard]] const Point<3>& control(int i, int j) const {
        return control_.at(static_cast<std::size_t>(i) * side() + static_cast<std::size_t>(j));
    }

private:
    KnotVector knots_u_;
    KnotVector knots_v_;
    std::vector<Point<3>> control_;
};

/// Surface with control points p_ij = (i, j, f(i, j)).
[[nodiscard]] inline Surface make_height_surface(const ValueGrid& f, int r) {
    std::vector<Point<3>> control;
    control.reserve(f.side() * f.side());
    for (int i = 0; i <= f.n(); ++i) {
        for (int j = 0; j <= f.n(); ++j) control.push_back({double(i), double(j), f(i, j)});
    }
    return Surface(make_uniform_knots(f.n(), r), std::move(control));
}

/// r(u, v) for (u, v) in [r-1, n+1]^2, summing the r x r block of nonzero
/// basis products.
[[nodiscard]] inline Point<3> surface_eval(const Surface& s, double u, double v) {
    const auto bu = nonzero_basis(s.knots_u(), u);
    const auto bv = nonzero_basis(s.knots_v(), v);
    Point<3> out{};
    for (std::size_t a = 0; a < bu.values.size(); ++a) {
        for (std::size_t b = 0; b < bv.values.size(); ++b) {
            const double coef = bu.values[a] * bv.values[b];
            const auto& p = s.control(bu.first + static_cast<int>(a), bv.first + static_cast<int>(b));
            for (std::size_t k = 0; k < 3; ++k) out[k] += coef * p[k];
        }
    }
    return out;
}

/// sum_i sum_j f(i,j) W(x-i) W(y-j) over the block of nodes inside the
/// weight's support. The weights are not renormalised; for the cardinal
/// weight sum_i W(x-i) = 1 in the interior of the grid.
[[nodiscard]] inline double mls_surface_apply(const ValueGrid& f, const WeightSpec& weight, double x, double y) {
    const WeightSpec& profile = weight.kind() == WeightKind::tensor_product ? weight.base() : weight;
    if (profile.kind() != WeightKind::cardinal_bspline) {
        throw Error(ErrorCode::unsupported_base, "separable surface sum needs a compactly supported weight, got " +
                                                     weight.describe());
    }
    const double radius = profile.support_radius();
    const auto block = [&](double c) {
        const int lo = std::max(0, static_cast<int>(std::ceil(c - radius)));
        const int hi = std::min(f.n(), static_cast<int>(std::floor(c + radius)));
        return std::pair{lo, hi};
    };
    const auto [i_lo, i_hi] = block(x);
    const auto [j_lo, j_hi] = block(y);
    double sum = 0.0;
    for (int i = i_lo; i <= i_hi; ++i) {
        const double wx = weight_eval(profile, x - i);
        if (wx == 0.0) continue;
        for (int j = j_lo; j <= j_hi; ++j) sum += f(i, j) * wx * weight_eval(profile, y - j);
    }
    return sum;
}

}  // namespace bsmls
