#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bsmls/basis.hpp"
#include "bsmls/error.hpp"
#include "bsmls/knots.hpp"
#include "bsmls/point.hpp"

namespace bsmls {

/// B-spline curve gamma(t) = sum_i B_{i,r}(t) p_i with control points in R^Dim.
template <std::size_t Dim>
class Curve {
public:
    Curve(KnotVector knots, std::vector<Point<Dim>> control)
        : knots_(std::move(knots)), control_(std::move(control)) {
        if (control_.size() != static_cast<std::size_t>(knots_.n() + 1)) {
            throw Error(ErrorCode::invalid_argument, "expected " + std::to_string(knots_.n() + 1) +
                                                         " control points, got " + std::to_string(control_.size()));
        }
    }

    [[nodiscard]] const KnotVector& knots() const noexcept { return knots_; }
    [[nodiscard]] const std::vector<Point<Dim>>& control() const noexcept { return control_; }

private:
    KnotVector knots_;
    std::vector<Point<Dim>> control_;
};

/// Curve with control points p_i = (i, f(i)).
[[nodiscard]] inline Curve<2> make_graph_curve(const std::vector<double>& f_values, int r) {
    if (f_values.empty()) throw Error(ErrorCode::invalid_argument, "no control values");
    std::vector<Point<2>> control;
    control.reserve(f_values.size());
    for (std::size_t i = 0; i < f_values.size(); ++i) control.push_back({static_cast<double>(i), f_values[i]});
    return Curve<2>(make_uniform_knots(static_cast<int>(f_values.size()) - 1, r), std::move(control));
}

/// Evaluate the curve at t in [r-1, n+1]; only the r basis functions whose
/// support contains t are summed.
template <std::size_t Dim>
[[nodiscard]] Point<Dim> curve_eval(const Curve<Dim>& curve, double t) {
    const auto span = nonzero_basis(curve.knots(), t);
    Point<Dim> out{};
    for (std::size_t q = 0; q < span.values.size(); ++q) {
        const auto& p = curve.control()[static_cast<std::size_t>(span.first) + q];
        for (std::size_t k = 0; k < Dim; ++k) out[k] += span.values[q] * p[k];
    }
    return out;
}

}  // namespace bsmls
