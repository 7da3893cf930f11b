#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace bsmls {

template <std::size_t Dim>
using Point = std::array<double, Dim>;

template <std::size_t Dim>
[[nodiscard]] double distance(const Point<Dim>& a, const Point<Dim>& b) noexcept {
    double sum = 0.0;
    for (std::size_t k = 0; k < Dim; ++k) sum += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(sum);
}

}  // namespace bsmls
