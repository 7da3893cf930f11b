#pragma once

#include <string>
#include <vector>

#include "bsmls/error.hpp"

namespace bsmls {

/// Uniform knot vector t_i = i, i = 0..n+r, with no repeated knots.
///
/// `n` is the index of the last control point and `r` the spline order
/// (degree r-1). The curve is defined on [t_{r-1}, t_{n+1}].
class KnotVector {
public:
    KnotVector(int n, int r) : n_(n), r_(r) {
        if (n < 0) {
            throw Error(ErrorCode::invalid_argument, "n must be non-negative, got " + std::to_string(n));
        }
        if (r < 1 || r > n + 1) {
            throw Error(ErrorCode::order_out_of_range,
                        "order " + std::to_string(r) + " outside [1, " + std::to_string(n + 1) + "]");
        }
        knots_.reserve(static_cast<std::size_t>(n + r + 1));
        for (int i = 0; i <= n + r; ++i) knots_.push_back(static_cast<double>(i));
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int order() const noexcept { return r_; }
    [[nodiscard]] int degree() const noexcept { return r_ - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return knots_.size(); }
    [[nodiscard]] const std::vector<double>& knots() const noexcept { return knots_; }
    [[nodiscard]] double operator[](std::size_t i) const { return knots_.at(i); }

    [[nodiscard]] double domain_begin() const noexcept { return static_cast<double>(r_ - 1); }
    [[nodiscard]] double domain_end() const noexcept { return static_cast<double>(n_ + 1); }
    [[nodiscard]] bool in_domain(double t) const noexcept {
        return t >= domain_begin() && t <= domain_end();
    }

    friend bool operator==(const KnotVector&, const KnotVector&) = default;

private:
    int n_;
    int r_;
    std::vector<double> knots_;
};

[[nodiscard]] inline KnotVector make_uniform_knots(int n, int r) { return KnotVector(n, r); }

}  // namespace bsmls
