#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bsmls/error.hpp"

namespace bsmls {

/// Monomials x_1^{k_1} ... x_d^{k_d} of total degree <= degree, ordered by
/// total degree and then by descending exponent tuple, so the constant comes
/// first and {1, x_1, x_2, x_1^2, x_1 x_2, x_2^2} for d = 2, degree = 2.
class PolynomialBasis {
public:
    using MultiIndex = std::vector<int>;

    PolynomialBasis(int dimension, int degree) : dimension_(dimension), degree_(degree) {
        if (dimension < 1) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
        if (degree < 0) throw Error(ErrorCode::invalid_argument, "degree must be >= 0");
        MultiIndex current(static_cast<std::size_t>(dimension), 0);
        enumerate(current, 0, degree);
        std::sort(exponents_.begin(), exponents_.end(), [](const MultiIndex& a, const MultiIndex& b) {
            const int da = std::accumulate(a.begin(), a.end(), 0);
            const int db = std::accumulate(b.begin(), b.end(), 0);
            if (da != db) return da < db;
            return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
        });
    }

    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] int degree() const noexcept { return degree_; }
    /// Number of basis functions l.
    [[nodiscard]] std::size_t size() const noexcept { return exponents_.size(); }
    [[nodiscard]] const std::vector<MultiIndex>& exponents() const noexcept { return exponents_; }

    [[nodiscard]] bool has_constant() const noexcept {
        return !exponents_.empty() &&
               std::all_of(exponents_.front().begin(), exponents_.front().end(), [](int k) { return k == 0; });
    }

    /// p_k(x).
    [[nodiscard]] double eval(std::size_t k, std::span<const double> x) const {
        const auto& e = exponents_.at(k);
        double value = 1.0;
        for (std::size_t c = 0; c < e.size(); ++c) {
            for (int p = 0; p < e[c]; ++p) value *= x[c];
        }
        return value;
    }

private:
    void enumerate(MultiIndex& current, std::size_t coord, int remaining) {
        if (coord == current.size()) {
            exponents_.push_back(current);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            current[coord] = k;
            enumerate(current, coord + 1, remaining - k);
        }
        current[coord] = 0;
    }

    int dimension_;
    int degree_;
    std::vector<MultiIndex> exponents_;
};

/// All monomials in d variables of total degree <= degree; l = C(degree+d, d).
[[nodiscard]] inline PolynomialBasis monomial_basis(int d, int degree) { return PolynomialBasis(d, degree); }

}  // namespace bsmls
