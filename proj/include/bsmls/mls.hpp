#pragma once

/// Moving least squares at a query point x.
///
/// With E[i][k] = p_k(x_i), c[k] = p_k(x) and D = 2 diag(w(|x - x_i|)), the
/// approximant is sum_i a_i f(x_i) with a = D^{-1} E (E^t D^{-1} E)^{-1} c.
/// D^{-1} is assembled directly from the effective weight (1/(2w) = W/2), so
/// nodes outside a compact support get a zero entry and drop out of the
/// active set. Nodes are indexed 0..m-1 and always processed in that order.

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bsmls/error.hpp"
#include "bsmls/point.hpp"
#include "bsmls/polynomial_basis.hpp"
#include "bsmls/weight.hpp"

namespace bsmls {

/// Reciprocal condition estimate below which E^t D^{-1} E is treated as singular.
inline constexpr double kSingularRcond = 1e-12;

template <std::size_t Dim>
class MlsProblem {
public:
    MlsProblem(std::vector<Point<Dim>> nodes, PolynomialBasis basis, WeightSpec weight)
        : nodes_(std::move(nodes)), basis_(std::move(basis)), weight_(std::move(weight)) {
        if (basis_.dimension() != static_cast<int>(Dim)) {
            throw Error(ErrorCode::invalid_argument, "basis dimension does not match node dimension");
        }
        if (basis_.size() > nodes_.size()) {
            throw Error(ErrorCode::rank_deficiency, "l=" + std::to_string(basis_.size()) +
                                                        " exceeds node count m=" + std::to_string(nodes_.size()));
        }
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
                if (nodes_[i] == nodes_[j]) {
                    throw Error(ErrorCode::duplicate_node,
                                "nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
                }
            }
        }
    }

    [[nodiscard]] const std::vector<Point<Dim>>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const PolynomialBasis& basis() const noexcept { return basis_; }
    [[nodiscard]] const WeightSpec& weight() const noexcept { return weight_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }

    /// Effective weight of node i seen from x.
    [[nodiscard]] double weight_at(std::size_t i, const Point<Dim>& x) const {
        Point<Dim> delta{};
        for (std::size_t k = 0; k < Dim; ++k) delta[k] = x[k] - nodes_[i][k];
        return mls_weight(weight_, delta);
    }

    /// Bounding box of the nodes (the bounded domain the data lives in).
    [[nodiscard]] std::pair<Point<Dim>, Point<Dim>> bounding_box() const {
        Point<Dim> lo;
        Point<Dim> hi;
        lo.fill(std::numeric_limits<double>::infinity());
        hi.fill(-std::numeric_limits<double>::infinity());
        for (const auto& p : nodes_) {
            for (std::size_t k = 0; k < Dim; ++k) {
                lo[k] = std::min(lo[k], p[k]);
                hi[k] = std::max(hi[k], p[k]);
            }
        }
        return {lo, hi};
    }

private:
    std::vector<Point<Dim>> nodes_;
    PolynomialBasis basis_;
    WeightSpec weight_;
};

struct Assembly {
    Eigen::MatrixXd e;                     ///< m x l, E[i][k] = p_k(x_i)
    Eigen::VectorXd d_inverse;             ///< diagonal of D^{-1}; +inf at a coincident node
    Eigen::VectorXd c;                     ///< p_k(x)
    std::vector<std::size_t> active;       ///< nodes with nonzero weight, ascending
    std::optional<std::size_t> coincident; ///< node where w = 0 (x sits on it)
};

struct MlsSolution {
    std::vector<double> a;             ///< length m, zero off the active set
    Eigen::MatrixXd normal;            ///< E^t D^{-1} E over the active rows (empty at a coincident node)
    std::vector<std::size_t> active;
    std::optional<std::size_t> coincident;
};

namespace detail {

[[nodiscard]] inline Eigen::MatrixXd active_rows(const Assembly& as) {
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(as.active.size()), as.e.cols());
    for (std::size_t r = 0; r < as.active.size(); ++r) {
        rows.row(static_cast<Eigen::Index>(r)) = as.e.row(static_cast<Eigen::Index>(as.active[r]));
    }
    return rows;
}

[[nodiscard]] inline Eigen::Index active_rank(const Assembly& as) {
    if (as.active.empty()) return 0;
    return Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(active_rows(as)).rank();
}

}  // namespace detail

/// Build E, diag(D^{-1}), c and the active set at x without any rank check.
template <std::size_t Dim>
[[nodiscard]] Assembly assemble_unchecked(const MlsProblem<Dim>& problem, const Point<Dim>& x) {
    const auto m = static_cast<Eigen::Index>(problem.node_count());
    const auto l = static_cast<Eigen::Index>(problem.basis().size());
    Assembly as;
    as.e.resize(m, l);
    as.d_inverse.resize(m);
    as.c.resize(l);
    for (Eigen::Index k = 0; k < l; ++k) as.c(k) = problem.basis().eval(static_cast<std::size_t>(k), x);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (Eigen::Index k = 0; k < l; ++k) {
            as.e(i, k) = problem.basis().eval(static_cast<std::size_t>(k), problem.nodes()[ui]);
        }
        const double weight = problem.weight_at(ui, x);
        as.d_inverse(i) = weight / 2.0;
        if (weight > 0.0) as.active.push_back(ui);
        if (std::isinf(weight) && !as.coincident) as.coincident = ui;
    }
    return as;
}

/// assemble_unchecked plus the rank condition on the active rows of E.
template <std::size_t Dim>
[[nodiscard]] Assembly assemble(const MlsProblem<Dim>& problem, const Point<Dim>& x) {
    auto as = assemble_unchecked(problem, x);
    const auto rank = detail::active_rank(as);
    if (rank < as.e.cols()) {
        throw Error(ErrorCode::rank_deficiency, "rank of active E is " + std::to_string(rank) + " < l=" +
                                                    std::to_string(as.e.cols()) + " (" +
                                                    std::to_string(as.active.size()) + " active nodes)");
    }
    return as;
}

/// a = D^{-1} E (E^t D^{-1} E)^{-1} c over the active rows. At a coincident
/// node the coefficients are the unit vector on that node.
[[nodiscard]] inline MlsSolution solve_coefficients(const Assembly& as) {
    MlsSolution sol;
    sol.a.assign(static_cast<std::size_t>(as.e.rows()), 0.0);
    sol.active = as.active;
    sol.coincident = as.coincident;
    if (as.coincident) {
        sol.a[*as.coincident] = 1.0;
        return sol;
    }
    const Eigen::MatrixXd rows = detail::active_rows(as);
    Eigen::VectorXd dinv(static_cast<Eigen::Index>(as.active.size()));
    for (std::size_t r = 0; r < as.active.size(); ++r) {
        dinv(static_cast<Eigen::Index>(r)) = as.d_inverse(static_cast<Eigen::Index>(as.active[r]));
    }
    sol.normal = rows.transpose() * dinv.asDiagonal() * rows;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sol.normal);
    const double rcond = lu.rcond();
    if (!(rcond >= kSingularRcond)) {
        throw Error(ErrorCode::singular_normal_matrix,
                    "E^t D^-1 E reciprocal condition " + std::to_string(rcond) + " below threshold");
    }
    const Eigen::VectorXd y = lu.solve(as.c);
    const Eigen::VectorXd a_active = dinv.asDiagonal() * (rows * y);
    for (std::size_t r = 0; r < as.active.size(); ++r) sol.a[as.active[r]] = a_active(static_cast<Eigen::Index>(r));
    return sol;
}

template <std::size_t Dim>
[[nodiscard]] MlsSolution mls_coefficients(const MlsProblem<Dim>& problem, const Point<Dim>& x) {
    return solve_coefficients(assemble(problem, x));
}

/// L(f)(x) = sum_i a_i f(x_i); returns f(x_k) exactly when x sits on an
/// interpolating node x_k.
template <std::size_t Dim>
[[nodiscard]] double mls_apply(const MlsProblem<Dim>& problem, std::span<const double> values, const Point<Dim>& x) {
    if (values.size() != problem.node_count()) {
        throw Error(ErrorCode::invalid_argument, "expected " + std::to_string(problem.node_count()) +
                                                     " values, got " + std::to_string(values.size()));
    }
    const auto sol = mls_coefficients(problem, x);
    if (sol.coincident) return values[*sol.coincident];
    double sum = 0.0;
    for (std::size_t i : sol.active) sum += sol.a[i] * values[i];
    return sum;
}

/// Diagnostic record of the solvability conditions at x.
struct H1Report {
    bool constant_in_basis = false;  ///< 1 is in the polynomial space
    bool enough_nodes = false;       ///< l <= m, m counted over the active set
    bool full_rank = false;          ///< rank of the active rows of E equals l
    std::size_t basis_size = 0;
    std::size_t active_count = 0;
    std::size_t rank = 0;

    [[nodiscard]] bool passed() const noexcept {
        return constant_in_basis && basis_size >= 1 && enough_nodes && full_rank;
    }
};

template <std::size_t Dim>
[[nodiscard]] H1Report check_h1(const MlsProblem<Dim>& problem, const Point<Dim>& x) {
    const auto as = assemble_unchecked(problem, x);
    H1Report report;
    report.constant_in_basis = problem.basis().has_constant();
    report.basis_size = problem.basis().size();
    report.active_count = as.active.size();
    report.enough_nodes = report.basis_size <= report.active_count;
    report.rank = static_cast<std::size_t>(detail::active_rank(as));
    report.full_rank = report.rank == report.basis_size;
    return report;
}

}  // namespace bsmls
