#pragma once

/// Numerical certificates that uniform B-spline curves and surfaces coincide
/// with moving least-squares approximants under the cardinal B-spline weight.
///
/// Curve identity checked: gamma_2(t) = L(f)(t - r/2) with nodes x_i = i,
/// l = 1 and W_r(s) = B_{0,r}(s + r/2). The offset r/2 is gamma_1(t) - t for
/// control points (i, f(i)), i.e. the Greville offset (2 for cubics).

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bsmls/curve.hpp"
#include "bsmls/error.hpp"
#include "bsmls/mls.hpp"
#include "bsmls/polynomial_basis.hpp"
#include "bsmls/surface.hpp"
#include "bsmls/weight.hpp"

namespace bsmls {

struct VerificationSample {
    std::vector<double> point;  ///< spline parameter (t or (u, v)), or x for interpolation
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

struct VerificationReport {
    std::string check;
    std::vector<VerificationSample> samples;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double shift = 0.0;  ///< MLS abscissa = parameter - shift

    [[nodiscard]] static VerificationReport start(std::string check, double tolerance, double shift) {
        VerificationReport r;
        r.check = std::move(check);
        r.tolerance = tolerance;
        r.shift = shift;
        return r;
    }

    void add(std::vector<double> point, double lhs, double rhs) {
        const double residual = std::abs(lhs - rhs);
        max_residual = std::max(max_residual, residual);
        samples.push_back({std::move(point), lhs, rhs, residual});
    }

    void finish() {
        if (samples.empty()) throw Error(ErrorCode::empty_samples, check + ": no samples");
        passed = max_residual <= tolerance;
    }
};

/// W_r(s) = B_{0,r}(s + r/2).
[[nodiscard]] inline WeightSpec cardinal_weight(int r) { return WeightSpec::cardinal_bspline(r); }

/// W~ = W + delta, w~ = 1/(W + delta) - 3/(2 + 3 delta); requires max W = 2/3.
[[nodiscard]] inline WeightSpec make_interpolatory(const WeightSpec& base, double delta) {
    return WeightSpec::shifted_interpolatory(base, delta);
}

namespace detail {

inline void check_sampling(int sample_count, double tol) {
    if (sample_count < 2) throw Error(ErrorCode::invalid_argument, "sample count must be >= 2");
    if (!(tol >= 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be non-negative");
}

[[nodiscard]] inline double lerp_sample(double a, double b, int k, int count) {
    return k == count - 1 ? b : a + (b - a) * k / (count - 1);
}

[[nodiscard]] inline MlsProblem<1> integer_node_problem(int n, int degree, const WeightSpec& weight) {
    std::vector<Point<1>> nodes;
    for (int i = 0; i <= n; ++i) nodes.push_back({double(i)});
    return MlsProblem<1>(std::move(nodes), monomial_basis(1, degree), weight);
}

inline void check_values(std::span<const double> f_values, int n) {
    if (n < 0 || f_values.size() != static_cast<std::size_t>(n + 1)) {
        throw Error(ErrorCode::invalid_argument, "expected n+1 = " + std::to_string(n + 1) + " values, got " +
                                                     std::to_string(f_values.size()));
    }
}

}  // namespace detail

/// gamma_2(t) against L(f)(t - r/2) for t sampled uniformly on [r-1, n+1].
[[nodiscard]] inline VerificationReport verify_curve_equivalence(std::span<const double> f_values, int n, int r,
                                                                 int sample_count, double tol) {
    detail::check_values(f_values, n);
    detail::check_sampling(sample_count, tol);
    const auto curve = make_graph_curve({f_values.begin(), f_values.end()}, r);
    const auto problem = detail::integer_node_problem(n, 0, cardinal_weight(r));
    auto report = VerificationReport::start("curve-equivalence", tol, r / 2.0);
    const double a = curve.knots().domain_begin();
    const double b = curve.knots().domain_end();
    for (int k = 0; k < sample_count; ++k) {
        const double t = detail::lerp_sample(a, b, k, sample_count);
        report.add({t}, curve_eval(curve, t)[1], mls_apply(problem, f_values, Point<1>{t - report.shift}));
    }
    report.finish();
    return report;
}

/// The unnormalised sum sum_i W_r(x - i) f(i) against L(f)(x), x = t - r/2,
/// for t on [r-1, n+1]. Both agree because sum_i W_r(x - i) = 1 there.
[[nodiscard]] inline VerificationReport verify_whole_interval(std::span<const double> f_values, int n, int r,
                                                              int sample_count, double tol) {
    detail::check_values(f_values, n);
    detail::check_sampling(sample_count, tol);
    (void)make_uniform_knots(n, r);
    const auto weight = cardinal_weight(r);
    const auto problem = detail::integer_node_problem(n, 0, weight);
    auto report = VerificationReport::start("whole-interval", tol, r / 2.0);
    for (int k = 0; k < sample_count; ++k) {
        const double t = detail::lerp_sample(r - 1.0, n + 1.0, k, sample_count);
        const double x = t - report.shift;
        double direct = 0.0;
        for (int i = 0; i <= n; ++i) direct += weight_eval(weight, x - i) * f_values[static_cast<std::size_t>(i)];
        report.add({t}, direct, mls_apply(problem, f_values, Point<1>{x}));
    }
    report.finish();
    return report;
}

/// L(f) under the interpolatory weight (cubic cardinal base, shift delta) on
/// the grid x = l/100, l = 1..grid_points.
[[nodiscard]] inline std::vector<std::pair<double, double>> interpolation_curve(std::span<const double> f_values,
                                                                                int n, double delta,
                                                                                int grid_points) {
    detail::check_values(f_values, n);
    const auto problem = detail::integer_node_problem(n, 0, make_interpolatory(cardinal_weight(4), delta));
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(std::max(grid_points, 0)));
    for (int l = 1; l <= grid_points; ++l) {
        const double x = l / 100.0;
        out.emplace_back(x, mls_apply(problem, f_values, Point<1>{x}));
    }
    return out;
}

/// Nodal residuals |L(f)(x_i) - f(x_i)| for every node hit by the grid
/// x = l/100, l = 1..sample_count.
[[nodiscard]] inline VerificationReport verify_interpolation(std::span<const double> f_values, int n, double delta,
                                                             int sample_count, double tol) {
    detail::check_sampling(sample_count, tol);
    const auto curve = interpolation_curve(f_values, n, delta, sample_count);
    auto report = VerificationReport::start("interpolation", tol, 0.0);
    for (int l = 100; l <= sample_count; l += 100) {
        const int node = l / 100;
        if (node > n) break;
        report.add({curve[static_cast<std::size_t>(l - 1)].first}, curve[static_cast<std::size_t>(l - 1)].second,
                   f_values[static_cast<std::size_t>(node)]);
    }
    report.finish();
    return report;
}

/// Two-dimensional problem on the integer grid with the separable weight
/// W_r(x - i) W_r(y - j) and l = 1. Node order matches ValueGrid::values().
[[nodiscard]] inline MlsProblem<2> surface_problem(int n, int r) {
    std::vector<Point<2>> nodes;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) nodes.push_back({double(i), double(j)});
    }
    return MlsProblem<2>(std::move(nodes), monomial_basis(2, 0), WeightSpec::tensor_product(cardinal_weight(r)));
}

/// gamma_3(u, v) against L2(f)(u - r/2, v - r/2) on a sample_count^2 grid
/// over [r-1, n]^2.
[[nodiscard]] inline VerificationReport verify_surface_equivalence(const ValueGrid& f_grid, int n, int r,
                                                                   int sample_count, double tol) {
    if (f_grid.n() != n) throw Error(ErrorCode::invalid_argument, "grid size does not match n");
    detail::check_sampling(sample_count, tol);
    const auto surface = make_height_surface(f_grid, r);
    const auto problem = surface_problem(n, r);
    auto report = VerificationReport::start("surface-equivalence", tol, r / 2.0);
    for (int a = 0; a < sample_count; ++a) {
        const double u = detail::lerp_sample(r - 1.0, n, a, sample_count);
        for (int b = 0; b < sample_count; ++b) {
            const double v = detail::lerp_sample(r - 1.0, n, b, sample_count);
            const Point<2> x{u - report.shift, v - report.shift};
            report.add({u, v}, surface_eval(surface, u, v)[2], mls_apply(problem, f_grid.values(), x));
        }
    }
    report.finish();
    return report;
}

/// Search settings for brute_force_minimize.
struct SearchGrid {
    int points = 2001;             ///< grid points per coefficient (reduced for l = 3)
    int refinement_rounds = 2;
    double shrink = 100.0;         ///< range reduction per refinement round
    double max_evaluations = 4.2e6;
    int expansions = 16;           ///< times the initial box may grow 4x around a boundary winner
};

namespace detail {

class WeightedObjective {
public:
    WeightedObjective(std::vector<std::vector<double>> basis_rows, std::vector<double> weights,
                      std::vector<double> values)
        : rows_(std::move(basis_rows)), weights_(std::move(weights)), values_(std::move(values)) {}

    [[nodiscard]] std::size_t dim() const noexcept { return rows_.front().size(); }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
    [[nodiscard]] double basis_value(std::size_t i, std::size_t k) const { return rows_[i][k]; }
    [[nodiscard]] double weight(std::size_t i) const { return weights_[i]; }
    [[nodiscard]] double value(std::size_t i) const { return values_[i]; }

    /// objective(g + s d) - objective(g), accumulated without cancellation.
    [[nodiscard]] double increment(const std::vector<double>& res, const std::vector<double>& dir_rows,
                                   double s) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const double step = s * dir_rows[i];
            sum += weights_[i] * step * (2.0 * res[i] + step);
        }
        return sum;
    }

    [[nodiscard]] double residual(std::size_t i, const std::vector<double>& g) const {
        double p = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) p += g[k] * rows_[i][k];
        return p - values_[i];
    }

    [[nodiscard]] std::vector<double> residuals(const std::vector<double>& g) const {
        std::vector<double> res(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) res[i] = residual(i, g);
        return res;
    }

    [[nodiscard]] std::vector<double> along(const std::vector<double>& dir) const {
        std::vector<double> out(rows_.size(), 0.0);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            for (std::size_t k = 0; k < dir.size(); ++k) out[i] += dir[k] * rows_[i][k];
        }
        return out;
    }

private:
    std::vector<std::vector<double>> rows_;
    std::vector<double> weights_;
    std::vector<double> values_;
};

/// Best point of a tensor grid with `count` points per axis; `on_boundary`
/// reports whether the winner touches the edge of any axis. Axis 0 is the
/// innermost loop; the outer axes contribute a fixed partial residual.
inline std::vector<double> scan_grid(const WeightedObjective& obj, const std::vector<double>& center,
                                     const std::vector<double>& half_width, int count, bool& on_boundary) {
    const std::size_t dim = center.size();
    const std::size_t m = obj.rows();
    std::vector<std::vector<double>> axes(dim, std::vector<double>(static_cast<std::size_t>(count)));
    for (std::size_t k = 0; k < dim; ++k) {
        for (int i = 0; i < count; ++i) {
            axes[k][static_cast<std::size_t>(i)] =
                center[k] - half_width[k] + 2.0 * half_width[k] * i / (count - 1);
        }
    }
    std::vector<double> inner(m);
    std::vector<double> partial(m);
    for (std::size_t i = 0; i < m; ++i) inner[i] = obj.basis_value(i, 0);

    std::vector<int> outer(dim, 0);
    std::vector<int> best_idx(dim, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t i = 0; i < m; ++i) {
            double p = -obj.value(i);
            for (std::size_t k = 1; k < dim; ++k) p += axes[k][static_cast<std::size_t>(outer[k])] * obj.basis_value(i, k);
            partial[i] = p;
        }
        for (int i0 = 0; i0 < count; ++i0) {
            const double g0 = axes[0][static_cast<std::size_t>(i0)];
            double sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double r = partial[i] + g0 * inner[i];
                sum += obj.weight(i) * r * r;
            }
            if (sum < best) {
                best = sum;
                best_idx = outer;
                best_idx[0] = i0;
            }
        }
        std::size_t k = 1;
        while (k < dim && ++outer[k] == count) outer[k++] = 0;
        if (k >= dim) break;
    }
    on_boundary = std::any_of(best_idx.begin(), best_idx.end(), [&](int i) { return i == 0 || i == count - 1; });
    std::vector<double> g(dim);
    for (std::size_t k = 0; k < dim; ++k) g[k] = axes[k][static_cast<std::size_t>(best_idx[k])];
    return g;
}

/// Derivative-free line search along `dir` from g: scan 101 steps (moving
/// the window while the best step sits on its edge), shrink the step 25x,
/// repeat. Returns the accepted displacement multiplier.
inline double line_search(const WeightedObjective& obj, std::vector<double>& g, const std::vector<double>& dir,
                          double step) {
    const auto dir_rows = obj.along(dir);
    const auto res = obj.residuals(g);
    double best_s = 0.0;
    double best_inc = 0.0;
    for (int round = 0; round < 12; ++round) {
        for (int slide = 0; slide < 64; ++slide) {
            const double center = best_s;
            for (int j = -50; j <= 50; ++j) {
                const double s = center + j * step;
                if (const double inc = obj.increment(res, dir_rows, s); inc < best_inc) {
                    best_inc = inc;
                    best_s = s;
                }
            }
            if (std::abs(best_s - center) < 50.0 * step) break;
        }
        step /= 25.0;
    }
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += best_s * dir[k];
    return best_s;
}

}  // namespace detail

/// Value at x of the polynomial p in the problem's space minimising
/// sum_i W(|x - x_i|) (p(x_i) - f(x_i))^2, found by search alone: a dense
/// coefficient grid, refinement rounds around the best cell, then coordinate
/// descent with pattern moves. The space is parametrised by the same
/// monomials in (y - x)/h, so p(x) is the constant coefficient. Serves as
/// an oracle for mls_apply and never touches its solve path.
template <std::size_t Dim>
[[nodiscard]] double brute_force_minimize(const MlsProblem<Dim>& problem, std::span<const double> values,
                                          const Point<Dim>& x, const SearchGrid& search = {}) {
    if (values.size() != problem.node_count()) throw Error(ErrorCode::invalid_argument, "value count mismatch");
    const auto& basis = problem.basis();
    const std::size_t l = basis.size();
    if (l > 3) throw Error(ErrorCode::invalid_argument, "brute-force oracle supports l <= 3");

    std::vector<std::size_t> active;
    std::vector<double> weights;
    double max_weight = 0.0;
    for (std::size_t i = 0; i < problem.node_count(); ++i) {
        const double w = problem.weight_at(i, x);
        if (std::isinf(w)) return values[i];
        if (w > 0.0) {
            active.push_back(i);
            weights.push_back(w);
            max_weight = std::max(max_weight, w);
        }
    }
    if (active.empty()) throw Error(ErrorCode::rank_deficiency, "no node carries weight at the query point");
    for (double& w : weights) w /= max_weight;

    double h = 0.0;
    for (std::size_t i : active) h = std::max(h, distance(problem.nodes()[i], x));
    if (h == 0.0) h = 1.0;

    std::vector<std::vector<double>> rows;
    std::vector<double> f;
    double f_min = std::numeric_limits<double>::infinity();
    double f_max = -f_min;
    for (std::size_t i : active) {
        Point<Dim> u{};
        for (std::size_t k = 0; k < Dim; ++k) u[k] = (problem.nodes()[i][k] - x[k]) / h;
        std::vector<double> row(l);
        for (std::size_t k = 0; k < l; ++k) row[k] = basis.eval(k, u);
        rows.push_back(std::move(row));
        f.push_back(values[i]);
        f_min = std::min(f_min, values[i]);
        f_max = std::max(f_max, values[i]);
    }
    const detail::WeightedObjective objective(std::move(rows), std::move(weights), std::move(f));

    const double span = f_max > f_min ? f_max - f_min : 1.0;
    const double magnitude = std::max(std::abs(f_min), std::abs(f_max)) + span;
    std::vector<double> center(l, 0.0);
    std::vector<double> half(l, 4.0 * magnitude);
    center[0] = 0.5 * (f_min + f_max);
    half[0] = 0.5 * (f_max - f_min) + span;

    int count = search.points;
    if (l > 1) {
        const int cap = static_cast<int>(std::floor(std::pow(search.max_evaluations, 1.0 / static_cast<double>(l))));
        count = std::min(count, cap);
    }
    if (count % 2 == 0) --count;
    if (count < 3) throw Error(ErrorCode::invalid_argument, "search grid needs at least 3 points per axis");

    bool on_boundary = false;
    auto g = detail::scan_grid(objective, center, half, count, on_boundary);
    for (int grow = 0; on_boundary && grow < search.expansions; ++grow) {
        for (double& w : half) w *= 4.0;
        g = detail::scan_grid(objective, g, half, count, on_boundary);
    }
    if (on_boundary) {
        throw Error(ErrorCode::grid_too_coarse, "minimum lies on the boundary of the coefficient grid");
    }
    for (int round = 0; round < search.refinement_rounds; ++round) {
        for (std::size_t k = 0; k < l; ++k) {
            const double spacing = 2.0 * half[k] / (count - 1);
            half[k] = std::max(half[k] / search.shrink, 2.0 * spacing);
        }
        for (int attempt = 0; attempt < 8; ++attempt) {
            g = detail::scan_grid(objective, g, half, count, on_boundary);
            if (!on_boundary) break;
        }
    }

    // Powell's conjugate directions, starting from the grid spacing along each axis
    std::vector<std::vector<double>> dirs(l, std::vector<double>(l, 0.0));
    for (std::size_t k = 0; k < l; ++k) dirs[k][k] = 2.0 * half[k] / (count - 1);
    for (int iter = 0; iter < 60; ++iter) {
        const auto start = g;
        for (const auto& d : dirs) detail::line_search(objective, g, d, 1.0);
        std::vector<double> disp(l);
        double moved = 0.0;
        for (std::size_t k = 0; k < l; ++k) {
            disp[k] = g[k] - start[k];
            moved = std::max(moved, std::abs(disp[k]));
        }
        if (moved == 0.0) break;
        detail::line_search(objective, g, disp, 1.0);
        dirs.erase(dirs.begin());
        dirs.push_back(disp);
    }
    return g[0];
}

}  // namespace bsmls
