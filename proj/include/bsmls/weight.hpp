#pragma once

/// Weight functions W and their reciprocals w for moving least squares.
///
/// Catalog kinds follow the usual MLS literature: exp and Shepard are given
/// by W, McLain and Levin by w. The cardinal kind is the centred B-spline
/// W_r(s) = B_{0,r}(s + r/2). The shifted-interpolatory kind uses
/// W~ = W + delta and w~ = 1/(W + delta) - 3/(2 + 3 delta), which vanishes
/// only at s = 0.
///
/// The normal equations are driven by `mls_weight`, the effective weight
/// 1/w: zero outside a compact support, +inf where w = 0 (interpolating node).

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>

#include "bsmls/basis.hpp"
#include "bsmls/error.hpp"
#include "bsmls/point.hpp"

namespace bsmls {

enum class WeightKind { exp, shepard, mclain, levin, cardinal_bspline, shifted_interpolatory, tensor_product };

class WeightSpec {
public:
    [[nodiscard]] static WeightSpec exp(double alpha) { return catalog(WeightKind::exp, alpha); }
    [[nodiscard]] static WeightSpec shepard(double alpha) { return catalog(WeightKind::shepard, alpha); }
    [[nodiscard]] static WeightSpec mclain(double alpha) { return catalog(WeightKind::mclain, alpha); }
    [[nodiscard]] static WeightSpec levin(double alpha) { return catalog(WeightKind::levin, alpha); }

    [[nodiscard]] static WeightSpec cardinal_bspline(int order) {
        if (order < 1) throw Error(ErrorCode::order_out_of_range, "cardinal weight order must be >= 1");
        WeightSpec spec(WeightKind::cardinal_bspline);
        spec.order_ = order;
        return spec;
    }

    /// W~ = W_base + delta. The base must peak at 2/3 (the cubic cardinal
    /// weight); see make_interpolatory.
    [[nodiscard]] static WeightSpec shifted_interpolatory(const WeightSpec& base, double delta);

    /// Separable weight prod_k W_base(dx_k) for points in R^d. The base must
    /// be bounded at zero (exp or cardinal).
    [[nodiscard]] static WeightSpec tensor_product(const WeightSpec& base) {
        if (base.kind() != WeightKind::exp && base.kind() != WeightKind::cardinal_bspline) {
            throw Error(ErrorCode::unsupported_base, "tensor-product weight needs an exp or cardinal base");
        }
        WeightSpec spec(WeightKind::tensor_product);
        spec.base_ = std::make_shared<const WeightSpec>(base);
        return spec;
    }

    [[nodiscard]] WeightKind kind() const noexcept { return kind_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] bool has_base() const noexcept { return base_ != nullptr; }
    [[nodiscard]] const WeightSpec& base() const {
        if (!base_) throw Error(ErrorCode::invalid_argument, "weight has no base");
        return *base_;
    }

    /// Radius outside which W vanishes; +inf for globally supported kinds.
    [[nodiscard]] double support_radius() const noexcept {
        if (kind_ == WeightKind::cardinal_bspline) return order_ / 2.0;
        if (kind_ == WeightKind::tensor_product) return base_->support_radius();
        return std::numeric_limits<double>::infinity();
    }

    [[nodiscard]] std::string describe() const {
        std::ostringstream os;
        switch (kind_) {
            case WeightKind::exp: os << "exp(alpha=" << alpha_ << ")"; break;
            case WeightKind::shepard: os << "shepard(alpha=" << alpha_ << ")"; break;
            case WeightKind::mclain: os << "mclain(alpha=" << alpha_ << ")"; break;
            case WeightKind::levin: os << "levin(alpha=" << alpha_ << ")"; break;
            case WeightKind::cardinal_bspline: os << "cardinal(r=" << order_ << ")"; break;
            case WeightKind::shifted_interpolatory:
                os << "interpolatory(" << base_->describe() << ", delta=" << delta_ << ")";
                break;
            case WeightKind::tensor_product: os << "tensor(" << base_->describe() << ")"; break;
        }
        return os.str();
    }

private:
    explicit WeightSpec(WeightKind kind) : kind_(kind) {}

    static WeightSpec catalog(WeightKind kind, double alpha) {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw Error(ErrorCode::invalid_argument, "alpha must be positive and finite");
        }
        WeightSpec spec(kind);
        spec.alpha_ = alpha;
        return spec;
    }

    WeightKind kind_;
    double alpha_ = 1.0;
    int order_ = 0;
    double delta_ = 0.0;
    std::shared_ptr<const WeightSpec> base_;
};

namespace detail {

inline void require_nonnegative(const WeightSpec& spec, double s) {
    if (!(s >= 0.0)) {
        throw Error(ErrorCode::invalid_argument, spec.describe() + " takes s >= 0, got " + std::to_string(s));
    }
}

inline double cardinal_value(int order, double s) { return uniform_basis(0, order, s + order / 2.0); }

/// w~(s) = 1/(W(s)+delta) - 1/(W(0)+delta), written as one fraction; exactly 0
/// at s = 0 and clamped at 0 against rounding near the peak.
inline double shifted_reciprocal(const WeightSpec& spec, double s) {
    if (s == 0.0) return 0.0;
    const double peak = cardinal_value(spec.base().order(), 0.0);
    const double value = cardinal_value(spec.base().order(), s);
    const double delta = spec.delta();
    const double w = (peak - value) / ((value + delta) * (peak + delta));
    return w > 0.0 ? w : 0.0;
}

}  // namespace detail

inline WeightSpec WeightSpec::shifted_interpolatory(const WeightSpec& base, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw Error(ErrorCode::invalid_argument, "delta must be positive and finite");
    }
    if (base.kind() != WeightKind::cardinal_bspline ||
        std::abs(detail::cardinal_value(base.order(), 0.0) - 2.0 / 3.0) > 1e-14) {
        throw Error(ErrorCode::unsupported_base,
                    "interpolatory shift needs a base weight with maximum 2/3, got " + base.describe());
    }
    WeightSpec spec(WeightKind::shifted_interpolatory);
    spec.delta_ = delta;
    spec.base_ = std::make_shared<const WeightSpec>(base);
    return spec;
}

/// W(s). Catalog kinds require s >= 0; cardinal, shifted and tensor-product
/// kinds are even and accept signed s. Returns +inf where W(0) = inf.
[[nodiscard]] inline double weight_eval(const WeightSpec& spec, double s) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double a2 = spec.alpha() * spec.alpha();
    switch (spec.kind()) {
        case WeightKind::exp:
            detail::require_nonnegative(spec, s);
            return std::exp(-a2 * s * s);
        case WeightKind::shepard:
            detail::require_nonnegative(spec, s);
            return s == 0.0 ? inf : std::pow(s, -a2);
        case WeightKind::mclain:
            detail::require_nonnegative(spec, s);
            return s == 0.0 ? inf : std::exp(a2 * s * s) / (s * s);
        case WeightKind::levin:
            detail::require_nonnegative(spec, s);
            return s == 0.0 ? inf : 1.0 / std::expm1(a2 * s * s);
        case WeightKind::cardinal_bspline:
            return detail::cardinal_value(spec.order(), s);
        case WeightKind::shifted_interpolatory:
            return detail::cardinal_value(spec.base().order(), s) + spec.delta();
        case WeightKind::tensor_product:
            return weight_eval(spec.base(), spec.base().kind() == WeightKind::exp ? std::abs(s) : s);
    }
    return 0.0;
}

/// w(s) = 1/W(s), or 0 where W(0) = inf; McLain, Levin and the shifted
/// kind evaluate their own closed form. Throws division_by_zero_weight
/// where W(s) = 0, i.e. outside a compact support.
[[nodiscard]] inline double reciprocal_weight(const WeightSpec& spec, double s) {
    const double a2 = spec.alpha() * spec.alpha();
    switch (spec.kind()) {
        case WeightKind::mclain:
            detail::require_nonnegative(spec, s);
            return s * s * std::exp(-a2 * s * s);
        case WeightKind::levin:
            detail::require_nonnegative(spec, s);
            return std::expm1(a2 * s * s);
        case WeightKind::shifted_interpolatory:
            return detail::shifted_reciprocal(spec, s);
        default: {
            const double w = weight_eval(spec, s);
            if (std::isinf(w)) return 0.0;
            if (w == 0.0) {
                throw Error(ErrorCode::division_by_zero_weight,
                            spec.describe() + " vanishes at s=" + std::to_string(s));
            }
            return 1.0 / w;
        }
    }
}

/// Effective weight 1/w entering D^{-1} = diag(1/(2w)). Zero outside a
/// compact support (w is never formed there), +inf where w(s) = 0.
[[nodiscard]] inline double mls_weight(const WeightSpec& spec, double s) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (spec.kind()) {
        case WeightKind::mclain:
        case WeightKind::levin:
        case WeightKind::shifted_interpolatory: {
            const double w = reciprocal_weight(spec, s);
            return w == 0.0 ? inf : 1.0 / w;
        }
        default:
            return weight_eval(spec, s);
    }
}

/// Effective weight for a displacement x - x_i in R^Dim: the Euclidean norm
/// for radial kinds, the per-coordinate product for tensor-product kinds.
template <std::size_t Dim>
[[nodiscard]] double mls_weight(const WeightSpec& spec, const Point<Dim>& displacement) {
    if (spec.kind() == WeightKind::tensor_product) {
        double product = 1.0;
        for (double dx : displacement) {
            product *= weight_eval(spec, dx);
            if (product == 0.0) break;
        }
        return product;
    }
    return mls_weight(spec, distance(displacement, Point<Dim>{}));
}

}  // namespace bsmls
