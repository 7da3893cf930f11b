#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsmls {

/// Failure categories raised by the library.
enum class ErrorCode {
    invalid_argument,
    order_out_of_range,
    index_out_of_range,
    unsupported_order,
    parameter_out_of_domain,
    division_by_zero_weight,
    rank_deficiency,
    singular_normal_matrix,
    unsupported_base,
    grid_too_coarse,
    unknown_dataset,
    malformed_row,
    non_uniform_nodes,
    duplicate_node,
    io_failure,
    empty_samples,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::order_out_of_range: return "order-out-of-range";
        case ErrorCode::index_out_of_range: return "index-out-of-range";
        case ErrorCode::unsupported_order: return "unsupported-order";
        case ErrorCode::parameter_out_of_domain: return "parameter-out-of-domain";
        case ErrorCode::division_by_zero_weight: return "division-by-zero-weight";
        case ErrorCode::rank_deficiency: return "rank-deficiency";
        case ErrorCode::singular_normal_matrix: return "singular-normal-matrix";
        case ErrorCode::unsupported_base: return "unsupported-base";
        case ErrorCode::grid_too_coarse: return "grid-too-coarse";
        case ErrorCode::unknown_dataset: return "unknown-dataset";
        case ErrorCode::malformed_row: return "malformed-row";
        case ErrorCode::non_uniform_nodes: return "non-uniform-nodes";
        case ErrorCode::duplicate_node: return "duplicate-node";
        case ErrorCode::io_failure: return "io-failure";
        case ErrorCode::empty_samples: return "empty-samples";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bsmls
