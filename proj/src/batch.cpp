#include "pipeclimb/batch.hpp"

#include <cstddef>

namespace pipeclimb {

namespace {

BalanceOutcome solve_one(const BalanceProblem& p, const SolverOptions& options) {
    BalanceOutcome out;
    try {
        out.balance = solve_torque_balance(p.input_speed, p.loads, p.config, options);
    } catch (const Error& e) {
        out.error = e.code();
    }
    return out;
}

void check_sizes(std::size_t problems, std::size_t out) {
    if (problems != out) throw Error(ErrorCode::InvalidConfig, "batch output size mismatch");
}

}  // namespace

void solve_torque_balance_batch(std::span<const BalanceProblem> problems,
                                std::span<BalanceOutcome> out, const SolverOptions& options) {
    check_sizes(problems.size(), out.size());
    const auto n = static_cast<std::ptrdiff_t>(problems.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = solve_one(problems[k], options);
    }
}

void solve_torque_balance_batch_serial(std::span<const BalanceProblem> problems,
                                       std::span<BalanceOutcome> out,
                                       const SolverOptions& options) {
    check_sizes(problems.size(), out.size());
    for (std::size_t k = 0; k < problems.size(); ++k) out[k] = solve_one(problems[k], options);
}

}  // namespace pipeclimb
