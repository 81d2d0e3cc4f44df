#pragma once

// Many independent torque-balance solves at once. The OpenMP kernel and the
// serial reference must produce bit-identical results.

#include <array>
#include <optional>
#include <span>

#include "pipeclimb/differential.hpp"
#include "pipeclimb/error.hpp"

namespace pipeclimb {

struct BalanceProblem {
    double input_speed = 0.0;
    std::array<LoadCurve, 3> loads{};
    TransmissionConfig config;
};

struct BalanceOutcome {
    TorqueBalance balance;
    std::optional<ErrorCode> error;
};

/// out.size() must equal problems.size(); throws InvalidConfig otherwise.
void solve_torque_balance_batch(std::span<const BalanceProblem> problems,
                                std::span<BalanceOutcome> out, const SolverOptions& options = {});

void solve_torque_balance_batch_serial(std::span<const BalanceProblem> problems,
                                       std::span<BalanceOutcome> out,
                                       const SolverOptions& options = {});

}  // namespace pipeclimb
