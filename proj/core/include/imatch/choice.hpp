#pragma once

#include <span>
#include <vector>

#include "imatch/market.hpp"

namespace imatch {

/// Acceptant, responsive choice under a capacity.
///
/// Returns every acceptable partner in `offered` when there are at most
/// `capacity` of them, otherwise the `capacity` best under the agent's
/// preference. Unacceptable partners are never chosen. The result is ordered
/// best first. Throws std::invalid_argument when capacity < 1.
std::vector<int> choose(const Market& market, AgentId agent, std::span<const int> offered,
                        int capacity);

}  // namespace imatch
