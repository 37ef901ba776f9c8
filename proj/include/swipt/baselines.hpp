#pragma once

#include "swipt/allocator.hpp"

namespace swipt {

/// Greedy reference policy. Every RAU first spends its own harvest (capped
/// at p_max) and sells any surplus to the grid. The pooled grid credit
/// eta * sum(C) then tops up the non-saturated RAUs in descending-gain order;
/// a top-up of D costs D / eta of credit. The last top-up may be partial.
Allocation greedy_allocation(const Instance& inst);

/// Adaptive water-filling on the effective gains:
/// p_k = min(p_max, [level - 1/gamma_k]^+) with the level chosen so the grid
/// trade balance is zero. If the balance stays positive with every RAU at
/// p_max, all RAUs transmit at p_max.
Allocation waterfilling_allocation(const Instance& inst);

/// Water-filling powers at a given level (no balance search).
std::vector<double> waterfilling_powers(const Instance& inst, double level);

}  // namespace swipt
