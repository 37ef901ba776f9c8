#pragma once

#include "swipt/allocator.hpp"

#include <cstddef>
#include <vector>

namespace swipt {

/// Reference solvers for the power-allocation problem that rely only on its
/// definition (concave objective, separable concave trade constraint, box),
/// never on the threshold structure the allocator exploits.
enum class OracleMethod { GridSearch, ProjectedAscent };

struct OracleResult {
    std::vector<double> powers;
    double objective = 0.0;
    OracleMethod method = OracleMethod::GridSearch;
    double resolution = 0.0;  ///< final grid step, or ascent tolerance
    bool converged = true;
    std::size_t iterations = 0;
};

/// Feasibility slack on the summed trade state.
inline constexpr double kOracleFeasibilitySlack = 1e-9;

/// Largest problem size the grid oracle accepts.
inline constexpr std::size_t kGridOracleMaxRaus = 4;

/// Exhaustive search on {0, h, ..., p_max}^N with h = p_max / (steps - 1),
/// followed by six rounds of pattern search at h/10, h/100, ... The pattern
/// moves single coordinates and trades power between pairs of RAUs while
/// holding the trade balance.
/// Throws CapacityError for N > 4 and ParameterError for steps < 11.
OracleResult oracle_grid_search(const Instance& inst, std::size_t steps_per_axis);

/// Projected ascent on sum sqrt(p) gamma from p = min(E, p_max). Steps are
/// scaled by the diagonal Hessian, backtracked until sufficient increase, and
/// projected onto the feasible set in the matching weighted metric. Stops
/// when the relative objective change over 50 iterations drops below `tol`;
/// otherwise returns the best iterate with converged = false.
OracleResult oracle_ascent(const Instance& inst, double tol,
                           std::size_t max_iterations = 200000);

/// Euclidean projection of `point` onto {0 <= p <= p_max, sum S(p) >= 0}.
std::vector<double> project_feasible(const Instance& inst, std::vector<double> point);

}  // namespace swipt
