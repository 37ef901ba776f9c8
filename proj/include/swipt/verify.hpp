#pragma once

#include "swipt/allocator.hpp"
#include "swipt/experiment.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace swipt {

/// Tolerances used when auditing a returned allocation.
struct AuditTolerance {
    double cap = 1e-12;        ///< p_i <= p_max + cap
    double balance = 1e-6;     ///< |sum S| <= balance * (eta sum E + 1) when neutral
    double ratio = 1e-9;       ///< sqrt(p)/gamma vs kappa, relative to max(1, kappa)
    double identity = 1e-12;   ///< p = E + D - C, relative to 1 + p + E
};

/// Checks every structural property a returned optimal allocation must have:
/// charge/discharge complementarity, the power identity, caps, trade balance,
/// full-power test consistency, monotone full-power prefix and zero-power
/// suffix, tag/trade agreement, and the two shared threshold ratios with
/// kappa_l = eta^2 kappa_g. Returns one message per violation.
std::vector<std::string> audit_allocation(const Instance& inst, const Allocation& alloc,
                                          const AuditTolerance& tol = {});

/// Closed-form optimum when eta = 1 and nothing is capped:
/// p_k = gamma_k^2 sum(E) / sum(gamma^2).
std::vector<double> unit_efficiency_powers(const Instance& inst);

struct VerifyReport {
    std::size_t instances = 0;
    std::size_t grid_checked = 0;
    std::size_t ascent_checked = 0;
    std::size_t profitable = 0;
    std::size_t closed_form_checked = 0;
    double max_gap_grid = 0.0;    ///< max |alloc - grid| / max(1, alloc)
    double max_gap_ascent = 0.0;  ///< max |alloc - ascent| / max(1, alloc)
    double max_closed_form_error = 0.0;
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Oracle agreement required per instance (relative to max(1, objective)).
inline constexpr double kOracleAgreement = 1e-4;

/// Draws config.trials instances per (n, m, p_max, eta) point, solves each,
/// audits it, and compares against the ascent oracle (every n) and the grid
/// oracle (n <= 4).
VerifyReport run_verify(const ExperimentConfig& config);

void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace swipt
