#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace swipt {

/// One power-allocation problem in sorted-gain order.
///
/// Maximize (sum_i sqrt(p_i) gamma_i)^2 subject to 0 <= p_i <= p_max and
/// sum_i S_i >= 0, where RAU i trades C_i = [E_i - p_i]^+ to the grid or
/// draws D_i = [p_i - E_i]^+ from it and S_i = eta C_i - D_i / eta.
struct Instance {
    std::vector<double> gains;    ///< gamma_i > 0, non-increasing
    std::vector<double> harvest;  ///< E_i >= 0
    double p_max = 1.0;
    double eta = 1.0;  ///< grid transfer efficiency, (0, 1]

    std::size_t size() const noexcept { return gains.size(); }

    /// Throws ParameterError if any invariant is broken.
    void validate() const;
};

struct TradePlan {
    std::vector<double> charge;     ///< C_i
    std::vector<double> discharge;  ///< D_i
    std::vector<double> states;     ///< S_i = eta C_i - D_i / eta

    double sum_state() const;
};

enum class RauTag { FullPower, ZeroPower, Charging, Discharging, Passive };
enum class Scenario { Profitable, Neutral };

std::string_view to_string(RauTag tag) noexcept;
std::string_view to_string(Scenario scenario) noexcept;

struct Allocation {
    std::vector<double> powers;
    TradePlan trade;
    std::optional<double> kappa_g;  ///< charging threshold on sqrt(p)/gamma
    std::optional<double> kappa_l;  ///< discharging threshold, eta^2 kappa_g
    std::vector<RauTag> classification;
    Scenario scenario = Scenario::Neutral;
    double objective = 0.0;  ///< (sum sqrt(p) gamma)^2
};

struct TradeSplit {
    double charge = 0.0;
    double discharge = 0.0;
};

/// Charge/discharge amounts that realize `power` from `harvest`; never both
/// positive.
TradeSplit trade_split(double power, double harvest);

/// eta C - D / eta. Throws ContractViolation if both C and D are positive,
/// ParameterError if eta is outside (0, 1].
double trade_state(double charge, double discharge, double eta);

/// Trade state of a RAU transmitting `power` with harvest `harvest`.
double trade_state_at(double power, double harvest, double eta);

/// True when every RAU can transmit at p_max without putting the grid in
/// deficit, in which case all-p_max is optimal.
bool profitable_full_power_test(const Instance& inst);

struct ThresholdDecision {
    double power = 0.0;
    RauTag tag = RauTag::Passive;
};

/// Double-threshold rule for one interior RAU, with kappa_l = eta^2 kappa_g:
/// charge down to gamma^2 kappa_g^2 when E exceeds it, discharge up to
/// gamma^2 kappa_l^2 when E falls below it, otherwise spend exactly E.
/// The p_max cap is not applied.
ThresholdDecision threshold_power(double gain, double harvest, double kappa_g, double eta);

/// Sum of trade states of the `free_set` RAUs under the threshold rule at
/// `kappa_g`, plus `fixed_balance`. Non-increasing in kappa_g.
double trade_balance(std::span<const std::size_t> free_set, const Instance& inst,
                     double fixed_balance, double kappa_g);

/// Root of trade_balance in kappa_g >= 0 by bracketed bisection. Returns 0
/// when the balance at kappa_g = 0 is already <= 0. Throws ParameterError on
/// an empty free set.
double solve_kappa(std::span<const std::size_t> free_set, const Instance& inst,
                   double fixed_balance);

/// Mutable state of the elimination loop. RAUs are either free (powers set
/// by the threshold rule at kappa_g) or pinned at p_max / zero, in which
/// case their trade state is folded into fixed_balance.
struct WorkingState {
    std::vector<double> powers;
    std::vector<RauTag> tags;           ///< threshold tag for free RAUs
    std::vector<std::size_t> free_set;  ///< ascending index = descending gain
    std::vector<bool> pinned_full;
    std::vector<bool> pinned_zero;
    double fixed_balance = 0.0;
    double kappa_g = 0.0;

    static WorkingState all_free(const Instance& inst);
};

/// Solves kappa over the free set and sets free RAU powers from it.
void assign_free_powers(WorkingState& state, const Instance& inst);

/// Pins every free RAU whose current power reaches p_max, plus the
/// better-gain RAUs implied by monotone full-power structure. Returns true
/// if anything was pinned (kappa must then be re-solved).
bool find_full_power_raus(WorkingState& state, const Instance& inst);

/// Repeats assign_free_powers / find_full_power_raus to a fixed point.
void settle_full_power(WorkingState& state, const Instance& inst);

/// Tries forcing the worst-gain free RAU to zero power. The trial is settled
/// against the cap before its objective is compared; the state is replaced
/// only on strict improvement.
bool find_zero_power_raus(WorkingState& state, const Instance& inst);

/// Globally optimal allocation.
Allocation optimal_allocation(const Instance& inst);

/// (sum_i sqrt(p_i) gamma_i)^2. Throws ParameterError on negative power or
/// length mismatch.
double objective_value(std::span<const double> powers, std::span<const double> gains);

/// Fills trade plan and objective from powers.
Allocation make_allocation(const Instance& inst, std::vector<double> powers);

}  // namespace swipt
