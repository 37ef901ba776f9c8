#include "swipt/allocator.hpp"

#include "swipt/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace swipt {

namespace {

// Bisection stops on a relative bracket width or a balance residual scaled by
// the instance's total tradable energy.
constexpr double kBracketTolerance = 1e-12;
constexpr double kBalanceTolerance = 1e-10;
constexpr int kMaxBisection = 400;
constexpr int kMaxBracketDoubling = 2000;

// Zeroing a RAU must beat the incumbent by more than rounding noise.
constexpr double kZeroPowerGain = 64 * std::numeric_limits<double>::epsilon();

double balance_scale(const Instance& inst) {
    const double total = std::accumulate(inst.harvest.begin(), inst.harvest.end(), 0.0);
    return inst.eta * total + 1.0;
}

void pin_full(WorkingState& state, const Instance& inst, std::size_t k) {
    state.powers[k] = inst.p_max;
    state.pinned_full[k] = true;
    state.tags[k] = RauTag::FullPower;
    state.fixed_balance += trade_state_at(inst.p_max, inst.harvest[k], inst.eta);
}

}  // namespace

void Instance::validate() const {
    const std::size_t n = gains.size();
    if (n == 0) {
        throw ParameterError("instance has no RAUs");
    }
    if (harvest.size() != n) {
        throw ParameterError("gains and harvest differ in length");
    }
    if (!(p_max > 0.0) || !std::isfinite(p_max)) {
        throw ParameterError("p_max must be positive and finite");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw ParameterError("eta must lie in (0, 1]");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(gains[i] > 0.0) || !std::isfinite(gains[i])) {
            throw ParameterError("gain " + std::to_string(i) + " must be positive and finite");
        }
        if (i > 0 && gains[i] > gains[i - 1]) {
            throw ParameterError("gains must be sorted in descending order");
        }
        if (!(harvest[i] >= 0.0) || !std::isfinite(harvest[i])) {
            throw ParameterError("harvest " + std::to_string(i) +
                                 " must be non-negative and finite");
        }
    }
}

double TradePlan::sum_state() const {
    return std::accumulate(states.begin(), states.end(), 0.0);
}

std::string_view to_string(RauTag tag) noexcept {
    switch (tag) {
        case RauTag::FullPower: return "FullPower";
        case RauTag::ZeroPower: return "ZeroPower";
        case RauTag::Charging: return "Charging";
        case RauTag::Discharging: return "Discharging";
        case RauTag::Passive: return "Passive";
    }
    return "?";
}

std::string_view to_string(Scenario scenario) noexcept {
    return scenario == Scenario::Profitable ? "Profitable" : "Neutral";
}

TradeSplit trade_split(double power, double harvest) {
    return {std::max(harvest - power, 0.0), std::max(power - harvest, 0.0)};
}

double trade_state(double charge, double discharge, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw ParameterError("eta must lie in (0, 1]");
    }
    if (charge > 0.0 && discharge > 0.0) {
        throw ContractViolation("a RAU cannot charge and discharge the grid at once");
    }
    return eta * charge - discharge / eta;
}

double trade_state_at(double power, double harvest, double eta) {
    const auto [charge, discharge] = trade_split(power, harvest);
    return eta * charge - discharge / eta;
}

bool profitable_full_power_test(const Instance& inst) {
    const double n = static_cast<double>(inst.size());
    double total = 0.0;
    double surplus = 0.0;  // sum over E_i > p_max of (E_i - p_max)
    for (double e : inst.harvest) {
        total += e;
        if (e > inst.p_max) {
            surplus += e - inst.p_max;
        }
    }
    return total >= n * inst.p_max + (1.0 - inst.eta * inst.eta) * surplus;
}

ThresholdDecision threshold_power(double gain, double harvest, double kappa_g, double eta) {
    const double kappa_l = eta * eta * kappa_g;
    const double g2 = gain * gain;
    const double charge_level = g2 * kappa_g * kappa_g;
    if (harvest > charge_level) {
        return {charge_level, RauTag::Charging};
    }
    const double discharge_level = g2 * kappa_l * kappa_l;
    if (harvest < discharge_level) {
        return {discharge_level, RauTag::Discharging};
    }
    return {harvest, RauTag::Passive};
}

double trade_balance(std::span<const std::size_t> free_set, const Instance& inst,
                     double fixed_balance, double kappa_g) {
    double sum = fixed_balance;
    for (std::size_t k : free_set) {
        const double p = threshold_power(inst.gains[k], inst.harvest[k], kappa_g, inst.eta).power;
        sum += trade_state_at(p, inst.harvest[k], inst.eta);
    }
    return sum;
}

double solve_kappa(std::span<const std::size_t> free_set, const Instance& inst,
                   double fixed_balance) {
    if (free_set.empty()) {
        throw ParameterError("solve_kappa needs at least one free RAU");
    }
    auto balance = [&](double kappa) {
        return trade_balance(free_set, inst, fixed_balance, kappa);
    };
    if (balance(0.0) <= 0.0) {
        return 0.0;
    }
    const double tol_balance = kBalanceTolerance * balance_scale(inst);

    double worst_gain = std::numeric_limits<double>::infinity();
    for (std::size_t k : free_set) {
        worst_gain = std::min(worst_gain, inst.gains[k]);
    }
    double lo = 0.0;
    double hi = std::sqrt(inst.p_max) / worst_gain;
    for (int i = 0; balance(hi) > 0.0; ++i) {
        if (i >= kMaxBracketDoubling) {
            throw ParameterError("trade balance has no sign change");
        }
        lo = hi;
        hi *= 2.0;
    }

    double kappa = hi;
    for (int i = 0; i < kMaxBisection; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double b = balance(mid);
        kappa = mid;
        if (std::abs(b) <= tol_balance || hi - lo <= kBracketTolerance * (1.0 + mid)) {
            break;
        }
        if (b > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // The balance is piecewise linear in kappa^2. Solving the linear piece
    // active at the bisection point removes the remaining bracket error.
    const double eta = inst.eta;
    double intercept = fixed_balance;
    double slope = 0.0;
    for (std::size_t k : free_set) {
        const double g2 = inst.gains[k] * inst.gains[k];
        const double e = inst.harvest[k];
        switch (threshold_power(inst.gains[k], e, kappa, eta).tag) {
            case RauTag::Charging:
                intercept += eta * e;
                slope += eta * g2;
                break;
            case RauTag::Discharging:
                intercept += e / eta;
                slope += g2 * eta * eta * eta;
                break;
            default:
                break;
        }
    }
    if (slope > 0.0) {
        const double x = intercept / slope;
        if (x > 0.0) {
            const double polished = std::sqrt(x);
            if (std::abs(balance(polished)) < std::abs(balance(kappa))) {
                kappa = polished;
            }
        }
    }
    return kappa;
}

WorkingState WorkingState::all_free(const Instance& inst) {
    const std::size_t n = inst.size();
    WorkingState state;
    state.powers.assign(n, 0.0);
    state.tags.assign(n, RauTag::Passive);
    state.free_set.resize(n);
    std::iota(state.free_set.begin(), state.free_set.end(), std::size_t{0});
    state.pinned_full.assign(n, false);
    state.pinned_zero.assign(n, false);
    return state;
}

void assign_free_powers(WorkingState& state, const Instance& inst) {
    if (state.free_set.empty()) {
        return;
    }
    state.kappa_g = solve_kappa(state.free_set, inst, state.fixed_balance);
    for (std::size_t k : state.free_set) {
        const auto decision =
            threshold_power(inst.gains[k], inst.harvest[k], state.kappa_g, inst.eta);
        state.powers[k] = decision.power;
        state.tags[k] = decision.tag;
    }
}

bool find_full_power_raus(WorkingState& state, const Instance& inst) {
    const std::size_t n = inst.size();
    std::vector<bool> pin(n, false);
    bool any = false;
    for (std::size_t k : state.free_set) {
        if (state.powers[k] >= inst.p_max) {
            pin[k] = true;
            any = true;
        }
    }
    if (!any) {
        return false;
    }

    // A RAU at p_max that still discharges drags every better-gain RAU to
    // p_max; one that still charges does so for better-gain RAUs whose
    // harvest also exceeds p_max.
    std::size_t lowest_discharging = 0;  // one past the worst such index
    std::size_t lowest_charging = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(pin[k] || state.pinned_full[k])) {
            continue;
        }
        if (inst.harvest[k] < inst.p_max) {
            lowest_discharging = std::max(lowest_discharging, k + 1);
        } else if (inst.harvest[k] > inst.p_max) {
            lowest_charging = std::max(lowest_charging, k + 1);
        }
    }
    for (std::size_t j : state.free_set) {
        if (j + 1 < lowest_discharging ||
            (j + 1 < lowest_charging && inst.harvest[j] > inst.p_max)) {
            pin[j] = true;
        }
    }

    std::vector<std::size_t> still_free;
    still_free.reserve(state.free_set.size());
    for (std::size_t k : state.free_set) {
        if (pin[k]) {
            pin_full(state, inst, k);
        } else {
            still_free.push_back(k);
        }
    }
    state.free_set = std::move(still_free);
    return true;
}

void settle_full_power(WorkingState& state, const Instance& inst) {
    do {
        assign_free_powers(state, inst);
    } while (!state.free_set.empty() && find_full_power_raus(state, inst));
}

bool find_zero_power_raus(WorkingState& state, const Instance& inst) {
    if (state.free_set.size() <= 1) {
        return false;
    }
    const double incumbent = objective_value(state.powers, inst.gains);

    WorkingState trial = state;
    const std::size_t k = trial.free_set.back();
    trial.free_set.pop_back();
    trial.powers[k] = 0.0;
    trial.pinned_zero[k] = true;
    trial.tags[k] = RauTag::ZeroPower;
    trial.fixed_balance += inst.eta * inst.harvest[k];
    settle_full_power(trial, inst);

    const double candidate = objective_value(trial.powers, inst.gains);
    if (candidate > incumbent * (1.0 + kZeroPowerGain)) {
        state = std::move(trial);
        return true;
    }
    return false;
}

double objective_value(std::span<const double> powers, std::span<const double> gains) {
    if (powers.size() != gains.size()) {
        throw ParameterError("powers and gains differ in length");
    }
    double amplitude = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (powers[i] < 0.0 || std::isnan(powers[i])) {
            throw ParameterError("negative power at index " + std::to_string(i));
        }
        amplitude += std::sqrt(powers[i]) * gains[i];
    }
    return amplitude * amplitude;
}

namespace {

TradePlan make_trade(const Instance& inst, std::span<const double> powers) {
    TradePlan plan;
    const std::size_t n = powers.size();
    plan.charge.resize(n);
    plan.discharge.resize(n);
    plan.states.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto split = trade_split(powers[i], inst.harvest[i]);
        plan.charge[i] = split.charge;
        plan.discharge[i] = split.discharge;
        plan.states[i] = trade_state(split.charge, split.discharge, inst.eta);
    }
    return plan;
}

}  // namespace

Allocation make_allocation(const Instance& inst, std::vector<double> powers) {
    Allocation out;
    out.trade = make_trade(inst, powers);
    out.classification.resize(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (powers[i] >= inst.p_max * (1.0 - 1e-9)) {
            out.classification[i] = RauTag::FullPower;
        } else if (powers[i] <= 0.0) {
            out.classification[i] = RauTag::ZeroPower;
        } else if (out.trade.charge[i] > 0.0) {
            out.classification[i] = RauTag::Charging;
        } else if (out.trade.discharge[i] > 0.0) {
            out.classification[i] = RauTag::Discharging;
        } else {
            out.classification[i] = RauTag::Passive;
        }
    }
    out.objective = objective_value(powers, inst.gains);
    out.scenario = out.trade.sum_state() > 1e-9 * balance_scale(inst) ? Scenario::Profitable
                                                                       : Scenario::Neutral;
    out.powers = std::move(powers);
    return out;
}

Allocation optimal_allocation(const Instance& inst) {
    inst.validate();
    const std::size_t n = inst.size();

    if (profitable_full_power_test(inst)) {
        Allocation out;
        out.powers.assign(n, inst.p_max);
        out.trade = make_trade(inst, out.powers);
        out.classification.assign(n, RauTag::FullPower);
        out.scenario = Scenario::Profitable;
        out.objective = objective_value(out.powers, inst.gains);
        return out;
    }

    WorkingState state = WorkingState::all_free(inst);
    settle_full_power(state, inst);
    while (find_zero_power_raus(state, inst)) {
    }

    Allocation out;
    out.powers = state.powers;
    out.trade = make_trade(inst, out.powers);
    out.classification.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (state.pinned_full[k]) {
            out.classification[k] = RauTag::FullPower;
        } else if (state.pinned_zero[k] || state.powers[k] <= 0.0) {
            out.classification[k] = RauTag::ZeroPower;
        } else {
            out.classification[k] = state.tags[k];
        }
    }
    out.kappa_g = state.kappa_g;
    out.kappa_l = inst.eta * inst.eta * state.kappa_g;
    out.scenario = Scenario::Neutral;
    out.objective = objective_value(out.powers, inst.gains);
    return out;
}

}  // namespace swipt
