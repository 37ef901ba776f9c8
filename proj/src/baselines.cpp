#include "swipt/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace swipt {

Allocation greedy_allocation(const Instance& inst) {
    inst.validate();
    const std::size_t n = inst.size();
    std::vector<double> powers(n);
    double credit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        powers[i] = std::min(inst.harvest[i], inst.p_max);
        credit += inst.eta * std::max(inst.harvest[i] - inst.p_max, 0.0);
    }
    // Gains are sorted, so index order is best-gain-first.
    for (std::size_t i = 0; i < n && credit > 0.0; ++i) {
        const double room = inst.p_max - powers[i];
        if (room <= 0.0) {
            continue;
        }
        const double affordable = inst.eta * credit;
        if (affordable <= room) {
            powers[i] += affordable;
            credit = 0.0;
        } else {
            powers[i] = inst.p_max;
            credit -= room / inst.eta;
        }
    }
    return make_allocation(inst, std::move(powers));
}

std::vector<double> waterfilling_powers(const Instance& inst, double level) {
    std::vector<double> powers(inst.size());
    for (std::size_t k = 0; k < inst.size(); ++k) {
        powers[k] = std::min(inst.p_max, std::max(level - 1.0 / inst.gains[k], 0.0));
    }
    return powers;
}

Allocation waterfilling_allocation(const Instance& inst) {
    inst.validate();
    auto balance = [&](double level) {
        const auto powers = waterfilling_powers(inst, level);
        double sum = 0.0;
        for (std::size_t k = 0; k < powers.size(); ++k) {
            sum += trade_state_at(powers[k], inst.harvest[k], inst.eta);
        }
        return sum;
    };

    double lo = 1.0 / inst.gains.front();
    double hi = 1.0 / inst.gains.back() + inst.p_max;  // every RAU capped here
    if (balance(hi) >= 0.0) {
        return make_allocation(inst, waterfilling_powers(inst, hi));
    }
    // balance(lo) = eta * sum(E) >= 0 > balance(hi); keep the feasible end.
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (balance(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return make_allocation(inst, waterfilling_powers(inst, lo));
}

}  // namespace swipt
