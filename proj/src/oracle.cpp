#include "swipt/oracle.hpp"

#include "swipt/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>

namespace swipt {

namespace {

// Written out here rather than shared with the allocator so a mistake there
// cannot leak into the reference solvers.
double state_of(double power, double harvest, double eta) {
    return power <= harvest ? eta * (harvest - power) : (harvest - power) / eta;
}

double amplitude(const Instance& inst, const std::vector<double>& p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::sqrt(p[i]) * inst.gains[i];
    }
    return sum;
}

double total_state(const Instance& inst, const std::vector<double>& p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += state_of(p[i], inst.harvest[i], inst.eta);
    }
    return sum;
}

// Power at which RAU j's trade state equals `target`, or nothing if no
// power in [0, p_max] reaches it.
std::optional<double> power_for_state(double target, double harvest, double eta, double p_max) {
    const double p = target >= 0.0 ? harvest - target / eta : harvest - target * eta;
    if (p < 0.0 || p > p_max) {
        return std::nullopt;
    }
    return p;
}

// One pattern-search level. Returns the improved point.
std::vector<double> refine_level(const Instance& inst, std::vector<double> p, double h) {
    const std::size_t n = p.size();
    const double eta = inst.eta;
    double best = amplitude(inst, p);

    auto try_accept = [&](std::vector<double>& cand) {
        if (total_state(inst, cand) < -kOracleFeasibilitySlack) {
            return false;
        }
        const double value = amplitude(inst, cand);
        if (value > best * (1.0 + 1e-15)) {
            best = value;
            p = cand;
            return true;
        }
        return false;
    };

    for (int pass = 0; pass < 100000; ++pass) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (p[i] < inst.p_max) {
                std::vector<double> cand = p;
                cand[i] = std::min(inst.p_max, p[i] + h);
                if (try_accept(cand)) {
                    improved = true;
                    continue;
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    continue;
                }
                // Raise i by h and lower j just enough to restore balance.
                if (p[i] < inst.p_max) {
                    std::vector<double> cand = p;
                    cand[i] = std::min(inst.p_max, p[i] + h);
                    const double deficit = -total_state(inst, cand);
                    if (deficit > 0.0) {
                        const double target =
                            state_of(cand[j], inst.harvest[j], eta) + deficit;
                        if (auto pj = power_for_state(target, inst.harvest[j], eta, inst.p_max);
                            pj && *pj <= cand[j]) {
                            cand[j] = *pj;
                            if (try_accept(cand)) {
                                improved = true;
                                continue;
                            }
                        }
                    }
                }
                // Lower j by h and spend the freed credit on i.
                if (p[j] > 0.0 && p[i] < inst.p_max) {
                    std::vector<double> cand = p;
                    cand[j] = std::max(0.0, p[j] - h);
                    const double credit = total_state(inst, cand);
                    if (credit > 0.0) {
                        const double target = state_of(cand[i], inst.harvest[i], eta) - credit;
                        const double pi = power_for_state(target, inst.harvest[i], eta,
                                                          std::numeric_limits<double>::max())
                                              .value_or(cand[i]);
                        cand[i] = std::min(inst.p_max, std::max(cand[i], pi));
                        if (try_accept(cand)) {
                            improved = true;
                        }
                    }
                }
            }
        }
        if (!improved) {
            break;
        }
    }
    return p;
}

}  // namespace

OracleResult oracle_grid_search(const Instance& inst, std::size_t steps_per_axis) {
    inst.validate();
    const std::size_t n = inst.size();
    if (n > kGridOracleMaxRaus) {
        throw CapacityError("grid oracle handles at most 4 RAUs");
    }
    if (steps_per_axis < 11) {
        throw ParameterError("grid oracle needs at least 11 steps per axis");
    }

    const double h = inst.p_max / static_cast<double>(steps_per_axis - 1);
    std::vector<std::vector<double>> amp(n, std::vector<double>(steps_per_axis));
    std::vector<std::vector<double>> st(n, std::vector<double>(steps_per_axis));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < steps_per_axis; ++s) {
            const double v = s + 1 == steps_per_axis ? inst.p_max : h * static_cast<double>(s);
            amp[i][s] = std::sqrt(v) * inst.gains[i];
            st[i][s] = state_of(v, inst.harvest[i], inst.eta);
        }
    }

    std::vector<std::size_t> idx(n, 0);
    std::vector<std::size_t> best_idx(n, 0);
    double best = -1.0;
    while (true) {
        double a = 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a += amp[i][idx[i]];
            s += st[i][idx[i]];
        }
        if (s >= -kOracleFeasibilitySlack && a > best) {
            best = a;
            best_idx = idx;
        }
        std::size_t axis = 0;
        while (axis < n && ++idx[axis] == steps_per_axis) {
            idx[axis++] = 0;
        }
        if (axis == n) {
            break;
        }
    }

    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = best_idx[i] + 1 == steps_per_axis ? inst.p_max
                                                   : h * static_cast<double>(best_idx[i]);
    }
    double step = h;
    for (int round = 0; round < 6; ++round) {
        step /= 10.0;
        p = refine_level(inst, std::move(p), step);
    }

    OracleResult out;
    const double a = amplitude(inst, p);
    out.objective = a * a;
    out.powers = std::move(p);
    out.method = OracleMethod::GridSearch;
    out.resolution = step;
    return out;
}
namespace {

// Projection onto the feasible set in the metric sum w_i (p_i - y_i)^2.
// The balance is concave and piecewise linear in each p_i with slope -eta
// below E_i and -1/eta above it, so the minimizer for multiplier lambda
// shifts each coordinate by lambda * slope / w_i, stopping at E_i where the
// slope jumps.
std::vector<double> weighted_projection(const Instance& inst, const std::vector<double>& point,
                                        const std::vector<double>& weight) {
    const double eta = inst.eta;
    auto shifted = [&](double lambda) {
        std::vector<double> p(point.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double e = inst.harvest[i];
            const double y = point[i];
            double v;
            if (y - lambda * eta / weight[i] < e) {
                v = y - lambda * eta / weight[i];
            } else if (y - lambda / (eta * weight[i]) > e) {
                v = y - lambda / (eta * weight[i]);
            } else {
                v = e;
            }
            p[i] = std::clamp(v, 0.0, inst.p_max);
        }
        return p;
    };

    auto p0 = shifted(0.0);
    if (total_state(inst, p0) >= 0.0) {
        return p0;
    }
    double lo = 0.0;
    double hi = 1.0;
    while (total_state(inst, shifted(hi)) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (total_state(inst, shifted(mid)) >= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return shifted(hi);
}

}  // namespace

std::vector<double> project_feasible(const Instance& inst, std::vector<double> point) {
    return weighted_projection(inst, point, std::vector<double>(point.size(), 1.0));
}

OracleResult oracle_ascent(const Instance& inst, double tol, std::size_t max_iterations) {
    inst.validate();
    if (!(tol > 0.0)) {
        throw ParameterError("ascent tolerance must be positive");
    }
    const std::size_t n = inst.size();
    const double floor = 1e-14 * inst.p_max;

    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = std::min(inst.harvest[i], inst.p_max);
    }
    double value = amplitude(inst, p);
    std::deque<double> history{value};

    OracleResult out;
    out.method = OracleMethod::ProjectedAscent;
    out.resolution = tol;
    out.converged = false;

    // The amplitude is separable, so its Hessian is diagonal; scaling the
    // step by it turns each iteration into a projected Newton step.
    std::size_t iter = 0;
    for (; iter < max_iterations; ++iter) {
        std::vector<double> grad(n);
        std::vector<double> curv(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double q = std::max(p[i], floor);
            grad[i] = inst.gains[i] / (2.0 * std::sqrt(q));
            curv[i] = inst.gains[i] / (4.0 * q * std::sqrt(q));
        }
        double step = 1.0;
        std::vector<double> next;
        double next_value = value;
        bool moved = false;
        for (int bt = 0; bt < 200; ++bt) {
            std::vector<double> target(n);
            std::vector<double> weight(n);
            for (std::size_t i = 0; i < n; ++i) {
                target[i] = p[i] + step * grad[i] / curv[i];
                weight[i] = curv[i] / step;
            }
            auto trial = weighted_projection(inst, target, weight);
            double lin = 0.0;
            double quad = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = trial[i] - p[i];
                lin += grad[i] * d;
                quad += weight[i] * d * d;
            }
            if (quad == 0.0) {
                break;
            }
            const double trial_value = amplitude(inst, trial);
            if (trial_value >= value + lin - 0.5 * quad) {
                next = std::move(trial);
                next_value = trial_value;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved || next_value <= value) {
            out.converged = true;
            break;
        }
        p = std::move(next);
        value = next_value;
        history.push_back(value);
        if (history.size() > 51) {
            history.pop_front();
        }
        if (history.size() == 51 && value - history.front() <= tol * value) {
            out.converged = true;
            break;
        }
    }

    out.iterations = iter;
    out.objective = value * value;
    out.powers = std::move(p);
    return out;
}

}  // namespace swipt
