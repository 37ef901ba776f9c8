#include "swipt/verify.hpp"

#include "swipt/io.hpp"
#include "swipt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace swipt {

namespace {

std::string rau(std::size_t i) {
    return "RAU " + std::to_string(i);
}

bool interior(RauTag tag) {
    return tag == RauTag::Charging || tag == RauTag::Discharging || tag == RauTag::Passive;
}

}  // namespace

std::vector<std::string> audit_allocation(const Instance& inst, const Allocation& alloc,
                                          const AuditTolerance& tol) {
    std::vector<std::string> issues;
    const std::size_t n = inst.size();
    const auto& trade = alloc.trade;
    if (alloc.powers.size() != n || trade.charge.size() != n || trade.discharge.size() != n ||
        trade.states.size() != n || alloc.classification.size() != n) {
        issues.push_back("allocation vectors do not match the instance size");
        return issues;
    }

    const double eta = inst.eta;
    const double total_e = std::accumulate(inst.harvest.begin(), inst.harvest.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = alloc.powers[i];
        const double c = trade.charge[i];
        const double d = trade.discharge[i];
        const double e = inst.harvest[i];
        if (c < 0.0 || d < 0.0) {
            issues.push_back(rau(i) + ": negative charge or discharge");
        }
        if (c * d != 0.0) {
            issues.push_back(rau(i) + ": charges and discharges simultaneously");
        }
        if (std::abs(p - (e + d - c)) > tol.identity * (1.0 + p + e)) {
            issues.push_back(rau(i) + ": power differs from E + D - C");
        }
        if (std::abs(trade.states[i] - (eta * c - d / eta)) > tol.identity * (1.0 + c + d / eta)) {
            issues.push_back(rau(i) + ": trade state differs from eta C - D / eta");
        }
        if (p < 0.0 || p > inst.p_max + tol.cap) {
            issues.push_back(rau(i) + ": power outside [0, p_max]");
        }
        const RauTag tag = alloc.classification[i];
        if (tag == RauTag::Charging && !(c > 0.0)) {
            issues.push_back(rau(i) + ": tagged Charging without charge");
        }
        if (tag == RauTag::Discharging && !(d > 0.0)) {
            issues.push_back(rau(i) + ": tagged Discharging without discharge");
        }
        if (tag == RauTag::Passive && !(c == 0.0 && d == 0.0 && p > 0.0 && p < inst.p_max)) {
            issues.push_back(rau(i) + ": tagged Passive but trades or sits at a bound");
        }
        if (interior(tag) && !(p > 0.0 && p < inst.p_max)) {
            issues.push_back(rau(i) + ": interior tag on a power at a bound");
        }
        if (interior(tag) && tag != RauTag::Charging && c > 0.0) {
            issues.push_back(rau(i) + ": charges but is not tagged Charging");
        }
        if (interior(tag) && tag != RauTag::Discharging && d > 0.0) {
            issues.push_back(rau(i) + ": discharges but is not tagged Discharging");
        }
        if (tag == RauTag::FullPower && std::abs(p - inst.p_max) > 1e-9 * inst.p_max) {
            issues.push_back(rau(i) + ": tagged FullPower below p_max");
        }
        if (tag == RauTag::ZeroPower && p != 0.0) {
            issues.push_back(rau(i) + ": tagged ZeroPower with positive power");
        }
    }

    const double sum_state = trade.sum_state();
    const double scale = eta * total_e + 1.0;
    const bool profitable = profitable_full_power_test(inst);
    if (profitable) {
        if (alloc.scenario != Scenario::Profitable) {
            issues.push_back("full-power test passes but scenario is not Profitable");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (alloc.powers[i] != inst.p_max) {
                issues.push_back(rau(i) + ": full-power test passes but power below p_max");
            }
        }
        if (sum_state < -1e-12) {
            issues.push_back("Profitable allocation leaves the grid in deficit");
        }
    } else {
        if (alloc.scenario != Scenario::Neutral) {
            issues.push_back("full-power test fails but scenario is not Neutral");
        }
        if (std::abs(sum_state) > tol.balance * scale) {
            issues.push_back("Neutral allocation has non-zero trade balance " +
                             format_number(sum_state));
        }
    }

    // Monotone full power: a discharging RAU at p_max forces every better
    // RAU to p_max; a charging one forces the better RAUs with E > p_max.
    for (std::size_t k = 0; k < n; ++k) {
        if (alloc.classification[k] != RauTag::FullPower) {
            continue;
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (inst.gains[j] == inst.gains[k] || alloc.classification[j] == RauTag::FullPower) {
                continue;
            }
            if (trade.discharge[k] > 0.0) {
                issues.push_back(rau(j) + ": not at p_max although worse " + rau(k) +
                                 " discharges at p_max");
            } else if (trade.charge[k] > 0.0 && inst.harvest[j] > inst.p_max) {
                issues.push_back(rau(j) + ": not at p_max although worse " + rau(k) +
                                 " charges at p_max");
            }
        }
    }
    // Monotone zero power: zero-power RAUs form a suffix.
    for (std::size_t k = 0; k < n; ++k) {
        if (alloc.classification[k] != RauTag::ZeroPower) {
            continue;
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (alloc.classification[j] != RauTag::ZeroPower && inst.gains[j] != inst.gains[k]) {
                issues.push_back(rau(j) + ": has power although better " + rau(k) +
                                 " is at zero");
            }
        }
    }

    if (alloc.scenario == Scenario::Neutral) {
        if (!alloc.kappa_g || !alloc.kappa_l) {
            issues.push_back("Neutral allocation without thresholds");
            return issues;
        }
        const double kg = *alloc.kappa_g;
        const double kl = *alloc.kappa_l;
        if (kl != eta * eta * kg) {
            issues.push_back("kappa_l differs from eta^2 kappa_g");
        }
        const double slack = tol.ratio * std::max(1.0, kg);
        for (std::size_t i = 0; i < n; ++i) {
            const double ratio = std::sqrt(alloc.powers[i]) / inst.gains[i];
            switch (alloc.classification[i]) {
                case RauTag::Charging:
                    if (std::abs(ratio - kg) > slack) {
                        issues.push_back(rau(i) + ": charging ratio off kappa_g");
                    }
                    break;
                case RauTag::Discharging:
                    if (std::abs(ratio - kl) > slack) {
                        issues.push_back(rau(i) + ": discharging ratio off kappa_l");
                    }
                    break;
                case RauTag::Passive:
                    if (ratio < kl - slack || ratio > kg + slack) {
                        issues.push_back(rau(i) + ": passive ratio outside [kappa_l, kappa_g]");
                    }
                    break;
                default:
                    break;
            }
        }
    }
    return issues;
}

std::vector<double> unit_efficiency_powers(const Instance& inst) {
    double sum_g2 = 0.0;
    for (double g : inst.gains) {
        sum_g2 += g * g;
    }
    const double total_e = std::accumulate(inst.harvest.begin(), inst.harvest.end(), 0.0);
    std::vector<double> p(inst.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = inst.gains[k] * inst.gains[k] * total_e / sum_g2;
    }
    return p;
}

VerifyReport run_verify(const ExperimentConfig& config) {
    config.validate();
    VerifyReport report;
    for (std::size_t n : config.n_values) {
        for (std::size_t m : config.m_values) {
            for (double p_max : config.p_max_values) {
                for (double eta : config.eta_values) {
                    for (std::size_t t = 0; t < config.trials; ++t) {
                        const Instance inst = draw_trial(config, n, m, p_max, eta, t);
                        const Allocation alloc = optimal_allocation(inst);
                        ++report.instances;
                        std::ostringstream where;
                        where << "n=" << n << " m=" << m << " p_max=" << format_number(p_max)
                              << " eta=" << format_number(eta) << " trial=" << t << ": ";
                        for (const auto& issue : audit_allocation(inst, alloc)) {
                            report.violations.push_back(where.str() + issue);
                        }
                        const double scale = std::max(1.0, alloc.objective);
                        if (profitable_full_power_test(inst)) {
                            ++report.profitable;
                        }

                        const auto ascent = oracle_ascent(inst, config.ascent_tol);
                        ++report.ascent_checked;
                        const double gap_a = std::abs(alloc.objective - ascent.objective) / scale;
                        report.max_gap_ascent = std::max(report.max_gap_ascent, gap_a);
                        if (ascent.objective > alloc.objective + 1e-5 * (1.0 + alloc.objective)) {
                            report.violations.push_back(where.str() +
                                                        "ascent oracle beats the allocator");
                        } else if (gap_a > kOracleAgreement) {
                            report.violations.push_back(where.str() +
                                                        "ascent oracle disagrees by " +
                                                        format_number(gap_a));
                        }

                        if (n <= kGridOracleMaxRaus) {
                            const auto grid = oracle_grid_search(inst, config.grid_steps);
                            ++report.grid_checked;
                            const double gap_g =
                                std::abs(alloc.objective - grid.objective) / scale;
                            report.max_gap_grid = std::max(report.max_gap_grid, gap_g);
                            if (grid.objective > alloc.objective + 1e-5 * (1.0 + alloc.objective)) {
                                report.violations.push_back(where.str() +
                                                            "grid oracle beats the allocator");
                            } else if (gap_g > kOracleAgreement) {
                                report.violations.push_back(where.str() +
                                                            "grid oracle disagrees by " +
                                                            format_number(gap_g));
                            }
                        }

                        const bool uncapped = std::none_of(
                            alloc.classification.begin(), alloc.classification.end(),
                            [](RauTag t) {
                                return t == RauTag::FullPower || t == RauTag::ZeroPower;
                            });
                        if (eta == 1.0 && uncapped && alloc.scenario == Scenario::Neutral) {
                            ++report.closed_form_checked;
                            const auto expected = unit_efficiency_powers(inst);
                            for (std::size_t k = 0; k < n; ++k) {
                                const double err = std::abs(alloc.powers[k] - expected[k]) /
                                                   std::max(1.0, expected[k]);
                                report.max_closed_form_error =
                                    std::max(report.max_closed_form_error, err);
                                if (err > 1e-9) {
                                    report.violations.push_back(
                                        where.str() + rau(k) + " misses the eta = 1 closed form");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
    out << "instances: " << report.instances << '\n'
        << "profitable (all p_max): " << report.profitable << '\n'
        << "ascent oracle checks: " << report.ascent_checked
        << ", max relative gap: " << format_number(report.max_gap_ascent) << '\n'
        << "grid oracle checks: " << report.grid_checked
        << ", max relative gap: " << format_number(report.max_gap_grid) << '\n'
        << "eta = 1 closed-form checks: " << report.closed_form_checked
        << ", max relative error: " << format_number(report.max_closed_form_error) << '\n'
        << "violations: " << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
        out << "  " << v << '\n';
    }
    out << (report.ok() ? "OK" : "FAILED") << '\n';
}

}  // namespace swipt
