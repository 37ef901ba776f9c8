#include "swipt/experiment.hpp"

#include "json_fields.hpp"
#include "swipt/baselines.hpp"
#include "swipt/channel.hpp"
#include "swipt/error.hpp"
#include "swipt/io.hpp"
#include "swipt/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swipt {

using detail::as_count;
using detail::as_number;
using detail::child;

std::string_view to_string(Policy policy) noexcept {
    switch (policy) {
        case Policy::Optimal: return "optimal";
        case Policy::Greedy: return "greedy";
        case Policy::WaterFilling: return "waterfilling";
    }
    return "?";
}

Policy parse_policy(std::string_view name) {
    if (name == "optimal") return Policy::Optimal;
    if (name == "greedy") return Policy::Greedy;
    if (name == "waterfilling") return Policy::WaterFilling;
    throw ParameterError("unknown policy '" + std::string(name) + "'");
}

Allocation solve_with(Policy policy, const Instance& inst) {
    switch (policy) {
        case Policy::Optimal: return optimal_allocation(inst);
        case Policy::Greedy: return greedy_allocation(inst);
        case Policy::WaterFilling: return waterfilling_allocation(inst);
    }
    throw ParameterError("unknown policy");
}

void ExperimentConfig::validate() const {
    if (n_values.empty() || m_values.empty() || p_max_values.empty() || eta_values.empty()) {
        throw ParameterError("every sweep axis needs at least one value");
    }
    for (auto n : n_values) {
        if (n == 0) throw ParameterError("n values must be >= 1");
    }
    for (auto m : m_values) {
        if (m == 0) throw ParameterError("m values must be >= 1");
    }
    for (auto p : p_max_values) {
        if (!(p > 0.0)) throw ParameterError("p_max values must be positive");
    }
    for (auto e : eta_values) {
        if (!(e > 0.0 && e <= 1.0)) throw ParameterError("eta values must lie in (0, 1]");
    }
    if (trials == 0) throw ParameterError("trials must be >= 1");
    if (!(harvest_low >= 0.0 && harvest_low <= harvest_high)) {
        throw ParameterError("harvest range must satisfy 0 <= low <= high");
    }
    if (!(dist_low > 0.0 && dist_low <= dist_high)) {
        throw ParameterError("distance range must satisfy 0 < low <= high");
    }
    if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
    if (policies.empty()) throw ParameterError("at least one policy is required");
    if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
    if (!(xi > 0.0 && xi <= 1.0)) throw ParameterError("xi must lie in (0, 1]");
    if (!(sigma2 > 0.0) || !(tau2 >= 0.0)) throw ParameterError("invalid noise powers");
    if (grid_steps < 11) throw ParameterError("grid_steps must be >= 11");
    if (!(ascent_tol > 0.0)) throw ParameterError("ascent_tol must be positive");
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
    const std::string root = "$";
    detail::require_object(doc, root);
    detail::reject_unknown(doc, root,
                           {"n_values", "m_values", "p_max_values", "eta_values", "trials",
                            "harvest_low", "harvest_high", "dist_low", "dist_high", "alpha",
                            "seed", "policies", "rho", "xi", "sigma2", "tau2", "grid_steps",
                            "ascent_tol"});
    ExperimentConfig c;
    c.n_values = detail::as_counts(detail::required(doc, root, "n_values"), child(root, "n_values"));
    auto number = [&](const char* key, double& field) {
        if (doc.contains(key)) field = as_number(doc[key], child(root, key));
    };
    auto count = [&](const char* key, std::size_t& field) {
        if (doc.contains(key)) field = static_cast<std::size_t>(as_count(doc[key], child(root, key)));
    };
    if (doc.contains("m_values")) c.m_values = detail::as_counts(doc["m_values"], child(root, "m_values"));
    if (doc.contains("p_max_values")) {
        c.p_max_values = detail::as_numbers(doc["p_max_values"], child(root, "p_max_values"));
    }
    if (doc.contains("eta_values")) {
        c.eta_values = detail::as_numbers(doc["eta_values"], child(root, "eta_values"));
    }
    count("trials", c.trials);
    number("harvest_low", c.harvest_low);
    number("harvest_high", c.harvest_high);
    number("dist_low", c.dist_low);
    number("dist_high", c.dist_high);
    number("alpha", c.alpha);
    c.seed = doc.contains("seed") ? as_count(doc["seed"], child(root, "seed")) : default_seed();
    if (doc.contains("policies")) {
        const auto& list = doc["policies"];
        const std::string path = child(root, "policies");
        if (!list.is_array()) throw InputError(path, "expected an array of policy names");
        c.policies.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (!list[i].is_string()) throw InputError(detail::element(path, i), "expected a string");
            try {
                const Policy p = parse_policy(list[i].get<std::string>());
                if (std::find(c.policies.begin(), c.policies.end(), p) != c.policies.end()) {
                    throw InputError(detail::element(path, i), "duplicate policy");
                }
                c.policies.push_back(p);
            } catch (const ParameterError& e) {
                throw InputError(detail::element(path, i), e.what());
            }
        }
    }
    number("rho", c.rho);
    number("xi", c.xi);
    number("sigma2", c.sigma2);
    number("tau2", c.tau2);
    count("grid_steps", c.grid_steps);
    number("ascent_tol", c.ascent_tol);
    try {
        c.validate();
    } catch (const ParameterError& e) {
        throw InputError(root, e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_json_file(path));
}

Instance draw_trial(const ExperimentConfig& config, std::size_t n, std::size_t m,
                    double p_max, double eta, std::size_t trial) {
    const std::uint64_t trial_seed = mix_seed(config.seed, trial);
    const auto realization = generate_realization(n, m, config.dist_low, config.dist_high,
                                                  config.alpha, trial_seed);
    auto sorted = effective_gains(realization);

    const std::uint64_t harvest_seed = mix_seed(trial_seed, kHarvestStream);
    std::vector<double> harvest(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(mix_seed(harvest_seed, i));
        harvest[i] = rng.uniform(config.harvest_low, config.harvest_high);
    }

    Instance inst;
    inst.gains = std::move(sorted.gains);
    inst.harvest.reserve(n);
    for (std::size_t idx : sorted.order) {
        inst.harvest.push_back(harvest[idx]);
    }
    inst.p_max = p_max;
    inst.eta = eta;
    return inst;
}

double estimated_work(const ExperimentConfig& config) {
    double work = 0.0;
    const double per_n = static_cast<double>(config.m_values.size()) *
                         static_cast<double>(config.p_max_values.size()) *
                         static_cast<double>(config.eta_values.size()) *
                         static_cast<double>(config.policies.size() + 1) *
                         static_cast<double>(config.trials);
    for (auto n : config.n_values) {
        work += per_n * static_cast<double>(n) * static_cast<double>(n) * 100.0;
    }
    return work;
}

namespace {

void check_budget(const ExperimentConfig& config) {
    const double work = estimated_work(config);
    if (work > kMaxSweepWork) {
        std::ostringstream msg;
        msg << "config too large: estimated " << format_number(work)
            << " operations exceeds the limit of " << format_number(kMaxSweepWork);
        throw CapacityError(msg.str());
    }
}

struct Accumulator {
    double objective = 0.0;
    double wit = 0.0;
    double wet = 0.0;
    std::size_t violations = 0;
};

std::vector<SweepRecord> run_grid(const ExperimentConfig& config, bool paired) {
    config.validate();
    check_budget(config);

    std::vector<SweepRecord> records;
    const std::size_t n_p = config.p_max_values.size();
    const std::size_t n_e = config.eta_values.size();
    const std::size_t n_pol = config.policies.size();

    for (std::size_t n : config.n_values) {
        for (std::size_t m : config.m_values) {
            std::vector<Accumulator> acc(n_p * n_e * n_pol);
            for (std::size_t t = 0; t < config.trials; ++t) {
                Instance inst = draw_trial(config, n, m, config.p_max_values.front(),
                                           config.eta_values.front(), t);
                for (std::size_t pi = 0; pi < n_p; ++pi) {
                    inst.p_max = config.p_max_values[pi];
                    for (std::size_t ei = 0; ei < n_e; ++ei) {
                        inst.eta = config.eta_values[ei];
                        double best = 0.0;
                        if (paired) {
                            best = optimal_allocation(inst).objective;
                        }
                        for (std::size_t k = 0; k < n_pol; ++k) {
                            const Policy policy = config.policies[k];
                            const double obj = (paired && policy == Policy::Optimal)
                                                   ? best
                                                   : solve_with(policy, inst).objective;
                            auto& a = acc[(pi * n_e + ei) * n_pol + k];
                            a.objective += obj;
                            a.wit += wit_rate(obj, config.rho, config.sigma2, config.tau2);
                            a.wet += wet_energy(obj, config.rho, config.xi, config.sigma2);
                            if (paired && obj > best + 1e-9 * std::max(1.0, best)) {
                                ++a.violations;
                            }
                        }
                    }
                }
            }
            const double trials = static_cast<double>(config.trials);
            for (std::size_t pi = 0; pi < n_p; ++pi) {
                for (std::size_t ei = 0; ei < n_e; ++ei) {
                    for (std::size_t k = 0; k < n_pol; ++k) {
                        const auto& a = acc[(pi * n_e + ei) * n_pol + k];
                        SweepRecord r;
                        r.n = n;
                        r.m = m;
                        r.p_max = config.p_max_values[pi];
                        r.eta = config.eta_values[ei];
                        r.policy = config.policies[k];
                        r.mean_objective = a.objective / trials;
                        r.mean_wit = a.wit / trials;
                        r.mean_wet = a.wet / trials;
                        r.trials = config.trials;
                        r.seed = config.seed;
                        if (paired) {
                            r.dominance_violations = a.violations;
                        }
                        records.push_back(r);
                    }
                }
            }
        }
    }
    return records;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const ExperimentConfig& config) {
    return run_grid(config, false);
}

std::vector<SweepRecord> run_compare(const ExperimentConfig& config) {
    if (config.policies.size() < 2) {
        throw ParameterError("compare needs at least two policies");
    }
    return run_grid(config, true);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    const bool paired = !records.empty() && records.front().dominance_violations.has_value();
    out << "n,m,p_max,eta,policy,mean_objective,mean_wit,mean_wet,trials,seed";
    if (paired) {
        out << ",dominance_violations";
    }
    out << '\n';
    for (const auto& r : records) {
        out << r.n << ',' << r.m << ',' << format_number(r.p_max) << ',' << format_number(r.eta)
            << ',' << to_string(r.policy) << ',' << format_number(r.mean_objective) << ','
            << format_number(r.mean_wit) << ',' << format_number(r.mean_wet) << ',' << r.trials
            << ',' << r.seed;
        if (paired) {
            out << ',' << r.dominance_violations.value_or(0);
        }
        out << '\n';
    }
}

void write_region_csv(std::ostream& out, const std::vector<RegionPoint>& curve) {
    out << "rho,wit,wet\n";
    for (const auto& p : curve) {
        out << format_number(p.rho) << ',' << format_number(p.wit) << ',' << format_number(p.wet)
            << '\n';
    }
}

}  // namespace swipt
