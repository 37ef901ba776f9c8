#pragma once

#include "swipt/allocator.hpp"
#include "swipt/metrics.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace swipt {

enum class Policy { Optimal, Greedy, WaterFilling };

std::string_view to_string(Policy policy) noexcept;
Policy parse_policy(std::string_view name);  ///< "optimal" | "greedy" | "waterfilling"

Allocation solve_with(Policy policy, const Instance& inst);

/// Monte-Carlo sweep description. Defaults follow the reference simulation
/// setup: alpha = 2, distances U(10, 50) m, harvest U(1, 8), M = 4,
/// p_max = 5, eta = 0.8, 1000 trials.
struct ExperimentConfig {
    std::vector<std::size_t> n_values;
    std::vector<std::size_t> m_values{4};
    std::vector<double> p_max_values{5.0};
    std::vector<double> eta_values{0.8};
    std::size_t trials = 1000;
    double harvest_low = 1.0;
    double harvest_high = 8.0;
    double dist_low = 10.0;
    double dist_high = 50.0;
    double alpha = 2.0;
    std::uint64_t seed = 1;
    std::vector<Policy> policies{Policy::Optimal};

    // Receiver model used for the WIT / WET columns.
    double rho = 0.5;
    double xi = 0.5;
    double sigma2 = 1.0;
    double tau2 = 1.0;

    // verify only
    std::size_t grid_steps = 21;
    double ascent_tol = 1e-12;

    /// Throws ParameterError on invalid ranges.
    void validate() const;
};

/// Parses a config document; missing fields keep their defaults, a missing
/// seed falls back to default_seed(). Throws InputError with the field path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Draws trial `trial` with N RAUs and M antennas, sorted by gain.
///
/// Stream layout: trial seed = mix_seed(seed, trial); RAU i's channel uses
/// mix_seed(trial seed, i) (see generate_realization); RAU i's harvest uses
/// mix_seed(mix_seed(trial seed, kHarvestStream), i). Nothing depends on N,
/// M, p_max, eta or the policy, so every sweep point and every policy sees
/// the same underlying draws.
Instance draw_trial(const ExperimentConfig& config, std::size_t n, std::size_t m,
                    double p_max, double eta, std::size_t trial);

inline constexpr std::uint64_t kHarvestStream = 0x48415256ULL;

struct SweepRecord {
    std::size_t n = 0;
    std::size_t m = 0;
    double p_max = 0.0;
    double eta = 0.0;
    Policy policy = Policy::Optimal;
    double mean_objective = 0.0;
    double mean_wit = 0.0;
    double mean_wet = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    /// compare only: trials where this policy beat the optimal one
    std::optional<std::size_t> dominance_violations;
};

/// Upper bound on allocator work for a config; run_* refuse anything above
/// kMaxSweepWork.
double estimated_work(const ExperimentConfig& config);
inline constexpr double kMaxSweepWork = 1e11;

/// One record per (n, m, p_max, eta, policy), in that nesting order.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& config);

/// Like run_sweep, but the optimal policy is always solved and each record
/// counts per-trial dominance violations against it. Needs >= 2 policies.
std::vector<SweepRecord> run_compare(const ExperimentConfig& config);

/// CSV with header n,m,p_max,eta,policy,mean_objective,mean_wit,mean_wet,
/// trials,seed (plus dominance_violations when present).
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

/// CSV with header rho,wit,wet.
void write_region_csv(std::ostream& out, const std::vector<RegionPoint>& curve);

}  // namespace swipt
