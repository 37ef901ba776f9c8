#pragma once

#include <cstddef>
#include <vector>

namespace swipt {

/// SWIPT quantities for one solved instance at splitting ratio ps_ratio.
struct SwiptMetrics {
    double objective = 0.0;  ///< (sum sqrt(p) gamma)^2, received signal power
    double wet = 0.0;        ///< harvested energy Q
    double wit = 0.0;        ///< rate R, bits/s/Hz
    double ps_ratio = 1.0;   ///< rho, share routed to the decoder
    double conv_eff = 0.5;   ///< xi
    double noise_rf = 1.0;   ///< sigma^2
    double noise_proc = 1.0; ///< tau^2
};

/// Q = xi (1 - rho) (objective + sigma^2).
double wet_energy(double objective, double rho, double xi, double sigma2);

/// R = log2(1 + rho objective / (rho sigma^2 + tau^2)).
double wit_rate(double objective, double rho, double sigma2, double tau2);

/// Largest rho meeting the harvest demand q_min:
/// rho = 1 - q_min / (xi (objective + sigma^2)).
/// Throws InfeasibleWetError when q_min >= xi (objective + sigma^2).
double ps_ratio_for_wet(double q_min, double objective, double xi, double sigma2);

SwiptMetrics evaluate_metrics(double objective, double rho, double xi, double sigma2,
                              double tau2);

struct RegionPoint {
    double rho = 0.0;
    double wit = 0.0;
    double wet = 0.0;
};

/// Samples rho = k / n_points for k = 1..n_points.
std::vector<RegionPoint> rate_energy_curve(double objective, double xi, double sigma2,
                                           double tau2, std::size_t n_points);

}  // namespace swipt
