#include "swipt/metrics.hpp"

#include "swipt/error.hpp"

#include <cmath>

namespace swipt {

namespace {

void check_unit_interval(double value, const char* name) {
    if (!(value > 0.0 && value <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in (0, 1]");
    }
}

}  // namespace

double wet_energy(double objective, double rho, double xi, double sigma2) {
    check_unit_interval(rho, "rho");
    check_unit_interval(xi, "xi");
    if (!(sigma2 > 0.0)) {
        throw ParameterError("sigma2 must be positive");
    }
    if (!(objective >= 0.0)) {
        throw ParameterError("objective must be non-negative");
    }
    return xi * (1.0 - rho) * (objective + sigma2);
}

double wit_rate(double objective, double rho, double sigma2, double tau2) {
    check_unit_interval(rho, "rho");
    if (!(sigma2 >= 0.0) || !(tau2 >= 0.0) || !(rho * sigma2 + tau2 > 0.0)) {
        throw ParameterError("noise powers must be non-negative and not both zero");
    }
    return std::log2(1.0 + rho * objective / (rho * sigma2 + tau2));
}

double ps_ratio_for_wet(double q_min, double objective, double xi, double sigma2) {
    check_unit_interval(xi, "xi");
    if (!(q_min >= 0.0)) {
        throw ParameterError("q_min must be non-negative");
    }
    if (!(sigma2 > 0.0) || !(objective >= 0.0)) {
        throw ParameterError("objective and sigma2 must be non-negative / positive");
    }
    const double available = xi * (objective + sigma2);
    if (q_min >= available) {
        throw InfeasibleWetError("harvest demand exceeds what any splitting ratio delivers");
    }
    return 1.0 - q_min / available;
}

SwiptMetrics evaluate_metrics(double objective, double rho, double xi, double sigma2,
                              double tau2) {
    SwiptMetrics m;
    m.objective = objective;
    m.ps_ratio = rho;
    m.conv_eff = xi;
    m.noise_rf = sigma2;
    m.noise_proc = tau2;
    m.wet = wet_energy(objective, rho, xi, sigma2);
    m.wit = wit_rate(objective, rho, sigma2, tau2);
    return m;
}

std::vector<RegionPoint> rate_energy_curve(double objective, double xi, double sigma2,
                                           double tau2, std::size_t n_points) {
    if (n_points < 2) {
        throw ParameterError("rate-energy curve needs at least two points");
    }
    std::vector<RegionPoint> curve;
    curve.reserve(n_points);
    for (std::size_t k = 1; k <= n_points; ++k) {
        const double rho = static_cast<double>(k) / static_cast<double>(n_points);
        curve.push_back({rho, wit_rate(objective, rho, sigma2, tau2),
                         wet_energy(objective, rho, xi, sigma2)});
    }
    return curve;
}

}  // namespace swipt
