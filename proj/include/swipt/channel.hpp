#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace swipt {

using ComplexVector = std::vector<std::complex<double>>;

/// One draw of the downlink channel from N RAUs (M antennas each) to the
/// user. The composite channel of RAU i is fading[i] * sqrt(large_scale[i]).
struct ChannelRealization {
    std::vector<ComplexVector> per_rau_fading;  ///< small-scale fading h_i, length M each
    std::vector<double> distances;              ///< d_i in meters, > 0
    double decay_exponent = 2.0;                ///< alpha
    std::vector<double> large_scale;            ///< beta_i = d_i^-alpha

    std::size_t rau_count() const noexcept { return distances.size(); }
    std::size_t antenna_count() const noexcept {
        return per_rau_fading.empty() ? 0 : per_rau_fading.front().size();
    }

    /// Throws ParameterError if any invariant is broken.
    void validate() const;
};

/// Scalar effective gains gamma_i sorted strictly descending.
/// order[k] is the physical RAU index at sorted position k.
struct EffectiveGains {
    std::vector<double> gains;
    std::vector<std::size_t> order;
};

/// Draws a realization: Rayleigh fading entries, distances uniform on
/// [dist_low, dist_high], beta_i = d_i^-alpha.
///
/// Each RAU draws from its own substream of `rng_seed` (distance first, then
/// the M fading entries), so RAU i's draw is the same for any N, and the
/// fading vector for M antennas is a prefix of the one for M+1.
ChannelRealization generate_realization(std::size_t n_raus, std::size_t m_antennas,
                                        double dist_low, double dist_high, double alpha,
                                        std::uint64_t rng_seed);

/// Distributed MRT beam for one RAU: g / ||g|| with g = h * sqrt(beta).
/// Throws DegenerateChannelError for a zero vector.
ComplexVector dmrt_beamformer(std::span<const std::complex<double>> fading_vector,
                              double large_scale_coeff);

/// gamma_i = d_i^(-alpha/2) * ||h_i||, sorted descending.
EffectiveGains effective_gains(const ChannelRealization& realization);

/// Sorts gains descending; ties keep ascending original index.
/// Throws ParameterError on NaN.
EffectiveGains sort_descending(std::span<const double> gains);

/// |sum_i sqrt(p_i) w_i^H g_i| with DMRT beams, evaluated from the vector
/// channel. `powers` is indexed by physical RAU.
double beamformed_amplitude(const ChannelRealization& realization,
                            std::span<const double> powers);

}  // namespace swipt
