#include "swipt/channel.hpp"

#include "swipt/error.hpp"
#include "swipt/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace swipt {

namespace {

double norm2(std::span<const std::complex<double>> v) {
    double sum = 0.0;
    for (const auto& z : v) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

}  // namespace

void ChannelRealization::validate() const {
    const std::size_t n = distances.size();
    if (n == 0) {
        throw ParameterError("channel realization has no RAUs");
    }
    if (per_rau_fading.size() != n || large_scale.size() != n) {
        throw ParameterError("channel realization lists differ in length");
    }
    if (!(decay_exponent > 0.0)) {
        throw ParameterError("decay exponent must be positive");
    }
    const std::size_t m = per_rau_fading.front().size();
    if (m == 0) {
        throw ParameterError("fading vectors must have at least one antenna");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (per_rau_fading[i].size() != m) {
            throw ParameterError("fading vector " + std::to_string(i) + " has wrong length");
        }
        if (!(distances[i] > 0.0) || !std::isfinite(distances[i])) {
            throw ParameterError("distance " + std::to_string(i) + " must be positive");
        }
    }
}

ChannelRealization generate_realization(std::size_t n_raus, std::size_t m_antennas,
                                        double dist_low, double dist_high, double alpha,
                                        std::uint64_t rng_seed) {
    if (n_raus == 0 || m_antennas == 0) {
        throw ParameterError("RAU and antenna counts must be at least 1");
    }
    if (!(dist_low > 0.0) || !(dist_low <= dist_high) || !std::isfinite(dist_high)) {
        throw ParameterError("distance range must satisfy 0 < low <= high");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ParameterError("decay exponent must be positive");
    }

    ChannelRealization out;
    out.decay_exponent = alpha;
    out.per_rau_fading.resize(n_raus);
    out.distances.resize(n_raus);
    out.large_scale.resize(n_raus);
    for (std::size_t i = 0; i < n_raus; ++i) {
        Rng rng(mix_seed(rng_seed, i));
        out.distances[i] = rng.uniform(dist_low, dist_high);
        out.large_scale[i] = std::pow(out.distances[i], -alpha);
        auto& h = out.per_rau_fading[i];
        h.resize(m_antennas);
        for (auto& z : h) {
            z = rng.complex_normal();
        }
    }
    return out;
}

ComplexVector dmrt_beamformer(std::span<const std::complex<double>> fading_vector,
                              double large_scale_coeff) {
    if (!(large_scale_coeff > 0.0)) {
        throw ParameterError("large-scale coefficient must be positive");
    }
    const double scale = std::sqrt(large_scale_coeff);
    ComplexVector g(fading_vector.begin(), fading_vector.end());
    for (auto& z : g) {
        z *= scale;
    }
    const double norm = norm2(g);
    if (!(norm > 0.0)) {
        throw DegenerateChannelError("zero channel vector has no MRT direction");
    }
    for (auto& z : g) {
        z /= norm;
    }
    return g;
}

EffectiveGains sort_descending(std::span<const double> gains) {
    for (double g : gains) {
        if (std::isnan(g)) {
            throw ParameterError("gain is NaN");
        }
    }
    EffectiveGains out;
    out.order.resize(gains.size());
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    out.gains.reserve(gains.size());
    for (std::size_t idx : out.order) {
        out.gains.push_back(gains[idx]);
    }
    return out;
}

EffectiveGains effective_gains(const ChannelRealization& realization) {
    realization.validate();
    std::vector<double> raw(realization.rau_count());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        raw[i] = std::pow(realization.distances[i], -realization.decay_exponent / 2.0) *
                 norm2(realization.per_rau_fading[i]);
    }
    return sort_descending(raw);
}

double beamformed_amplitude(const ChannelRealization& realization,
                            std::span<const double> powers) {
    realization.validate();
    if (powers.size() != realization.rau_count()) {
        throw ParameterError("power vector length does not match RAU count");
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (powers[i] < 0.0) {
            throw ParameterError("negative power");
        }
        const auto& h = realization.per_rau_fading[i];
        const double scale = std::sqrt(realization.large_scale[i]);
        const auto w = dmrt_beamformer(h, realization.large_scale[i]);
        std::complex<double> inner{0.0, 0.0};  // g^H w
        for (std::size_t a = 0; a < h.size(); ++a) {
            inner += std::conj(h[a] * scale) * w[a];
        }
        sum += std::sqrt(powers[i]) * inner;
    }
    return std::abs(sum);
}

}  // namespace swipt
