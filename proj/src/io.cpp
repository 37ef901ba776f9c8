#include "swipt/io.hpp"

#include "json_fields.hpp"
#include "swipt/error.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

namespace swipt {

using detail::as_count;
using detail::as_number;
using detail::as_numbers;
using detail::child;
using detail::required;

std::uint64_t default_seed() {
    if (const char* env = std::getenv(kSeedEnvVar)) {
        std::uint64_t value = 0;
        const char* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec == std::errc{} && ptr == end && ptr != env) {
            return value;
        }
    }
    return kDefaultSeed;
}

namespace {

ChannelSpec parse_channel(const nlohmann::json& j, const std::string& path) {
    detail::require_object(j, path);
    detail::reject_unknown(j, path, {"m", "dist_low", "dist_high", "alpha", "seed"});
    ChannelSpec spec;
    spec.m_antennas = static_cast<std::size_t>(as_count(required(j, path, "m"), child(path, "m")));
    if (spec.m_antennas == 0) {
        throw InputError(child(path, "m"), "must be at least 1");
    }
    spec.dist_low = as_number(required(j, path, "dist_low"), child(path, "dist_low"));
    spec.dist_high = as_number(required(j, path, "dist_high"), child(path, "dist_high"));
    if (!(spec.dist_low > 0.0)) {
        throw InputError(child(path, "dist_low"), "must be positive");
    }
    if (!(spec.dist_high >= spec.dist_low)) {
        throw InputError(child(path, "dist_high"), "must be >= dist_low");
    }
    spec.alpha = as_number(required(j, path, "alpha"), child(path, "alpha"));
    if (!(spec.alpha > 0.0)) {
        throw InputError(child(path, "alpha"), "must be positive");
    }
    spec.seed = j.contains("seed") ? as_count(j["seed"], child(path, "seed")) : default_seed();
    return spec;
}

}  // namespace

InstanceDocument parse_instance(const nlohmann::json& doc) {
    const std::string root = "$";
    detail::require_object(doc, root);
    detail::reject_unknown(doc, root, {"gains", "harvest", "p_max", "eta", "channel"});

    const auto harvest = as_numbers(required(doc, root, "harvest"), child(root, "harvest"));
    if (harvest.empty()) {
        throw InputError(child(root, "harvest"), "must list at least one RAU");
    }
    for (std::size_t i = 0; i < harvest.size(); ++i) {
        if (harvest[i] < 0.0) {
            throw InputError(detail::element(child(root, "harvest"), i), "must be >= 0");
        }
    }
    const double p_max = as_number(required(doc, root, "p_max"), child(root, "p_max"));
    if (!(p_max > 0.0)) {
        throw InputError(child(root, "p_max"), "must be positive");
    }
    const double eta = as_number(required(doc, root, "eta"), child(root, "eta"));
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw InputError(child(root, "eta"), "must lie in (0, 1]");
    }

    const bool has_gains = doc.contains("gains");
    const bool has_channel = doc.contains("channel");
    if (has_gains == has_channel) {
        throw InputError(root, "exactly one of \"gains\" and \"channel\" is required");
    }

    InstanceDocument out;
    EffectiveGains sorted;
    if (has_gains) {
        const auto& g = doc["gains"];
        const std::string path = child(root, "gains");
        if (!g.is_array()) {
            throw InputError(path, "expected an array of numbers");
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            // NaN cannot be written in JSON; a null or string element is the
            // closest an input can get, and is rejected as unsortable.
            if (!g[i].is_number()) {
                throw InputError(detail::element(path, i), "gain is not a sortable number");
            }
        }
        const auto raw = as_numbers(g, path);
        if (raw.size() != harvest.size()) {
            throw InputError(path, "length differs from harvest");
        }
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (!(raw[i] > 0.0)) {
                throw InputError(detail::element(path, i), "must be positive");
            }
        }
        sorted = sort_descending(raw);
    } else {
        const auto spec = parse_channel(doc["channel"], child(root, "channel"));
        const auto realization = generate_realization(harvest.size(), spec.m_antennas,
                                                      spec.dist_low, spec.dist_high,
                                                      spec.alpha, spec.seed);
        sorted = effective_gains(realization);
        out.channel = spec;
    }

    out.instance.gains = std::move(sorted.gains);
    out.order = std::move(sorted.order);
    out.instance.harvest.reserve(harvest.size());
    for (std::size_t idx : out.order) {
        out.instance.harvest.push_back(harvest[idx]);
    }
    out.instance.p_max = p_max;
    out.instance.eta = eta;
    out.instance.validate();
    return out;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("$", std::string("invalid JSON: ") + e.what());
    }
}

InstanceDocument load_instance(const std::filesystem::path& path) {
    return parse_instance(read_json_file(path));
}

nlohmann::ordered_json allocation_to_json(const Allocation& alloc, const InstanceDocument& doc) {
    nlohmann::ordered_json j;
    j["scenario"] = std::string(to_string(alloc.scenario));
    j["powers"] = alloc.powers;
    j["charge"] = alloc.trade.charge;
    j["discharge"] = alloc.trade.discharge;
    j["states"] = alloc.trade.states;
    j["sum_state"] = alloc.trade.sum_state();
    j["kappa_g"] = alloc.kappa_g ? nlohmann::ordered_json(*alloc.kappa_g) : nullptr;
    j["kappa_l"] = alloc.kappa_l ? nlohmann::ordered_json(*alloc.kappa_l) : nullptr;
    auto& tags = j["classification"] = nlohmann::ordered_json::array();
    for (auto tag : alloc.classification) {
        tags.push_back(std::string(to_string(tag)));
    }
    j["objective"] = alloc.objective;
    j["gains"] = doc.instance.gains;
    j["harvest"] = doc.instance.harvest;
    j["order"] = doc.order;
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf, ptr);
}

}  // namespace swipt
