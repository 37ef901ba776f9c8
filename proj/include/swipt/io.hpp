#pragma once

#include "swipt/allocator.hpp"
#include "swipt/channel.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace swipt {

/// Environment variable consulted when a document omits its seed.
inline constexpr const char* kSeedEnvVar = "SWIPT_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

/// Seed from SWIPT_SEED if set and parseable, else kDefaultSeed.
std::uint64_t default_seed();

struct ChannelSpec {
    std::size_t m_antennas = 1;
    double dist_low = 10.0;
    double dist_high = 50.0;
    double alpha = 2.0;
    std::uint64_t seed = kDefaultSeed;
};

/// A parsed instance file. `instance` is in descending-gain order and
/// order[k] is the file's RAU index at sorted position k.
struct InstanceDocument {
    Instance instance;
    std::vector<std::size_t> order;
    std::optional<ChannelSpec> channel;
};

/// Instance file schema:
///   {"harvest": [E...], "p_max": x, "eta": x,
///    "gains": [gamma...]                                   (either)
///    "channel": {"m", "dist_low", "dist_high", "alpha", "seed"} (or)}
/// Exactly one of "gains" / "channel" is required; gains need not be sorted.
/// Throws InputError naming the offending field.
InstanceDocument parse_instance(const nlohmann::json& doc);
InstanceDocument load_instance(const std::filesystem::path& path);

/// Result document. Per-RAU arrays are in descending-gain order; "order"
/// maps them back to file indices.
nlohmann::ordered_json allocation_to_json(const Allocation& alloc, const InstanceDocument& doc);

/// Parses a whole file as JSON; InputError("$", ...) on syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes `text` to `path`, throwing std::runtime_error if it cannot.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Locale-independent decimal with 12 significant digits.
std::string format_number(double value);

}  // namespace swipt
