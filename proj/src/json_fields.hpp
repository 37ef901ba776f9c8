#pragma once

// Typed field access with JSON-path diagnostics. Internal to the library.

#include "swipt/error.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace swipt::detail {

inline std::string child(const std::string& path, std::string_view key) {
    return path + "." + std::string(key);
}

inline std::string element(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

inline void require_object(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) {
        throw InputError(path, "expected an object");
    }
}

inline void reject_unknown(const nlohmann::json& j, const std::string& path,
                           std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw InputError(child(path, key), "unknown field");
        }
    }
}

inline double as_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) {
        throw InputError(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw InputError(path, "expected a finite number");
    }
    return v;
}

inline std::uint64_t as_count(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                   j.get<std::int64_t>() < 0)) {
        throw InputError(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

inline std::vector<double> as_numbers(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) {
        throw InputError(path, "expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], element(path, i)));
    }
    return out;
}

inline std::vector<std::size_t> as_counts(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) {
        throw InputError(path, "expected an array of integers");
    }
    std::vector<std::size_t> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(static_cast<std::size_t>(as_count(j[i], element(path, i))));
    }
    return out;
}

inline const nlohmann::json& required(const nlohmann::json& j, const std::string& path,
                                      std::string_view key) {
    auto it = j.find(std::string(key));
    if (it == j.end()) {
        throw InputError(child(path, key), "missing required field");
    }
    return *it;
}

}  // namespace swipt::detail
