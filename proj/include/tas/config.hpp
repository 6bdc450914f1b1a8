#pragma once

#include <string>

#include <json.hpp>

#include "tas/backends.hpp"
#include "tas/scoring.hpp"

namespace tas {

inline constexpr const char* kVersion = "tas 0.1.0";

// Fully resolved run configuration. Defaults are deep-merged with the user
// document; unknown keys are rejected. `resolved` is embedded verbatim in
// every output file for provenance.
struct RunConfig {
    SelectorConfig selector;
    long long min_mask_area = 100;
    int workers = 1;
    std::string cache_dir;  // empty disables caching
    nlohmann::json resolved;

    std::string fingerprint() const;

    static RunConfig defaults();
    static RunConfig from_json(const nlohmann::json& doc);
    static RunConfig from_file(const std::string& path);
};

nlohmann::json default_config_json();

// Instantiate the backends named in config.backend.*.
Backends make_backends(const RunConfig& config);

}  // namespace tas
