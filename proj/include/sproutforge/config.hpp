#ifndef SPROUTFORGE_CONFIG_HPP
#define SPROUTFORGE_CONFIG_HPP

#include <string>

#include "sproutforge/solve.hpp"
#include "sproutforge/sprout_engine.hpp"

namespace sforge::io {

// Runtime configuration: a key=value file plus SPROUT_FORGE_* environment
// overrides.  Unknown keys are rejected at startup.
struct RunConfig {
    int arity_bound = 6;
    int workers = 0;                    // 0: library default
    std::string out_dir = ".";
    std::string report_format = "text";  // text | json | tikz-svg
    std::string pivot_rule = "markowitz";  // markowitz | first-nonzero

    linalg::PivotRule pivot() const;
    engine::EngineOptions engine_options() const;
};

RunConfig load_config(const std::string& path_or_empty);
void apply_env_overrides(RunConfig& cfg);
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

} // namespace sforge::io

#endif
