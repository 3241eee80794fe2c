#include "sproutforge/config.hpp"

#include <cstdlib>
#include <fstream>

#include "sproutforge/errors.hpp"

namespace sforge::io {

linalg::PivotRule RunConfig::pivot() const {
    if (pivot_rule == "markowitz") return linalg::PivotRule::markowitz;
    if (pivot_rule == "first-nonzero") return linalg::PivotRule::first_nonzero;
    throw UsageError("unknown pivot rule '" + pivot_rule + "'");
}

engine::EngineOptions RunConfig::engine_options() const {
    engine::EngineOptions o;
    o.arity_bound = arity_bound;
    o.pivot = pivot();
    o.exec.parallel = workers != 1;
    return o;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto want_int = [&](int lo, int hi) {
        int v;
        try {
            v = std::stoi(value);
        } catch (...) {
            throw UsageError("config key '" + key + "': '" + value + "' is not an integer");
        }
        if (v < lo || v > hi)
            throw UsageError("config key '" + key + "': value out of range");
        return v;
    };
    if (key == "arity_bound") cfg.arity_bound = want_int(2, 12);
    else if (key == "workers") cfg.workers = want_int(0, 256);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "report_format") {
        if (value != "text" && value != "json" && value != "tikz-svg")
            throw UsageError("config key 'report_format': unknown format '" + value + "'");
        cfg.report_format = value;
    } else if (key == "pivot_rule") {
        if (value != "markowitz" && value != "first-nonzero")
            throw UsageError("config key 'pivot_rule': unknown rule '" + value + "'");
        cfg.pivot_rule = value;
    } else {
        throw UsageError("unknown config key '" + key + "'");
    }
}

RunConfig load_config(const std::string& path_or_empty) {
    RunConfig cfg;
    if (!path_or_empty.empty()) {
        std::ifstream in(path_or_empty);
        if (!in) throw UsageError("cannot open config file '" + path_or_empty + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t from = line.find_first_not_of(" \t");
            if (from == std::string::npos || line[from] == '#') continue;
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
            std::string key = line.substr(from, eq - from);
            std::string value = line.substr(eq + 1);
            auto trim = [](std::string& s) {
                std::size_t a = s.find_first_not_of(" \t");
                std::size_t b = s.find_last_not_of(" \t\r");
                s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
            };
            trim(key);
            trim(value);
            apply_key(cfg, key, value);
        }
    }
    apply_env_overrides(cfg);
    return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
    static const char* keys[] = {"arity_bound", "workers", "out_dir", "report_format",
                                 "pivot_rule"};
    for (const char* key : keys) {
        std::string env = "SPROUT_FORGE_";
        for (const char* p = key; *p; ++p)
            env.push_back(*p == '.' ? '_' : static_cast<char>(std::toupper(*p)));
        if (const char* v = std::getenv(env.c_str())) apply_key(cfg, key, v);
    }
}

} // namespace sforge::io
