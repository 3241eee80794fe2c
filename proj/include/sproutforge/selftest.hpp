#ifndef SPROUTFORGE_SELFTEST_HPP
#define SPROUTFORGE_SELFTEST_HPP

#include <string>
#include <vector>

namespace sforge::io {

// The convention validators: run at startup by `sprout-forge selftest` and
// before trusting any computation chain.
struct SelfTestReport {
    struct Check {
        std::string name;
        bool ok;
    };
    std::vector<Check> checks;
    std::string fingerprint;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    const std::string* first_failure() const {
        for (const auto& c : checks)
            if (!c.ok) return &c.name;
        return nullptr;
    }
};

SelfTestReport run_selftest();

} // namespace sforge::io

#endif
