#ifndef SPROUTFORGE_ERRORS_HPP
#define SPROUTFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sforge {

// Exit-code contract shared by the library and the CLI.
enum class ExitCode : int {
    ok             = 0,
    failure        = 1,
    usage          = 2,
    format         = 3,
    resource       = 4,
    not_extendable = 5,
};

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sforge

#endif
