#ifndef SPROUTFORGE_SERIALIZE_HPP
#define SPROUTFORGE_SERIALIZE_HPP

#include <string>

#include "sproutforge/conv_element.hpp"

namespace sforge::io {

// Text persistence of sprouts: one header block, then one line per term in
// canonical class order.  Rationals are lowest-terms "p/q", trees use the
// nested grammar r(1(2)) / r(•(1,2)), words in bracket notation b1 b2 /
// {b1,{b2,b3}}.
struct SproutFile {
    int format_version = 1;
    std::string pair = "ger-br";
    int order = 0;
    std::string fingerprint;
    conv::ConvElement element;
};

std::string serialize_sprout(const SproutFile& f);

// Parses and validates; a fingerprint different from this build's is a
// format error (sprouts from another sign convention must not be trusted).
SproutFile parse_sprout(const std::string& text);

SproutFile read_sprout_file(const std::string& path);
void write_sprout_file(const std::string& path, const SproutFile& f);

// The convention fingerprint of this build: a 64-bit hash over a canonical
// transcript of the differential, composition and seed conventions.
const std::string& convention_fingerprint();

} // namespace sforge::io

#endif
