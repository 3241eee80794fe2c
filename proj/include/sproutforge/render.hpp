#ifndef SPROUTFORGE_RENDER_HPP
#define SPROUTFORGE_RENDER_HPP

#include <string>

#include "sproutforge/serialize.hpp"

namespace sforge::io {

// One drawing per term in the classic brace-tree figure style: labeled circles,
// filled neutral dots, a root stub, and the tensor word as caption.
// format is "tikz" or "svg".  The full sprout is embedded as comments so
// a rendering can be parsed back exactly.
std::string render_sprout(const SproutFile& f, const std::string& format);

// Recovers the sprout from the comments embedded by render_sprout.
SproutFile parse_rendered(const std::string& text);

} // namespace sforge::io

#endif
