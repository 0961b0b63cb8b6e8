#pragma once

#include <string>
#include <string_view>

#include "cremona/amalgam.hpp"

namespace cremona {

GroupTag parse_tag(std::string_view s);

/// One letter per line as "<tag> <map>"; blank lines and text after '#'
/// are ignored.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

}  // namespace cremona
