#include "cremona/wordio.hpp"

#include <sstream>

#include "cremona/error.hpp"
#include "cremona/textio.hpp"

namespace cremona {

GroupTag parse_tag(std::string_view s) {
  if (s == "P2") return GroupTag::P2;
  if (s == "F0") return GroupTag::F0;
  if (s == "F2") return GroupTag::F2;
  throw Error(ErrorKind::ParseError, "unknown tag '" + std::string(s) + "'");
}

Word parse_word(std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto space = t.find_first_of(" \t");
    if (space == std::string::npos)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected '<tag> <map>'");
    try {
      w.emplace_back(parse_map(trim(t.substr(space))), parse_tag(t.substr(0, space)));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string out;
  for (const auto& l : w) out += l.str() + "\n";
  return out;
}

}  // namespace cremona
