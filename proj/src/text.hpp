#pragma once

// Tokenizing helpers shared by the file parsers.

#include <sstream>
#include <string>
#include <vector>

#include "eqposet/error.hpp"

namespace eqp::text {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

inline long long to_int(const std::string& s, int line) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError(line, "integer expected, found '" + s + "'");
  }
}

}  // namespace eqp::text
